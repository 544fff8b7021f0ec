#pragma once

// A model family indexed by approximant size: what word sits on q sites,
// which operator that gives, and which label module the gaps are tested
// against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include "gaplab/error.hpp"
#include "gaplab/operator.hpp"
#include "gaplab/scheme.hpp"
#include "gaplab/transversal.hpp"

namespace gaplab {

enum class SystemKind { quasicrystal, periodic, free, shuffled };

inline const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::quasicrystal: return "quasicrystal";
    case SystemKind::periodic: return "periodic";
    case SystemKind::free: return "free";
    case SystemKind::shuffled: return "shuffled";
  }
  return "?";
}

struct SystemSpec {
  SystemKind kind = SystemKind::quasicrystal;
  CutProjectScheme scheme = CutProjectScheme::golden();
  std::string pattern = "AB";  // periodic kind only
  Model model = OnsiteModel{2.0};
  Boundary boundary = Boundary::periodic;
  std::uint64_t seed = 0;  // shuffled kind only

  [[nodiscard]] std::string describe() const {
    std::string s = to_string(kind);
    if (kind == SystemKind::periodic) s += "(" + pattern + ")";
    if (kind == SystemKind::shuffled) s += "(seed=" + std::to_string(seed) + ")";
    if (kind != SystemKind::free) s += " " + gaplab::describe(model);
    return s + " " + to_string(boundary);
  }
};

/// Letters on q sites. Quasicrystal words with periodic boundary are
/// convergent approximants, so q must be a convergent denominator.
inline QuasiWord system_word(const SystemSpec& sys, std::size_t q) {
  if (q < 2) throw InvalidArgument("system: size must be at least 2");
  switch (sys.kind) {
    case SystemKind::free:
      return periodic_word("B", q);
    case SystemKind::periodic:
      if (sys.pattern.empty() || q % sys.pattern.size() != 0)
        throw InvalidArgument("system: size " + std::to_string(q) + " is not a multiple of the pattern period");
      return periodic_word(sys.pattern, q);
    case SystemKind::quasicrystal:
    case SystemKind::shuffled: {
      QuasiWord w;
      if (sys.kind == SystemKind::quasicrystal && sys.boundary == Boundary::open) {
        w = mechanical_word(sys.scheme, q);
      } else {
        const Convergent c = convergent_with_denominator(sys.scheme.slope, static_cast<std::int64_t>(q));
        w = approximant_word(sys.scheme, c);
      }
      if (sys.kind == SystemKind::shuffled) {
        std::mt19937_64 rng(sys.seed * 0x9E3779B97F4A7C15ULL + q);
        std::shuffle(w.letters.begin(), w.letters.end(), rng);
        w.provenance = Provenance::shuffled;
      }
      return w;
    }
  }
  throw InvalidArgument("system: unknown kind");
}

inline ApproximantOperator system_operator(const SystemSpec& sys, std::size_t q) {
  if (sys.kind == SystemKind::free) return assemble(system_word(sys, q), OnsiteModel{0.0}, sys.boundary);
  return assemble(system_word(sys, q), sys.model, sys.boundary);
}

/// Shuffled words are tested against the module of the scheme they were
/// shuffled from; that is the claim the negative control tries to break.
inline ModuleScan system_module(const SystemSpec& sys, int depth, double tol = 1e-10, int coeff_bound = 50) {
  switch (sys.kind) {
    case SystemKind::free: return periodic_label_module("B", 1, tol, coeff_bound);
    case SystemKind::periodic: return periodic_label_module(sys.pattern, depth, tol, coeff_bound);
    case SystemKind::quasicrystal:
    case SystemKind::shuffled: return cylinder_label_module(sys.scheme, depth, tol, coeff_bound);
  }
  throw InvalidArgument("system: unknown kind");
}

}  // namespace gaplab
