#pragma once

// Codimension-one cut-and-project words: the internal space is the unit
// circle, the physical lattice is Z, and site k carries the internal
// coordinate frac(k * slope + phase). A site reads letter A when its
// internal coordinate falls in the window, B otherwise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gaplab/error.hpp"

namespace gaplab {

enum class Provenance { mechanical, substitution, periodic, periodic_approximant, shuffled };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::mechanical: return "mechanical";
    case Provenance::substitution: return "substitution";
    case Provenance::periodic: return "periodic";
    case Provenance::periodic_approximant: return "periodic-approximant";
    case Provenance::shuffled: return "shuffled";
  }
  return "?";
}

struct QuasiWord {
  std::string letters;
  Provenance provenance = Provenance::mechanical;

  [[nodiscard]] std::size_t size() const { return letters.size(); }
  [[nodiscard]] std::size_t count(char letter) const {
    return static_cast<std::size_t>(std::count(letters.begin(), letters.end(), letter));
  }
  friend bool operator==(const QuasiWord& a, const QuasiWord& b) { return a.letters == b.letters; }
};

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
  int index = 0;  // 1-based; the a0 = 0 term of a slope in (0,1) is skipped
  [[nodiscard]] long double value() const {
    return static_cast<long double>(p) / static_cast<long double>(q);
  }
};

inline long double frac(long double x) { return x - std::floor(x); }

inline long double golden_slope() { return (std::sqrt(5.0L) - 1.0L) / 2.0L; }
inline long double silver_slope() { return std::sqrt(2.0L) - 1.0L; }

/// True when some p/q with q <= max_den satisfies |x - p/q| < tol / q^2.
inline bool is_near_rational(long double x, std::int64_t max_den = 10000, long double tol = 1e-12L) {
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const long double qq = static_cast<long double>(q);
    const long double p = std::round(x * qq);
    if (std::fabs(x - p / qq) < tol / (qq * qq)) return true;
  }
  return false;
}

struct CutProjectScheme {
  long double slope = 0;
  long double phase = 0;
  long double window_start = 0;   // window is the half-open arc [start, start + length) mod 1
  long double window_length = 1;
  double spacing_a = 1;
  double spacing_b = 1;

  /// Canonical Sturmian coding: window [1 - slope, 1), phase = slope. With
  /// this choice letter k is floor((k+2)s) - floor((k+1)s), which for the
  /// golden slope is the fixed point of A -> AB, B -> A.
  static CutProjectScheme sturmian(long double s, double spacing_a = 1, double spacing_b = 1) {
    CutProjectScheme c;
    c.slope = s;
    c.phase = s;
    c.window_start = 1.0L - s;
    c.window_length = s;
    c.spacing_a = spacing_a;
    c.spacing_b = spacing_b;
    return c;
  }

  static CutProjectScheme golden() {
    return sturmian(golden_slope(), static_cast<double>(1.0L / golden_slope()), 1.0);
  }

  [[nodiscard]] CutProjectScheme with_phase(long double theta) const {
    CutProjectScheme c = *this;
    c.phase = frac(theta);
    return c;
  }

  [[nodiscard]] bool degenerate() const { return is_near_rational(slope); }

  /// Checks ranges; irrationality is checked separately by callers that need it.
  void validate() const {
    if (!(slope > 0 && slope < 1)) throw InvalidArgument("scheme: slope must lie in (0,1)");
    if (!(phase >= 0 && phase < 1)) throw InvalidArgument("scheme: phase must lie in [0,1)");
    if (!(window_length > 0 && window_length <= 1))
      throw InvalidArgument("scheme: window length must lie in (0,1]");
    if (!(spacing_a > 0 && spacing_b > 0)) throw InvalidArgument("scheme: spacings must be positive");
  }

  [[nodiscard]] bool in_window(long double x) const {
    return frac(x - window_start) < window_length;
  }
};

/// Letter k is A iff frac(k * slope + phase) lies in the window. Coordinates
/// are accumulated in long double (64-bit mantissa on x86-64).
inline QuasiWord mechanical_word(const CutProjectScheme& scheme, std::size_t len) {
  if (len == 0) throw InvalidArgument("mechanical_word: length must be positive");
  scheme.validate();
  if (scheme.degenerate())
    throw DegenerateScheme("mechanical_word: slope is rational to working precision; use periodic_word");
  QuasiWord w;
  w.provenance = Provenance::mechanical;
  w.letters.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const long double x = frac(static_cast<long double>(k) * scheme.slope + scheme.phase);
    w.letters[k] = scheme.in_window(x) ? 'A' : 'B';
  }
  return w;
}

/// Prefix of the fixed point of A -> AB, B -> A.
inline QuasiWord substitution_word(std::size_t len) {
  if (len == 0) throw InvalidArgument("substitution_word: length must be positive");
  std::string w = "A";
  while (w.size() < len) {
    std::string next;
    next.reserve(w.size() * 2);
    for (char c : w) next += (c == 'A') ? "AB" : "A";
    w = std::move(next);
  }
  w.resize(len);
  return {std::move(w), Provenance::substitution};
}

inline QuasiWord periodic_word(std::string_view pattern, std::size_t len) {
  if (pattern.empty()) throw InvalidArgument("periodic_word: pattern must be nonempty");
  for (char c : pattern)
    if (c != 'A' && c != 'B') throw InvalidArgument("periodic_word: letters must be A or B");
  QuasiWord w;
  w.provenance = Provenance::periodic;
  w.letters.resize(len);
  for (std::size_t k = 0; k < len; ++k) w.letters[k] = pattern[k % pattern.size()];
  return w;
}

/// Continued-fraction convergents p_k/q_k, k = 1..depth.
inline std::vector<Convergent> convergents(long double alpha, int depth) {
  if (depth < 1) throw InvalidArgument("convergents: depth must be positive");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("convergents: alpha must lie in (0,1)");
  if (is_near_rational(alpha)) throw DegenerateScheme("convergents: alpha is rational to working precision");
  std::vector<Convergent> out;
  // h_{-1}=1, h_{-2}=0; k_{-1}=0, k_{-2}=1. The a0 = 0 term gives 0/1.
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p_cur = 0, q_cur = 1;
  long double x = 1.0L / alpha;
  for (int k = 1; k <= depth; ++k) {
    const long double a_real = std::floor(x);
    if (a_real > 1e9L) throw DegenerateScheme("convergents: partial quotient overflow");
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t p_next = a * p_cur + p_prev;
    const std::int64_t q_next = a * q_cur + q_prev;
    p_prev = p_cur, q_prev = q_cur, p_cur = p_next, q_cur = q_next;
    const long double q = static_cast<long double>(q_cur);
    if (q > 1e9L || !(std::fabs(alpha - static_cast<long double>(p_cur) / q) < 1.0L / (q * q)))
      throw DegenerateScheme("convergents: precision exhausted at depth " + std::to_string(k));
    out.push_back({p_cur, q_cur, k});
    const long double r = x - a_real;
    if (r <= 0) throw DegenerateScheme("convergents: expansion terminated");
    x = 1.0L / r;
  }
  return out;
}

/// First convergent with denominator exactly q.
inline Convergent convergent_with_denominator(long double alpha, std::int64_t q) {
  for (int depth = 1; depth <= 60; ++depth) {
    const auto cs = convergents(alpha, depth);
    if (cs.back().q == q) return cs.back();
    if (cs.back().q > q) break;
  }
  throw InvalidArgument("size " + std::to_string(q) + " is not a convergent denominator of the slope");
}

/// Rational approximant of a scheme: slope p/q, with phase, window start and
/// window length rounded to the 1/q grid, evaluated in exact integer
/// arithmetic. The word is periodic with period q and has round(|W| q) A's
/// per period.
inline QuasiWord approximant_word(const CutProjectScheme& scheme, const Convergent& c, std::size_t len = 0) {
  if (c.q <= 0) throw InvalidArgument("approximant_word: bad convergent");
  if (len == 0) len = static_cast<std::size_t>(c.q);
  const std::int64_t q = c.q;
  auto on_grid = [q](long double x) {
    return ((static_cast<std::int64_t>(std::llround(x * static_cast<long double>(q))) % q) + q) % q;
  };
  const std::int64_t t = on_grid(scheme.phase);
  const std::int64_t s = on_grid(scheme.window_start);
  const std::int64_t r = std::llround(scheme.window_length * static_cast<long double>(q));
  QuasiWord w;
  w.provenance = Provenance::periodic_approximant;
  w.letters.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const std::int64_t x = (static_cast<std::int64_t>(k % static_cast<std::size_t>(q)) * c.p + t) % q;
    w.letters[k] = (((x - s) % q + q) % q) < r ? 'A' : 'B';
  }
  return w;
}

struct PointSet {
  std::vector<double> positions;
  double min_spacing = 0;
};

inline PointSet points_from_word(const QuasiWord& word, double origin, double spacing_a, double spacing_b) {
  if (!(spacing_a > 0 && spacing_b > 0)) throw InvalidArgument("points_from_word: spacings must be positive");
  PointSet ps;
  ps.positions.reserve(word.size() + 1);
  double x = origin;
  ps.positions.push_back(x);
  double min_gap = 0;
  for (char c : word.letters) {
    const double step = (c == 'A') ? spacing_a : spacing_b;
    x += step;
    ps.positions.push_back(x);
    min_gap = (min_gap == 0) ? step : std::min(min_gap, step);
  }
  ps.min_spacing = min_gap;
  return ps;
}

/// Half the minimum pairwise gap: every ball of this radius holds at most one point.
inline double uniform_discreteness(const PointSet& points) {
  if (points.positions.size() < 2) throw InvalidArgument("uniform_discreteness: need at least two points");
  std::vector<double> x = points.positions;
  std::sort(x.begin(), x.end());
  double min_gap = x[1] - x[0];
  for (std::size_t i = 2; i < x.size(); ++i) min_gap = std::min(min_gap, x[i] - x[i - 1]);
  if (!(min_gap > 0)) throw InvalidArgument("uniform_discreteness: duplicate points");
  return min_gap / 2;
}

}  // namespace gaplab
