#pragma once

// Clopen subsets of the transversal as cylinder sets, their measures, and
// the label group they generate: the additive subgroup of R spanned by
// cylinder measures, held as an integer span of a short real basis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaplab/arcs.hpp"
#include "gaplab/error.hpp"
#include "gaplab/scheme.hpp"
#include "json.hpp"

namespace gaplab {

struct CylinderSet {
  std::string word;
  ArcSet acceptance;  // internal coordinates of a marked site followed by `word`
  double measure = 0;
};

inline ArcSet letter_arc(const CutProjectScheme& scheme, char letter) {
  const ArcSet a = ArcSet::arc(scheme.window_start, scheme.window_length);
  return letter == 'A' ? a : a.complement();
}

/// Cylinder of `w`, or nullopt if `w` never occurs.
inline std::optional<CylinderSet> try_cylinder(const CutProjectScheme& scheme, std::string_view w) {
  if (w.empty()) throw InvalidArgument("cylinder: word must be nonempty");
  ArcSet acc = ArcSet::full();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != 'A' && w[j] != 'B') throw InvalidArgument("cylinder: letters must be A or B");
    acc = acc.intersect(letter_arc(scheme, w[j]).shifted(-static_cast<long double>(j) * scheme.slope));
    if (acc.empty()) return std::nullopt;
  }
  const long double m = acc.measure();
  return CylinderSet{std::string(w), std::move(acc), static_cast<double>(m)};
}

inline CylinderSet cylinder(const CutProjectScheme& scheme, std::string_view w) {
  auto c = try_cylinder(scheme, w);
  if (!c) throw ForbiddenWord("cylinder: word '" + std::string(w) + "' does not occur");
  return std::move(*c);
}

/// All words of length `len` with nonempty cylinder, in lexicographic order.
inline std::vector<CylinderSet> occurring_cylinders(const CutProjectScheme& scheme, std::size_t len) {
  std::vector<std::string> words = {""};
  for (std::size_t d = 0; d < len; ++d) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (char c : {'A', 'B'})
        if (try_cylinder(scheme, w + c)) next.push_back(w + c);
    words = std::move(next);
  }
  std::vector<CylinderSet> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(cylinder(scheme, w));
  return out;
}

/// Overlapping occurrences of `w` in `sample`, divided by the number of windows.
inline double empirical_frequency(std::string_view sample, std::string_view w) {
  if (w.empty() || sample.size() < w.size()) throw InvalidArgument("empirical_frequency: sample too short");
  std::size_t hits = 0;
  for (std::size_t k = 0; k + w.size() <= sample.size(); ++k)
    if (sample.compare(k, w.size(), w) == 0) ++hits;
  return static_cast<double>(hits) / static_cast<double>(sample.size() - w.size() + 1);
}

inline double empirical_frequency(const CutProjectScheme& scheme, std::string_view w, std::size_t sample_len) {
  if (sample_len < 10 * w.size()) throw InvalidArgument("empirical_frequency: sample_len must be >= 10 |w|");
  return empirical_frequency(mechanical_word(scheme, sample_len).letters, w);
}

inline double empirical_frequency(std::string_view w, std::size_t sample_len) {
  return empirical_frequency(CutProjectScheme::golden(), w, sample_len);
}

struct LabelModule {
  std::vector<double> basis;
  std::vector<double> generators;
  std::vector<std::vector<std::int64_t>> certificates;  // one row per generator

  [[nodiscard]] std::size_t rank() const { return basis.size(); }

  [[nodiscard]] double value(std::span<const std::int64_t> coeffs) const {
    long double s = 0;
    for (std::size_t i = 0; i < basis.size() && i < coeffs.size(); ++i)
      s += static_cast<long double>(coeffs[i]) * basis[i];
    return static_cast<double>(s);
  }

  [[nodiscard]] bool same_basis(const LabelModule& other, double tol = 1e-9) const {
    if (basis.size() != other.basis.size()) return false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (std::fabs(basis[i] - other.basis[i]) > tol) return false;
    return true;
  }
};

namespace detail {

inline constexpr std::size_t kMaxModuleRank = 3;

struct Relation {
  std::int64_t den = 1;
  std::vector<std::int64_t> num;  // g ~ sum(num[j] * qbasis[j]) / den
  long double residual = 0;
};

// Bounded search for d*g = sum n_j p_j with p_0 = 1: smallest d, then
// smallest max|n_j| (j >= 1), then smallest residual. n_0 is fixed by rounding.
inline std::optional<Relation> find_relation(long double g, const std::vector<long double>& qbasis,
                                             double tol, int bound) {
  const std::size_t r = qbasis.size();
  for (std::int64_t d = 1; d <= bound; ++d) {
    std::optional<Relation> best;
    std::int64_t best_norm = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> n(r, 0);
    for (std::size_t j = 1; j < r; ++j) n[j] = -bound;
    while (true) {
      long double rest = static_cast<long double>(d) * g;
      std::int64_t norm = 0;
      for (std::size_t j = 1; j < r; ++j) {
        rest -= static_cast<long double>(n[j]) * qbasis[j];
        norm = std::max<std::int64_t>(norm, std::llabs(n[j]));
      }
      n[0] = std::llround(rest);
      const long double res = std::fabs(rest - static_cast<long double>(n[0])) / static_cast<long double>(d);
      if (res <= tol && (norm < best_norm || (norm == best_norm && res < best->residual))) {
        best = Relation{d, n, res};
        best_norm = norm;
      }
      std::size_t j = 1;
      while (j < r && n[j] == bound) n[j++] = -bound;
      if (j >= r) break;
      ++n[j];
    }
    if (best) return best;
  }
  return std::nullopt;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw IrreducibleGenerator("label module: integer overflow in lattice reduction");
  return out;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Reduces generator measures to a Z-basis of the group they span.
///
/// The largest generators are taken greedily as a Q-basis (1 first); every
/// other generator receives rational coordinates from a bounded relation
/// search. The integer lattice of coordinates is brought to a triangular
/// Hermite form, so basis[0] is a rational multiple of 1 and later elements
/// carry the irrational directions. Generators are processed in sorted
/// order, so the result does not depend on the order they were passed in.
inline LabelModule build_label_module(std::span<const double> measures, double tol = 1e-10, int coeff_bound = 50) {
  if (measures.empty()) throw InvalidArgument("build_label_module: no generators");
  bool has_one = false;
  for (double m : measures) {
    if (!(m > 0 && m <= 1 + tol)) throw InvalidArgument("build_label_module: generators must lie in (0,1]");
    has_one |= std::fabs(m - 1.0) <= tol;
  }
  if (!has_one) throw InvalidArgument("build_label_module: the total measure 1 must be among the generators");

  std::vector<std::size_t> order(measures.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return measures[a] > measures[b]; });

  std::vector<long double> qbasis = {1.0L};
  std::vector<detail::Relation> coords(measures.size());
  for (std::size_t idx : order) {
    const long double g = measures[idx];
    auto rel = detail::find_relation(g, qbasis, tol, coeff_bound);
    if (!rel) {
      if (qbasis.size() >= detail::kMaxModuleRank)
        throw IrreducibleGenerator("build_label_module: generator " + std::to_string(measures[idx]) +
                                   " has no bounded integer relation with the basis");
      qbasis.push_back(g);
      for (auto& c : coords) c.num.resize(qbasis.size(), 0);
      rel = detail::Relation{1, std::vector<std::int64_t>(qbasis.size(), 0), 0};
      rel->num.back() = 1;
    }
    rel->num.resize(qbasis.size(), 0);
    coords[idx] = *rel;
  }
  const std::size_t r = qbasis.size();
  for (auto& c : coords) c.num.resize(r, 0);

  std::int64_t scale = 1;
  for (const auto& c : coords) scale = std::lcm(scale, c.den);
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& c : coords) {
    std::vector<std::int64_t> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = detail::checked_mul(c.num[j], scale / c.den);
    rows.push_back(row);
  }

  // Triangular Hermite form: pivot[c] has zeros beyond column c.
  std::vector<std::vector<std::int64_t>> pivot(r);
  std::vector<std::vector<std::int64_t>> active = rows;
  for (std::size_t col = r; col-- > 0;) {
    while (true) {
      std::size_t best = active.size();
      for (std::size_t i = 0; i < active.size(); ++i)
        if (active[i][col] != 0 && (best == active.size() || std::llabs(active[i][col]) < std::llabs(active[best][col])))
          best = i;
      if (best == active.size()) throw IrreducibleGenerator("build_label_module: rank deficiency");
      bool clean = true;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (i == best || active[i][col] == 0) continue;
        const std::int64_t f = active[i][col] / active[best][col];
        for (std::size_t j = 0; j < r; ++j) active[i][j] -= detail::checked_mul(f, active[best][j]);
        if (active[i][col] != 0) clean = false;
      }
      if (clean) {
        pivot[col] = active[best];
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        if (pivot[col][col] < 0)
          for (auto& v : pivot[col]) v = -v;
        break;
      }
    }
  }
  for (std::size_t k = 1; k < r; ++k)
    for (std::size_t j = k; j-- > 0;) {
      const std::int64_t f = detail::floor_div(pivot[k][j], pivot[j][j]);
      for (std::size_t t = 0; t <= j; ++t) pivot[k][t] -= detail::checked_mul(f, pivot[j][t]);
    }

  LabelModule mod;
  for (std::size_t k = 0; k < r; ++k) {
    long double b = 0;
    for (std::size_t j = 0; j <= k; ++j) b += static_cast<long double>(pivot[k][j]) * qbasis[j];
    mod.basis.push_back(static_cast<double>(b / static_cast<long double>(scale)));
  }
  mod.generators.assign(measures.begin(), measures.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::int64_t> rest = rows[i];
    std::vector<std::int64_t> cert(r, 0);
    for (std::size_t col = r; col-- > 0;) {
      if (rest[col] % pivot[col][col] != 0) throw IrreducibleGenerator("build_label_module: lattice reduction failed");
      cert[col] = rest[col] / pivot[col][col];
      for (std::size_t j = 0; j <= col; ++j) rest[j] -= detail::checked_mul(cert[col], pivot[col][j]);
    }
    for (auto c : cert)
      if (std::llabs(c) > coeff_bound)
        throw IrreducibleGenerator("build_label_module: certificate exceeds coefficient bound");
    if (std::fabs(mod.value(cert) - measures[i]) > tol)
      throw IrreducibleGenerator("build_label_module: certificate residual exceeds tolerance");
    mod.certificates.push_back(std::move(cert));
  }
  return mod;
}

struct Membership {
  std::vector<std::int64_t> coefficients;
  double residual = 0;
};

namespace detail {

// Exhaustive scan of |c_i| <= bound. Ranked by max|c_i|, then residual, then
// lexicographic order of c. tol < 0 disables the tolerance filter.
inline std::optional<Membership> scan_module(double x, const LabelModule& module, double tol, int bound) {
  const std::size_t r = module.rank();
  if (r == 0) throw InvalidArgument("membership: empty module");
  if (r > kMaxModuleRank) throw InvalidArgument("membership: module rank too large for exhaustive scan");
  const long double b0 = module.basis[0];
  std::optional<Membership> best;
  std::int64_t best_norm = 0;
  auto consider = [&](const std::vector<std::int64_t>& c, long double res) {
    std::int64_t norm = 0;
    for (auto v : c) norm = std::max<std::int64_t>(norm, std::llabs(v));
    if (best) {
      if (norm > best_norm) return;
      if (norm == best_norm) {
        if (res > best->residual) return;
        if (res == best->residual && !(c < best->coefficients)) return;
      }
    }
    best = Membership{c, static_cast<double>(res)};
    best_norm = norm;
  };
  std::vector<std::int64_t> c(r, 0);
  for (std::size_t j = 1; j < r; ++j) c[j] = -bound;
  while (true) {
    long double rest = x;
    for (std::size_t j = 1; j < r; ++j) rest -= static_cast<long double>(c[j]) * module.basis[j];
    const long double slack = tol < 0 ? 0.5L * b0 : static_cast<long double>(tol);
    auto lo = static_cast<std::int64_t>(std::ceil((rest - slack) / b0));
    auto hi = static_cast<std::int64_t>(std::floor((rest + slack) / b0));
    if (tol < 0) lo = hi = std::llround(rest / b0);
    lo = std::max<std::int64_t>(lo, -bound);
    hi = std::min<std::int64_t>(hi, bound);
    for (std::int64_t c0 = lo; c0 <= hi; ++c0) {
      c[0] = c0;
      const long double res = std::fabs(rest - static_cast<long double>(c0) * b0);
      if (tol < 0 || res <= tol) consider(c, res);
    }
    std::size_t j = 1;
    while (j < r && c[j] == bound) c[j++] = -bound;
    if (j >= r) break;
    ++c[j];
  }
  return best;
}

}  // namespace detail

/// Integer coefficients c with |x - sum c_i b_i| <= tol and max|c_i| <=
/// coeff_bound, choosing the smallest max|c_i|, then the smallest residual,
/// then the lexicographically smallest c. nullopt when none exists.
inline std::optional<Membership> membership(double x, const LabelModule& module, double tol, int coeff_bound = 50) {
  if (!(tol > 0)) throw InvalidArgument("membership: tol must be positive");
  return detail::scan_module(x, module, tol, coeff_bound);
}

/// Closest module element, by residual alone, within the coefficient bound.
inline Membership nearest_element(double x, const LabelModule& module, int coeff_bound = 50) {
  const std::size_t r = module.rank();
  Membership best{std::vector<std::int64_t>(r, 0), std::numeric_limits<double>::infinity()};
  std::vector<std::int64_t> c(r, 0);
  for (std::size_t j = 1; j < r; ++j) c[j] = -coeff_bound;
  while (true) {
    long double rest = x;
    for (std::size_t j = 1; j < r; ++j) rest -= static_cast<long double>(c[j]) * module.basis[j];
    c[0] = std::clamp<std::int64_t>(std::llround(rest / module.basis[0]), -coeff_bound, coeff_bound);
    const double res = static_cast<double>(std::fabs(rest - static_cast<long double>(c[0]) * module.basis[0]));
    if (res < best.residual) best = {c, res};
    std::size_t j = 1;
    while (j < r && c[j] == coeff_bound) c[j++] = -coeff_bound;
    if (j >= r) break;
    ++c[j];
  }
  return best;
}

/// Generators are b1_i * b2_j in row-major order followed by the total
/// measure 1; certificates keep that order.
inline LabelModule product_module(const LabelModule& m1, const LabelModule& m2, double tol = 1e-10, int coeff_bound = 50) {
  std::vector<double> gens;
  for (double a : m1.basis)
    for (double b : m2.basis) gens.push_back(static_cast<double>(static_cast<long double>(a) * b));
  gens.push_back(1.0);
  return build_label_module(gens, tol, coeff_bound);
}

struct ModuleScan {
  LabelModule module;
  int stabilization_depth = 0;  // first depth whose basis equals the previous depth's
  int max_depth = 0;
  bool stabilized = false;
};

namespace detail {

template <typename MeasuresAtDepth>
ModuleScan scan_depths(int max_depth, double tol, int coeff_bound, MeasuresAtDepth&& measures_at) {
  if (max_depth < 1) throw InvalidArgument("label module scan: depth must be positive");
  std::vector<double> gens = {1.0};
  ModuleScan scan;
  scan.max_depth = max_depth;
  std::optional<LabelModule> previous;
  for (int d = 1; d <= max_depth; ++d) {
    for (double m : measures_at(d)) gens.push_back(m);
    LabelModule m = build_label_module(gens, tol, coeff_bound);
    const bool same = previous && previous->same_basis(m);
    if (!same) scan.stabilization_depth = d + 1;
    else if (!scan.stabilized) scan.stabilization_depth = d;
    scan.stabilized = same;
    previous = std::move(m);
  }
  scan.module = std::move(*previous);
  if (!scan.stabilized) scan.stabilization_depth = max_depth;
  return scan;
}

}  // namespace detail

/// Label module from all occurring cylinders up to `max_depth`.
inline ModuleScan cylinder_label_module(const CutProjectScheme& scheme, int max_depth, double tol = 1e-10,
                                        int coeff_bound = 50) {
  return detail::scan_depths(max_depth, tol, coeff_bound, [&](int d) {
    std::vector<double> out;
    for (const auto& c : occurring_cylinders(scheme, static_cast<std::size_t>(d))) out.push_back(c.measure);
    return out;
  });
}

/// Label module of a periodic hull: cyclic frequencies of every word up to
/// `max_depth` in the repeated pattern.
inline ModuleScan periodic_label_module(std::string_view pattern, int max_depth = 4, double tol = 1e-10,
                                        int coeff_bound = 50) {
  if (pattern.empty()) throw InvalidArgument("periodic_label_module: empty pattern");
  const std::size_t n = pattern.size();
  auto factor = [&](std::size_t start, int d) {
    std::string w;
    for (int j = 0; j < d; ++j) w += pattern[(start + static_cast<std::size_t>(j)) % n];
    return w;
  };
  return detail::scan_depths(max_depth, tol, coeff_bound, [&](int d) {
    std::vector<std::string> words;
    for (std::size_t k = 0; k < n; ++k) words.push_back(factor(k, d));
    std::vector<double> out;
    std::vector<std::string> distinct = words;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& w : distinct)
      out.push_back(static_cast<double>(std::count(words.begin(), words.end(), w)) / static_cast<double>(n));
    return out;
  });
}

inline nlohmann::json to_json(const LabelModule& m) {
  return {{"basis", m.basis}, {"generators", m.generators}, {"certificates", m.certificates}};
}

inline LabelModule label_module_from_json(const nlohmann::json& j, double tol = 1e-10) {
  LabelModule m;
  m.basis = j.at("basis").get<std::vector<double>>();
  m.generators = j.at("generators").get<std::vector<double>>();
  m.certificates = j.at("certificates").get<std::vector<std::vector<std::int64_t>>>();
  if (m.basis.empty() || m.certificates.size() != m.generators.size())
    throw InvalidArgument("label module json: inconsistent sizes");
  for (std::size_t i = 0; i < m.generators.size(); ++i)
    if (m.certificates[i].size() != m.basis.size() || std::fabs(m.value(m.certificates[i]) - m.generators[i]) > tol)
      throw InvalidArgument("label module json: certificate does not reproduce its generator");
  return m;
}

}  // namespace gaplab
