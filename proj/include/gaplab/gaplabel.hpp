#pragma once

// Gap labels: matching the IDS value of each persistent gap against the
// label module, and the end-to-end verification runs built on top of it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "gaplab/error.hpp"
#include "gaplab/parallel.hpp"
#include "gaplab/rational.hpp"
#include "gaplab/spectrum.hpp"
#include "gaplab/system.hpp"
#include "gaplab/transversal.hpp"
#include "json.hpp"

namespace gaplab {

struct GapLabel {
  Gap gap;
  std::vector<std::int64_t> coefficients;
  double residual = 0;
  bool stable = false;
};

struct UnlabelledGap {
  Gap gap;
  Membership nearest;  // closest module element within the coefficient bound
};

using LabelOutcome = std::variant<GapLabel, UnlabelledGap>;

/// Membership of the gap's IDS value in the module. tol defaults to 5/q.
inline LabelOutcome label_gap(const Gap& gap, const LabelModule& module, std::optional<double> tol = std::nullopt,
                              int coeff_bound = 50) {
  const double t = tol.value_or(5.0 / static_cast<double>(gap.ids.den));
  const double x = gap.ids.value();
  if (auto m = membership(x, module, t, coeff_bound)) return GapLabel{gap, std::move(m->coefficients), m->residual, false};
  return UnlabelledGap{gap, nearest_element(x, module, coeff_bound)};
}

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::inconclusive: return 3;
  }
  return 1;
}

struct GapRecord {
  Gap gap;
  std::optional<std::vector<std::int64_t>> coefficients;  // at the larger size
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::vector<std::int64_t>> coarse_coefficients;
  double coarse_residual = std::numeric_limits<double>::quiet_NaN();
  bool tolerance_stable = false;  // same label when the tolerance shrinks tenfold
  bool stable = false;            // same label at both sizes, and tolerance-stable
  std::optional<Membership> nearest;  // unlabelled gaps only
  std::optional<double> phase_mean;
  std::optional<double> phase_max_deviation;

  [[nodiscard]] bool labelled() const { return coefficients.has_value(); }
};

struct StageError {
  std::string stage;
  std::string message;
};

struct SizeResidual {
  std::size_t size = 0;
  double max_residual = 0;
  std::size_t gaps = 0;
};

struct VerificationReport {
  std::string model;
  std::string kind;
  std::vector<std::size_t> sizes;
  LabelModule module;
  int stabilization_depth = 0;
  double tol_scale = 5;
  double tolerance = 0;  // tol_scale / q at the larger size
  int coeff_bound = 50;
  double gap_factor = 10;
  int phases = 0;
  std::vector<GapRecord> gaps;
  std::vector<SizeResidual> residual_by_size;
  Verdict verdict = Verdict::fail;
  std::vector<std::string> notes;
  std::vector<StageError> errors;

  [[nodiscard]] std::size_t labelled_count() const {
    return static_cast<std::size_t>(std::count_if(gaps.begin(), gaps.end(), [](const GapRecord& g) { return g.labelled(); }));
  }
  [[nodiscard]] std::size_t unlabelled_count() const { return gaps.size() - labelled_count(); }
  [[nodiscard]] double max_residual() const {
    double m = 0;
    for (const auto& g : gaps)
      if (g.labelled()) m = std::max(m, g.residual);
    return m;
  }
  [[nodiscard]] bool passed() const { return verdict != Verdict::fail; }
};

inline constexpr const char* kScopeNote =
    "each gap IDS is tested for membership in the label group; this checks the inclusion of gap labels in the "
    "group gap by gap and does not show that every group element labels an open gap";

inline void finalize_verdict(VerificationReport& r) {
  if (!r.errors.empty()) {
    r.verdict = Verdict::fail;
    return;
  }
  if (r.gaps.empty()) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("empty gap set: no persistent gaps, so the run is vacuous");
    return;
  }
  const bool all = std::all_of(r.gaps.begin(), r.gaps.end(), [](const GapRecord& g) { return g.labelled() && g.stable; });
  r.verdict = all ? Verdict::pass : Verdict::fail;
}

struct VerifyConfig {
  SystemSpec system;
  std::vector<std::size_t> sizes = {377, 987};
  int phases = 32;
  double tol_scale = 5;
  int coeff_bound = 50;
  double gap_factor = 10;
  int depth = 6;
  unsigned threads = 1;
  std::size_t dense_limit = kDefaultDenseLimit;
};

namespace detail {

inline std::vector<std::size_t> checked_sizes(std::vector<std::size_t> sizes) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 2) throw InvalidArgument("verify: need at least two distinct approximant sizes");
  return sizes;
}

template <typename Fn>
bool run_stage(VerificationReport& r, const char* stage, Fn&& fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    r.errors.push_back({stage, e.what()});
    return false;
  }
}

inline void label_record(GapRecord& rec, const LabelModule& module, double tol_scale, int bound) {
  const auto qf = static_cast<double>(rec.gap.ids.den);
  const double x = rec.gap.ids.value();
  const auto fine = membership(x, module, tol_scale / qf, bound);
  if (!fine) {
    rec.nearest = nearest_element(x, module, bound);
    return;
  }
  rec.coefficients = fine->coefficients;
  rec.residual = fine->residual;
  const auto fine_tight = membership(x, module, 0.1 * tol_scale / qf, bound);
  bool tight = fine_tight && fine_tight->coefficients == fine->coefficients;
  if (rec.gap.coarse_ids) {
    const auto qc = static_cast<double>(rec.gap.coarse_ids->den);
    const double xc = rec.gap.coarse_ids->value();
    const auto coarse = membership(xc, module, tol_scale / qc, bound);
    const auto coarse_tight = membership(xc, module, 0.1 * tol_scale / qc, bound);
    if (coarse) {
      rec.coarse_coefficients = coarse->coefficients;
      rec.coarse_residual = coarse->residual;
    }
    tight = tight && coarse && coarse_tight && coarse_tight->coefficients == coarse->coefficients;
  } else {
    tight = false;
  }
  rec.tolerance_stable = tight;
  rec.stable = tight && rec.coarse_coefficients == rec.coefficients;
}

}  // namespace detail

/// word -> operator -> spectra at every size -> persistent gaps between the
/// two largest -> labels -> report. Deterministic for a given config.
inline VerificationReport verify_conjecture(const VerifyConfig& cfg) {
  VerificationReport r;
  r.model = cfg.system.describe();
  r.kind = to_string(cfg.system.kind);
  r.tol_scale = cfg.tol_scale;
  r.coeff_bound = cfg.coeff_bound;
  r.gap_factor = cfg.gap_factor;
  r.notes.push_back(kScopeNote);

  std::vector<std::size_t> sizes;
  if (!detail::run_stage(r, "config", [&] { sizes = detail::checked_sizes(cfg.sizes); })) {
    finalize_verdict(r);
    return r;
  }
  r.sizes = sizes;
  r.tolerance = cfg.tol_scale / static_cast<double>(sizes.back());

  bool ok = detail::run_stage(r, "module", [&] {
    const ModuleScan scan = system_module(cfg.system, cfg.depth, 1e-10, cfg.coeff_bound);
    r.module = scan.module;
    r.stabilization_depth = scan.stabilization_depth;
    if (!scan.stabilized) r.notes.push_back("label module did not stabilize within the depth scanned");
  });

  std::vector<SpectralData> spectra(sizes.size());
  ok = ok && detail::run_stage(r, "spectrum", [&] {
    parallel_for(sizes.size(), cfg.threads, [&](std::size_t i) {
      spectra[i] = eigenvalues(system_operator(cfg.system, sizes[i]), cfg.dense_limit);
    });
  });

  ok = ok && detail::run_stage(r, "gaps", [&] {
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
      auto gaps = detect_gaps(spectra[i], spectra[i + 1], cfg.gap_factor);
      std::vector<GapRecord> recs;
      for (const auto& g : gaps) {
        GapRecord rec;
        rec.gap = g;
        detail::label_record(rec, r.module, cfg.tol_scale, cfg.coeff_bound);
        recs.push_back(std::move(rec));
      }
      SizeResidual sr{sizes[i + 1], 0, recs.size()};
      for (const auto& rec : recs)
        if (rec.labelled()) sr.max_residual = std::max(sr.max_residual, rec.residual);
      r.residual_by_size.push_back(sr);
      if (i + 2 == sizes.size()) r.gaps = std::move(recs);
    }
  });

  if (ok && cfg.system.kind == SystemKind::quasicrystal && cfg.phases >= 2 && !r.gaps.empty()) {
    r.phases = cfg.phases;
    detail::run_stage(r, "phases", [&] {
      std::vector<double> mids;
      for (const auto& g : r.gaps) mids.push_back(g.gap.midpoint());
      const auto table = phase_ensemble_ids(cfg.system.scheme, cfg.system.model, mids, cfg.phases, sizes.back(),
                                            Boundary::open, cfg.threads);
      for (std::size_t k = 0; k < r.gaps.size(); ++k) {
        std::vector<Rational> samples;
        for (const auto& row : table) samples.push_back(row[k]);
        const PhaseAverage avg = summarize_phases(samples);
        r.gaps[k].phase_mean = avg.mean;
        r.gaps[k].phase_max_deviation = avg.max_deviation;
      }
    });
  }
  finalize_verdict(r);
  return r;
}

/// Periodic pattern of length q_period (default "A" followed by B's) at
/// sizes m*P and 2m*P, m = ceil(100/P). Every gap IDS must be an exact
/// multiple of 1/P; labels are checked in integers and carry zero residual.
inline VerificationReport bloch_control(std::size_t q_period, std::string pattern = {}, double lambda = 1.0,
                                        unsigned threads = 1) {
  if (q_period == 0) throw InvalidArgument("bloch_control: period must be positive");
  if (pattern.empty()) pattern = "A" + std::string(q_period - 1, 'B');
  if (pattern.size() != q_period) throw InvalidArgument("bloch_control: pattern length must equal the period");
  VerifyConfig cfg;
  cfg.system.kind = SystemKind::periodic;
  cfg.system.pattern = pattern;
  cfg.system.model = OnsiteModel{lambda};
  cfg.system.boundary = Boundary::periodic;
  const std::size_t m = (100 + q_period - 1) / q_period;
  cfg.sizes = {m * q_period, 2 * m * q_period};
  cfg.phases = 0;
  cfg.depth = static_cast<int>(std::max<std::size_t>(2, q_period + 1));
  cfg.threads = threads;
  VerificationReport r = verify_conjecture(cfg);
  const auto P = static_cast<std::int64_t>(q_period);
  bool exact = true;
  for (auto& g : r.gaps) {
    if (!g.labelled()) continue;
    const Rational x = g.gap.ids;
    if ((x.num * P) % x.den != 0 || (*g.coefficients)[0] != x.num * P / x.den) {
      exact = false;
      continue;
    }
    g.residual = 0;
    if (g.coarse_coefficients) g.coarse_residual = 0;
  }
  if (!exact) {
    r.notes.push_back("a gap IDS is not an exact multiple of 1/" + std::to_string(q_period));
    r.verdict = Verdict::fail;
  }
  for (auto& s : r.residual_by_size) s.max_residual = exact ? 0 : s.max_residual;
  return r;
}

struct Verify2DConfig {
  SystemSpec first;
  SystemSpec second;
  std::vector<std::size_t> sizes = {55, 89};  // per factor
  double tol_scale = 5;
  int coeff_bound = 50;
  double gap_factor = 10;
  int depth = 6;
  unsigned threads = 1;
};

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, b = ((a % m) + m) % m;
  while (b != 0) {
    const std::int64_t t = g / b;
    std::tie(g, b) = std::pair(b, g - t * b);
    std::tie(x, x1) = std::pair(x1, x - t * x1);
  }
  if (g != 1) throw InvalidArgument("mod_inverse: not invertible");
  return ((x % m) + m) % m;
}

// One factor at one approximant size, with what is needed to label
// eigenvalue counts i/q exactly.
struct FactorLevel {
  LabelModule module;
  std::int64_t q = 1;
  std::optional<Convergent> convergent;  // quasicrystal factors
};

// Exact coefficients of count/q at the approximant level: count = m q + n p
// for the Fibonacci-type basis {1, slope}; count P / q for basis {1/P}.
inline std::optional<std::vector<std::int64_t>> approximant_label(std::int64_t count, const FactorLevel& f) {
  const auto& b = f.module.basis;
  if (b.size() == 1) {
    const auto P = std::llround(1.0 / b[0]);
    if (P <= 0 || std::fabs(b[0] * static_cast<double>(P) - 1.0) > 1e-12) return std::nullopt;
    if ((count * P) % f.q != 0) return std::nullopt;
    return std::vector<std::int64_t>{count * P / f.q};
  }
  if (b.size() == 2 && f.convergent && f.convergent->q == f.q && std::fabs(b[0] - 1.0) < 1e-12 &&
      std::fabs(b[1] - static_cast<double>(f.convergent->value())) < 1.0 / static_cast<double>(f.q)) {
    const std::int64_t p = f.convergent->p;
    std::int64_t n = (count % f.q) * mod_inverse(p, f.q) % f.q;
    if (n > f.q / 2) n -= f.q;
    const std::int64_t m = (count - n * p) / f.q;
    return std::vector<std::int64_t>{m, n};
  }
  return std::nullopt;
}

}  // namespace detail

/// Label of a sum-spectrum gap at energy E, assembled from exact 1D labels.
/// With c_i = #{f_j <= E - e_i}, the count is a sum over runs of equal c of
/// c * (run length); each run contributes L2(c) (x) (L1(end) - L1(start)),
/// which the product module's certificates rewrite over its basis.
inline std::optional<std::vector<std::int64_t>> factorized_label(const SpectralData& ex, const SpectralData& ey,
                                                                 double energy, const detail::FactorLevel& fx,
                                                                 const detail::FactorLevel& fy,
                                                                 const LabelModule& product) {
  const std::size_t rx = fx.module.rank(), ry = fy.module.rank();
  if (product.generators.size() != rx * ry + 1) throw InvalidArgument("factorized_label: product module mismatch");
  std::vector<std::int64_t> gen(rx * ry + 1, 0);
  std::size_t j = ey.size();
  std::size_t i = 0;
  const std::size_t nx = ex.size();
  auto count_at = [&](std::size_t k) {
    while (j > 0 && ex.eigenvalues[k] + ey.eigenvalues[j - 1] > energy) --j;
    return static_cast<std::int64_t>(j);
  };
  while (i < nx) {
    const std::int64_t c = count_at(i);
    std::size_t end = i + 1;
    while (end < nx && count_at(end) == c) ++end;
    if (c > 0) {
      const auto l2 = detail::approximant_label(c, fy);
      const auto a = detail::approximant_label(static_cast<std::int64_t>(i), fx);
      const auto b = detail::approximant_label(static_cast<std::int64_t>(end), fx);
      if (!l2 || !a || !b) return std::nullopt;
      for (std::size_t u = 0; u < rx; ++u)
        for (std::size_t v = 0; v < ry; ++v)
          gen[u * ry + v] += detail::checked_mul((*b)[u] - (*a)[u], (*l2)[v]);
    }
    i = end;
  }
  std::vector<std::int64_t> coeffs(product.rank(), 0);
  for (std::size_t g = 0; g < gen.size(); ++g)
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += detail::checked_mul(gen[g], product.certificates[g][k]);
  return coeffs;
}

/// Z^2 case: H1 (x) I + I (x) H2, both factors at each size q, sum
/// spectra of size q^2, labels in the product module. Tolerance is
/// tol_scale / q^2; no gaps is an inconclusive verdict.
inline VerificationReport verify_2d(const Verify2DConfig& cfg) {
  VerificationReport r;
  r.model = cfg.first.describe() + " (x) " + cfg.second.describe();
  r.kind = "2d";
  r.tol_scale = cfg.tol_scale;
  r.coeff_bound = cfg.coeff_bound;
  r.gap_factor = cfg.gap_factor;
  r.notes.push_back(kScopeNote);
  r.notes.push_back("2d labels are assembled from exact one-dimensional approximant labels; the coefficient bound "
                    "applies only to the fallback membership search");

  std::vector<std::size_t> sizes;
  if (!detail::run_stage(r, "config", [&] { sizes = detail::checked_sizes(cfg.sizes); })) {
    finalize_verdict(r);
    return r;
  }
  r.sizes = sizes;
  const auto q_last = static_cast<double>(sizes.back());
  r.tolerance = cfg.tol_scale / (q_last * q_last);

  LabelModule mx, my;
  bool ok = detail::run_stage(r, "module", [&] {
    const ModuleScan sx = system_module(cfg.first, cfg.depth, 1e-10, cfg.coeff_bound);
    const ModuleScan sy = system_module(cfg.second, cfg.depth, 1e-10, cfg.coeff_bound);
    mx = sx.module;
    my = sy.module;
    r.module = product_module(mx, my, 1e-10, cfg.coeff_bound);
    r.stabilization_depth = std::max(sx.stabilization_depth, sy.stabilization_depth);
  });

  const std::size_t n = sizes.size();
  std::vector<SpectralData> sx(n), sy(n), sums(n);
  ok = ok && detail::run_stage(r, "spectrum", [&] {
    parallel_for(2 * n, cfg.threads, [&](std::size_t k) {
      const bool first = k < n;
      const std::size_t i = first ? k : k - n;
      (first ? sx : sy)[i] = eigenvalues(system_operator(first ? cfg.first : cfg.second, sizes[i]));
    });
    for (std::size_t i = 0; i < n; ++i) sums[i] = sum_spectrum(sx[i], sy[i]);
  });

  auto level = [&](const SystemSpec& sys, const LabelModule& m, std::size_t q) {
    detail::FactorLevel f{m, static_cast<std::int64_t>(q), std::nullopt};
    if (sys.kind == SystemKind::quasicrystal && sys.boundary == Boundary::periodic)
      f.convergent = convergent_with_denominator(sys.scheme.slope, static_cast<std::int64_t>(q));
    return f;
  };
  auto label_at = [&](std::size_t i, double energy, const Rational& ids,
                      double& residual) -> std::optional<std::vector<std::int64_t>> {
    const double tol = cfg.tol_scale / static_cast<double>(ids.den);
    auto coeffs = factorized_label(sx[i], sy[i], energy, level(cfg.first, mx, sizes[i]),
                                   level(cfg.second, my, sizes[i]), r.module);
    if (!coeffs) {
      const auto m = membership(ids.value(), r.module, tol, cfg.coeff_bound);
      if (!m) return std::nullopt;
      coeffs = m->coefficients;
    }
    residual = std::fabs(ids.value() - r.module.value(*coeffs));
    if (residual > tol) return std::nullopt;
    return coeffs;
  };

  ok = ok && detail::run_stage(r, "gaps", [&] {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto gaps = detect_gaps(sums[i], sums[i + 1], cfg.gap_factor);
      std::vector<GapRecord> recs;
      for (const auto& g : gaps) {
        GapRecord rec;
        rec.gap = g;
        double res = 0;
        if (auto c = label_at(i + 1, g.midpoint(), g.ids, res)) {
          rec.coefficients = *c;
          rec.residual = res;
        } else {
          rec.nearest = nearest_element(g.ids.value(), r.module, cfg.coeff_bound);
        }
        double cres = 0;
        if (auto c = label_at(i, 0.5 * (g.coarse_lower + g.coarse_upper), *g.coarse_ids, cres)) {
          rec.coarse_coefficients = *c;
          rec.coarse_residual = cres;
        }
        rec.tolerance_stable = rec.labelled();
        rec.stable = rec.labelled() && rec.coarse_coefficients == rec.coefficients;
        recs.push_back(std::move(rec));
      }
      SizeResidual s{sizes[i + 1], 0, recs.size()};
      for (const auto& rec : recs)
        if (rec.labelled()) s.max_residual = std::max(s.max_residual, rec.residual);
      r.residual_by_size.push_back(s);
      if (i + 2 == n) r.gaps = std::move(recs);
    }
  });
  finalize_verdict(r);
  return r;
}

namespace detail {

inline nlohmann::json real_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace detail

inline nlohmann::json to_json(const VerificationReport& r) {
  using nlohmann::json;
  json gaps = json::array();
  json unlabelled = json::array();
  for (const auto& g : r.gaps) {
    json j = {{"E_lo", g.gap.lower},
              {"E_hi", g.gap.upper},
              {"width", g.gap.width()},
              {"ids_num", g.gap.ids.num},
              {"ids_den", g.gap.ids.den},
              {"coarse_ids_num", g.gap.coarse_ids ? json(g.gap.coarse_ids->num) : json(nullptr)},
              {"coarse_ids_den", g.gap.coarse_ids ? json(g.gap.coarse_ids->den) : json(nullptr)},
              {"coeffs", g.coefficients ? json(*g.coefficients) : json(nullptr)},
              {"residual", detail::real_or_null(g.residual)},
              {"coarse_coeffs", g.coarse_coefficients ? json(*g.coarse_coefficients) : json(nullptr)},
              {"coarse_residual", detail::real_or_null(g.coarse_residual)},
              {"tolerance_stable", g.tolerance_stable},
              {"stable", g.stable}};
    if (g.phase_mean) {
      j["phase_mean"] = *g.phase_mean;
      j["phase_max_deviation"] = *g.phase_max_deviation;
    }
    gaps.push_back(j);
    if (!g.labelled()) {
      json u = {{"E_lo", g.gap.lower}, {"E_hi", g.gap.upper}, {"ids_num", g.gap.ids.num}, {"ids_den", g.gap.ids.den}};
      if (g.nearest) {
        u["nearest_coeffs"] = g.nearest->coefficients;
        u["nearest_residual"] = detail::real_or_null(g.nearest->residual);
      }
      unlabelled.push_back(u);
    }
  }
  json by_size = json::array();
  for (const auto& s : r.residual_by_size)
    by_size.push_back({{"size", s.size}, {"gaps", s.gaps}, {"max_residual", s.max_residual}});
  json errors = json::array();
  for (const auto& e : r.errors) errors.push_back({{"stage", e.stage}, {"message", e.message}});
  return {{"model", r.model},
          {"kind", r.kind},
          {"sizes", r.sizes},
          {"module", to_json(r.module)},
          {"stabilization_depth", r.stabilization_depth},
          {"tol_scale", r.tol_scale},
          {"tolerance", r.tolerance},
          {"coeff_bound", r.coeff_bound},
          {"gap_factor", r.gap_factor},
          {"phases", r.phases},
          {"gaps", gaps},
          {"gap_count", r.gaps.size()},
          {"labelled_count", r.labelled_count()},
          {"max_residual", r.max_residual()},
          {"unlabelled", unlabelled},
          {"residual_by_size", by_size},
          {"verdict", to_string(r.verdict)},
          {"notes", r.notes},
          {"errors", errors}};
}

inline std::string format_coeffs(const std::vector<std::int64_t>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

inline void print_table(std::ostream& os, const VerificationReport& r) {
  os << "model: " << r.model << "\nsizes:";
  for (auto q : r.sizes) os << ' ' << q;
  os << "\nmodule basis:";
  for (double b : r.module.basis) os << ' ' << format_real(b);
  os << "  (stabilized at depth " << r.stabilization_depth << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "%4s %12s %12s %10s %12s %16s %11s %s\n", "#", "E_lo", "E_hi", "width", "ids",
                "label", "residual", "stable");
  os << line;
  for (std::size_t k = 0; k < r.gaps.size(); ++k) {
    const auto& g = r.gaps[k];
    const std::string ids = std::to_string(g.gap.ids.num) + "/" + std::to_string(g.gap.ids.den);
    const std::string lab = g.labelled() ? format_coeffs(*g.coefficients) : "-";
    std::snprintf(line, sizeof line, "%4zu %12.6f %12.6f %10.6f %12s %16s %11.3e %s\n", k, g.gap.lower, g.gap.upper,
                  g.gap.width(), ids.c_str(), lab.c_str(), g.labelled() ? g.residual : NAN,
                  g.stable ? "yes" : "no");
    os << line;
  }
  os << "gaps: " << r.gaps.size() << "  labelled: " << r.labelled_count() << "  max residual: "
     << format_real(r.max_residual()) << "  tolerance: " << format_real(r.tolerance) << '\n';
  for (const auto& e : r.errors) os << "error [" << e.stage << "]: " << e.message << '\n';
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << "verdict: " << to_string(r.verdict) << '\n';
}

}  // namespace gaplab
