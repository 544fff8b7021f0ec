#pragma once

// Eigenvalue counting and gap detection. The integrated density of states of
// a q-site approximant is the exact fraction (number of eigenvalues <= E)/q;
// averaging it over transversal phases is the finite-volume stand-in for the
// trace of the spectral projection.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/error.hpp"
#include "gaplab/operator.hpp"
#include "gaplab/parallel.hpp"
#include "gaplab/rational.hpp"
#include "gaplab/scheme.hpp"

namespace gaplab {

inline constexpr std::size_t kDefaultDenseLimit = 4096;

struct SpectralData {
  std::vector<double> eigenvalues;  // ascending
  std::string solver;
  double accuracy = 0;

  [[nodiscard]] std::size_t size() const { return eigenvalues.size(); }
};

struct Gap {
  double lower = 0;  // largest eigenvalue below the gap
  double upper = 0;  // smallest eigenvalue above it
  Rational ids;      // eigenvalues <= lower, over q
  std::optional<Rational> coarse_ids;  // matching gap of the smaller approximant
  double coarse_lower = 0;
  double coarse_upper = 0;
  bool persistent = false;

  [[nodiscard]] double width() const { return upper - lower; }
  [[nodiscard]] double midpoint() const { return 0.5 * (lower + upper); }
};

/// Number of eigenvalues strictly below E, from the signs of the LDL^T
/// pivots of H - E. Tiny pivots are replaced by -pivmin as in LAPACK dstebz.
inline std::size_t sturm_count(const ApproximantOperator& op, double energy) {
  if (op.boundary() != Boundary::open) throw InvalidArgument("sturm_count: operator must be tridiagonal (open boundary)");
  const auto& a = op.diagonal();
  const auto& b = op.offdiagonal();
  double max_b2 = 1.0;
  for (double t : b) max_b2 = std::max(max_b2, t * t);
  const double pivmin = DBL_MIN * max_b2;
  std::size_t count = 0;
  double d = a[0] - energy;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < a.size(); ++i) {
    d = (a[i] - energy) - (b[i - 1] * b[i - 1]) / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

/// Dense symmetric matrix of the operator (corner bond included).
inline Eigen::MatrixXd dense_matrix(const ApproximantOperator& op) {
  const auto q = static_cast<Eigen::Index>(op.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index k = 0; k < q; ++k) h(k, k) = op.diagonal()[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k + 1 < q; ++k) {
    h(k, k + 1) = op.offdiagonal()[static_cast<std::size_t>(k)];
    h(k + 1, k) = h(k, k + 1);
  }
  if (op.boundary() == Boundary::periodic) {
    h(q - 1, 0) += op.corner();
    h(0, q - 1) = h(q - 1, 0);
  }
  return h;
}

inline SpectralData dense_eigenvalues(const ApproximantOperator& op, std::size_t dense_limit = kDefaultDenseLimit) {
  if (op.size() > dense_limit)
    throw SizeLimitExceeded("eigenvalues: size " + std::to_string(op.size()) + " exceeds dense limit " +
                            std::to_string(dense_limit));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(op), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalues: dense solver failed to converge");
  SpectralData out;
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.solver = "dense-selfadjoint";
  out.accuracy = 1e-8 * std::max(1.0, op.norm_bound());
  return out;
}

/// k-th eigenvalue (0-based) of an open chain, bracketed by Sturm counts.
inline double bisect_eigenvalue(const ApproximantOperator& op, std::size_t k, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(op, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

/// All eigenvalues, ascending. Open chains use bisection at any size;
/// periodic ones go through the dense solver up to `dense_limit`.
inline SpectralData eigenvalues(const ApproximantOperator& op, std::size_t dense_limit = kDefaultDenseLimit,
                                unsigned threads = 1) {
  if (op.boundary() == Boundary::periodic) return dense_eigenvalues(op, dense_limit);
  const auto [g_lo, g_hi] = op.gershgorin();
  const double scale = std::max(1.0, op.norm_bound());
  const double tol = 1e-12 * scale;
  SpectralData out;
  out.eigenvalues.resize(op.size());
  parallel_for(op.size(), threads, [&](std::size_t k) {
    out.eigenvalues[k] = bisect_eigenvalue(op, k, g_lo - tol, g_hi + tol, tol);
  });
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.solver = "sturm-bisection";
  out.accuracy = 1e-10 * scale;
  return out;
}

inline std::size_t count_at_most(const SpectralData& spec, double energy) {
  return static_cast<std::size_t>(std::upper_bound(spec.eigenvalues.begin(), spec.eigenvalues.end(), energy) -
                                  spec.eigenvalues.begin());
}

inline Rational ids(const SpectralData& spec, double energy) {
  return {static_cast<std::int64_t>(count_at_most(spec, energy)), static_cast<std::int64_t>(spec.size())};
}

/// (eigenvalues <= E) / q.
inline Rational ids(const ApproximantOperator& op, double energy) {
  const auto q = static_cast<std::int64_t>(op.size());
  if (op.boundary() == Boundary::open)
    return {static_cast<std::int64_t>(sturm_count(op, std::nextafter(energy, HUGE_VAL))), q};
  return ids(eigenvalues(op), energy);
}

/// Spacings between distinct eigenvalue clusters that exceed `factor` times
/// the median cluster spacing. Eigenvalues closer than 1e-9 (relative to
/// the spectral radius) count as one degenerate cluster.
inline std::vector<Gap> candidate_gaps(const SpectralData& spec, double factor) {
  const auto& e = spec.eigenvalues;
  std::vector<Gap> out;
  if (e.size() < 2) return out;
  const double scale = std::max({1.0, std::fabs(e.front()), std::fabs(e.back())});
  const double merge = 1e-9 * scale;
  struct Cluster { double low, high; std::size_t end; };  // end = eigenvalues up to and including this cluster
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!clusters.empty() && e[i] - clusters.back().high <= merge) {
      clusters.back().high = e[i];
      clusters.back().end = i + 1;
    } else {
      clusters.push_back({e[i], e[i], i + 1});
    }
  }
  if (clusters.size() < 2) return out;
  std::vector<double> spacing(clusters.size() - 1);
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i) spacing[i] = clusters[i + 1].low - clusters[i].high;
  std::vector<double> sorted = spacing;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  double median = *mid;
  if (sorted.size() % 2 == 0) {
    const double below = *std::max_element(sorted.begin(), mid);
    median = 0.5 * (median + below);
  }
  const auto q = static_cast<std::int64_t>(e.size());
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
    if (spacing[i] > factor * median) {
      Gap g;
      g.lower = clusters[i].high;
      g.upper = clusters[i + 1].low;
      g.ids = Rational(static_cast<std::int64_t>(clusters[i].end), q);
      out.push_back(g);
    }
  }
  return out;
}

/// Candidate gaps of `spec` that reappear in the larger approximant
/// `next_spec`: an overlapping candidate whose IDS differs by at most 1/q.
/// Matching is one-to-one, nearest IDS first. Edges and IDS come from the
/// larger system; coarse_ids keeps the smaller system's value.
inline std::vector<Gap> detect_gaps(const SpectralData& spec, const SpectralData& next_spec, double factor = 10.0) {
  const auto coarse = candidate_gaps(spec, factor);
  auto fine = candidate_gaps(next_spec, factor);
  std::vector<bool> used(fine.size(), false);
  std::vector<Gap> out;
  for (const Gap& g : coarse) {
    std::optional<std::size_t> best;
    int128 best_diff = 0;
    for (std::size_t j = 0; j < fine.size(); ++j) {
      const Gap& f = fine[j];
      if (used[j] || !(g.lower < f.upper && f.lower < g.upper)) continue;
      // |a/b - c/d| <= 1/b  <=>  |a d - c b| <= d
      int128 diff = static_cast<int128>(g.ids.num) * f.ids.den - static_cast<int128>(f.ids.num) * g.ids.den;
      if (diff < 0) diff = -diff;
      if (diff > f.ids.den) continue;
      if (!best || diff < best_diff) {
        best = j;
        best_diff = diff;
      }
    }
    if (!best) continue;
    used[*best] = true;
    Gap p = fine[*best];
    p.coarse_ids = g.ids;
    p.coarse_lower = g.lower;
    p.coarse_upper = g.upper;
    p.persistent = true;
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Gap& a, const Gap& b) { return a.lower < b.lower; });
  return out;
}

struct PhaseAverage {
  double mean = 0;
  double max_deviation = 0;  // max_j |ids(theta_j) - ids(theta_0)|
  std::vector<Rational> samples;
};

inline ApproximantOperator phase_operator(const CutProjectScheme& scheme, const Model& model, long double theta,
                                          std::size_t q, Boundary boundary) {
  const CutProjectScheme s = scheme.with_phase(theta);
  if (boundary == Boundary::open) return assemble(mechanical_word(s, q), model, Boundary::open);
  const Convergent c = convergent_with_denominator(s.slope, static_cast<std::int64_t>(q));
  return assemble(approximant_word(s, c), model, Boundary::periodic);
}

/// ids at every energy for phases theta_j = j / n_phases; result[j][e].
inline std::vector<std::vector<Rational>> phase_ensemble_ids(const CutProjectScheme& scheme, const Model& model,
                                                             std::span<const double> energies, int n_phases,
                                                             std::size_t q, Boundary boundary = Boundary::open,
                                                             unsigned threads = 1) {
  if (n_phases < 2) throw InvalidArgument("transversal average: need at least 2 phases");
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(n_phases));
  parallel_for(out.size(), threads, [&](std::size_t j) {
    const auto op = phase_operator(scheme, model, static_cast<long double>(j) / n_phases, q, boundary);
    if (boundary == Boundary::open) {
      for (double e : energies) out[j].push_back(ids(op, e));
    } else {
      const auto spec = eigenvalues(op);
      for (double e : energies) out[j].push_back(ids(spec, e));
    }
  });
  return out;
}

inline PhaseAverage summarize_phases(std::span<const Rational> samples) {
  PhaseAverage avg;
  avg.samples.assign(samples.begin(), samples.end());
  long double sum = 0;
  for (const auto& s : samples) {
    sum += s.value();
    avg.max_deviation = std::max(avg.max_deviation, std::fabs(s.value() - samples[0].value()));
  }
  avg.mean = static_cast<double>(sum / static_cast<long double>(samples.size()));
  return avg;
}

inline PhaseAverage transversal_average_ids(const CutProjectScheme& scheme, const Model& model, double energy,
                                            int n_phases, std::size_t q, Boundary boundary = Boundary::open,
                                            unsigned threads = 1) {
  const double e[] = {energy};
  const auto table = phase_ensemble_ids(scheme, model, e, n_phases, q, boundary, threads);
  std::vector<Rational> samples;
  for (const auto& row : table) samples.push_back(row[0]);
  return summarize_phases(samples);
}

/// #{(i,j): e_i + f_j <= E}, by a two-pointer sweep over sorted spectra.
inline std::int64_t sum_count_at_most(const SpectralData& a, const SpectralData& b, double energy) {
  std::int64_t count = 0;
  std::size_t j = b.size();
  for (double e : a.eigenvalues) {
    while (j > 0 && e + b.eigenvalues[j - 1] > energy) --j;
    count += static_cast<std::int64_t>(j);
  }
  return count;
}

inline Rational ids_2d(const SpectralData& a, const SpectralData& b, double energy) {
  return {sum_count_at_most(a, b, energy), static_cast<std::int64_t>(a.size() * b.size())};
}

inline Rational ids_2d(const SeparableOperator2D& op, double energy) {
  return ids_2d(eigenvalues(op.first), eigenvalues(op.second), energy);
}

/// Sorted list of all pairwise sums e_i + f_j.
inline SpectralData sum_spectrum(const SpectralData& a, const SpectralData& b) {
  SpectralData out;
  out.eigenvalues.reserve(a.size() * b.size());
  for (double x : a.eigenvalues)
    for (double y : b.eigenvalues) out.eigenvalues.push_back(x + y);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.solver = "sum(" + a.solver + "," + b.solver + ")";
  out.accuracy = a.accuracy + b.accuracy;
  return out;
}

struct IdsPoint {
  double energy;
  Rational ids;
};

inline std::vector<IdsPoint> ids_curve(const ApproximantOperator& op, std::span<const double> grid) {
  std::vector<IdsPoint> out;
  out.reserve(grid.size());
  if (op.boundary() == Boundary::open) {
    for (double e : grid) out.push_back({e, ids(op, e)});
  } else {
    const auto spec = eigenvalues(op);
    for (double e : grid) out.push_back({e, ids(spec, e)});
  }
  return out;
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline void write_ids_csv(std::ostream& os, std::span<const IdsPoint> curve) {
  os << "E,ids\n";
  for (const auto& p : curve) os << format_real(p.energy) << ',' << format_real(p.ids.value()) << '\n';
}

inline void write_eigenvalues_csv(std::ostream& os, const SpectralData& spec) {
  os << "index,E\n";
  for (std::size_t i = 0; i < spec.size(); ++i) os << i << ',' << format_real(spec.eigenvalues[i]) << '\n';
}

}  // namespace gaplab
