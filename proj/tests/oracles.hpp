#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's numerical code: these are deliberately plain, slow versions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> fibonacci(int n) {
  std::vector<std::uint64_t> f = {0, 1};
  while (static_cast<int>(f.size()) <= n) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return f;
}

inline double golden() { return (std::sqrt(5.0) - 1.0) / 2.0; }

// S_1 = "A", S_2 = "AB", S_n = S_{n-1} S_{n-2}.
inline std::string fibonacci_word(std::size_t len) {
  std::string a = "A", b = "AB";
  while (b.size() < len) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b.substr(0, len);
}

using Matrix = std::vector<std::vector<double>>;

inline Matrix tridiagonal(const std::vector<double>& d, const std::vector<double>& e, double corner = 0) {
  const std::size_t n = d.size();
  Matrix a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = d[i];
  for (std::size_t i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = e[i];
  if (corner != 0 && n > 1) {
    a[0][n - 1] += corner;
    a[n - 1][0] = a[0][n - 1];
  }
  return a;
}

// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::size_t count_below(const std::vector<double>& ev, double e) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [e](double x) { return x < e; }));
}

inline std::size_t count_at_most(const std::vector<double>& ev, double e) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [e](double x) { return x <= e; }));
}

inline std::size_t sum_count_at_most(const std::vector<double>& a, const std::vector<double>& b, double e) {
  std::size_t n = 0;
  for (double x : a)
    for (double y : b) n += (x + y <= e);
  return n;
}

// Free open chain of q sites, unit hopping: 2 cos(pi k / (q+1)).
inline std::vector<double> free_open_spectrum(std::size_t q) {
  std::vector<double> ev;
  for (std::size_t k = 1; k <= q; ++k) ev.push_back(2 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(q + 1)));
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::vector<double> free_cycle_spectrum(std::size_t q) {
  std::vector<double> ev;
  for (std::size_t k = 0; k < q; ++k) ev.push_back(2 * std::cos(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q)));
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double free_ids(double e) { return std::acos(-e / 2) / std::numbers::pi; }

// Smallest max(|m|,|n|), then residual, then (m,n) lexicographic, over
// |m|,|n| <= bound with |x - m - n a| <= tol.
inline std::optional<std::pair<long, long>> golden_membership(double x, double a, double tol, long bound) {
  std::optional<std::pair<long, long>> best;
  long best_norm = 0;
  double best_res = 0;
  for (long m = -bound; m <= bound; ++m)
    for (long n = -bound; n <= bound; ++n) {
      const double res = std::fabs(x - static_cast<double>(m) - static_cast<double>(n) * a);
      if (res > tol) continue;
      const long norm = std::max(std::labs(m), std::labs(n));
      const bool better = !best || norm < best_norm || (norm == best_norm && res < best_res) ||
                          (norm == best_norm && res == best_res && std::pair(m, n) < *best);
      if (better) {
        best = std::pair(m, n);
        best_norm = norm;
        best_res = res;
      }
    }
  return best;
}

// i/q = m + n p/q exactly, with |n| <= q/2.
inline std::pair<long, long> fibonacci_count_label(long i, long p, long q) {
  long n = 0;
  for (long t = 0; t < q; ++t)
    if ((t * p) % q == ((i % q) + q) % q) {
      n = t;
      break;
    }
  if (n > q / 2) n -= q;
  return {(i - n * p) / q, n};
}

// Label of #{e_i + f_j <= E}/q^2 over {1, a} with a^2 = 1 - a, by direct
// run decomposition, for two Fibonacci factors with the same convergent.
inline std::pair<long, long> fibonacci_sum_label(const std::vector<double>& e, const std::vector<double>& f, double E,
                                                 long p, long q) {
  std::vector<long> c;
  for (double x : e) c.push_back(static_cast<long>(count_at_most(f, E - x)));
  long A = 0, B = 0;
  std::size_t i = 0;
  while (i < c.size()) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    const auto l2 = fibonacci_count_label(c[i], p, q);
    const auto la = fibonacci_count_label(static_cast<long>(i), p, q);
    const auto lb = fibonacci_count_label(static_cast<long>(j), p, q);
    const long d0 = lb.first - la.first, d1 = lb.second - la.second;
    // (u + v a)(s + t a) = us + vt + (ut + vs - vt) a
    A += d0 * l2.first + d1 * l2.second;
    B += d0 * l2.second + d1 * l2.first - d1 * l2.second;
    i = j;
  }
  return {A, B};
}

}  // namespace oracle
