#pragma once

// Tight-binding approximants of H = -Laplacian + V on a finite chain. Units
// put the kinetic prefactor and lattice constant at 1, so a free bond has
// hopping 1 and the coupling lambda is the only energy scale.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gaplab/error.hpp"
#include "gaplab/scheme.hpp"

namespace gaplab {

enum class Boundary { open, periodic };

inline const char* to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

/// V_k = lambda on A sites, 0 on B sites; unit hoppings.
struct OnsiteModel {
  double lambda = 0;
};

/// Zero potential; bond k (between sites k and k+1) reads letter k.
struct OffdiagonalModel {
  double t_a = 1;
  double t_b = 1;
};

using Model = std::variant<OnsiteModel, OffdiagonalModel>;

inline std::string describe(const Model& m) {
  if (const auto* on = std::get_if<OnsiteModel>(&m)) return "onsite(lambda=" + std::to_string(on->lambda) + ")";
  const auto& off = std::get<OffdiagonalModel>(m);
  return "offdiagonal(t_a=" + std::to_string(off.t_a) + ", t_b=" + std::to_string(off.t_b) + ")";
}

/// Symmetric real operator on q sites: tridiagonal, plus a corner bond
/// between sites q-1 and 0 when the boundary is periodic.
class ApproximantOperator {
 public:
  ApproximantOperator(std::vector<double> diagonal, std::vector<double> offdiagonal, Boundary boundary,
                      double corner = 0, Model model = OnsiteModel{}, std::string source = {})
      : diagonal_(std::move(diagonal)),
        offdiagonal_(std::move(offdiagonal)),
        corner_(corner),
        boundary_(boundary),
        model_(model),
        source_(std::move(source)) {
    if (diagonal_.empty()) throw InvalidArgument("operator: size must be positive");
    if (offdiagonal_.size() + 1 != diagonal_.size()) throw InvalidArgument("operator: need q-1 hoppings");
    for (double t : offdiagonal_)
      if (!(t > 0)) throw InvalidArgument("operator: hoppings must be positive");
    if (boundary_ == Boundary::periodic) {
      if (diagonal_.size() < 2) throw InvalidArgument("operator: periodic boundary needs at least 2 sites");
      if (!(corner_ > 0)) throw InvalidArgument("operator: corner hopping must be positive");
    } else {
      corner_ = 0;
    }
  }

  [[nodiscard]] std::size_t size() const { return diagonal_.size(); }
  [[nodiscard]] const std::vector<double>& diagonal() const { return diagonal_; }
  [[nodiscard]] const std::vector<double>& offdiagonal() const { return offdiagonal_; }
  [[nodiscard]] double corner() const { return corner_; }
  [[nodiscard]] Boundary boundary() const { return boundary_; }
  [[nodiscard]] const Model& model() const { return model_; }
  [[nodiscard]] const std::string& source() const { return source_; }

  [[nodiscard]] double max_hopping() const {
    double t = corner_;
    for (double b : offdiagonal_) t = std::max(t, b);
    return t;
  }

  /// [min V - 2 max t, max V + 2 max t]; contains the whole spectrum.
  [[nodiscard]] std::pair<double, double> gershgorin() const {
    const auto [lo, hi] = std::minmax_element(diagonal_.begin(), diagonal_.end());
    const double t = max_hopping();
    return {*lo - 2 * t, *hi + 2 * t};
  }

  [[nodiscard]] double norm_bound() const {
    const auto [lo, hi] = gershgorin();
    return std::max(std::fabs(lo), std::fabs(hi));
  }

  [[nodiscard]] double trace() const {
    double s = 0;
    for (double d : diagonal_) s += d;
    return s;
  }

 private:
  std::vector<double> diagonal_;
  std::vector<double> offdiagonal_;
  double corner_ = 0;
  Boundary boundary_;
  Model model_;
  std::string source_;
};

inline ApproximantOperator assemble_onsite(const QuasiWord& word, double lambda, Boundary boundary) {
  if (word.size() < 2) throw InvalidArgument("assemble_onsite: word needs at least 2 letters");
  std::vector<double> diag(word.size());
  for (std::size_t k = 0; k < word.size(); ++k) diag[k] = word.letters[k] == 'A' ? lambda : 0.0;
  return {std::move(diag), std::vector<double>(word.size() - 1, 1.0), boundary, 1.0, OnsiteModel{lambda},
          to_string(word.provenance)};
}

inline ApproximantOperator assemble_offdiagonal(const QuasiWord& word, double t_a, double t_b, Boundary boundary) {
  if (!(t_a > 0 && t_b > 0)) throw InvalidArgument("assemble_offdiagonal: hoppings must be positive");
  if (word.size() < 2) throw InvalidArgument("assemble_offdiagonal: word needs at least 2 letters");
  const std::size_t q = word.size();
  auto hop = [&](std::size_t k) { return word.letters[k] == 'A' ? t_a : t_b; };
  std::vector<double> off(q - 1);
  for (std::size_t k = 0; k + 1 < q; ++k) off[k] = hop(k);
  return {std::vector<double>(q, 0.0), std::move(off), boundary, hop(q - 1), OffdiagonalModel{t_a, t_b},
          to_string(word.provenance)};
}

inline ApproximantOperator assemble(const QuasiWord& word, const Model& model, Boundary boundary) {
  if (const auto* on = std::get_if<OnsiteModel>(&model)) return assemble_onsite(word, on->lambda, boundary);
  const auto& off = std::get<OffdiagonalModel>(model);
  return assemble_offdiagonal(word, off.t_a, off.t_b, boundary);
}

/// H1 (x) I + I (x) H2, kept factored.
struct SeparableOperator2D {
  ApproximantOperator first;
  ApproximantOperator second;
  [[nodiscard]] std::size_t size() const { return first.size() * second.size(); }
};

inline SeparableOperator2D kron_sum(ApproximantOperator op1, ApproximantOperator op2) {
  return {std::move(op1), std::move(op2)};
}

/// Coordinate listing, 1-indexed, lower triangle only.
inline void write_matrix_market(std::ostream& os, const ApproximantOperator& op) {
  const std::size_t q = op.size();
  struct Entry { std::size_t row, col; double value; };
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < q; ++k) entries.push_back({k + 1, k + 1, op.diagonal()[k]});
  for (std::size_t k = 0; k + 1 < q; ++k) entries.push_back({k + 2, k + 1, op.offdiagonal()[k]});
  if (op.boundary() == Boundary::periodic) {
    if (q == 2)
      entries.back().value += op.corner();
    else
      entries.push_back({q, 1, op.corner()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::pair(a.col, a.row) < std::pair(b.col, b.row); });
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << q << ' ' << q << ' ' << entries.size() << '\n';
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%.15g", e.value);
    os << e.row << ' ' << e.col << ' ' << buf << '\n';
  }
}

}  // namespace gaplab
