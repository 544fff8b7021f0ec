#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace gaplab {

/// Half-open interval [lo, hi) with 0 <= lo < hi <= 1.
struct Arc {
  long double lo = 0;
  long double hi = 0;
  [[nodiscard]] long double length() const { return hi - lo; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of half-open arcs on R/Z in normal form: sorted, pairwise
/// disjoint, touching arcs merged, and any arc crossing 0 split there.
/// Pieces shorter than kSliver are discarded.
class ArcSet {
 public:
  static constexpr long double kSliver = 1e-14L;

  ArcSet() = default;

  static ArcSet full() { return ArcSet({Arc{0, 1}}); }

  /// Arc [start, start + length) mod 1.
  static ArcSet arc(long double start, long double length) {
    if (length >= 1) return full();
    if (length <= 0) return {};
    const long double s = start - std::floor(start);
    const long double e = s + length;
    if (e <= 1) return ArcSet({Arc{s, e}});
    return ArcSet({Arc{s, 1}, Arc{0, e - 1}});
  }

  [[nodiscard]] ArcSet shifted(long double delta) const {
    std::vector<Arc> out;
    for (const Arc& a : arcs_) {
      const ArcSet piece = arc(a.lo + delta, a.length());
      out.insert(out.end(), piece.arcs_.begin(), piece.arcs_.end());
    }
    return ArcSet(std::move(out));
  }

  [[nodiscard]] ArcSet complement() const {
    std::vector<Arc> out;
    long double cursor = 0;
    for (const Arc& a : arcs_) {
      if (a.lo > cursor) out.push_back({cursor, a.lo});
      cursor = a.hi;
    }
    if (cursor < 1) out.push_back({cursor, 1});
    return ArcSet(std::move(out));
  }

  [[nodiscard]] ArcSet intersect(const ArcSet& other) const {
    std::vector<Arc> out;
    std::size_t i = 0, j = 0;
    while (i < arcs_.size() && j < other.arcs_.size()) {
      const Arc& a = arcs_[i];
      const Arc& b = other.arcs_[j];
      const long double lo = std::max(a.lo, b.lo);
      const long double hi = std::min(a.hi, b.hi);
      if (lo < hi) out.push_back({lo, hi});
      (a.hi < b.hi) ? ++i : ++j;
    }
    return ArcSet(std::move(out));
  }

  [[nodiscard]] ArcSet unite(const ArcSet& other) const {
    std::vector<Arc> all = arcs_;
    all.insert(all.end(), other.arcs_.begin(), other.arcs_.end());
    return ArcSet(std::move(all));
  }

  [[nodiscard]] long double measure() const {
    long double m = 0;
    for (const Arc& a : arcs_) m += a.length();
    return m;
  }

  [[nodiscard]] bool contains(long double x) const {
    x -= std::floor(x);
    return std::any_of(arcs_.begin(), arcs_.end(), [x](const Arc& a) { return a.lo <= x && x < a.hi; });
  }

  [[nodiscard]] bool empty() const { return arcs_.empty(); }
  [[nodiscard]] std::span<const Arc> arcs() const { return arcs_; }

 private:
  explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) { normalize(); }

  void normalize() {
    std::erase_if(arcs_, [](const Arc& a) { return a.hi - a.lo < kSliver; });
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    std::vector<Arc> merged;
    for (const Arc& a : arcs_) {
      if (!merged.empty() && a.lo <= merged.back().hi)
        merged.back().hi = std::max(merged.back().hi, a.hi);
      else
        merged.push_back(a);
    }
    arcs_ = std::move(merged);
  }

  std::vector<Arc> arcs_;
};

}  // namespace gaplab
