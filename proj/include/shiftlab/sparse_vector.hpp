#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "shiftlab/log_real.hpp"
#include "shiftlab/window.hpp"

namespace shiftlab {

/// Norm of the ambient sequence space: ℓ^p (p >= 1) or c₀ with the sup norm.
struct Space {
  enum class Kind { lp, c0 };
  Kind kind = Kind::c0;
  double p = 1.0;

  static Space c0() { return {Kind::c0, 1.0}; }
  static Space lp(double p) {
    if (!(p >= 1.0)) throw ArgumentError("l^p needs p >= 1");
    return {Kind::lp, p};
  }
  bool operator==(const Space&) const = default;
};

/// Finitely supported sequence; entries sorted by index, no stored zeros.
template <class Scalar>
class SparseVector {
 public:
  using Entry = std::pair<Index, Scalar>;

  SparseVector() = default;
  explicit SparseVector(Space space) : space_(space) {}

  /// Duplicate indices raise ArgumentError; zero coefficients are dropped.
  static SparseVector from_entries(std::vector<Entry> entries, Space space = Space::c0()) {
    SparseVector v(space);
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].first == entries[i - 1].first) {
        throw ArgumentError("duplicate coordinate " + std::to_string(entries[i].first));
      }
    }
    std::erase_if(entries, [](const Entry& e) { return ScalarTraits<Scalar>::is_zero(e.second); });
    v.entries_ = std::move(entries);
    return v;
  }

  static SparseVector unit(Index k, Space space = Space::c0()) { return from_entries({{k, Scalar(1.0)}}, space); }

  const Space& space() const { return space_; }
  void set_space(Space s) { space_ = s; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Index min_index() const { return entries_.front().first; }
  Index max_index() const { return entries_.back().first; }

  Scalar operator[](Index k) const {
    auto it = find(k);
    return (it != entries_.end() && it->first == k) ? it->second : Scalar(0.0);
  }

  void set(Index k, Scalar v) {
    auto it = find(k);
    const bool present = it != entries_.end() && it->first == k;
    if (ScalarTraits<Scalar>::is_zero(v)) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      entries_.insert(it, {k, v});
    }
  }

  friend SparseVector operator+(const SparseVector& a, const SparseVector& b) { return combine(a, b, 1.0); }
  friend SparseVector operator-(const SparseVector& a, const SparseVector& b) { return combine(a, b, -1.0); }
  friend SparseVector operator*(double s, const SparseVector& a) {
    SparseVector out(a.space_);
    if (s == 0.0) return out;
    out.entries_ = a.entries_;
    for (auto& e : out.entries_) e.second = Scalar(s) * e.second;
    return out;
  }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

 private:
  auto find(Index k) const {
    return std::lower_bound(entries_.begin(), entries_.end(), k, [](const Entry& e, Index v) { return e.first < v; });
  }
  auto find(Index k) {
    return std::lower_bound(entries_.begin(), entries_.end(), k, [](const Entry& e, Index v) { return e.first < v; });
  }

  static SparseVector combine(const SparseVector& a, const SparseVector& b, double sb) {
    SparseVector out(a.space_);
    std::size_t i = 0, j = 0;
    auto push = [&](Index k, Scalar v) {
      if (!ScalarTraits<Scalar>::is_zero(v)) out.entries_.emplace_back(k, v);
    };
    while (i < a.entries_.size() || j < b.entries_.size()) {
      if (j == b.entries_.size() || (i < a.entries_.size() && a.entries_[i].first < b.entries_[j].first)) {
        push(a.entries_[i].first, a.entries_[i].second);
        ++i;
      } else if (i == a.entries_.size() || b.entries_[j].first < a.entries_[i].first) {
        push(b.entries_[j].first, Scalar(sb) * b.entries_[j].second);
        ++j;
      } else {
        push(a.entries_[i].first, a.entries_[i].second + Scalar(sb) * b.entries_[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  Space space_;
  std::vector<Entry> entries_;
};

using SparseVec = SparseVector<double>;
using LogSparseVec = SparseVector<LogReal>;

/// log2 of the norm in the vector's space; -inf for the zero vector.
template <class Scalar>
double log2_norm(const SparseVector<Scalar>& x) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : x.entries()) top = std::max(top, ScalarTraits<Scalar>::log2_abs(v));
  if (x.space().kind == Space::Kind::c0 || x.empty()) return top;
  const double p = x.space().p;
  double acc = 0.0;
  for (const auto& [k, v] : x.entries()) acc += std::exp2(p * (ScalarTraits<Scalar>::log2_abs(v) - top));
  return top + std::log2(acc) / p;
}

template <class Scalar>
double norm(const SparseVector<Scalar>& x) {
  return std::exp2(log2_norm(x));
}

template <class To, class From>
SparseVector<To> convert(const SparseVector<From>& x) {
  if constexpr (std::is_same_v<To, From>) return x;
  std::vector<std::pair<Index, To>> out;
  out.reserve(x.size());
  for (const auto& [k, v] : x.entries()) {
    if constexpr (std::is_same_v<To, LogReal>) {
      out.emplace_back(k, LogReal(ScalarTraits<From>::to_double(v)));
    } else {
      out.emplace_back(k, ScalarTraits<From>::to_double(v));
    }
  }
  return SparseVector<To>::from_entries(std::move(out), x.space());
}

}  // namespace shiftlab
