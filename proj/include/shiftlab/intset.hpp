#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shiftlab/window.hpp"

namespace shiftlab {

/// Finite-window subset of Z backed by a bitset with a rank directory.
///
/// Immutable once built. Counting over any subwindow is O(1) through the
/// per-word prefix popcounts, so density scans over 1e7-wide windows stay
/// cheap. The window must contain 0 (bilateral: lo < 0 <= hi, unilateral:
/// lo == 0).
class IntSet {
 public:
  IntSet() : IntSet(Window{0, 0}) {}
  explicit IntSet(Window window);

  /// Members outside the window raise WindowError.
  static IntSet from_members(Window window, std::span<const Index> members);

  template <class Pred>
  static IntSet from_predicate(Window window, Pred&& pred) {
    IntSet s(window);
    for (Index x = window.lo; x <= window.hi; ++x) {
      if (pred(x)) s.set_bit(x - window.lo);
    }
    s.build_rank();
    return s;
  }

  const Window& window() const { return window_; }
  bool bilateral() const { return window_.bilateral(); }

  bool contains(Index x) const {
    if (!window_.contains(x)) return false;
    const auto i = static_cast<std::uint64_t>(x - window_.lo);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  /// Number of members in [lo, hi] intersected with the window.
  Index count(Index lo, Index hi) const;
  Index size() const { return rank_.empty() ? 0 : rank_.back(); }
  bool empty() const { return size() == 0; }

  /// #A(n): members with |a| <= n (bilateral) or 0 <= a <= n (unilateral).
  Index count_prefix(Index n) const;

  /// Smallest member >= from, if any.
  std::optional<Index> next_member(Index from) const;

  std::vector<Index> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(window_.lo + static_cast<Index>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  /// Members dropped at the window edge when this set was produced by a shift.
  Index truncated() const { return truncated_; }

  /// Same window, each member moved by -k (x in result iff x + k in *this).
  IntSet shifted(Index k) const;

  IntSet complement() const;

  friend IntSet operator&(const IntSet& a, const IntSet& b);
  friend IntSet operator|(const IntSet& a, const IntSet& b);
  friend bool operator==(const IntSet& a, const IntSet& b) {
    return a.window_ == b.window_ && a.words_ == b.words_;
  }

  /// Restrict (or pad) to another window containing 0.
  IntSet rewindowed(Window w) const;

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  friend class IntSetBuilder;
  void set_bit(Index i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  void build_rank();
  Index rank(Index i) const;  // members with bit index < i

  Window window_;
  std::vector<std::uint64_t> words_;
  std::vector<Index> rank_;  // rank_[w] = members in words [0, w); size words+1
  Index truncated_ = 0;
};

/// Mutable accumulator for IntSet; used by scans that discover members in order.
class IntSetBuilder {
 public:
  explicit IntSetBuilder(Window window) : set_(window) {}
  void insert(Index x) {
    if (!set_.window_.contains(x)) throw WindowError("member " + std::to_string(x) + " outside " + to_string(set_.window_));
    set_.set_bit(x - set_.window_.lo);
  }
  void merge(const IntSetBuilder& other);
  IntSet build() && {
    set_.build_rank();
    return std::move(set_);
  }

 private:
  IntSet set_;
};

/// #A(n); throws WindowError when n is outside the window's prefix range.
inline Index count_prefix(const IntSet& a, Index n) { return a.count_prefix(n); }

/// {x in window : x = offset mod b}. b <= 0 raises ArgumentError.
IntSet make_ap(Index b, Index offset, Window window);

/// Union of integer intervals [lo, hi], clipped to the window.
IntSet make_interval_union(std::span<const std::pair<Index, Index>> intervals, Window window);

/// Result(x) = A(x + k) on the same window; elements pushed out are counted in truncated().
inline IntSet shift_set(const IntSet& a, Index k) { return a.shifted(k); }

/// Largest distance between consecutive members inside `sub`, counting the
/// virtual neighbours sub.lo - 1 and sub.hi + 1. nullopt means no member
/// (an infinite gap).
std::optional<Index> max_gap(const IntSet& a, Window sub);

}  // namespace shiftlab
