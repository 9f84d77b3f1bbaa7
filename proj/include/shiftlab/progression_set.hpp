#pragma once

#include <optional>
#include <vector>

#include "shiftlab/intset.hpp"

namespace shiftlab {

/// {first, first+step, ..., last}; last - first is a multiple of step.
struct Block {
  Index first = 0;
  Index last = 0;
  Index step = 1;

  Index count() const { return (last - first) / step + 1; }
  bool contains(Index x) const { return first <= x && x <= last && (x - first) % step == 0; }
  Index at(Index i) const { return first + i * step; }
  /// Members in [lo, hi].
  Index count(Index lo, Index hi) const;
  /// Smallest member >= x.
  std::optional<Index> ceil(Index x) const;
  bool operator==(const Block&) const = default;
};

/// Union of arithmetic-progression blocks with pairwise disjoint hulls.
///
/// Sets such as the deep E_p families reach ~1e11 with ~1e9 members, far
/// beyond a bitset; blocks keep counting and membership exact and cheap.
class ProgressionSet {
 public:
  ProgressionSet() = default;
  ProgressionSet(Window window, std::vector<Block> blocks);

  static ProgressionSet from_intset(const IntSet& s);

  const Window& window() const { return window_; }
  bool bilateral() const { return window_.bilateral(); }
  const std::vector<Block>& blocks() const { return blocks_; }

  Index size() const { return prefix_.empty() ? 0 : prefix_.back(); }
  bool empty() const { return size() == 0; }
  bool contains(Index x) const;
  Index count(Index lo, Index hi) const;
  Index count_prefix(Index n) const;

  /// k-th smallest member, 0-based.
  Index nth(Index k) const;
  std::optional<Index> next_member(Index from) const;
  Index front() const { return blocks_.front().first; }
  Index back() const { return blocks_.back().last; }

  template <class F>
  void for_each(F&& f) const {
    for (const Block& b : blocks_)
      for (Index x = b.first; x <= b.last; x += b.step) f(x);
  }

  std::vector<Index> members() const;
  /// Bitset copy on the set's window; refuses windows wider than max_width.
  IntSet to_intset(Index max_width = Index{1} << 32) const;

  bool operator==(const ProgressionSet& o) const { return window_ == o.window_ && blocks_ == o.blocks_; }

 private:
  Window window_;
  std::vector<Block> blocks_;
  std::vector<Index> prefix_;  // prefix_[i] = members in blocks [0, i)
};

/// Three-valued result of a difference search.
struct HitResult {
  enum class Kind { none, hit, unknown };
  Kind kind = Kind::none;
  Index x = 0;  // witness: x in X, y in Y with y - x in the range
  Index y = 0;
};

/// Is there x in X, y in Y with dlo <= y - x <= dhi? Exact (extended gcd on
/// each difference value, or enumeration of the smaller block) within `budget`
/// elementary steps; `unknown` only when both strategies exceed it.
HitResult block_difference_hits(const Block& X, const Block& Y, Index dlo, Index dhi, Index budget = Index{1} << 24);

HitResult difference_hits(const ProgressionSet& X, const ProgressionSet& Y, Index dlo, Index dhi,
                          Index budget = Index{1} << 24);

}  // namespace shiftlab
