#include "shiftlab/intset.hpp"

#include <algorithm>

namespace shiftlab {

namespace {

std::size_t word_count(const Window& w) { return static_cast<std::size_t>((w.size() + 63) / 64); }

Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Index floor_mod(Index a, Index b) { return a - floor_div(a, b) * b; }

void require_zero_anchor(const Window& w) {
  if (w.lo > 0 || w.hi < 0) throw WindowError("window " + to_string(w) + " must contain 0");
}

}  // namespace

IntSet::IntSet(Window window) : window_(window), words_(word_count(window), 0) {
  require_zero_anchor(window_);
  build_rank();
}

IntSet IntSet::from_members(Window window, std::span<const Index> members) {
  IntSetBuilder b(window);
  for (Index x : members) b.insert(x);
  return std::move(b).build();
}

void IntSet::build_rank() {
  const Index n = window_.size();
  if (n % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  rank_.assign(words_.size() + 1, 0);
  for (std::size_t w = 0; w < words_.size(); ++w) rank_[w + 1] = rank_[w] + std::popcount(words_[w]);
}

Index IntSet::rank(Index i) const {
  if (i <= 0) return 0;
  if (i >= window_.size()) return size();
  const auto w = static_cast<std::size_t>(i >> 6);
  const int b = static_cast<int>(i & 63);
  Index r = rank_[w];
  if (b) r += std::popcount(words_[w] & ((std::uint64_t{1} << b) - 1));
  return r;
}

Index IntSet::count(Index lo, Index hi) const {
  lo = std::max(lo, window_.lo);
  hi = std::min(hi, window_.hi);
  if (lo > hi) return 0;
  return rank(hi - window_.lo + 1) - rank(lo - window_.lo);
}

Index IntSet::count_prefix(Index n) const {
  if (n < 0 || n > window_.max_prefix()) {
    throw WindowError("prefix " + std::to_string(n) + " outside " + to_string(window_));
  }
  return bilateral() ? count(-n, n) : count(0, n);
}

std::optional<Index> IntSet::next_member(Index from) const {
  if (from > window_.hi) return std::nullopt;
  Index i = std::max<Index>(from - window_.lo, 0);
  auto w = static_cast<std::size_t>(i >> 6);
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (i & 63));
  while (true) {
    if (bits) return window_.lo + static_cast<Index>(w * 64 + std::countr_zero(bits));
    if (++w >= words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

std::vector<Index> IntSet::members() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Index x) { out.push_back(x); });
  return out;
}

IntSet IntSet::shifted(Index k) const {
  IntSet out(window_);
  const auto nw = static_cast<Index>(words_.size());
  const Index q = floor_div(k, 64);
  const int r = static_cast<int>(floor_mod(k, 64));
  auto word_at = [&](Index j) -> std::uint64_t { return (j >= 0 && j < nw) ? words_[j] : 0; };
  for (Index j = 0; j < nw; ++j) {
    std::uint64_t v = word_at(j + q) >> r;
    if (r) v |= word_at(j + q + 1) << (64 - r);
    out.words_[j] = v;
  }
  out.build_rank();
  out.truncated_ = size() - out.size();
  return out;
}

IntSet IntSet::complement() const {
  IntSet out(window_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  out.build_rank();
  return out;
}

IntSet operator&(const IntSet& a, const IntSet& b) {
  if (!(a.window_ == b.window_)) throw WindowError("intersection of sets on different windows");
  IntSet out(a.window_);
  for (std::size_t w = 0; w < a.words_.size(); ++w) out.words_[w] = a.words_[w] & b.words_[w];
  out.build_rank();
  return out;
}

IntSet operator|(const IntSet& a, const IntSet& b) {
  if (!(a.window_ == b.window_)) throw WindowError("union of sets on different windows");
  IntSet out(a.window_);
  for (std::size_t w = 0; w < a.words_.size(); ++w) out.words_[w] = a.words_[w] | b.words_[w];
  out.build_rank();
  return out;
}

IntSet IntSet::rewindowed(Window w) const {
  IntSetBuilder b(w);
  for_each([&](Index x) {
    if (w.contains(x)) b.insert(x);
  });
  return std::move(b).build();
}

void IntSetBuilder::merge(const IntSetBuilder& other) {
  if (!(set_.window_ == other.set_.window_)) throw WindowError("merge of builders on different windows");
  for (std::size_t w = 0; w < set_.words_.size(); ++w) set_.words_[w] |= other.set_.words_[w];
}

IntSet make_ap(Index b, Index offset, Window window) {
  if (b <= 0) throw ArgumentError("progression step must be positive, got " + std::to_string(b));
  IntSetBuilder out(window);
  Index first = window.lo + floor_mod(offset - window.lo, b);
  for (Index x = first; x <= window.hi; x += b) out.insert(x);
  return std::move(out).build();
}

IntSet make_interval_union(std::span<const std::pair<Index, Index>> intervals, Window window) {
  IntSetBuilder out(window);
  for (auto [lo, hi] : intervals) {
    for (Index x = std::max(lo, window.lo); x <= std::min(hi, window.hi); ++x) out.insert(x);
  }
  return std::move(out).build();
}

std::optional<Index> max_gap(const IntSet& a, Window sub) {
  if (!a.window().contains(sub)) throw WindowError("subwindow " + to_string(sub) + " outside " + to_string(a.window()));
  if (a.count(sub.lo, sub.hi) == 0) return std::nullopt;
  Index prev = sub.lo - 1;
  Index gap = 0;
  for (auto m = a.next_member(sub.lo); m && *m <= sub.hi; m = a.next_member(*m + 1)) {
    gap = std::max(gap, *m - prev);
    prev = *m;
  }
  return std::max(gap, sub.hi + 1 - prev);
}

}  // namespace shiftlab
