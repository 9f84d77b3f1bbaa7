#include "shiftlab/progression_set.hpp"

#include <algorithm>
#include <numeric>

namespace shiftlab {

namespace {

using Wide = __int128;

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

// s*u + t*v = gcd(s, t)
Index ext_gcd(Index s, Index t, Index& u, Index& v) {
  if (t == 0) {
    u = 1;
    v = 0;
    return s;
  }
  Index u1, v1;
  Index g = ext_gcd(t, s % t, u1, v1);
  u = v1;
  v = u1 - (s / t) * v1;
  return g;
}

// Members of b at or below x.
Index count_upto(const Block& b, Index x) {
  if (x < b.first) return 0;
  if (x >= b.last) return b.count();
  return (x - b.first) / b.step + 1;
}

}  // namespace

Index Block::count(Index lo, Index hi) const {
  if (lo > hi) return 0;
  return count_upto(*this, hi) - count_upto(*this, lo - 1);
}

std::optional<Index> Block::ceil(Index x) const {
  if (x > last) return std::nullopt;
  if (x <= first) return first;
  const Index k = (x - first + step - 1) / step;
  return first + k * step;
}

ProgressionSet::ProgressionSet(Window window, std::vector<Block> blocks) : window_(window), blocks_(std::move(blocks)) {
  if (window_.lo > 0 || window_.hi < 0) throw WindowError("window " + to_string(window_) + " must contain 0");
  for (Block& b : blocks_) {
    if (b.step <= 0) throw ArgumentError("block step must be positive");
    if (b.first > b.last || (b.last - b.first) % b.step != 0) {
      throw ArgumentError("malformed block [" + std::to_string(b.first) + "," + std::to_string(b.last) + "] step " +
                          std::to_string(b.step));
    }
    if (!window_.contains(b.first) || !window_.contains(b.last)) {
      throw WindowError("block [" + std::to_string(b.first) + "," + std::to_string(b.last) + "] outside " +
                        to_string(window_));
    }
    if (b.first == b.last) b.step = 1;
  }
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < blocks_.size(); ++i) {
    if (blocks_[i].first <= blocks_[i - 1].last) throw ArgumentError("progression blocks overlap");
  }
  prefix_.assign(blocks_.size() + 1, 0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) prefix_[i + 1] = prefix_[i] + blocks_[i].count();
}

ProgressionSet ProgressionSet::from_intset(const IntSet& s) {
  std::vector<Block> blocks;
  s.for_each([&](Index x) {
    if (!blocks.empty()) {
      Block& b = blocks.back();
      if (b.first == b.last) {
        b.step = x - b.first;
        b.last = x;
        return;
      }
      if (x - b.last == b.step) {
        b.last = x;
        return;
      }
    }
    blocks.push_back({x, x, 1});
  });
  return ProgressionSet(s.window(), std::move(blocks));
}

bool ProgressionSet::contains(Index x) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), x, [](Index v, const Block& b) { return v < b.first; });
  if (it == blocks_.begin()) return false;
  return std::prev(it)->contains(x);
}

Index ProgressionSet::count(Index lo, Index hi) const {
  if (lo > hi) return 0;
  auto upto = [&](Index x) -> Index {
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), x, [](Index v, const Block& b) { return v < b.first; });
    if (it == blocks_.begin()) return 0;
    const auto i = static_cast<std::size_t>(it - blocks_.begin()) - 1;
    return prefix_[i] + count_upto(blocks_[i], x);
  };
  return upto(hi) - upto(lo - 1);
}

Index ProgressionSet::count_prefix(Index n) const {
  if (n < 0 || n > window_.max_prefix()) {
    throw WindowError("prefix " + std::to_string(n) + " outside " + to_string(window_));
  }
  return bilateral() ? count(-n, n) : count(0, n);
}

Index ProgressionSet::nth(Index k) const {
  if (k < 0 || k >= size()) throw ArgumentError("element index " + std::to_string(k) + " out of range");
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), k);
  const auto i = static_cast<std::size_t>(it - prefix_.begin()) - 1;
  return blocks_[i].at(k - prefix_[i]);
}

std::optional<Index> ProgressionSet::next_member(Index from) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), from, [](Index v, const Block& b) { return v < b.first; });
  if (it != blocks_.begin()) {
    if (auto c = std::prev(it)->ceil(from)) return c;
  }
  if (it == blocks_.end()) return std::nullopt;
  return it->first;
}

std::vector<Index> ProgressionSet::members() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Index x) { out.push_back(x); });
  return out;
}

IntSet ProgressionSet::to_intset(Index max_width) const {
  if (window_.size() > max_width) {
    throw ResourceError("window " + to_string(window_) + " too wide for a bitset", 0);
  }
  IntSetBuilder b(window_);
  for_each([&](Index x) { b.insert(x); });
  return std::move(b).build();
}

HitResult block_difference_hits(const Block& X, const Block& Y, Index dlo, Index dhi, Index budget) {
  dlo = std::max(dlo, Y.first - X.last);
  dhi = std::min(dhi, Y.last - X.first);
  if (dlo > dhi) return {};
  const Index width = dhi - dlo + 1;
  const Index s = X.step;
  const Index t = Y.step;

  // Wide windows: a window of >= step consecutive integers meeting a block's
  // hull always contains a member, so one ceil() query decides.
  if (width >= t || Y.count() == 1) {
    if (auto x = X.ceil(Y.first - dhi); x && *x <= Y.last - dlo) {
      auto y = Y.ceil(*x + dlo);
      if (y && *y <= *x + dhi) return {HitResult::Kind::hit, *x, *y};
    }
    return {};
  }
  if (width >= s || X.count() == 1) {
    if (auto y = Y.ceil(X.first + dlo); y && *y <= X.last + dhi) {
      auto x = X.ceil(*y - dhi);
      if (x && *x <= *y - dlo) return {HitResult::Kind::hit, *x, *y};
    }
    return {};
  }

  if (width <= budget) {
    Index u, v;
    const Index g = ext_gcd(s, t, u, v);
    const Wide sg = s / g;
    const Wide tg = t / g;
    for (Index d = dlo; d <= dhi; ++d) {
      const Wide e = Wide(d) - (Wide(Y.first) - X.first);  // t*j - s*i = e
      if (e % g != 0) continue;
      const Wide j0 = Wide(v) * (e / g);
      const Wide i0 = -Wide(u) * (e / g);
      // j = j0 + sg*k in [0, cy), i = i0 + tg*k in [0, cx)
      Wide klo = std::max(ceil_div(-j0, sg), ceil_div(-i0, tg));
      Wide khi = std::min(floor_div(Wide(Y.count() - 1) - j0, sg), floor_div(Wide(X.count() - 1) - i0, tg));
      if (klo <= khi) {
        const auto i = static_cast<Index>(i0 + tg * klo);
        const auto j = static_cast<Index>(j0 + sg * klo);
        return {HitResult::Kind::hit, X.at(i), Y.at(j)};
      }
    }
    return {};
  }

  if (std::min(X.count(), Y.count()) <= budget) {
    if (X.count() <= Y.count()) {
      for (Index x = X.first; x <= X.last; x += s) {
        auto y = Y.ceil(x + dlo);
        if (y && *y <= x + dhi) return {HitResult::Kind::hit, x, *y};
      }
    } else {
      for (Index y = Y.first; y <= Y.last; y += t) {
        auto x = X.ceil(y - dhi);
        if (x && *x <= y - dlo) return {HitResult::Kind::hit, *x, y};
      }
    }
    return {};
  }
  return {HitResult::Kind::unknown, 0, 0};
}

HitResult difference_hits(const ProgressionSet& X, const ProgressionSet& Y, Index dlo, Index dhi, Index budget) {
  HitResult acc;
  for (const Block& bx : X.blocks()) {
    for (const Block& by : Y.blocks()) {
      HitResult h = block_difference_hits(bx, by, dlo, dhi, budget);
      if (h.kind == HitResult::Kind::hit) return h;
      if (h.kind == HitResult::Kind::unknown) acc = h;
    }
  }
  return acc;
}

}  // namespace shiftlab
