#include "shiftlab/density.hpp"

#include <cmath>

namespace shiftlab {

std::vector<Index> linear_checkpoints(Index last, Index count) {
  if (last < 1 || count < 1) throw ArgumentError("linear checkpoints need last >= 1 and count >= 1");
  count = std::min(count, last);
  std::vector<Index> out;
  for (Index i = 1; i <= count; ++i) {
    const Index n = (last * i) / count;
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

std::vector<Index> geometric_checkpoints(Index first, Index last, Index count) {
  if (first < 1 || last < first || count < 1) throw ArgumentError("geometric checkpoints need 1 <= first <= last");
  std::vector<Index> out{first};
  const double ratio = count > 1 ? std::pow(double(last) / double(first), 1.0 / double(count - 1)) : 1.0;
  for (Index i = 1; i < count; ++i) {
    const auto n = static_cast<Index>(std::llround(double(first) * std::pow(ratio, double(i))));
    if (n > out.back() && n <= last) out.push_back(n);
  }
  if (out.back() != last) out.push_back(last);
  return out;
}

}  // namespace shiftlab
