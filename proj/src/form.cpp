#include "ypq/form.hpp"

#include <array>
#include <mutex>

namespace ypq {

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

namespace {

IndexTable build_table(int dim, int degree) {
  IndexTable t;
  t.index_of_mask.assign(std::size_t{1} << dim, -1);
  // Lexicographic enumeration of strictly increasing tuples.
  std::vector<int> cur(degree);
  for (int i = 0; i < degree; ++i) cur[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int i : cur) m |= 1u << i;
    t.index_of_mask[m] = static_cast<int>(t.tuples.size());
    t.tuples.push_back(cur);
    t.masks.push_back(m);
    int pos = degree - 1;
    while (pos >= 0 && cur[pos] == dim - degree + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < degree; ++i) cur[i] = cur[i - 1] + 1;
  }
  return t;
}

}  // namespace

const IndexTable& index_table(int dim, int degree) {
  static const auto tables = [] {
    std::array<std::array<IndexTable, kMaxFormDim + 1>, kMaxFormDim + 1> all;
    for (int n = 1; n <= kMaxFormDim; ++n)
      for (int k = 0; k <= n; ++k) all[n][k] = build_table(n, k);
    return all;
  }();
  return tables[dim][degree];
}

}  // namespace ypq
