#pragma once

// Independent evaluation of the N actions: the transfer formula applied to
// whole F2 sums, with the left action found by scanning the basis.

#include <algorithm>
#include <map>
#include <vector>

#include "bordered/homotopy.hpp"

namespace testing_support {

using namespace bordered;

// Left action computed by scanning every basis element c with c * b = a1.
inline bordered::BigElement left_action_by_scan(const StrandsAlgebra& alg, BigGenerator x, int b) {
  BigElement out;
  for (int c = 0; c < alg.size(); ++c)
    if (alg.mul(c, b) == x.a1) out.push_back({c, x.a2});
  normalize(out);
  return out;
}

inline bordered::BigElement apply_input(const StrandsAlgebra& alg, const BigElement& x, bool left, int b) {
  BigElement out;
  for (auto g : x) {
    if (left) {
      auto t = left_action_by_scan(alg, g, b);
      out.insert(out.end(), t.begin(), t.end());
    } else if (alg.mul(g.a2, b) >= 0) {
      out.push_back({g.a1, alg.mul(g.a2, b)});
    }
  }
  normalize(out);
  return out;
}

// Transfer formula g (m H)...(m H) m f summed over interleavings, with the
// actions and H applied to whole F2 sums.
inline std::vector<bordered::Idempotent> transfer_oracle(const StrandsAlgebra& alg, Idempotent i, const std::vector<int>& L,
                                        const std::vector<int>& R) {
  const std::size_t n = L.size() + R.size();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + L.size(), true);
  std::sort(mask.begin(), mask.end());
  std::map<Idempotent, int> count;
  do {
    BigElement x{f_map(alg, i)};
    std::size_t li = 0, ri = 0;
    for (std::size_t k = 0; k < n && !x.empty(); ++k) {
      if (k) x = homotopy(alg, x);
      x = mask[k] ? apply_input(alg, x, true, L[li++]) : apply_input(alg, x, false, R[ri++]);
    }
    for (auto g : x)
      if (auto j = g_map(alg, g)) ++count[*j];
  } while (std::next_permutation(mask.begin(), mask.end()));
  std::vector<Idempotent> out;
  for (auto [j, c] : count)
    if (c % 2) out.push_back(j);
  return out;
}

}  // namespace testing_support
