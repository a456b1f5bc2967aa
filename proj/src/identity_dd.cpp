#include "bordered/identity_dd.hpp"

#include <tuple>

#include "bordered/f2.hpp"

namespace bordered {

TypeDDStructure build_identity_dd(const StrandsAlgebra& alg) {
  const Pmc& z = alg.pmc();
  TypeDDStructure dd;
  dd.generators = z.all_idempotents();
  for (Idempotent i : dd.generators) {
    for (Chord xi : z.all_chords()) {
      auto e = chord_element(z, xi, i);
      auto e2 = chord_element_right(z, xi, z.complement(i));
      if (e.is_zero() || e2.is_zero()) continue;
      int a = alg.index(e.terms[0]);
      dd.arrows.push_back({i, a, alg.index(e2.terms[0]), alg.right(a)});
    }
  }
  return dd;
}

int check_bounded(const StrandsAlgebra& alg, const TypeDDStructure& dd) {
  const Pmc& z = alg.pmc();
  const int cap = 2 * z.genus() * (4 * z.genus() - 1);
  using State = std::tuple<int, int, std::uint32_t>;
  std::vector<State> level;
  for (Idempotent i : dd.generators)
    level.emplace_back(alg.idempotent_index(i), alg.idempotent_index(z.complement(i)), i.mask);
  int k = 0;
  while (true) {
    std::vector<State> next;
    for (auto [l, r, g] : level)
      for (const DDArrow* a : dd.arrows_from({g})) {
        int l2 = alg.mul(l, a->left);
        int r2 = alg.mul(a->right, r);
        if (l2 < 0 || r2 < 0) continue;
        if (alg.total_mult(l2) > cap || alg.total_mult(r2) > cap)
          throw std::logic_error("delta iteration exceeds the multiplicity bound " +
                                 std::to_string(cap));
        next.emplace_back(l2, r2, a->target.mask);
      }
    f2_normalize(next);
    if (next.empty()) return k;
    level = std::move(next);
    ++k;
  }
}

}  // namespace bordered
