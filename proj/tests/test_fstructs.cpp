#include <algorithm>

#include "bordered/identity_dd.hpp"
#include "bordered/perturbation.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bordered;
using namespace testing_support;

namespace {

std::vector<Pmc> small_pmcs() { return {Pmc::genus1(), Pmc::split_genus2(), Pmc::antipodal_genus2()}; }

// Basis elements with a single moving strand of length one.
std::vector<int> length_one_chords(const StrandsAlgebra& alg) {
  std::vector<int> out;
  for (int a = 0; a < alg.size(); ++a) {
    auto s = alg.diagram(a).strands();
    if (s.size() == 1 && s[0].second == s[0].first + 1) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("chain complex d^2") {
  ChainComplex c;
  int x = c.add_generator("x"), y = c.add_generator("y"), w = c.add_generator("w"), z = c.add_generator("z");
  c.add_arrow(x, y);
  c.add_arrow(x, w);
  c.add_arrow(y, z);
  CHECK_FALSE(c.check_d_squared().ok);
  c.add_arrow(w, z);
  CHECK(c.check_d_squared().ok);
}

TEST_CASE("algebra soundness") {
  for (const auto& z : small_pmcs()) {
    StrandsAlgebra alg(z);
    auto r = check_dg_algebra(alg, 0);
    CHECK_MESSAGE(r.ok, r.message);
  }
}

TEST_CASE("identity DD bimodule") {
  StrandsAlgebra alg(Pmc::genus1());
  auto dd = build_identity_dd(alg);
  CHECK(dd.generators.size() == 4);
  CHECK(dump(alg, dd) == golden("genus1_cfdd.txt"));
  auto lines = lines_of(dump(alg, dd));
  CHECK(std::find(lines.begin(), lines.end(), "delta h1 -> (1-2 , 1-2) h2") != lines.end());
  int k = check_bounded(alg, dd);
  CHECK(k >= 1);
  CHECK(k <= 6);
  // Along the A side the chain (1,2), (2,3), (3,4) survives; the A' side
  // multiplies in the opposite order and kills it, so max_k is 1 here.
  auto I = [&](const char* s) { return alg.index(D(alg.pmc(), s)); };
  CHECK(alg.mul(alg.mul(I("1-2"), I("2-3")), I("3-4")) == I("1-4"));
  CHECK(alg.mul(I("2-3"), I("1-2")) < 0);
  CHECK(k == 1);

  for (const auto& z : small_pmcs()) {
    StrandsAlgebra a(z);
    auto d = build_identity_dd(a);
    CHECK(d.generators.size() == (1u << z.num_pairs()));
    auto r = check_dd_structure(a, d);
    CHECK_MESSAGE(r.ok, r.message);
    int g = z.genus();
    CHECK(check_bounded(a, d) <= 2 * g * (4 * g - 1));
    for (const auto& arrow : d.arrows) CHECK(a.mult(arrow.left) == a.mult(arrow.right));
  }
}

TEST_CASE("dropping an arrow breaks the DD structure equation") {
  StrandsAlgebra alg(Pmc::split_genus2());
  auto dd = build_identity_dd(alg);
  dd.arrows.erase(dd.arrows.begin());
  CHECK_FALSE(check_dd_structure(alg, dd).ok);
}

TEST_CASE("morphisms and rank-1 DA bimodules") {
  StrandsAlgebra alg(Pmc::genus1());
  AInftyMorphism id = [](const std::vector<int>& in) {
    return in.size() == 1 ? in : std::vector<int>{};
  };
  auto da = da_from_morphism(alg, id);
  CHECK(check_da_structure(alg, da, 6).ok);
  auto back = extract_morphism(alg, da);
  for (int a = 0; a < alg.size(); ++a) {
    if (alg.is_idempotent(a)) continue;
    CHECK(back({a}) == std::vector<int>{a});
    for (int b = 0; b < alg.size(); ++b)
      if (!alg.is_idempotent(b) && alg.right(a) == alg.left(b)) CHECK(back({a, b}).empty());
  }

  // A DA structure with delta^1_1 != 0 has no morphism.
  TypeDAStructure bad;
  bad.generators = alg.pmc().all_idempotents();
  bad.delta = [&](Idempotent i, const std::vector<int>& in) {
    std::vector<DATerm> out;
    if (in.empty()) out.emplace_back(alg.idempotent_index(i), i);
    return out;
  };
  CHECK_THROWS_AS(extract_morphism(alg, bad), std::invalid_argument);

  AAEvaluator zero = [](Idempotent, const std::vector<int>&, const std::vector<int>&) {
    return std::vector<Idempotent>{};
  };
  auto boxed = box_aa_dd(alg, zero, build_identity_dd(alg));
  for (Idempotent i : boxed.generators)
    for (int a = 0; a < alg.size(); ++a)
      if (!alg.is_idempotent(a) && alg.left(a) == i) CHECK(boxed.delta(i, {a}).empty());
}

TEST_CASE("N box CFDD is the rank-1 bimodule of a quasi-isomorphism") {
  for (const auto& z : small_pmcs()) {
    CAPTURE(z.to_text());
    StrandsAlgebra alg(z);
    auto dd = build_identity_dd(alg);
    auto da = box_aa_dd(alg, n_evaluator(alg), dd);
    CHECK(da.generators.size() == (1u << z.num_pairs()));
    for (Idempotent i : da.generators) CHECK(da.delta(i, {}).empty());
    auto phi = extract_morphism(alg, da);
    for (int a : length_one_chords(alg)) CHECK(phi({a}) == std::vector<int>{a});
    HomologyBasis hb(alg);
    auto r = check_homology_isomorphism(alg, hb, phi);
    CHECK_MESSAGE(r.ok, r.message);
    auto s = check_da_structure(alg, da, z.genus() == 1 ? 6 : 3);
    CHECK_MESSAGE(s.ok, s.message);
  }
}

TEST_CASE("the reversed box convention breaks the DA structure equation") {
  // Length-1 chords are fixed either way; only the forward order gives a DA
  // bimodule and a quasi-isomorphism.
  for (const auto& z : small_pmcs()) {
    StrandsAlgebra alg(z);
    auto rev = box_aa_dd(alg, n_evaluator(alg), build_identity_dd(alg), BoxConvention::Reversed);
    CHECK_FALSE(check_da_structure(alg, rev, 3).ok);
    HomologyBasis hb(alg);
    CHECK_FALSE(check_homology_isomorphism(alg, hb, extract_morphism(alg, rev)).ok);
  }
}

TEST_CASE("deleting one arrow of N breaks the AA structure equation") {
  StrandsAlgebra alg(Pmc::genus1());
  auto n = n_evaluator(alg);
  const Idempotent h2 = alg.left(alg.index(D(alg.pmc(), "2-3")));
  const std::vector<int> left{alg.index(D(alg.pmc(), "1-3"))};
  const std::vector<int> right{alg.index(D(alg.pmc(), "2-3")), alg.index(D(alg.pmc(), "1-2"))};
  AAEvaluator mutated = [&](Idempotent i, const std::vector<int>& l, const std::vector<int>& r) {
    if (i == h2 && l == left && r == right) return std::vector<Idempotent>{};
    return n(i, l, r);
  };
  CHECK(check_aa_structure(alg, n, 6).ok);
  CHECK_FALSE(check_aa_structure(alg, mutated, 6).ok);
}
