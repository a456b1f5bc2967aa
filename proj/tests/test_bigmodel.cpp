#include <algorithm>
#include <sstream>

#include "bordered/bigmodel.hpp"
#include "doctest.h"
#include "squares.hpp"
#include "support.hpp"

using namespace bordered;
using namespace testing_support;

namespace {

BigGenerator G(const StrandsAlgebra& alg, const std::string& s) { return parse_generator(alg, s); }

bool contains(const std::vector<BigGenerator>& v, BigGenerator g) {
  return std::find(v.begin(), v.end(), g) != v.end();
}

// First 8-point circle in which both local pictures complete to generators.
struct Realized {
  std::unique_ptr<StrandsAlgebra> alg;
  BigGenerator x, y;
};

Realized realize_pair(const LocalGenerator& x, const LocalGenerator& y) {
  std::map<int, int> id;
  for (int p = 1; p <= 8; ++p) id[p] = p;
  for (const auto& z : Pmc::enumerate(8)) {
    auto alg = std::make_unique<StrandsAlgebra>(z);
    try {
      BigGenerator gx = realize(*alg, x, id), gy = realize(*alg, y, id);
      return {std::move(alg), gx, gy};
    } catch (const std::exception&) {
    }
  }
  throw std::runtime_error("no circle realizes the pair");
}

}  // namespace

TEST_CASE("generator literals") {
  StrandsAlgebra alg(Pmc::genus1());
  auto x = G(alg, "[1-4 | h2]");
  CHECK(to_string(alg, x) == "[1-4 | h2]");
  CHECK(G(alg, " [ {} | h1,h2 ] ") == BigGenerator{alg.index(D(alg.pmc(), "{}")), alg.index(D(alg.pmc(), "h1,h2"))});
  CHECK_THROWS_AS(G(alg, "[1-4 | h1]"), std::invalid_argument);
  CHECK_THROWS_AS(G(alg, "1-4 | h2"), ParseError);
  try {
    G(alg, "[1-4 | h3]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() > 6);
  }
}

TEST_CASE("generator counts") {
  // Golden counts come from the independent Python enumeration.
  std::map<std::string, int> want;
  for (const auto& line : lines_of(golden("basis_counts.txt"))) {
    std::istringstream in(line);
    std::string name, w1, w2;
    int basis, m;
    in >> name >> w1 >> basis >> w2 >> m;
    want[name] = m;
  }
  CHECK(BigModel(StrandsAlgebra(Pmc::genus1())).size() == want["genus1"]);
  StrandsAlgebra split(Pmc::split_genus2());
  CHECK(BigModel(split).size() == want["split"]);
  StrandsAlgebra anti(Pmc::antipodal_genus2());
  CHECK(BigModel(anti).size() == want["antipodal"]);
}

TEST_CASE("differential arrow examples") {
  SUBCASE("type (i): d on the right factor") {
    auto z = pmc_with_pairs(8, {{4, 7}});
    StrandsAlgebra alg(z);
    auto a2 = alg.index(D(z, "3-6,h4"));
    BigGenerator x{alg.idempotent_index(z.complement(alg.left(a2))), a2};
    auto t = d_type_i(alg, x);
    CHECK(contains(t, {x.a1, alg.index(D(z, "3-4,4-6"))}));
    CHECK(contains(big_d(alg, x), {x.a1, alg.index(D(z, "3-4,4-6"))}));
  }
  SUBCASE("type (ii): the dual differential on the left factor") {
    auto z = Pmc::split_genus2();
    StrandsAlgebra alg(z);
    auto a1 = alg.index(D(z, "2-4,3-6"));
    BigGenerator x{a1, alg.idempotent_index(z.complement(alg.left(a1)))};
    CHECK(contains(d_type_ii(alg, x), {alg.index(D(z, "2-6,3-4")), x.a2}));
  }
  SUBCASE("type (iii): a chord moves from a1 to a2") {
    LocalGenerator src, dst;
    src.left.strands = {{2, 6}};
    src.right.strands = {{4, 7}};
    dst.left.strands = {{4, 6}};
    dst.right.strands = {{2, 7}};
    auto r = realize_pair(src, dst);
    CHECK(contains(d_type_iii(*r.alg, r.x), r.y));
    auto m1 = r.alg->mult(r.x.a1), m2 = r.alg->mult(r.x.a2);
    auto n1 = r.alg->mult(r.y.a1), n2 = r.alg->mult(r.y.a2);
    // (2,4) leaves a1 and joins a2.
    for (int s = 2; s < 4; ++s) CHECK((m1[s - 1] - n1[s - 1] == 1 && n2[s - 1] - m2[s - 1] == 1));
  }
}

TEST_CASE("actions") {
  StrandsAlgebra alg(Pmc::genus1());
  const auto& z = alg.pmc();
  int b = alg.index(D(z, "1-2"));
  auto right = act_right(alg, G(alg, "[h2 | h1]"), b);
  REQUIRE(right);
  CHECK(*right == G(alg, "[h2 | 1-2]"));
  CHECK_FALSE(act_right(alg, G(alg, "[h1 | h2]"), b));
  CHECK(act_left(alg, G(alg, "[1-2 | h2]"), b) == BigElement{G(alg, "[h1 | h2]")});
  CHECK(act_left(alg, G(alg, "[1-4 | h2]"), alg.index(D(z, "2-3"))).empty());
  CHECK(act_left(alg, G(alg, "[h1 | h2]"), b).empty());
}

TEST_CASE("N, f and g") {
  StrandsAlgebra alg(Pmc::genus1());
  BigModel m(alg);
  auto n = m.n_generators();
  CHECK(n.size() == 4);
  for (Idempotent i : alg.pmc().all_idempotents()) {
    auto x = f_map(alg, i);
    CHECK(m.find(x) >= 0);
    REQUIRE(g_map(alg, x));
    CHECK(*g_map(alg, x) == i);
  }
  int outside = 0;
  for (auto x : m.generators())
    if (!g_map(alg, x)) ++outside;
  CHECK(outside == m.size() - 4);
}

TEST_CASE("multiplicity of generators") {
  StrandsAlgebra alg(Pmc::genus1());
  CHECK(multiplicity_of(alg, G(alg, "[1-4 | h2]")) == Multiplicity{1, 1, 1});
  CHECK(multiplicity_of(alg, G(alg, "[h2 | h1]")) == Multiplicity{0, 0, 0});
  CHECK(multiplicity_of(alg, G(alg, "[1-2 | 2-4]")) == Multiplicity{1, 1, 1});
}

TEST_CASE("M is a chain complex whose arrows preserve multiplicity and avoid N") {
  for (const auto& z : {Pmc::genus1(), Pmc::split_genus2(), Pmc::antipodal_genus2()}) {
    StrandsAlgebra alg(z);
    BigModel m(alg);
    auto sq = m.check_d_squared(0);
    CHECK_MESSAGE(sq.ok, sq.message);
    CHECK(sq.checked == m.size());
    auto ar = m.check_arrows(0);
    CHECK_MESSAGE(ar.ok, ar.message);
  }
}

TEST_CASE("genus-1 differential dump") {
  StrandsAlgebra alg(Pmc::genus1());
  BigModel m(alg);
  auto lines = lines_of(m.dump());
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(std::find(lines.begin(), lines.end(), "d [1-4 | h2] -> [2-4 | 1-2]") != lines.end());
  CHECK(std::find(lines.begin(), lines.end(), "d [1-2 | 2-4] -> [h2 | 1-4]") != lines.end());
}
