#include "bordered/fstructs.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "bordered/f2.hpp"
#include "bordered/parallel.hpp"

namespace bordered {

int ChainComplex::add_generator(std::string label) {
  labels_.push_back(std::move(label));
  out_.emplace_back();
  return size() - 1;
}

void ChainComplex::add_arrow(int source, int target) { out_[source].push_back(target); }

CheckResult ChainComplex::check_d_squared() const {
  CheckResult res;
  for (int g = 0; g < size(); ++g) {
    std::vector<int> acc;
    for (int y : out_[g])
      for (int z : out_[y]) acc.push_back(z);
    f2_normalize(acc);
    ++res.checked;
    if (!acc.empty()) {
      std::string msg = "d^2(" + labels_[g] + ") =";
      for (int z : acc) msg += " " + labels_[z];
      return CheckResult::failure(msg, res.checked);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

std::vector<const DDArrow*> TypeDDStructure::arrows_from(Idempotent g) const {
  std::vector<const DDArrow*> out;
  for (const auto& a : arrows)
    if (a.source == g) out.push_back(&a);
  return out;
}

std::string idempotent_label(const Pmc& z, Idempotent i) {
  return to_string(z, StrandDiagram::idempotent(i));
}

CheckResult check_dd_structure(const StrandsAlgebra& alg, const TypeDDStructure& dd) {
  CheckResult res;
  for (Idempotent x : dd.generators) {
    std::vector<std::tuple<int, int, std::uint32_t>> terms;
    for (const DDArrow* a1 : dd.arrows_from(x)) {
      for (const DDArrow* a2 : dd.arrows_from(a1->target)) {
        int l = alg.mul(a1->left, a2->left);
        int r = alg.mul(a2->right, a1->right);
        if (l >= 0 && r >= 0) terms.emplace_back(l, r, a2->target.mask);
      }
      for (int t : alg.diff(a1->left)) terms.emplace_back(t, a1->right, a1->target.mask);
      for (int t : alg.diff(a1->right)) terms.emplace_back(a1->left, t, a1->target.mask);
    }
    f2_normalize(terms);
    ++res.checked;
    if (!terms.empty()) {
      const Pmc& z = alg.pmc();
      std::string msg = "DD structure equation fails at " + idempotent_label(z, x) + ":";
      for (auto [l, r, g] : terms)
        msg += " (" + alg.str(l) + " , " + alg.str(r) + ") " + idempotent_label(z, {g});
      return CheckResult::failure(msg, res.checked);
    }
  }
  return res;
}

std::string dump(const StrandsAlgebra& alg, const TypeDDStructure& dd) {
  const Pmc& z = alg.pmc();
  std::vector<std::string> lines;
  for (const auto& a : dd.arrows)
    lines.push_back("delta " + idempotent_label(z, a.source) + " -> (" + alg.str(a.left) + " , " +
                    alg.str(a.right) + ") " + idempotent_label(z, a.target));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Tuple = std::vector<int>;

void add_mult(Multiplicity& acc, const Multiplicity& m, int sign) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += sign * m[k];
}

// Composable tuples of non-idempotents.  `forward` chains right(b_k) =
// left(b_{k+1}) starting from left(b_1) = start; otherwise chains
// left(b_k) = right(b_{k+1}) starting from right(b_1) = start.
void collect_tuples(const StrandsAlgebra& alg, Idempotent start, bool forward, int bound,
                    std::map<Multiplicity, std::vector<Tuple>>& out) {
  std::vector<std::vector<int>> by_idem(alg.pmc().full_idempotent().mask + 1);
  for (int b = 0; b < alg.size(); ++b) {
    if (alg.is_idempotent(b)) continue;
    by_idem[(forward ? alg.left(b) : alg.right(b)).mask].push_back(b);
  }
  Tuple cur;
  Multiplicity m(alg.pmc().num_segments(), 0);
  std::function<void(Idempotent, int)> rec = [&](Idempotent at, int used) {
    for (int b : by_idem[at.mask]) {
      int t = alg.total_mult(b);
      if (used + t > bound) continue;
      cur.push_back(b);
      add_mult(m, alg.mult(b), 1);
      out[m].push_back(cur);
      rec(forward ? alg.right(b) : alg.left(b), used + t);
      add_mult(m, alg.mult(b), -1);
      cur.pop_back();
    }
  };
  rec(start, 0);
}

struct TupleHash {
  std::size_t operator()(const std::tuple<std::uint32_t, Tuple, Tuple>& k) const {
    std::size_t h = std::get<0>(k);
    for (int v : std::get<1>(k)) h = h * 1000003u ^ static_cast<std::size_t>(v);
    h = h * 31u + 17u;
    for (int v : std::get<2>(k)) h = h * 1000003u ^ static_cast<std::size_t>(v);
    return h;
  }
};

std::string tuple_text(const StrandsAlgebra& alg, const Tuple& t) {
  std::string s;
  for (int b : t) s += (s.empty() ? "" : " ; ") + alg.str(b);
  return s;
}

}  // namespace

void for_each_conserved_tuple(
    const StrandsAlgebra& alg, Idempotent i, int bound,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& visit) {
  std::map<Multiplicity, std::vector<Tuple>> rights, lefts;
  collect_tuples(alg, i, true, bound, rights);
  collect_tuples(alg, alg.pmc().complement(i), false, bound, lefts);
  for (const auto& [m, rs] : rights) {
    auto it = lefts.find(m);
    if (it == lefts.end()) continue;
    for (const auto& l : it->second)
      for (const auto& r : rs)
        if (!visit(l, r)) return;
  }
}

CheckResult check_aa_structure(const StrandsAlgebra& alg, const AAEvaluator& m, int bound) {
  const Pmc& z = alg.pmc();
  std::unordered_map<std::tuple<std::uint32_t, Tuple, Tuple>, std::vector<Idempotent>, TupleHash>
      memo;
  auto act = [&](Idempotent g, const Tuple& l, const Tuple& r) -> const std::vector<Idempotent>& {
    auto key = std::make_tuple(g.mask, l, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo.emplace(key, m(g, l, r)).first->second;
  };

  CheckResult res;
  for (Idempotent i : z.all_idempotents()) {
    bool failed = false;
    for_each_conserved_tuple(alg, i, bound, [&](const Tuple& L, const Tuple& R) {
      const std::size_t p = L.size(), q = R.size();
      std::vector<std::uint32_t> terms;
      auto add_all = [&](const std::vector<Idempotent>& v) {
        for (auto t : v) terms.push_back(t.mask);
      };
      // Nested actions.
      for (std::size_t k = 0; k <= p; ++k)
        for (std::size_t l = 0; l <= q; ++l) {
          if ((k == 0 && l == 0) || (k == p && l == q)) continue;
          Tuple L1(L.begin(), L.begin() + k), L2(L.begin() + k, L.end());
          Tuple R1(R.begin(), R.begin() + l), R2(R.begin() + l, R.end());
          for (Idempotent j : act(i, L1, R1)) add_all(act(j, L2, R2));
        }
      // Differentials of inputs.
      for (std::size_t k = 0; k < p; ++k)
        for (int t : alg.diff(L[k])) {
          Tuple L2 = L;
          L2[k] = t;
          add_all(act(i, L2, R));
        }
      for (std::size_t k = 0; k < q; ++k)
        for (int t : alg.diff(R[k])) {
          Tuple R2 = R;
          R2[k] = t;
          add_all(act(i, L, R2));
        }
      // Products of neighbouring inputs; on the A' side b'_{k+1} b'_k.
      for (std::size_t k = 0; k + 1 < p; ++k) {
        int prod = alg.mul(L[k + 1], L[k]);
        if (prod < 0) continue;
        Tuple L2(L.begin(), L.begin() + k);
        L2.push_back(prod);
        L2.insert(L2.end(), L.begin() + k + 2, L.end());
        add_all(act(i, L2, R));
      }
      for (std::size_t k = 0; k + 1 < q; ++k) {
        int prod = alg.mul(R[k], R[k + 1]);
        if (prod < 0) continue;
        Tuple R2(R.begin(), R.begin() + k);
        R2.push_back(prod);
        R2.insert(R2.end(), R.begin() + k + 2, R.end());
        add_all(act(i, L, R2));
      }
      f2_normalize(terms);
      ++res.checked;
      if (!terms.empty()) {
        std::string msg = "A-infinity relation fails at " + idempotent_label(z, i) + " ; " +
                          tuple_text(alg, L) + " ; " + tuple_text(alg, R) + " ->";
        for (auto t : terms) msg += " " + idempotent_label(z, {t});
        res.ok = false;
        res.message = msg;
        failed = true;
        return false;
      }
      return true;
    });
    if (failed) return res;
  }
  return res;
}

std::string dump(const StrandsAlgebra& alg, const AAActionTable& t) {
  const Pmc& z = alg.pmc();
  std::vector<std::string> lines;
  for (const auto& a : t.arrows) {
    std::string l = "m[1," + std::to_string(a.left.size()) + "," + std::to_string(a.right.size()) +
                    "] " + idempotent_label(z, a.source);
    for (int b : a.left) l += " ; " + alg.str(b);
    for (int b : a.right) l += " ; " + alg.str(b);
    l += " -> " + idempotent_label(z, a.target);
    lines.push_back(l);
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// ---------------------------------------------------------------------------

CheckResult check_da_structure(const StrandsAlgebra& alg, const TypeDAStructure& da, int bound) {
  const Pmc& z = alg.pmc();
  std::map<std::pair<std::uint32_t, Tuple>, std::vector<DATerm>> memo;
  auto delta = [&](Idempotent g, const Tuple& in) -> const std::vector<DATerm>& {
    auto key = std::make_pair(g.mask, in);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo.emplace(key, da.delta(g, in)).first->second;
  };

  CheckResult res;
  for (Idempotent i : da.generators) {
    std::map<Multiplicity, std::vector<Tuple>> tuples;
    collect_tuples(alg, i, true, bound, tuples);
    for (const auto& [mv, list] : tuples)
      for (const Tuple& B : list) {
        const std::size_t n = B.size();
        std::vector<std::pair<int, std::uint32_t>> terms;
        for (std::size_t k = 0; k <= n; ++k) {
          Tuple B1(B.begin(), B.begin() + k), B2(B.begin() + k, B.end());
          for (auto [o1, j1] : delta(i, B1))
            for (auto [o2, j2] : delta(j1, B2)) {
              int prod = alg.mul(o1, o2);
              if (prod >= 0) terms.emplace_back(prod, j2.mask);
            }
        }
        for (auto [o, j] : delta(i, B))
          for (int t : alg.diff(o)) terms.emplace_back(t, j.mask);
        for (std::size_t k = 0; k < n; ++k)
          for (int t : alg.diff(B[k])) {
            Tuple B2 = B;
            B2[k] = t;
            for (auto [o, j] : delta(i, B2)) terms.emplace_back(o, j.mask);
          }
        for (std::size_t k = 0; k + 1 < n; ++k) {
          int prod = alg.mul(B[k], B[k + 1]);
          if (prod < 0) continue;
          Tuple B2(B.begin(), B.begin() + k);
          B2.push_back(prod);
          B2.insert(B2.end(), B.begin() + k + 2, B.end());
          for (auto [o, j] : delta(i, B2)) terms.emplace_back(o, j.mask);
        }
        f2_normalize(terms);
        ++res.checked;
        if (!terms.empty()) {
          std::string msg = "DA structure equation fails at " + idempotent_label(z, i) + " ; " +
                            tuple_text(alg, B) + " ->";
          for (auto [o, j] : terms) msg += " " + alg.str(o) + " (x) " + idempotent_label(z, {j});
          return CheckResult::failure(msg, res.checked);
        }
      }
  }
  return res;
}

AInftyMorphism extract_morphism(const StrandsAlgebra& alg, const TypeDAStructure& da) {
  for (Idempotent i : da.generators)
    if (!da.delta(i, {}).empty())
      throw std::invalid_argument("delta^1_1 is nonzero on generator " +
                                  idempotent_label(alg.pmc(), i));
  return [&alg, da](const std::vector<int>& in) {
    std::vector<int> out;
    if (in.empty()) return out;
    for (auto [o, j] : da.delta(alg.left(in[0]), in)) out.push_back(o);
    f2_normalize(out);
    return out;
  };
}

TypeDAStructure da_from_morphism(const StrandsAlgebra& alg, AInftyMorphism phi) {
  TypeDAStructure da;
  da.generators = alg.pmc().all_idempotents();
  da.delta = [&alg, phi](Idempotent i, const std::vector<int>& in) {
    std::vector<DATerm> out;
    if (in.empty() || alg.left(in[0]) != i) return out;
    for (int o : phi(in))
      if (alg.left(o) == i) out.emplace_back(o, alg.right(o));
    return out;
  };
  return da;
}

CheckResult check_dg_algebra(const StrandsAlgebra& alg, int jobs) {
  const int n = alg.size();
  std::map<std::uint32_t, std::vector<int>> by_left;
  for (int a = 0; a < n; ++a) by_left[alg.left(a).mask].push_back(a);
  auto starting_at = [&](Idempotent i) -> const std::vector<int>& { return by_left.at(i.mask); };
  for (Idempotent i : alg.pmc().all_idempotents()) by_left[i.mask];

  std::vector<std::string> errors(n);
  std::vector<long> counts(n, 0);
  parallel_for(n, jobs, [&](int a) {
    auto fail = [&](std::string msg) {
      if (errors[a].empty()) errors[a] = std::move(msg);
    };
    std::vector<int> dd;
    for (int t : alg.diff(a)) dd.insert(dd.end(), alg.diff(t).begin(), alg.diff(t).end());
    f2_normalize(dd);
    if (!dd.empty()) fail("d^2 is nonzero on " + alg.str(a));
    for (int b : starting_at(alg.right(a))) {
      const int ab = alg.mul(a, b);
      std::vector<int> lhs = ab >= 0 ? alg.diff(ab) : std::vector<int>{};
      std::vector<int> rhs;
      for (int t : alg.diff(a))
        if (int r = alg.mul(t, b); r >= 0) rhs.push_back(r);
      for (int t : alg.diff(b))
        if (int r = alg.mul(a, t); r >= 0) rhs.push_back(r);
      f2_normalize(lhs);
      f2_normalize(rhs);
      if (lhs != rhs) fail("Leibniz fails on " + alg.str(a) + " * " + alg.str(b));
      if (ab >= 0) {
        Multiplicity m = alg.mult(a);
        add_mult(m, alg.mult(b), 1);
        if (m != alg.mult(ab)) fail("multiplicity is not additive on " + alg.str(a) + " * " + alg.str(b));
      }
      for (int c : starting_at(alg.right(b))) {
        ++counts[a];
        const int bc = alg.mul(b, c);
        const int l = ab >= 0 ? alg.mul(ab, c) : -1;
        const int r = bc >= 0 ? alg.mul(a, bc) : -1;
        if (l != r) fail("associativity fails on " + alg.str(a) + " , " + alg.str(b) + " , " + alg.str(c));
      }
    }
  });
  CheckResult res;
  for (int a = 0; a < n; ++a) {
    res.checked += counts[a];
    if (!errors[a].empty() && res.ok) {
      res.ok = false;
      res.message = errors[a];
    }
  }
  return res;
}

CheckResult check_homology_isomorphism(const StrandsAlgebra& alg, const HomologyBasis& hb,
                                       const AInftyMorphism& phi) {
  const Pmc& z = alg.pmc();
  std::vector<std::vector<int>> image(alg.size());
  for (int a = 0; a < alg.size(); ++a) image[a] = alg.is_idempotent(a) ? std::vector<int>{a} : phi({a});

  CheckResult res;
  for (int a = 0; a < alg.size(); ++a) {
    std::vector<int> lhs, rhs;
    for (int t : image[a])
      for (int u : alg.diff(t)) lhs.push_back(u);
    for (int t : alg.diff(a)) rhs.insert(rhs.end(), image[t].begin(), image[t].end());
    f2_normalize(lhs);
    f2_normalize(rhs);
    ++res.checked;
    if (lhs != rhs) return CheckResult::failure("phi_1 does not commute with d at " + alg.str(a), res.checked);
  }

  for (const HomologyBlock& b : hb.blocks()) {
    const std::size_t k = b.representatives.size();
    if (k == 0) continue;
    F2Echelon ech(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      AlgebraElement img;
      for (const auto& t : b.representatives[r].terms)
        for (int u : image[alg.index(t)]) img += AlgebraElement{{alg.diagram(u)}};
      auto coords = hb.coordinates(img);
      BitVector v(k);
      for (std::size_t c = 0; c < coords.size(); ++c)
        if (coords[c]) v.flip(c);
      if (!ech.insert(v, r))
        return CheckResult::failure("phi_1 is singular on the homology block of " +
                                        to_string(z, b.representatives[0]),
                                    res.checked);
    }
  }
  return res;
}

TypeDAStructure box_aa_dd(const StrandsAlgebra& alg, AAEvaluator aa, const TypeDDStructure& dd,
                          BoxConvention conv) {
  TypeDAStructure da;
  da.generators = dd.generators;
  // Arrows grouped by source, captured by value so the result is standalone.
  std::map<std::uint32_t, std::vector<DDArrow>> from;
  for (const auto& a : dd.arrows) from[a.source.mask].push_back(a);

  da.delta = [&alg, aa, from, conv](Idempotent i, const std::vector<int>& in) {
    std::vector<DATerm> out;
    if (in.empty()) return out;
    Multiplicity budget(alg.pmc().num_segments(), 0);
    for (int b : in) add_mult(budget, alg.mult(b), 1);

    std::vector<int> chain;  // A' coefficients in DD order
    // Walk chains of DD arrows whose A-side product stays nonzero and whose
    // A'-side multiplicity fits in the inputs' multiplicity.
    std::function<void(Idempotent, int)> rec = [&](Idempotent at, int product) {
      if (!chain.empty()) {
        std::vector<int> left = chain;
        if (conv == BoxConvention::Reversed) std::reverse(left.begin(), left.end());
        bool conserved = std::all_of(budget.begin(), budget.end(), [](int v) { return v == 0; });
        if (conserved)
          for (Idempotent j : aa(i, left, in))
            if (j == at) out.emplace_back(product, j);
      }
      auto it = from.find(at.mask);
      if (it == from.end()) return;
      for (const DDArrow& a : it->second) {
        const Multiplicity& m = alg.mult(a.right);
        bool fits = true;
        for (std::size_t k = 0; k < m.size(); ++k) fits = fits && m[k] <= budget[k];
        if (!fits) continue;
        int next = product < 0 ? a.left
                   : conv == BoxConvention::Forward ? alg.mul(product, a.left)
                                                    : alg.mul(a.left, product);
        if (next < 0) continue;
        add_mult(budget, m, -1);
        chain.push_back(a.right);
        rec(a.target, next);
        chain.pop_back();
        add_mult(budget, m, 1);
      }
    };
    rec(i, -1);
    f2_normalize(out);
    return out;
  };
  return da;
}

}  // namespace bordered
