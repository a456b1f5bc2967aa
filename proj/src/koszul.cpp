#include "bordered/koszul.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "bordered/f2.hpp"
#include "bordered/perturbation.hpp"

namespace bordered {

namespace {

bool fits(const Multiplicity& m, const Multiplicity& top) {
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] > top[k]) return false;
  return true;
}

// Non-idempotent basis elements grouped by left idempotent.
std::map<std::uint32_t, std::vector<int>> by_left(const StrandsAlgebra& alg) {
  std::map<std::uint32_t, std::vector<int>> out;
  for (int b = 0; b < alg.size(); ++b)
    if (!alg.is_idempotent(b)) out[alg.left(b).mask].push_back(b);
  return out;
}

}  // namespace

void normalize(CobarElement& x) { f2_normalize(x); }

bool is_valid(const StrandsAlgebra& alg, const CobarMonomial& m) {
  for (std::size_t k = 0; k < m.word.size(); ++k) {
    int b = m.word[k];
    if (b < 0 || b >= alg.size() || alg.is_idempotent(b)) return false;
    if (k + 1 < m.word.size() && alg.right(b) != alg.left(m.word[k + 1])) return false;
  }
  return true;
}

std::string to_string(const StrandsAlgebra& alg, const CobarMonomial& m) {
  if (m.word.empty()) return "1";
  std::string out;
  for (int b : m.word) {
    if (!out.empty()) out += ' ';
    out += "(" + alg.str(b) + ")*";
  }
  return out;
}

std::string to_string(const StrandsAlgebra& alg, const CobarElement& x) {
  if (x.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& m : x) parts.push_back(to_string(alg, m));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " + ") + p;
  return out;
}

CobarElement parse_cobar(const StrandsAlgebra& alg, std::string_view text) {
  const Pmc& z = alg.pmc();
  CobarElement out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto fail = [&](const std::string& msg) { return ParseError(msg, 0, static_cast<int>(pos) + 1); };
  skip();
  if (text.substr(pos, 1) == "0" && text.find_first_not_of(' ', pos + 1) == std::string_view::npos) return out;
  while (true) {
    skip();
    CobarMonomial m;
    if (pos < text.size() && text[pos] == '1') {
      ++pos;
    } else {
      while (pos < text.size() && text[pos] == '(') {
        std::size_t close = text.find(")*", pos);
        if (close == std::string_view::npos) throw fail("expected ')*'");
        std::string_view inner = text.substr(pos + 1, close - pos - 1);
        StrandDiagram d;
        try {
          d = parse_diagram(z, inner);
        } catch (const ParseError& e) {
          throw ParseError(e.detail(), 0, static_cast<int>(pos) + 1 + std::max(e.column(), 1));
        }
        int idx = alg.find(d);
        if (idx < 0) throw fail("not a basis diagram");
        if (alg.is_idempotent(idx)) throw std::invalid_argument("idempotent letter (" + alg.str(idx) + ")*");
        m.word.push_back(idx);
        pos = close + 2;
        skip();
      }
      if (m.word.empty()) throw fail("expected '(' or '1'");
    }
    if (!is_valid(alg, m)) throw std::invalid_argument("letters are not composable: " + to_string(alg, m));
    out.push_back(std::move(m));
    skip();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw fail("expected '+'");
    ++pos;
  }
  normalize(out);
  return out;
}

std::optional<int> augmentation(const StrandsAlgebra& alg, int a) {
  if (alg.is_idempotent(a)) return a;
  return std::nullopt;
}

CobarElement cobar_diff(const StrandsAlgebra& alg, const CobarMonomial& m) {
  CobarElement out;
  auto groups = by_left(alg);
  for (std::size_t k = 0; k < m.word.size(); ++k) {
    const int b = m.word[k];
    // b* -> a* for every a whose differential contains b.
    for (int a : alg.codiff(b)) {
      CobarMonomial t = m;
      t.word[k] = a;
      out.push_back(std::move(t));
    }
    // b* -> c* c'* for every factorization c c' = b.
    auto it = groups.find(alg.left(b).mask);
    if (it == groups.end()) continue;
    for (int c : it->second) {
      if (c == b || !fits(alg.mult(c), alg.mult(b))) continue;
      for (int c2 : alg.factor_left(b, c)) {
        if (alg.is_idempotent(c2)) continue;
        CobarMonomial t;
        t.word.assign(m.word.begin(), m.word.begin() + k);
        t.word.push_back(c);
        t.word.push_back(c2);
        t.word.insert(t.word.end(), m.word.begin() + k + 1, m.word.end());
        out.push_back(std::move(t));
      }
    }
  }
  normalize(out);
  return out;
}

CobarElement cobar_diff(const StrandsAlgebra& alg, const CobarElement& x) {
  CobarElement out;
  for (const auto& m : x) {
    auto t = cobar_diff(alg, m);
    out.insert(out.end(), t.begin(), t.end());
  }
  normalize(out);
  return out;
}

CobarElement phi1(const StrandsAlgebra& alg, int a) {
  CobarElement out;
  for (auto& w : phi1_terms(alg, a)) {
    CobarMonomial m{std::move(w)};
    if (!is_valid(alg, m)) throw std::logic_error("phi_1 produced a non-composable word " + to_string(alg, m));
    out.push_back(std::move(m));
  }
  normalize(out);
  return out;
}

CobarElement phi1(const StrandsAlgebra& alg, const AlgebraElement& a) {
  CobarElement out;
  for (const auto& d : a.terms) {
    auto t = phi1(alg, alg.index(d));
    out.insert(out.end(), t.begin(), t.end());
  }
  normalize(out);
  return out;
}

CobarGrading grading(const StrandsAlgebra& alg, const CobarMonomial& m) {
  if (m.word.empty()) throw std::invalid_argument("the empty word has no grading");
  CobarGrading g{Multiplicity(alg.pmc().num_segments(), 0), alg.left(m.word.front()), alg.right(m.word.back())};
  for (int b : m.word)
    for (std::size_t k = 0; k < g.mult.size(); ++k) g.mult[k] += alg.mult(b)[k];
  return g;
}

std::vector<CobarMonomial> graded_piece(const StrandsAlgebra& alg, const CobarGrading& g) {
  auto groups = by_left(alg);
  std::vector<CobarMonomial> out;
  CobarMonomial cur;
  Multiplicity rest = g.mult;
  std::function<void(Idempotent)> rec = [&](Idempotent at) {
    bool done = std::all_of(rest.begin(), rest.end(), [](int v) { return v == 0; });
    if (done) {
      if (!cur.word.empty() && at == g.right) out.push_back(cur);
      return;
    }
    auto it = groups.find(at.mask);
    if (it == groups.end()) return;
    for (int b : it->second) {
      const Multiplicity& m = alg.mult(b);
      if (!fits(m, rest)) continue;
      for (std::size_t k = 0; k < m.size(); ++k) rest[k] -= m[k];
      cur.word.push_back(b);
      rec(alg.right(b));
      cur.word.pop_back();
      for (std::size_t k = 0; k < m.size(); ++k) rest[k] += m[k];
    }
  };
  rec(g.left);
  std::sort(out.begin(), out.end());
  return out;
}

BoundaryCertificate is_boundary(const StrandsAlgebra& alg, const CobarElement& x) {
  BoundaryCertificate cert;
  if (x.empty()) {
    cert.boundary = true;
    return cert;
  }
  const CobarGrading g = grading(alg, x.front());
  for (const auto& m : x)
    if (grading(alg, m) != g) throw std::invalid_argument("cobar element is not homogeneous");

  auto piece = graded_piece(alg, g);
  const std::size_t n = piece.size();
  auto position = [&](const CobarMonomial& m) {
    auto it = std::lower_bound(piece.begin(), piece.end(), m);
    if (it == piece.end() || *it != m) throw std::logic_error("monomial outside its graded piece");
    return static_cast<std::size_t>(it - piece.begin());
  };
  F2Echelon ech(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    BitVector v(n);
    for (const auto& t : cobar_diff(alg, piece[k])) v.flip(position(t));
    ech.insert(std::move(v), k);
  }
  BitVector target(n);
  for (const auto& m : x) target.flip(position(m));
  auto [residual, comb] = ech.reduce(target);
  cert.piece_dim = n;
  cert.rank_d = ech.rank();
  cert.boundary = !residual.any();
  cert.rank_with_x = cert.rank_d + (cert.boundary ? 0 : 1);
  if (cert.boundary)
    for (auto k : comb.ones()) cert.primitive.push_back(piece[k]);
  return cert;
}

std::string check_cobar_d_squared(const StrandsAlgebra& alg, const std::vector<CobarMonomial>& piece) {
  for (const auto& m : piece)
    if (!cobar_diff(alg, cobar_diff(alg, m)).empty()) return to_string(alg, m);
  return "";
}

bool homologous_in_A(const StrandsAlgebra& alg, const HomologyBasis& hb, const AlgebraElement& a,
                     const AlgebraElement& b) {
  for (const auto* x : {&a, &b}) {
    if (!hb.is_cycle(*x)) throw std::invalid_argument("not a cycle: " + to_string(alg.pmc(), *x));
    hb.is_boundary(*x);  // throws unless homogeneous
  }
  auto block = [&](const AlgebraElement& x) { return x.is_zero() ? -1 : hb.block_of(alg.index(x.terms[0])); };
  if (block(a) != block(b)) return hb.is_boundary(a) && hb.is_boundary(b);
  AlgebraElement sum = a;
  sum += b;
  return hb.is_boundary(sum);
}

}  // namespace bordered
