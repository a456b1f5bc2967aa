#include "bordered/strands.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bordered/f2.hpp"

namespace bordered {

std::vector<std::pair<int, int>> StrandDiagram::strands() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s <= kMaxPoints; ++s)
    if (end[s]) out.emplace_back(s, end[s]);
  return out;
}

namespace {

// Pair masks of start points and end points; sets `ok` to false on collisions.
void endpoint_pairs(const Pmc& z, const StrandDiagram& d, std::uint32_t& starts,
                    std::uint32_t& ends, std::string* why) {
  starts = ends = 0;
  for (int s = 1; s <= kMaxPoints; ++s) {
    int t = d.end[s];
    if (!t) continue;
    if (s > z.num_points() || t > z.num_points() || t <= s) {
      if (why) *why = "strand " + std::to_string(s) + "-" + std::to_string(t) + " is not upward";
      starts = ends = ~0u;
      return;
    }
    std::uint32_t ps = 1u << z.pair_of(s), pt = 1u << z.pair_of(t);
    if (starts & ps) {
      if (why) *why = "two strands start on the pair of point " + std::to_string(s);
      starts = ends = ~0u;
      return;
    }
    if (ends & pt) {
      if (why) *why = "two strands end on the pair of point " + std::to_string(t);
      starts = ends = ~0u;
      return;
    }
    starts |= ps;
    ends |= pt;
  }
}

}  // namespace

void validate(const Pmc& z, const StrandDiagram& d) {
  std::uint32_t starts, ends;
  std::string why;
  endpoint_pairs(z, d, starts, ends, &why);
  if (starts == ~0u) throw std::invalid_argument(why);
  if (d.horizontals & ~z.full_idempotent().mask)
    throw std::invalid_argument("horizontal on a nonexistent pair");
  for (int p = 0; p < z.num_pairs(); ++p) {
    if (!((d.horizontals >> p) & 1u)) continue;
    if ((starts >> p) & 1u)
      throw std::invalid_argument("a strand starts on the horizontal pair h" +
                                  std::to_string(z.pair_low(p)));
    if ((ends >> p) & 1u)
      throw std::invalid_argument("a strand ends on the horizontal pair h" +
                                  std::to_string(z.pair_low(p)));
  }
}

bool is_valid(const Pmc& z, const StrandDiagram& d) {
  std::uint32_t starts, ends;
  endpoint_pairs(z, d, starts, ends, nullptr);
  if (starts == ~0u) return false;
  if (d.horizontals & ~z.full_idempotent().mask) return false;
  return !(d.horizontals & (starts | ends));
}

Idempotent left_idempotent(const Pmc& z, const StrandDiagram& d) {
  std::uint32_t m = d.horizontals;
  for (int s = 1; s <= z.num_points(); ++s)
    if (d.end[s]) m |= 1u << z.pair_of(s);
  return {m};
}

Idempotent right_idempotent(const Pmc& z, const StrandDiagram& d) {
  std::uint32_t m = d.horizontals;
  for (int s = 1; s <= z.num_points(); ++s)
    if (d.end[s]) m |= 1u << z.pair_of(d.end[s]);
  return {m};
}

Multiplicity multiplicity(const Pmc& z, const StrandDiagram& d) {
  Multiplicity m(z.num_segments(), 0);
  for (int s = 1; s <= z.num_points(); ++s)
    for (int p = s; p < d.end[s]; ++p) ++m[p - 1];
  return m;
}

std::string to_string(const Pmc& z, const StrandDiagram& d) {
  std::string out;
  for (auto [s, t] : d.strands()) {
    if (!out.empty()) out += ',';
    out += std::to_string(s) + "-" + std::to_string(t);
  }
  for (int p = 0; p < z.num_pairs(); ++p) {
    if (!((d.horizontals >> p) & 1u)) continue;
    if (!out.empty()) out += ',';
    out += "h" + std::to_string(z.pair_low(p));
  }
  return out.empty() ? "{}" : out;
}

namespace {

int parse_int(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  int v = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    v = v * 10 + (s[pos] - '0');
    if (v > 1000) break;
    ++pos;
  }
  return pos == start ? -1 : v;
}

StrandDiagram parse_diagram_at(const Pmc& z, std::string_view text, int col0) {
  StrandDiagram d;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(msg, 0, col0 + static_cast<int>(pos));
  };
  skip();
  if (text.substr(pos) == "{}" || text.substr(pos, 2) == "{}") {
    pos += 2;
    skip();
    if (pos != text.size()) throw fail("unexpected text after '{}'");
    return d;
  }
  if (pos == text.size()) throw fail("empty diagram literal (write '{}' for the empty diagram)");
  while (true) {
    skip();
    if (pos < text.size() && text[pos] == 'h') {
      ++pos;
      int p = parse_int(text, pos);
      if (p < 1 || p > z.num_points()) throw fail("expected a point after 'h'");
      if (z.partner(p) < p)
        throw fail("horizontal must be named by the smaller point of its pair (h" +
                   std::to_string(z.partner(p)) + ")");
      std::uint32_t bit = 1u << z.pair_of(p);
      if (d.horizontals & bit) throw fail("repeated horizontal h" + std::to_string(p));
      d.horizontals |= bit;
    } else {
      int s = parse_int(text, pos);
      if (s < 1 || s > z.num_points()) throw fail("expected a strand 'p-q' or horizontal 'h<p>'");
      if (pos >= text.size() || text[pos] != '-') throw fail("expected '-' in strand");
      ++pos;
      int t = parse_int(text, pos);
      if (t < 1 || t > z.num_points()) throw fail("expected the end point of the strand");
      if (t <= s) throw fail("strands must move upward");
      if (d.end[s]) throw fail("two strands start at " + std::to_string(s));
      d.end[s] = static_cast<std::int8_t>(t);
    }
    skip();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw fail("expected ','");
    ++pos;
  }
  try {
    validate(z, d);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid diagram: ") + e.what(), 0, col0);
  }
  return d;
}

}  // namespace

StrandDiagram parse_diagram(const Pmc& z, std::string_view text) {
  return parse_diagram_at(z, text, 1);
}

void AlgebraElement::normalize() { f2_normalize(terms); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  normalize();
  return *this;
}

std::string to_string(const Pmc& z, const AlgebraElement& a) {
  if (a.terms.empty()) return "0";
  std::vector<std::string> parts;
  for (const auto& d : a.terms) parts.push_back(to_string(z, d));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " + ";
    out += p;
  }
  return out;
}

AlgebraElement parse_element(const Pmc& z, std::string_view text) {
  AlgebraElement a;
  std::size_t first = text.find_first_not_of(' ');
  if (first == std::string_view::npos) throw ParseError("empty element literal", 0, 1);
  std::size_t last = text.find_last_not_of(' ');
  if (text.substr(first, last - first + 1) == "0") return a;
  std::size_t start = 0;
  while (true) {
    std::size_t plus = text.find('+', start);
    std::string_view piece = text.substr(start, plus == std::string_view::npos ? plus : plus - start);
    a.terms.push_back(parse_diagram_at(z, piece, static_cast<int>(start) + 1));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  a.normalize();
  return a;
}

// ---------------------------------------------------------------------------

std::vector<BigTerm> expand(const Pmc& z, const StrandDiagram& d) {
  std::vector<BigTerm> out(1);
  for (int s = 1; s <= z.num_points(); ++s) out[0].end[s] = d.end[s];
  for (int p = 0; p < z.num_pairs(); ++p) {
    if (!((d.horizontals >> p) & 1u)) continue;
    std::size_t n = out.size();
    for (std::size_t k = 0; k < n; ++k) {
      BigTerm hi = out[k];
      out[k].end[z.pair_low(p)] = static_cast<std::int8_t>(z.pair_low(p));
      hi.end[z.pair_high(p)] = static_cast<std::int8_t>(z.pair_high(p));
      out.push_back(hi);
    }
  }
  return out;
}

int inversions(const BigTerm& t) {
  int n = 0;
  for (int a = 1; a <= kMaxPoints; ++a) {
    if (!t.end[a]) continue;
    for (int b = a + 1; b <= kMaxPoints; ++b)
      if (t.end[b] && t.end[a] > t.end[b]) ++n;
  }
  return n;
}

std::vector<BigTerm> big_diff(const BigTerm& t) {
  std::vector<BigTerm> out;
  int inv = inversions(t);
  for (int a = 1; a <= kMaxPoints; ++a) {
    if (!t.end[a]) continue;
    for (int b = a + 1; b <= kMaxPoints; ++b) {
      if (!t.end[b] || t.end[a] <= t.end[b]) continue;
      BigTerm r = t;
      std::swap(r.end[a], r.end[b]);
      if (inversions(r) == inv - 1) out.push_back(r);
    }
  }
  return out;
}

std::vector<BigTerm> big_mul(const BigTerm& a, const BigTerm& b) {
  std::uint32_t a_ends = 0, b_starts = 0;
  for (int s = 1; s <= kMaxPoints; ++s) {
    if (a.end[s]) a_ends |= 1u << a.end[s];
    if (b.end[s]) b_starts |= 1u << s;
  }
  if (a_ends != b_starts) return {};
  BigTerm c;
  for (int s = 1; s <= kMaxPoints; ++s)
    if (a.end[s]) c.end[s] = b.end[a.end[s]];
  if (inversions(c) != inversions(a) + inversions(b)) return {};
  return {c};
}

std::vector<StrandDiagram> regroup(const Pmc& z, std::vector<BigTerm> terms) {
  f2_normalize(terms);
  std::map<StrandDiagram, int> groups;
  for (const auto& t : terms) {
    StrandDiagram d;
    bool ok = true;
    for (int s = 1; s <= z.num_points(); ++s) {
      int e = t.end[s];
      if (!e) continue;
      if (e > s) {
        d.end[s] = static_cast<std::int8_t>(e);
      } else {
        std::uint32_t bit = 1u << z.pair_of(s);
        if (d.horizontals & bit) ok = false;
        d.horizontals |= bit;
      }
    }
    if (!ok || !is_valid(z, d))
      throw std::logic_error("regrouping failed: uncancelled big term outside A(Z)");
    ++groups[d];
  }
  std::vector<StrandDiagram> out;
  for (const auto& [d, count] : groups) {
    if (count != (1 << __builtin_popcount(d.horizontals)))
      throw std::logic_error("regrouping failed: incomplete horizontal expansion of " +
                             to_string(z, d));
    out.push_back(d);
  }
  return out;
}

AlgebraElement diff(const Pmc& z, const StrandDiagram& d) {
  std::vector<BigTerm> big;
  for (const auto& t : expand(z, d))
    for (auto& r : big_diff(t)) big.push_back(r);
  return {regroup(z, std::move(big))};
}

AlgebraElement mul(const Pmc& z, const StrandDiagram& a, const StrandDiagram& b) {
  if (right_idempotent(z, a) != left_idempotent(z, b)) return {};
  std::vector<BigTerm> big;
  auto eb = expand(z, b);
  for (const auto& x : expand(z, a))
    for (const auto& y : eb)
      for (auto& r : big_mul(x, y)) big.push_back(r);
  AlgebraElement out{regroup(z, std::move(big))};
  if (out.terms.size() > 1) throw std::logic_error("product of basis diagrams has several terms");
  return out;
}

AlgebraElement chord_element(const Pmc& z, Chord xi, Idempotent i) {
  int ps = z.pair_of(xi.start), pe = z.pair_of(xi.end);
  if (!i.contains(ps)) return {};
  StrandDiagram d;
  d.end[xi.start] = static_cast<std::int8_t>(xi.end);
  d.horizontals = i.mask & ~(1u << ps);
  if ((d.horizontals >> pe) & 1u) return {};
  return {{d}};
}

AlgebraElement chord_element_right(const Pmc& z, Chord xi, Idempotent j) {
  int ps = z.pair_of(xi.start), pe = z.pair_of(xi.end);
  if (!j.contains(pe)) return {};
  StrandDiagram d;
  d.end[xi.start] = static_cast<std::int8_t>(xi.end);
  d.horizontals = j.mask & ~(1u << pe);
  if ((d.horizontals >> ps) & 1u) return {};
  return {{d}};
}

std::vector<StrandDiagram> enumerate_basis(const Pmc& z) {
  std::vector<StrandDiagram> out;
  const int n = z.num_points();
  StrandDiagram cur;
  // Choose, for each point in turn, either no strand or a strand to a later
  // point; then decorate with every admissible set of horizontals.
  std::function<void(int, std::uint32_t, std::uint32_t, std::uint32_t)> rec =
      [&](int s, std::uint32_t starts, std::uint32_t ends, std::uint32_t used_ends) {
        if (s > n) {
          std::uint32_t free = z.full_idempotent().mask & ~(starts | ends);
          for (std::uint32_t h = free;; h = (h - 1) & free) {
            cur.horizontals = h;
            out.push_back(cur);
            if (h == 0) break;
          }
          return;
        }
        rec(s + 1, starts, ends, used_ends);
        std::uint32_t ps = 1u << z.pair_of(s);
        if (starts & ps) return;
        for (int t = s + 1; t <= n; ++t) {
          std::uint32_t pt = 1u << z.pair_of(t);
          if ((ends & pt) || (used_ends >> t & 1u)) continue;
          cur.end[s] = static_cast<std::int8_t>(t);
          rec(s + 1, starts | ps, ends | pt, used_ends | (1u << t));
          cur.end[s] = 0;
        }
      };
  rec(1, 0, 0, 0);
  std::vector<std::pair<std::string, StrandDiagram>> keyed;
  for (auto& d : out) keyed.emplace_back(to_string(z, d), d);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    int na = a.second.num_moving(), nb = b.second.num_moving();
    if (na != nb) return na < nb;
    return a.first < b.first;
  });
  out.clear();
  for (auto& [k, d] : keyed) out.push_back(d);
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t pack_multiplicity(const Multiplicity& m) {
  std::uint64_t r = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] > 15) throw std::overflow_error("multiplicity too large to pack");
    r |= static_cast<std::uint64_t>(m[k]) << (4 * k);
  }
  return r;
}

StrandsAlgebra::StrandsAlgebra(Pmc z) : z_(std::move(z)) {
  basis_ = enumerate_basis(z_);
  const int n = size();
  info_.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto& d = basis_[k];
    index_.emplace(d, k);
    Info& in = info_[k];
    in.left = left_idempotent(z_, d);
    in.right = right_idempotent(z_, d);
    in.mult = multiplicity(z_, d);
    for (int v : in.mult) in.total += v;
    in.key = {in.left.mask, in.right.mask, pack_multiplicity(in.mult)};
    blocks_[in.key].push_back(k);
  }
}

const std::vector<int>& StrandsAlgebra::diff(int idx) const {
  {
    std::lock_guard<std::mutex> lock(diff_mutex_);
    auto it = diff_cache_.find(idx);
    if (it != diff_cache_.end()) return it->second;
  }
  std::vector<int> out;
  for (const auto& t : bordered::diff(z_, basis_[idx]).terms) out.push_back(index(t));
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(diff_mutex_);
  return diff_cache_.emplace(idx, std::move(out)).first->second;
}

const std::vector<int>& StrandsAlgebra::codiff(int idx) const {
  {
    std::lock_guard<std::mutex> lock(diff_mutex_);
    auto it = codiff_cache_.find(idx);
    if (it != codiff_cache_.end()) return it->second;
  }
  // The differential preserves idempotents and multiplicity, so preimages
  // live in the same block.
  std::vector<int> out;
  for (int a : block(info_[idx].key)) {
    const auto& da = diff(a);
    if (std::binary_search(da.begin(), da.end(), idx)) out.push_back(a);
  }
  std::lock_guard<std::mutex> lock(diff_mutex_);
  return codiff_cache_.emplace(idx, std::move(out)).first->second;
}

int StrandsAlgebra::find(const StrandDiagram& d) const {
  auto it = index_.find(d);
  return it == index_.end() ? -1 : it->second;
}

int StrandsAlgebra::index(const StrandDiagram& d) const {
  int k = find(d);
  if (k < 0) throw std::logic_error("not a basis diagram: " + to_string(z_, d));
  return k;
}

int StrandsAlgebra::mul(int a, int b) const {
  if (info_[a].right != info_[b].left) return -1;
  if (info_[a].total == 0) return b;
  if (info_[b].total == 0) return a;
  std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
  {
    std::lock_guard<std::mutex> lock(mul_mutex_);
    auto it = mul_cache_.find(key);
    if (it != mul_cache_.end()) return it->second;
  }
  auto prod = bordered::mul(z_, basis_[a], basis_[b]);
  int r = prod.is_zero() ? -1 : index(prod.terms[0]);
  std::lock_guard<std::mutex> lock(mul_mutex_);
  mul_cache_.emplace(key, r);
  return r;
}

const std::vector<int>& StrandsAlgebra::block(const BlockKey& key) const {
  static const std::vector<int> empty;
  auto it = blocks_.find(key);
  return it == blocks_.end() ? empty : it->second;
}

std::vector<int> StrandsAlgebra::factor_right(int a, int b) const {
  std::vector<int> out;
  const Info& ia = info_[a];
  const Info& ib = info_[b];
  if (ia.right != ib.right) return out;
  Multiplicity m(ia.mult.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    m[k] = ia.mult[k] - ib.mult[k];
    if (m[k] < 0) return out;
  }
  for (int c : block({ia.left.mask, ib.left.mask, pack_multiplicity(m)}))
    if (mul(c, b) == a) out.push_back(c);
  return out;
}

std::vector<int> StrandsAlgebra::factor_left(int a, int e) const {
  std::vector<int> out;
  const Info& ia = info_[a];
  const Info& ie = info_[e];
  if (ia.left != ie.left) return out;
  Multiplicity m(ia.mult.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    m[k] = ia.mult[k] - ie.mult[k];
    if (m[k] < 0) return out;
  }
  for (int c : block({ie.right.mask, ia.right.mask, pack_multiplicity(m)}))
    if (mul(e, c) == a) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------

struct HomologyBasis::Solver {
  std::size_t m = 0;
  F2Echelon boundaries{0, 0};
  F2Echelon cycles{0, 0};  // boundaries plus representatives
  std::vector<int> rep_of_source;
};

HomologyBasis::HomologyBasis(const StrandsAlgebra& alg) : alg_(&alg) {
  const int n = alg.size();
  block_of_.assign(n, -1);
  pos_in_block_.assign(n, -1);
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>, int> order;
  for (int k = 0; k < n; ++k) {
    auto key = alg.block_key(k);
    auto [it, fresh] =
        order.emplace(std::make_tuple(key.left, key.right, key.mult), static_cast<int>(order.size()));
    (void)fresh;
  }
  // Number the blocks in sorted key order for deterministic output.
  int next = 0;
  for (auto& [key, id] : order) id = next++;
  blocks_.resize(order.size());
  for (int k = 0; k < n; ++k) {
    auto key = alg.block_key(k);
    int b = order[{key.left, key.right, key.mult}];
    blocks_[b].key = key;
    pos_in_block_[k] = static_cast<int>(blocks_[b].members.size());
    blocks_[b].members.push_back(k);
    block_of_[k] = b;
  }

  for (auto& blk : blocks_) {
    auto s = std::make_shared<Solver>();
    const std::size_t m = blk.members.size();
    s->m = m;
    auto dvec = [&](std::size_t j) {
      BitVector v(m);
      for (int t : alg.diff(blk.members[j])) v.flip(pos_in_block_[t]);
      return v;
    };
    s->boundaries = F2Echelon(m, m);
    std::vector<BitVector> kernel;
    for (std::size_t j = 0; j < m; ++j) {
      BitVector rel;
      if (!s->boundaries.insert(dvec(j), j, &rel)) kernel.push_back(rel);
    }
    s->cycles = F2Echelon(m, m + kernel.size());
    for (std::size_t j = 0; j < m; ++j) s->cycles.insert(dvec(j), j);
    for (std::size_t r = 0; r < kernel.size(); ++r) {
      if (s->cycles.insert(kernel[r], m + r)) {
        AlgebraElement rep;
        for (auto j : kernel[r].ones()) rep.terms.push_back(alg.diagram(blk.members[j]));
        rep.normalize();
        s->rep_of_source.push_back(static_cast<int>(blk.representatives.size()));
        blk.representatives.push_back(std::move(rep));
      } else {
        s->rep_of_source.push_back(-1);
      }
    }
    solvers_.push_back(std::move(s));
  }
}

int HomologyBasis::total_rank() const {
  int r = 0;
  for (const auto& b : blocks_) r += static_cast<int>(b.representatives.size());
  return r;
}

int HomologyBasis::homogeneous_block(const AlgebraElement& x) const {
  int b = -1;
  for (const auto& d : x.terms) {
    int k = alg_->index(d);
    if (b >= 0 && block_of_[k] != b) throw std::invalid_argument("element is not homogeneous");
    b = block_of_[k];
  }
  return b;
}

bool HomologyBasis::is_cycle(const AlgebraElement& x) const {
  std::vector<int> acc;
  for (const auto& d : x.terms)
    for (int t : alg_->diff(alg_->index(d))) acc.push_back(t);
  f2_normalize(acc);
  return acc.empty();
}

bool HomologyBasis::is_boundary(const AlgebraElement& x) const {
  int b = homogeneous_block(x);
  if (b < 0) return true;
  BitVector v(solvers_[b]->m);
  for (const auto& d : x.terms) v.flip(pos_in_block_[alg_->index(d)]);
  return solvers_[b]->boundaries.contains(v);
}

std::vector<bool> HomologyBasis::coordinates(const AlgebraElement& x) const {
  int b = homogeneous_block(x);
  if (b < 0) return {};
  if (!is_cycle(x)) throw std::invalid_argument("element is not a cycle");
  const Solver& s = *solvers_[b];
  BitVector v(s.m);
  for (const auto& d : x.terms) v.flip(pos_in_block_[alg_->index(d)]);
  auto [res, comb] = s.cycles.reduce(v);
  if (res.any()) throw std::logic_error("cycle outside the span of boundaries and representatives");
  std::vector<bool> out(blocks_[b].representatives.size(), false);
  for (auto src : comb.ones())
    if (src >= s.m) out[s.rep_of_source[src - s.m]] = true;
  return out;
}

}  // namespace bordered
