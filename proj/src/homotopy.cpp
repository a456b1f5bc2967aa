#include "bordered/homotopy.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "bordered/parallel.hpp"

namespace bordered {

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Idempotent: return "idempotent";
    case CaseTag::H1: return "H-1";
    case CaseTag::H2: return "H-2";
    case CaseTag::H3: return "H-3";
    case CaseTag::H4: return "H-4";
    case CaseTag::D5: return "d-5";
    case CaseTag::D6: return "d-6";
    case CaseTag::D7: return "d-7";
    case CaseTag::D8: return "d-8";
    case CaseTag::HM1: return "(d,H)-1 H";
    case CaseTag::DM1: return "(d,H)-1 d";
    case CaseTag::HM2: return "(d,H)-2 H";
    case CaseTag::DM2: return "(d,H)-2 d";
    case CaseTag::HM3: return "H-3 (mult>1)";
    case CaseTag::DM4: return "d-4 (mult>1)";
  }
  return "?";
}

bool is_h_side(CaseTag t) {
  switch (t) {
    case CaseTag::H1:
    case CaseTag::H2:
    case CaseTag::H3:
    case CaseTag::H4:
    case CaseTag::HM1:
    case CaseTag::HM2:
    case CaseTag::HM3: return true;
    default: return false;
  }
}

bool is_d_side(CaseTag t) { return t != CaseTag::Idempotent && !is_h_side(t); }

namespace {

bool covers(const StrandDiagram& d, int lower) {
  for (int s = 1; s <= lower; ++s)
    if (d.end[s] > lower) return true;
  return false;
}

// Start of the strand covering (lower, lower+1), or 0.
int covering_start(const StrandDiagram& d, int lower) {
  for (int s = 1; s <= lower; ++s)
    if (d.end[s] > lower) return s;
  return 0;
}

}  // namespace

Classification classify(const StrandsAlgebra& alg, BigGenerator x) {
  const Pmc& z = alg.pmc();
  const StrandDiagram& a1 = alg.diagram(x.a1);
  const StrandDiagram& a2 = alg.diagram(x.a2);
  Classification c;
  auto m = multiplicity_of(alg, x);
  int top = *std::max_element(m.begin(), m.end());
  if (top == 0) return c;

  if (top == 1) {
    for (Segment s : z.segment_order())
      if (m[s.lower - 1] == 1) {
        c.p = s.lower;
        break;
      }
    const int p1 = c.p + 1;
    c.q = z.partner(p1);
    if (c.q < z.num_points() && m[c.q - 1] != 0)
      throw std::logic_error("key pair of " + to_string(alg, x) + " has multiplicity at (q,q+1)");
    const int pair = z.pair_of(p1);
    c.segment_side = covers(a1, c.p) ? Side::Left : Side::Right;
    c.pair_side = alg.left(x.a1).contains(pair) ? Side::Left : Side::Right;
    const StrandDiagram& holder = c.pair_side == Side::Left ? a1 : a2;
    if ((holder.horizontals >> pair) & 1u) {
      c.pair_moving = false;
    } else {
      if (!holder.end[p1])
        throw std::logic_error("key pair of " + to_string(alg, x) + " is held by a strand from q");
      c.pair_moving = true;
    }
    c.special = a1.start_of(c.q) != 0;
    static const CaseTag table[2][4] = {
        {CaseTag::H1, CaseTag::D7, CaseTag::D5, CaseTag::D8},
        {CaseTag::H3, CaseTag::D6, CaseTag::H4, CaseTag::H2},
    };
    int col = (c.pair_moving ? 2 : 0) + (c.pair_side == Side::Right ? 1 : 0);
    c.tag = table[c.segment_side == Side::Right][col];
    return c;
  }

  int i = 1;
  while (m[i - 1] < 2) ++i;
  c.i = i;
  if (i == 1 || m[i - 1] != 2 || m[i - 2] != 1)
    throw std::logic_error("unexpected multiplicity pattern in " + to_string(alg, x));
  c.i_side = a1.end[i] ? Side::Left : Side::Right;
  const StrandDiagram& is = c.i_side == Side::Left ? a1 : a2;
  if (!is.end[i]) throw std::logic_error("no strand starts at i in " + to_string(alg, x));
  int jl = covering_start(a1, i - 1), jr = covering_start(a2, i - 1);
  c.j_side = jl ? Side::Left : Side::Right;
  c.j = jl ? jl : jr;
  const StrandDiagram& js = c.j_side == Side::Left ? a1 : a2;
  c.crossing = js.end[c.j] > is.end[i];
  if (c.i_side == Side::Left && c.j_side == Side::Left)
    c.tag = c.crossing ? CaseTag::HM1 : CaseTag::DM1;
  else if (c.i_side == Side::Right && c.j_side == Side::Right)
    c.tag = c.crossing ? CaseTag::DM2 : CaseTag::HM2;
  else if (c.i_side == Side::Left)
    c.tag = CaseTag::HM3;
  else
    c.tag = CaseTag::DM4;
  return c;
}

namespace {

class Builder {
 public:
  Builder(const StrandsAlgebra& alg, BigGenerator x) : alg_(alg), x_(x) {}

  BigGenerator make(const StrandDiagram& b1, const StrandDiagram& b2, const char* what) const {
    const Pmc& z = alg_.pmc();
    for (const auto* d : {&b1, &b2})
      if (!is_valid(z, *d))
        throw std::logic_error(std::string(what) + " on " + to_string(alg_, x_) +
                               " produced an invalid diagram");
    BigGenerator y{alg_.index(b1), alg_.index(b2)};
    if (!is_generator(alg_, y))
      throw std::logic_error(std::string(what) + " on " + to_string(alg_, x_) +
                             " broke complementarity");
    return y;
  }

 private:
  const StrandsAlgebra& alg_;
  BigGenerator x_;
};

}  // namespace

std::vector<HomotopyTerm> homotopy_terms(const StrandsAlgebra& alg, BigGenerator x,
                                         const HomotopyOptions& opt) {
  std::vector<HomotopyTerm> out;
  Classification c = classify(alg, x);
  if (!is_h_side(c.tag)) return out;
  const Pmc& z = alg.pmc();
  const StrandDiagram& a1 = alg.diagram(x.a1);
  const StrandDiagram& a2 = alg.diagram(x.a2);
  Builder build(alg, x);
  const int p1 = c.p + 1, q = c.q;
  const std::uint32_t key_bit = c.multiplicity_one() ? 1u << z.pair_of(p1) : 0;

  switch (c.tag) {
    case CaseTag::H1: {
      // a -> b on the left crosses the horizontal at p+1: split it there.
      int a = covering_start(a1, c.p);
      int b = a1.end[a];
      StrandDiagram l = a1;
      l.remove_strand(a);
      l.add_strand(a, p1);
      l.add_strand(p1, b);
      l.horizontals &= ~key_bit;
      out.push_back({build.make(l, a2, "H case 1"), false});
      break;
    }
    case CaseTag::H2: {
      int i = a2.start_of(p1);
      int j = a2.end[p1];
      StrandDiagram r = a2;
      r.remove_strand(i);
      r.remove_strand(p1);
      r.add_strand(i, j);
      r.horizontals |= key_bit;
      out.push_back({build.make(a1, r, "H case 2"), false});
      int s = a1.start_of(q);
      if (s && opt.case2_special) {
        StrandDiagram l2 = a1, r2 = a2;
        l2.remove_strand(s);
        l2.add_strand(i, p1);
        r2.remove_strand(i);
        r2.add_strand(s, q);
        out.push_back({build.make(l2, r2, "special H case 2"), true});
      }
      break;
    }
    case CaseTag::H3: {
      int i = covering_start(a2, c.p);
      int j = a2.end[i];
      StrandDiagram l = a1, r = a2;
      l.horizontals &= ~key_bit;
      l.add_strand(i, p1);
      r.remove_strand(i);
      if (j == p1)
        r.horizontals |= key_bit;
      else
        r.add_strand(p1, j);
      out.push_back({build.make(l, r, "H case 3"), false});
      break;
    }
    case CaseTag::H4: {
      int i = a2.start_of(p1);
      int j = a1.end[p1];
      StrandDiagram l = a1, r = a2;
      l.remove_strand(p1);
      l.add_strand(i, j);
      r.remove_strand(i);
      r.horizontals |= key_bit;
      out.push_back({build.make(l, r, "H case 4"), false});
      int s = a1.start_of(q);
      bool want = s && (s != p1 ? opt.case4_first_special : opt.case4_second_special);
      if (want) {
        StrandDiagram l2 = a1, r2 = a2;
        l2.remove_strand(s);
        l2.add_strand(i, p1);
        r2.remove_strand(i);
        r2.add_strand(s, q);
        out.push_back({build.make(l2, r2, s != p1 ? "first special H case 4" : "second special H case 4"),
                       true});
      }
      break;
    }
    case CaseTag::HM1:
    case CaseTag::HM2: {
      // Swap the ends of the i and j strands on their common side.
      StrandDiagram d = c.tag == CaseTag::HM1 ? a1 : a2;
      std::swap(d.end[c.i], d.end[c.j]);
      out.push_back({c.tag == CaseTag::HM1 ? build.make(d, a2, "H case 1 (mult>1)")
                                           : build.make(a1, d, "H case 2 (mult>1)"),
                     false});
      break;
    }
    case CaseTag::HM3: {
      // Factor j -> i off the right strand and attach it below the i strand.
      StrandDiagram l = a1, r = a2;
      int ei = a1.end[c.i], ej = a2.end[c.j];
      l.remove_strand(c.i);
      l.add_strand(c.j, ei);
      r.remove_strand(c.j);
      r.add_strand(c.i, ej);
      out.push_back({build.make(l, r, "H case 3 (mult>1)"), false});
      break;
    }
    default: break;
  }
  return out;
}

BigElement homotopy(const StrandsAlgebra& alg, BigGenerator x, const HomotopyOptions& opt) {
  BigElement out;
  for (const auto& t : homotopy_terms(alg, x, opt)) out.push_back(t.target);
  normalize(out);
  return out;
}

BigElement homotopy(const StrandsAlgebra& alg, const BigElement& x, const HomotopyOptions& opt) {
  BigElement out;
  for (auto g : x)
    for (auto t : homotopy(alg, g, opt)) out.push_back(t);
  normalize(out);
  return out;
}

BigElement homotopy_defect(const StrandsAlgebra& alg, BigGenerator x, const HomotopyOptions& opt) {
  BigElement out = big_d(alg, homotopy(alg, x, opt));
  for (auto g : homotopy(alg, big_d(alg, x), opt)) out.push_back(g);
  normalize(out);
  return out;
}

namespace {

template <class Check>
CheckResult scan(int n, int jobs, Check check) {
  std::mutex mu;
  int first = n;
  std::string message;
  parallel_for(n, jobs, [&](int k) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (k > first) return;
    }
    std::string msg;
    try {
      msg = check(k);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    if (msg.empty()) return;
    std::lock_guard<std::mutex> lock(mu);
    if (k < first) {
      first = k;
      message = msg;
    }
  });
  if (first < n) return CheckResult::failure(message, first + 1);
  return {true, "", n};
}

}  // namespace

CheckResult verify_homotopy(const BigModel& m, const HomotopyOptions& opt, int jobs) {
  const StrandsAlgebra& alg = m.algebra();
  return scan(m.size(), jobs, [&](int k) -> std::string {
    BigGenerator x = m.generator(k);
    BigElement lhs = homotopy_defect(alg, x, opt);
    BigElement rhs;
    if (!is_idempotent_pair(alg, x)) rhs.push_back(x);
    if (lhs == rhs) return "";
    return "dH + Hd != I + fg at " + to_string(alg, x) + " (" + to_string(classify(alg, x).tag) +
           "): dH x = " + to_string(alg, big_d(alg, homotopy(alg, x, opt))) +
           ", Hd x = " + to_string(alg, homotopy(alg, big_d(alg, x), opt));
  });
}

PairingResult pairing(const BigModel& m, int jobs) {
  const StrandsAlgebra& alg = m.algebra();
  PairingResult res;
  const int n = m.size();
  std::vector<int> partner(n, -1);
  std::vector<std::string> errors(n);
  parallel_for(n, jobs, [&](int k) {
    BigGenerator y = m.generator(k);
    try {
      if (!is_h_side(classify(alg, y).tag)) return;
      BigGenerator x{};
      for (const auto& t : homotopy_terms(alg, y))
        if (!t.special) x = t.target;
      int xi = m.find(x);
      if (xi < 0) {
        errors[k] = "ordinary H of " + to_string(alg, y) + " is not a generator";
        return;
      }
      if (!is_d_side(classify(alg, x).tag)) {
        errors[k] = "ordinary H of " + to_string(alg, y) + " lands on " + to_string(alg, x) +
                    " which is not on the d side";
        return;
      }
      auto dx = big_d(alg, x);
      if (!std::binary_search(dx.begin(), dx.end(), y)) {
        errors[k] = "no d-arrow " + to_string(alg, x) + " -> " + to_string(alg, y);
        return;
      }
      partner[k] = xi;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  for (int k = 0; k < n; ++k)
    if (!errors[k].empty()) {
      res.check = CheckResult::failure(errors[k], k);
      return res;
    }
  std::vector<int> hit(n, -1);
  for (int k = 0; k < n; ++k) {
    if (partner[k] < 0) continue;
    if (hit[partner[k]] >= 0) {
      res.check = CheckResult::failure(to_string(alg, m.generator(partner[k])) +
                                           " is paired twice", k);
      return res;
    }
    hit[partner[k]] = k;
    res.pairs.emplace_back(m.generator(partner[k]), m.generator(k));
  }
  for (int k = 0; k < n; ++k) {
    BigGenerator g = m.generator(k);
    if (is_idempotent_pair(alg, g)) continue;
    if (partner[k] < 0 && hit[k] < 0) {
      res.check = CheckResult::failure(to_string(alg, g) + " is unpaired", n);
      return res;
    }
  }
  res.check.checked = n;
  std::sort(res.pairs.begin(), res.pairs.end());
  return res;
}

}  // namespace bordered
