#pragma once

// Four-generator cancellation squares drawn on a window of a pointed matched
// circle, and their realization inside a concrete genus-3 circle.
//
// A fixture names its key pair {p+1, q} (0 0 when the generators have
// multiplicity above one) and four local generators TL, TR, BL, BR joined by
// the labelled edges TL->TR, TL->BL, TR->BR, BL->BR.  Only the points that a
// local picture uses are placed, in order, on consecutive global points; every
// placed point other than the key pair is matched outside the window.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bordered/homotopy.hpp"
#include "support.hpp"

namespace testing_support {

struct LocalSide {
  std::vector<std::pair<int, int>> strands;
  std::vector<int> singles;
  std::vector<std::pair<int, int>> doubles;
};

struct LocalGenerator {
  LocalSide left, right;
};

struct SquareFixture {
  std::string name;
  int key_p1 = 0, key_q = 0;
  std::array<std::string, 4> arrows;  // top, left, right, bottom
  std::array<LocalGenerator, 4> gens;  // TL, TR, BL, BR
};

inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline LocalSide parse_local_side(const std::string& text) {
  LocalSide s;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    if (item[0] == 's') {
      s.singles.push_back(std::stoi(item.substr(1)));
    } else if (item[0] == 'd') {
      auto dot = item.find('.');
      s.doubles.emplace_back(std::stoi(item.substr(1, dot - 1)), std::stoi(item.substr(dot + 1)));
    } else {
      auto dash = item.find('-');
      s.strands.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    }
  }
  return s;
}

inline std::vector<SquareFixture> load_squares(const std::string& text) {
  std::vector<SquareFixture> out;
  for (const auto& line : lines_of(text)) {
    if (line[0] == '#') continue;
    auto f = split(line, ';');
    if (f.size() != 7) throw std::runtime_error("bad fixture line: " + line);
    SquareFixture sq;
    sq.name = f[0];
    std::istringstream key(f[1]);
    std::string word;
    key >> word >> sq.key_p1 >> sq.key_q;
    std::istringstream arr(f[2]);
    arr >> word;
    for (auto& a : sq.arrows) arr >> a;
    for (int k = 0; k < 4; ++k) {
      const std::string& g = f[3 + k];
      auto bar = g.find('|');
      sq.gens[k].left = parse_local_side(g.substr(1, bar - 1));
      sq.gens[k].right = parse_local_side(g.substr(bar + 1, g.rfind(']') - bar - 1));
    }
    out.push_back(sq);
  }
  return out;
}

/// Local points used by any generator of the square, ascending.
inline std::vector<int> used_points(const SquareFixture& sq) {
  std::vector<int> pts;
  auto add = [&](int p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  if (sq.key_p1) {
    add(sq.key_p1);
    add(sq.key_q);
  }
  for (const auto& g : sq.gens)
    for (const auto* s : {&g.left, &g.right}) {
      for (auto [a, b] : s->strands) add(a), add(b);
      for (int x : s->singles) add(x);
      for (auto [a, b] : s->doubles) add(a), add(b);
    }
  std::sort(pts.begin(), pts.end());
  return pts;
}

struct Embedding {
  bordered::Pmc pmc;
  std::map<int, int> phi;  // local point -> global point
};

inline bordered::Multiplicity local_multiplicity(const LocalGenerator& g, const std::map<int, int>& phi,
                                                 int num_points) {
  bordered::Multiplicity m(num_points - 1, 0);
  for (const auto* s : {&g.left, &g.right})
    for (auto [a, b] : s->strands)
      for (int x = phi.at(a); x < phi.at(b); ++x) ++m[x - 1];
  return m;
}

/// First candidate circle and window offset that realize the square: the key
/// pair is matched, every other placed point is matched outside the window,
/// and the key segment (p, p+1) is the first segment of multiplicity one in
/// the circle's segment order.  Used points are packed onto consecutive
/// global points; when that is impossible (a key pair drawn with nothing in
/// between would become adjacent) the drawn spacing is kept instead.
inline std::optional<Embedding> find_embedding(const SquareFixture& sq,
                                               const std::vector<bordered::Pmc>& candidates) {
  auto pts = used_points(sq);
  for (bool packed : {true, false}) {
    std::vector<int> rel;  // offset of each used point within the window
    for (std::size_t k = 0; k < pts.size(); ++k)
      rel.push_back(packed ? static_cast<int>(k) : pts[k] - pts[0]);
    const int w = rel.back() + 1;
    for (const auto& z : candidates) {
      const int n = z.num_points();
      for (int off = 1; off + w - 1 <= n; ++off) {
        std::map<int, int> phi;
        for (std::size_t k = 0; k < pts.size(); ++k) phi[pts[k]] = off + rel[k];
        bool ok = true;
        for (std::size_t k = 0; k < pts.size() && ok; ++k) {
          int partner = z.partner(phi[pts[k]]);
          bool key = sq.key_p1 && (pts[k] == sq.key_p1 || pts[k] == sq.key_q);
          if (key)
            ok = partner == phi[pts[k] == sq.key_p1 ? sq.key_q : sq.key_p1];
          else
            ok = partner < off || partner >= off + w;
        }
        if (!ok) continue;
        if (sq.key_p1) {
          auto m = local_multiplicity(sq.gens[0], phi, n);
          int first = 0;
          for (auto s : z.segment_order())
            if (m[s.lower - 1] == 1) {
              first = s.lower;
              break;
            }
          if (first + 1 != phi[sq.key_p1]) continue;
        }
        return Embedding{z, phi};
      }
    }
  }
  return std::nullopt;
}

/// The global generator for a local picture.  Pairs not fixed by the picture
/// are completed so the left idempotents stay complementary: a pair ending a
/// strand on one side is a double horizontal on the other, and pairs away
/// from the window sit on the right.
inline bordered::BigGenerator realize(const bordered::StrandsAlgebra& alg, const LocalGenerator& g,
                                      const std::map<int, int>& phi) {
  using namespace bordered;
  const Pmc& z = alg.pmc();
  StrandDiagram d[2];
  std::uint32_t fixed[2] = {0, 0}, ends[2] = {0, 0};
  const LocalSide* sides[2] = {&g.left, &g.right};
  for (int s = 0; s < 2; ++s) {
    for (auto [a, b] : sides[s]->strands) {
      d[s].add_strand(phi.at(a), phi.at(b));
      fixed[s] |= 1u << z.pair_of(phi.at(a));
      ends[s] |= 1u << z.pair_of(phi.at(b));
    }
    for (int x : sides[s]->singles) {
      d[s].horizontals |= 1u << z.pair_of(phi.at(x));
      fixed[s] |= 1u << z.pair_of(phi.at(x));
    }
    for (auto [a, b] : sides[s]->doubles) {
      if (z.partner(phi.at(a)) != phi.at(b)) throw std::logic_error("double horizontal on unmatched points");
      d[s].horizontals |= 1u << z.pair_of(phi.at(a));
      fixed[s] |= 1u << z.pair_of(phi.at(a));
    }
  }
  for (int p = 0; p < z.num_pairs(); ++p) {
    std::uint32_t bit = 1u << p;
    if ((fixed[0] | fixed[1]) & bit) continue;
    bool e0 = ends[0] & bit, e1 = ends[1] & bit;
    if (e0 && e1) throw std::logic_error("pair ends strands on both sides");
    d[e0 ? 1 : e1 ? 0 : 1].horizontals |= bit;
  }
  for (auto& x : d) validate(z, x);
  BigGenerator out{alg.index(d[0]), alg.index(d[1])};
  if (!is_generator(alg, out)) throw std::logic_error("left idempotents are not complementary");
  return out;
}

/// Empty when every labelled edge is present: `d` edges in the differential,
/// `H` edges among the ordinary H terms, `Hsp` edges among the special ones.
inline std::string check_square(const bordered::StrandsAlgebra& alg, const SquareFixture& sq,
                                const std::array<bordered::BigGenerator, 4>& g,
                                const bordered::HomotopyOptions& opt = {}) {
  using namespace bordered;
  static const int edges[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  static const char* names[4] = {"top", "left", "right", "bottom"};
  for (int e = 0; e < 4; ++e) {
    BigGenerator src = g[edges[e][0]], dst = g[edges[e][1]];
    const std::string& label = sq.arrows[e];
    bool found = false;
    if (label == "d") {
      auto dx = big_d(alg, src);
      found = std::find(dx.begin(), dx.end(), dst) != dx.end();
    } else {
      for (const auto& t : homotopy_terms(alg, src, opt))
        if (t.target == dst && t.special == (label == "Hsp")) found = true;
    }
    if (!found)
      return sq.name + ": missing " + label + " edge (" + names[e] + ") " + to_string(alg, src) + " -> " +
             to_string(alg, dst);
  }
  return "";
}

}  // namespace testing_support
