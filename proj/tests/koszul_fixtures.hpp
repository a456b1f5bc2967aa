#pragma once

// Local pictures of the cobar examples, placed on a window of consecutive
// points of a concrete matched circle.  Window point x sits at global point
// offset + x - 1; points matched inside the picture must be matched in the
// circle, every other window point is matched outside the window, and the
// window's segments must appear in <_Z in the requested relative order.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bordered/koszul.hpp"

namespace testing_support {

struct Window {
  bordered::Pmc pmc;
  int offset = 1;
  int global(int x) const { return offset + x - 1; }
};

/// `ranks[k]` is the <_Z rank (1 = first) among the window's segments of the
/// local segment (k+1, k+2).  `pairs` lists local points matched to each
/// other.
inline std::optional<Window> find_window(const std::vector<bordered::Pmc>& candidates, int width,
                                         const std::vector<std::pair<int, int>>& pairs,
                                         const std::vector<int>& ranks) {
  for (const auto& z : candidates)
    for (int off = 1; off + width - 1 <= z.num_points(); ++off) {
      Window w{z, off};
      bool ok = true;
      for (int x = 1; x <= width && ok; ++x) {
        int partner = z.partner(w.global(x));
        int want = 0;
        for (auto [a, b] : pairs) want = x == a ? b : x == b ? a : want;
        if (want)
          ok = partner == w.global(want);
        else
          ok = partner < off || partner > w.global(width);
      }
      if (!ok) continue;
      std::vector<int> pos;
      for (int k = 1; k < width; ++k) pos.push_back(z.segment_rank(w.global(k)));
      for (int k = 0; k + 1 < width && ok; ++k)
        for (int l = 0; l + 1 < width && ok; ++l) ok = (ranks[k] < ranks[l]) == (pos[k] < pos[l]);
      if (ok) return w;
    }
  return std::nullopt;
}

/// A letter of a cobar word: moving strands and single horizontals at window
/// points, nothing else.
inline int letter(const bordered::StrandsAlgebra& alg, const Window& w,
                  const std::vector<std::pair<int, int>>& strands, const std::vector<int>& singles) {
  bordered::StrandDiagram d;
  for (auto [a, b] : strands) d.add_strand(w.global(a), w.global(b));
  for (int x : singles) d.horizontals |= 1u << alg.pmc().pair_of(w.global(x));
  return alg.index(d);
}

/// An algebra input: moving strands plus a horizontal on every pair with no
/// point in the window.
inline int input(const bordered::StrandsAlgebra& alg, const Window& w, int width,
                 const std::vector<std::pair<int, int>>& strands) {
  const auto& z = alg.pmc();
  bordered::StrandDiagram d;
  for (auto [a, b] : strands) d.add_strand(w.global(a), w.global(b));
  for (int p = 0; p < z.num_pairs(); ++p) {
    bool inside = false;
    for (int x = 1; x <= width; ++x) inside = inside || z.pair_of(w.global(x)) == p;
    if (!inside) d.horizontals |= 1u << p;
  }
  return alg.index(d);
}

inline bordered::CobarMonomial word(std::vector<int> letters) { return bordered::CobarMonomial{std::move(letters)}; }

inline bordered::CobarElement sum(std::vector<bordered::CobarMonomial> ms) {
  bordered::normalize(ms);
  return ms;
}

inline bordered::CobarElement operator+(bordered::CobarElement a, const bordered::CobarElement& b) {
  a.insert(a.end(), b.begin(), b.end());
  bordered::normalize(a);
  return a;
}

using Strands = std::vector<std::pair<int, int>>;

/// The two named genus-2 circles first, then every 8-point circle.
inline std::vector<bordered::Pmc> window_candidates() {
  std::vector<bordered::Pmc> c{bordered::Pmc::split_genus2(), bordered::Pmc::antipodal_genus2()};
  for (auto& z : bordered::Pmc::enumerate(8)) c.push_back(z);
  return c;
}

// The local words of the length-2 and length-5 pictures in one window.
struct Length2 {
  Window w;
  bordered::StrandsAlgebra alg;
  explicit Length2(Window win) : w(win), alg(win.pmc) {}
  int L(const Strands& s, std::vector<int> singles = {}) const { return letter(alg, w, s, singles); }
  int a() const { return input(alg, w, 3, {{1, 3}}); }
  bordered::CobarElement cob1() const { return sum({word({L({{1, 3}}, {2})})}); }
  bordered::CobarElement cob2() const { return sum({word({L({{2, 3}}, {1}), L({{1, 2}}, {3})})}); }
  bordered::CobarElement primitive() const { return sum({word({L({{1, 2}, {2, 3}})})}); }
};

struct Length5 {
  Window w;
  bordered::StrandsAlgebra alg;
  explicit Length5(Window win) : w(win), alg(win.pmc) {}
  int L(const Strands& s, std::vector<int> singles = {}) const { return letter(alg, w, s, singles); }
  int a1() const { return input(alg, w, 5, {{1, 2}, {2, 5}}); }
  int a2() const { return input(alg, w, 5, {{1, 4}, {4, 5}}); }
  bordered::CobarElement cob1() const {
    return sum({word({L({{1, 2}}, {3}), L({{2, 5}}, {3})}), word({L({{1, 4}}, {3}), L({{4, 5}}, {3})}),
                word({L({{3, 4}}, {1}), L({{2, 3}}, {1}), L({{1, 2}}, {3}), L({{4, 5}}, {3})})});
  }
  bordered::CobarElement cob2() const {
    return sum({word({L({{1, 2}}, {3}), L({{4, 5}}, {3}), L({{3, 4}}, {5}), L({{2, 3}}, {5})})});
  }
  bordered::CobarElement cob3() const {
    return sum({word({L({{3, 4}}, {1}), L({{2, 3}}, {1}), L({{1, 2}}, {3}), L({{4, 5}}, {3})})});
  }
  // d of this is cob1 - cob2.
  bordered::CobarElement primitive12() const {
    return sum({word({L({{1, 2}}, {3}), L({{2, 3}, {3, 5}})}), word({L({{1, 3}, {3, 4}}), L({{4, 5}}, {3})}),
                word({L({{1, 2}}, {3}), L({{3, 4}, {4, 5}}), L({{2, 3}}, {5})}),
                word({L({{3, 4}}, {1}), L({{1, 2}, {2, 3}}), L({{4, 5}}, {3})})});
  }
  // d of this is cob3 - cob1.
  bordered::CobarElement primitive31() const { return sum({word({L({{1, 5}}, {3})})}); }
};

inline const std::vector<int> kUpperFirst{2, 1}, kLowerFirst{1, 2};
// Segment ranks of the local pictures, read top to bottom.
inline const std::vector<int> k1432{2, 3, 4, 1}, k3214{4, 1, 2, 3};

}  // namespace testing_support
