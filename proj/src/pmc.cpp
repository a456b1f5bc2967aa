#include "bordered/pmc.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace bordered {

std::string ParseError::format(const std::string& msg, int line, int column) {
  std::string out;
  if (line > 0) {
    out += "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ": ";
  } else if (column > 0) {
    out += "column " + std::to_string(column) + ": ";
  }
  return out + msg;
}

Pmc Pmc::from_pairs(int num_points, const std::vector<std::pair<int, int>>& pairs) {
  if (num_points <= 0 || num_points % 4 != 0)
    throw InvalidPmc("number of points must be a positive multiple of 4, got " +
                     std::to_string(num_points));
  if (num_points > kMaxPoints)
    throw InvalidPmc("at most " + std::to_string(kMaxPoints) + " points are supported");
  if (static_cast<int>(pairs.size()) != num_points / 2)
    throw InvalidPmc("expected " + std::to_string(num_points / 2) + " pairs, got " +
                     std::to_string(pairs.size()));

  Pmc z;
  z.n_ = num_points;
  z.partner_.assign(num_points + 1, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || a > num_points || b < 1 || b > num_points)
      throw InvalidPmc("pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    if (a == b) throw InvalidPmc("point " + std::to_string(a) + " matched with itself");
    if (z.partner_[a] || z.partner_[b])
      throw InvalidPmc("point " + std::to_string(z.partner_[a] ? a : b) + " matched twice");
    z.partner_[a] = b;
    z.partner_[b] = a;
  }

  z.pair_of_.assign(num_points + 1, -1);
  for (int p = 1; p <= num_points; ++p) {
    if (z.partner_[p] > p) {
      z.pair_of_[p] = z.pair_of_[z.partner_[p]] = static_cast<int>(z.pair_low_.size());
      z.pair_low_.push_back(p);
    }
  }

  // Traverse the segments.  The first one is (p, p+1) with p+1 matched to the
  // top point; the segment after (q, q+1) is (partner(q)-1, partner(q)).
  z.rank_.assign(num_points, -1);
  int cur = z.partner_[num_points] - 1;
  while (cur >= 1) {
    if (z.rank_[cur] >= 0) break;
    z.rank_[cur] = static_cast<int>(z.order_.size());
    z.order_.push_back({cur});
    cur = z.partner_[cur] - 1;
  }
  if (static_cast<int>(z.order_.size()) != num_points - 1) {
    std::ostringstream msg;
    msg << "predecessor chain covers only " << z.order_.size() << " of " << num_points - 1
        << " segments:";
    for (auto s : z.order_) msg << " (" << s.lower << "," << s.lower + 1 << ")";
    throw InvalidPmc(msg.str());
  }
  return z;
}

Pmc Pmc::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int points = -1;
  int last_p = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> seen_at;

  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto col = static_cast<int>(raw.find(kw)) + 1;
    if (kw == "points") {
      if (points >= 0) throw ParseError("duplicate 'points' line", line_no, col);
      if (!(ls >> points) || points <= 0)
        throw ParseError("expected a positive point count", line_no, col);
      seen_at.assign(points + 1, 0);
    } else if (kw == "pair") {
      if (points < 0) throw ParseError("'pair' before 'points'", line_no, col);
      int p, q;
      if (!(ls >> p >> q)) throw ParseError("expected 'pair <p> <q>'", line_no, col);
      if (p >= q) throw ParseError("pair must be written with p < q", line_no, col);
      if (p < 1 || q > points) throw ParseError("point out of range", line_no, col);
      if (p <= last_p) throw ParseError("pairs must be sorted by their first point", line_no, col);
      for (int x : {p, q}) {
        if (seen_at[x])
          throw ParseError("point " + std::to_string(x) + " already used on line " +
                               std::to_string(seen_at[x]),
                           line_no, col);
        seen_at[x] = line_no;
      }
      last_p = p;
      pairs.emplace_back(p, q);
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line_no, col);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing text '" + extra + "'", line_no, 0);
  }
  if (points < 0) throw ParseError("missing 'points' line", 0, 0);
  return from_pairs(points, pairs);
}

Pmc Pmc::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0, 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

Pmc Pmc::genus1() { return from_pairs(4, {{1, 3}, {2, 4}}); }
Pmc Pmc::split_genus2() { return from_pairs(8, {{1, 3}, {2, 4}, {5, 7}, {6, 8}}); }
Pmc Pmc::antipodal_genus2() { return from_pairs(8, {{1, 5}, {2, 6}, {3, 7}, {4, 8}}); }

std::vector<Pmc> Pmc::enumerate(int num_points) {
  std::vector<Pmc> out;
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(num_points + 1, false);
  std::function<void()> rec = [&] {
    int a = 1;
    while (a <= num_points && used[a]) ++a;
    if (a > num_points) {
      try {
        out.push_back(from_pairs(num_points, cur));
      } catch (const InvalidPmc&) {
      }
      return;
    }
    used[a] = true;
    for (int b = a + 1; b <= num_points; ++b) {
      if (used[b]) continue;
      used[b] = true;
      cur.emplace_back(a, b);
      rec();
      cur.pop_back();
      used[b] = false;
    }
    used[a] = false;
  };
  rec();
  return out;
}

std::string Pmc::to_text() const {
  std::string out = "points " + std::to_string(n_) + "\n";
  for (int pr = 0; pr < num_pairs(); ++pr)
    out += "pair " + std::to_string(pair_low(pr)) + " " + std::to_string(pair_high(pr)) + "\n";
  return out;
}

int Pmc::partner(int pt) const {
  if (pt < 1 || pt > n_) throw std::out_of_range("point " + std::to_string(pt) + " out of range");
  return partner_[pt];
}

int Pmc::pair_of(int pt) const {
  if (pt < 1 || pt > n_) throw std::out_of_range("point " + std::to_string(pt) + " out of range");
  return pair_of_[pt];
}

int Pmc::predecessor(int lower) const {
  int q = partner_[lower + 1];
  return q == n_ ? -1 : q;
}

std::vector<Chord> Pmc::all_chords() const {
  std::vector<Chord> out;
  for (int p = 1; p <= n_; ++p)
    for (int q = p + 1; q <= n_; ++q) out.push_back({p, q});
  return out;
}

std::vector<Idempotent> Pmc::all_idempotents() const {
  std::vector<Idempotent> out;
  for (std::uint32_t m = 0; m <= full_idempotent().mask; ++m) out.push_back({m});
  return out;
}

}  // namespace bordered
