#include "bordered/bigmodel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "bordered/f2.hpp"
#include "bordered/parallel.hpp"

namespace bordered {

bool is_generator(const StrandsAlgebra& alg, BigGenerator x) {
  if (x.a1 < 0 || x.a2 < 0 || x.a1 >= alg.size() || x.a2 >= alg.size()) return false;
  return alg.left(x.a1) == alg.pmc().complement(alg.left(x.a2));
}

std::string to_string(const StrandsAlgebra& alg, BigGenerator x) {
  return "[" + alg.str(x.a1) + " | " + alg.str(x.a2) + "]";
}

std::string to_string(const StrandsAlgebra& alg, const BigElement& x) {
  if (x.empty()) return "0";
  std::vector<std::string> parts;
  for (auto g : x) parts.push_back(to_string(alg, g));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " + ";
    out += p;
  }
  return out;
}

BigGenerator parse_generator(const StrandsAlgebra& alg, std::string_view text) {
  std::size_t open = text.find('['), bar = text.find('|'), close = text.rfind(']');
  if (open == std::string_view::npos) throw ParseError("expected '['", 0, 1);
  if (bar == std::string_view::npos || bar < open) throw ParseError("expected '|'", 0, int(open) + 2);
  if (close == std::string_view::npos || close < bar) throw ParseError("expected ']'", 0, int(text.size()) + 1);
  for (std::size_t k = 0; k < open; ++k)
    if (text[k] != ' ') throw ParseError("unexpected text before '['", 0, int(k) + 1);
  for (std::size_t k = close + 1; k < text.size(); ++k)
    if (text[k] != ' ' && text[k] != '\n') throw ParseError("unexpected text after ']'", 0, int(k) + 1);
  auto piece = [&](std::size_t from, std::size_t to) {
    try {
      return alg.index(parse_diagram(alg.pmc(), text.substr(from, to - from)));
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), 0, e.column() + int(from));
    }
  };
  BigGenerator x{piece(open + 1, bar), piece(bar + 1, close)};
  if (!is_generator(alg, x))
    throw std::invalid_argument("left idempotents of " + to_string(alg, x) + " are not complementary");
  return x;
}

void normalize(BigElement& x) { f2_normalize(x); }

std::vector<BigGenerator> d_type_i(const StrandsAlgebra& alg, BigGenerator x) {
  std::vector<BigGenerator> out;
  for (int b : alg.diff(x.a2)) out.push_back({x.a1, b});
  return out;
}

std::vector<BigGenerator> d_type_ii(const StrandsAlgebra& alg, BigGenerator x) {
  std::vector<BigGenerator> out;
  for (int c : alg.codiff(x.a1)) out.push_back({c, x.a2});
  return out;
}

std::vector<BigGenerator> d_type_iii(const StrandsAlgebra& alg, BigGenerator x) {
  std::vector<BigGenerator> out;
  if (alg.is_idempotent(x.a1)) return out;
  const Pmc& z = alg.pmc();
  const Multiplicity& m1 = alg.mult(x.a1);
  for (Chord xi : z.all_chords()) {
    // a(xi) must fit under a1.
    bool fits = true;
    for (int s = xi.start; s < xi.end && fits; ++s) fits = m1[s - 1] > 0;
    if (!fits) continue;
    auto e = chord_element(z, xi, alg.left(x.a1));
    if (e.is_zero()) continue;
    auto e2 = chord_element_right(z, xi, alg.left(x.a2));
    if (e2.is_zero()) continue;
    int r = alg.mul(alg.index(e2.terms[0]), x.a2);
    if (r < 0) continue;
    for (int c : alg.factor_left(x.a1, alg.index(e.terms[0]))) out.push_back({c, r});
  }
  return out;
}

BigElement big_d(const StrandsAlgebra& alg, BigGenerator x) {
  BigElement out = d_type_i(alg, x);
  for (auto g : d_type_ii(alg, x)) out.push_back(g);
  for (auto g : d_type_iii(alg, x)) out.push_back(g);
  normalize(out);
  return out;
}

BigElement big_d(const StrandsAlgebra& alg, const BigElement& x) {
  BigElement out;
  for (auto g : x)
    for (auto t : big_d(alg, g)) out.push_back(t);
  normalize(out);
  return out;
}

std::optional<BigGenerator> act_right(const StrandsAlgebra& alg, BigGenerator x, int b) {
  int r = alg.mul(x.a2, b);
  if (r < 0) return std::nullopt;
  return BigGenerator{x.a1, r};
}

BigElement act_left(const StrandsAlgebra& alg, BigGenerator x, int b) {
  BigElement out;
  for (int c : alg.factor_right(x.a1, b)) out.push_back({c, x.a2});
  normalize(out);
  return out;
}

Multiplicity multiplicity_of(const StrandsAlgebra& alg, BigGenerator x) {
  Multiplicity m = alg.mult(x.a1);
  const auto& m2 = alg.mult(x.a2);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] += m2[k];
  return m;
}

bool is_idempotent_pair(const StrandsAlgebra& alg, BigGenerator x) {
  return alg.is_idempotent(x.a1) && alg.is_idempotent(x.a2);
}

BigGenerator f_map(const StrandsAlgebra& alg, Idempotent i) {
  return {alg.idempotent_index(alg.pmc().complement(i)), alg.idempotent_index(i)};
}

std::optional<Idempotent> g_map(const StrandsAlgebra& alg, BigGenerator x) {
  if (!is_idempotent_pair(alg, x)) return std::nullopt;
  return alg.left(x.a2);
}

// ---------------------------------------------------------------------------

BigModel::BigModel(const StrandsAlgebra& alg) : alg_(&alg) {
  std::unordered_map<std::uint32_t, std::vector<int>> by_left;
  for (int k = 0; k < alg.size(); ++k) by_left[alg.left(k).mask].push_back(k);
  const Pmc& z = alg.pmc();
  for (int a1 = 0; a1 < alg.size(); ++a1) {
    auto it = by_left.find(z.complement(alg.left(a1)).mask);
    if (it == by_left.end()) continue;
    for (int a2 : it->second) gens_.push_back({a1, a2});
  }
  index_.reserve(gens_.size());
  for (int k = 0; k < size(); ++k) index_.emplace(gens_[k].key(), k);
}

int BigModel::find(BigGenerator x) const {
  auto it = index_.find(x.key());
  return it == index_.end() ? -1 : it->second;
}

std::vector<BigGenerator> BigModel::n_generators() const {
  std::vector<BigGenerator> out;
  for (Idempotent i : alg_->pmc().all_idempotents()) out.push_back(f_map(*alg_, i));
  return out;
}

std::vector<int> BigModel::d(int k) const {
  std::vector<int> out;
  for (auto g : big_d(*alg_, gens_[k])) out.push_back(find(g));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Runs `check` on every generator and keeps the failure with the smallest
// generator index, so the report does not depend on thread scheduling.
CheckResult first_failure(int n, int jobs, const std::function<std::string(int)>& check) {
  std::mutex mu;
  int worst = n;
  std::string message;
  std::atomic<long> checked{0};
  parallel_for(n, jobs, [&](int k) {
    std::string msg;
    try {
      msg = check(k);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    ++checked;
    if (msg.empty()) return;
    std::lock_guard<std::mutex> lock(mu);
    if (k < worst) {
      worst = k;
      message = msg;
    }
  });
  if (worst < n) return CheckResult::failure(message, checked);
  return {true, "", checked};
}

}  // namespace

CheckResult BigModel::check_d_squared(int jobs) const {
  return first_failure(size(), jobs, [&](int k) -> std::string {
    auto dd = big_d(*alg_, big_d(*alg_, gens_[k]));
    if (dd.empty()) return "";
    return "d^2 " + to_string(*alg_, gens_[k]) + " = " + to_string(*alg_, dd);
  });
}

CheckResult BigModel::check_arrows(int jobs) const {
  return first_failure(size(), jobs, [&](int k) -> std::string {
    BigGenerator x = gens_[k];
    auto m = multiplicity_of(*alg_, x);
    bool x_in_n = is_idempotent_pair(*alg_, x);
    for (auto y : big_d(*alg_, x)) {
      if (find(y) < 0) return "arrow to a non-generator " + to_string(*alg_, y);
      if (multiplicity_of(*alg_, y) != m)
        return "arrow " + to_string(*alg_, x) + " -> " + to_string(*alg_, y) + " changes multiplicity";
      if (x_in_n || is_idempotent_pair(*alg_, y))
        return "arrow " + to_string(*alg_, x) + " -> " + to_string(*alg_, y) + " touches N";
    }
    return "";
  });
}

std::string BigModel::dump() const {
  std::vector<std::string> lines;
  for (int k = 0; k < size(); ++k)
    for (auto y : big_d(*alg_, gens_[k]))
      lines.push_back("d " + to_string(*alg_, gens_[k]) + " -> " + to_string(*alg_, y));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace bordered
