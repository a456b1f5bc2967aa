#include "bordered/perturbation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "bordered/parallel.hpp"

namespace bordered {

namespace {

// H-arrows out of x with F2 cancellation applied; the flag marks special terms.
std::vector<HomotopyTerm> h_arrows(const StrandsAlgebra& alg, BigGenerator x, const HomotopyOptions& opt) {
  auto terms = homotopy_terms(alg, x, opt);
  std::map<BigGenerator, std::pair<int, bool>> count;
  for (const auto& t : terms) {
    auto& c = count[t.target];
    ++c.first;
    c.second = c.second || t.special;
  }
  std::vector<HomotopyTerm> out;
  for (const auto& [g, c] : count)
    if (c.first % 2) out.push_back({g, c.second});
  return out;
}

class SequenceSearch {
 public:
  SequenceSearch(const StrandsAlgebra& alg, const std::vector<int>& left, const std::vector<int>& right,
                 const HomotopyOptions& opt, const std::function<void(const ActionSequence&)>& visit)
      : alg_(alg), left_(left), right_(right), opt_(opt), visit_(visit) {}

  void run(BigGenerator start) {
    seq_.states = {start};
    input_step(start, 0, 0);
  }

 private:
  // From x (initial state or the target of an H-arrow) take one input.
  void input_step(BigGenerator x, std::size_t li, std::size_t ri) {
    if (li < left_.size())
      for (BigGenerator y : act_left(alg_, x, left_[li])) {
        push(y, 'L');
        seq_.left_inputs.push_back(left_[li]);
        after_input(y, li + 1, ri);
        seq_.left_inputs.pop_back();
        pop();
      }
    if (ri < right_.size())
      if (auto y = act_right(alg_, x, right_[ri])) {
        push(*y, 'R');
        seq_.right_inputs.push_back(right_[ri]);
        after_input(*y, li, ri + 1);
        seq_.right_inputs.pop_back();
        pop();
      }
  }

  void after_input(BigGenerator y, std::size_t li, std::size_t ri) {
    bool idem = is_idempotent_pair(alg_, y);
    if (li == left_.size() && ri == right_.size()) {
      if (idem) visit_(seq_);
      return;
    }
    if (idem) return;
    for (const auto& t : h_arrows(alg_, y, opt_)) {
      push(t.target, t.special ? 'S' : 'H');
      input_step(t.target, li, ri);
      pop();
    }
  }

  void push(BigGenerator g, char step) {
    seq_.states.push_back(g);
    seq_.steps.push_back(step);
  }
  void pop() {
    seq_.states.pop_back();
    seq_.steps.pop_back();
  }

  const StrandsAlgebra& alg_;
  const std::vector<int>& left_;
  const std::vector<int>& right_;
  const HomotopyOptions& opt_;
  const std::function<void(const ActionSequence&)>& visit_;
  ActionSequence seq_;
};

void require_non_idempotent(const StrandsAlgebra& alg, const std::vector<int>& v) {
  for (int b : v) {
    if (b < 0 || b >= alg.size()) throw std::invalid_argument("input is not a basis index");
    if (alg.is_idempotent(b)) throw std::invalid_argument("idempotent input " + alg.str(b));
  }
}

}  // namespace

void for_each_sequence(const StrandsAlgebra& alg, Idempotent i, const std::vector<int>& left,
                       const std::vector<int>& right, const PerturbationOptions& opt,
                       const std::function<void(const ActionSequence&)>& visit) {
  require_non_idempotent(alg, left);
  require_non_idempotent(alg, right);
  if (left.empty() && right.empty()) return;
  std::vector<int> l = left, r = right;
  if (opt.order == InputOrder::TailFirst) {
    std::reverse(l.begin(), l.end());
    std::reverse(r.begin(), r.end());
  }
  SequenceSearch(alg, l, r, opt.homotopy, visit).run(f_map(alg, i));
}

std::vector<Idempotent> evaluate_action(const StrandsAlgebra& alg, Idempotent i, const std::vector<int>& left,
                                        const std::vector<int>& right, const PerturbationOptions& opt) {
  std::map<Idempotent, int> count;
  for_each_sequence(alg, i, left, right, opt,
                    [&](const ActionSequence& s) { ++count[*g_map(alg, s.states.back())]; });
  std::vector<Idempotent> out;
  for (auto [j, c] : count)
    if (c % 2) out.push_back(j);
  return out;
}

AAEvaluator n_evaluator(const StrandsAlgebra& alg, const PerturbationOptions& opt) {
  return [&alg, opt](Idempotent i, const std::vector<int>& l, const std::vector<int>& r) {
    return evaluate_action(alg, i, l, r, opt);
  };
}

AAActionTable enumerate_actions(const StrandsAlgebra& alg, int bound, int jobs, long max_arrows,
                                const PerturbationOptions& opt) {
  AAActionTable t;
  t.generators = alg.pmc().all_idempotents();
  struct Job {
    Idempotent i;
    std::vector<int> l, r;
  };
  std::vector<Job> work;
  for (Idempotent i : t.generators)
    for_each_conserved_tuple(alg, i, bound, [&](const std::vector<int>& l, const std::vector<int>& r) {
      work.push_back({i, l, r});
      return true;
    });
  std::vector<std::vector<Idempotent>> results(work.size());
  parallel_for(static_cast<int>(work.size()), jobs, [&](int k) {
    results[k] = evaluate_action(alg, work[k].i, work[k].l, work[k].r, opt);
  });
  for (std::size_t k = 0; k < work.size(); ++k)
    for (Idempotent j : results[k]) {
      if (max_arrows > 0 && static_cast<long>(t.arrows.size()) >= max_arrows) {
        t.truncated = true;
        break;
      }
      t.arrows.push_back({work[k].i, work[k].l, work[k].r, j});
    }
  return t;
}

std::vector<ActionSequence> phi1_sequences(const StrandsAlgebra& alg, int a, const HomotopyOptions& opt) {
  require_non_idempotent(alg, {a});
  // Candidate left inputs grouped by right idempotent.
  std::map<std::uint32_t, std::vector<int>> by_right;
  for (int b = 0; b < alg.size(); ++b)
    if (!alg.is_idempotent(b)) by_right[alg.right(b).mask].push_back(b);

  std::vector<ActionSequence> out;
  ActionSequence seq;
  std::function<void(BigGenerator)> after_input;
  auto factor = [&](BigGenerator x) {
    auto it = by_right.find(alg.right(x.a1).mask);
    if (it == by_right.end()) return;
    const Multiplicity& top = alg.mult(x.a1);
    for (int b : it->second) {
      const Multiplicity& m = alg.mult(b);
      bool fits = true;
      for (std::size_t s = 0; s < m.size() && fits; ++s) fits = m[s] <= top[s];
      if (!fits) continue;
      for (BigGenerator y : act_left(alg, x, b)) {
        seq.states.push_back(y);
        seq.steps.push_back('L');
        seq.left_inputs.push_back(b);
        after_input(y);
        seq.left_inputs.pop_back();
        seq.steps.pop_back();
        seq.states.pop_back();
      }
    }
  };
  after_input = [&](BigGenerator y) {
    if (is_idempotent_pair(alg, y)) {
      if (!seq.left_inputs.empty()) out.push_back(seq);
      return;
    }
    for (const auto& t : h_arrows(alg, y, opt)) {
      seq.states.push_back(t.target);
      seq.steps.push_back(t.special ? 'S' : 'H');
      factor(t.target);
      seq.steps.pop_back();
      seq.states.pop_back();
    }
  };

  BigGenerator start = f_map(alg, alg.left(a));
  auto first = act_right(alg, start, a);
  if (!first) return out;
  seq.states = {start, *first};
  seq.steps = "R";
  seq.right_inputs = {a};
  after_input(*first);
  return out;
}

std::vector<std::vector<int>> phi1_terms(const StrandsAlgebra& alg, int a, const HomotopyOptions& opt) {
  std::map<std::vector<int>, int> count;
  for (const auto& s : phi1_sequences(alg, a, opt))
    ++count[std::vector<int>(s.left_inputs.rbegin(), s.left_inputs.rend())];
  std::vector<std::vector<int>> out;
  for (const auto& [w, c] : count)
    if (c % 2) out.push_back(w);
  return out;
}

std::string to_string(const StrandsAlgebra& alg, const ActionSequence& s) {
  std::string out;
  for (std::size_t k = 0; k < s.states.size(); ++k) {
    if (k) {
      char step = s.steps[k - 1];
      out += step == 'L' ? " -L-> " : step == 'R' ? " -R-> " : step == 'S' ? " -Hsp-> " : " -H-> ";
    }
    out += to_string(alg, s.states[k]);
  }
  return out;
}

}  // namespace bordered
