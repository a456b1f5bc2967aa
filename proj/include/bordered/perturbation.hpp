#pragma once

// The rank-1 AA bimodule N obtained from M by homological perturbation.  An
// action m_{1,p,q}([i]; b'_1..b'_p; b_1..b_q) -> [j] is a count of sequences
// of generators of M that start at [o(i) | i], alternate one input step
// (factoring b' off a1 on the right, or multiplying a2 by b on the right) with
// one H-arrow, and end on [o(j) | j] right after the last input.

#include <functional>
#include <string>
#include <vector>

#include "bordered/fstructs.hpp"
#include "bordered/homotopy.hpp"

namespace bordered {

enum class InputOrder {
  /// b'_1 and b_1 are used first.
  HeadFirst,
  /// b'_p and b_q are used first (negative control only).
  TailFirst,
};

struct PerturbationOptions {
  InputOrder order = InputOrder::HeadFirst;
  HomotopyOptions homotopy;
};

/// One accepted sequence.  `steps[k]` describes the move from states[k] to
/// states[k+1]: 'L' left input, 'R' right input, 'H' ordinary H-arrow, 'S'
/// special H-arrow.
struct ActionSequence {
  std::vector<BigGenerator> states;
  std::string steps;
  std::vector<int> left_inputs;   // in order of use
  std::vector<int> right_inputs;  // in order of use
};

/// Calls `visit` for every sequence contributing to m_{1,p,q}([i]; left; right).
/// Inputs must be non-idempotent basis indices (std::invalid_argument
/// otherwise).
void for_each_sequence(const StrandsAlgebra& alg, Idempotent i, const std::vector<int>& left,
                       const std::vector<int>& right, const PerturbationOptions& opt,
                       const std::function<void(const ActionSequence&)>& visit);

/// Targets [j] of m_{1,p,q}([i]; left; right), each with odd sequence count.
std::vector<Idempotent> evaluate_action(const StrandsAlgebra& alg, Idempotent i,
                                        const std::vector<int>& left, const std::vector<int>& right,
                                        const PerturbationOptions& opt = {});

AAEvaluator n_evaluator(const StrandsAlgebra& alg, const PerturbationOptions& opt = {});

/// Every nonzero action whose inputs have per-side total multiplicity at most
/// `bound`, sorted by dump line.  Stops and sets `truncated` after
/// `max_arrows` arrows when that is positive.
AAActionTable enumerate_actions(const StrandsAlgebra& alg, int bound, int jobs = 1,
                                long max_arrows = 0, const PerturbationOptions& opt = {});

/// Sequences for arrows m_{1,p,1}([i]; b'_1..b'_p; a) -> [j] with i the left
/// idempotent of a: a is used first, then H-arrows alternate with factoring
/// any b' off a1.
std::vector<ActionSequence> phi1_sequences(const StrandsAlgebra& alg, int a,
                                           const HomotopyOptions& opt = {});

/// Left-input words of phi1_sequences with odd multiplicity, sorted.  Words
/// are written b'_p..b'_1, the reverse of the order of use.
std::vector<std::vector<int>> phi1_terms(const StrandsAlgebra& alg, int a,
                                         const HomotopyOptions& opt = {});

/// States joined by their step labels, on one line.
std::string to_string(const StrandsAlgebra& alg, const ActionSequence& s);

}  // namespace bordered
