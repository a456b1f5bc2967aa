#pragma once

// Chain complexes and rank-1 bimodule structures over A(Z) presented by
// arrows, with their structure-equation checkers and the box tensor product of
// an AA bimodule with a DD bimodule.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bordered/strands.hpp"

namespace bordered {

struct CheckResult {
  bool ok = true;
  std::string message;  // first counterexample when !ok
  long checked = 0;     // number of generators / tuples examined

  static CheckResult failure(std::string msg, long checked = 0) { return {false, std::move(msg), checked}; }
};

/// d^2 = 0 on every basis element, the Leibniz rule on every composable pair
/// (with multiplicity additive under nonzero products) and associativity on
/// every composable triple.  Parallel over the first factor.
CheckResult check_dg_algebra(const StrandsAlgebra& alg, int jobs = 1);

/// Finite F2 chain complex on labelled generators.
class ChainComplex {
 public:
  int add_generator(std::string label);
  void add_arrow(int source, int target);
  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int g) const { return labels_[g]; }
  const std::vector<int>& d(int g) const { return out_[g]; }
  /// d(d(x)) = 0 for every generator x.
  CheckResult check_d_squared() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> out_;
};

// ---------------------------------------------------------------------------
// DD structures.  Generators are labelled by the A-side idempotent; both
// coefficients are stored as A-data.

struct DDArrow {
  Idempotent source;
  int left = -1;   // basis index of the A coefficient
  int right = -1;  // basis index of the A' coefficient (as A-data)
  Idempotent target;
};

struct TypeDDStructure {
  std::vector<Idempotent> generators;
  std::vector<DDArrow> arrows;

  std::vector<const DDArrow*> arrows_from(Idempotent g) const;
};

/// The DD structure equation: for every generator x, the sum of
/// (a1*a2, b2*b1, z) over composable arrow pairs x -> y -> z (A' products taken
/// in the opposite order, since A' = A(-Z) is stored as A-data) plus
/// (d a, b, y) and (a, d b, y) over arrows x -> y vanishes.
CheckResult check_dd_structure(const StrandsAlgebra& alg, const TypeDDStructure& dd);

std::string idempotent_label(const Pmc& z, Idempotent i);
/// `delta <gen> -> (<elt> , <elt>) <gen>`, one line per arrow, sorted.
std::string dump(const StrandsAlgebra& alg, const TypeDDStructure& dd);

// ---------------------------------------------------------------------------
// Rank-1 AA bimodules (right A', right A) given by an evaluator.  Generator
// [i] accepts right inputs whose chain starts at i and left (A') inputs, in
// A-data, whose chain starts with right idempotent o(i).

/// Targets of m_{1,p,q}([i]; left; right), F2-normalised.  Inputs are basis
/// indices of non-idempotent diagrams, in order of use.
using AAEvaluator = std::function<std::vector<Idempotent>(Idempotent, const std::vector<int>&,
                                                          const std::vector<int>&)>;

struct AAArrow {
  Idempotent source;
  std::vector<int> left;
  std::vector<int> right;
  Idempotent target;
};

struct AAActionTable {
  std::vector<Idempotent> generators;
  std::vector<AAArrow> arrows;
  bool truncated = false;
};

/// Every (left tuple, right tuple) of non-idempotent basis elements, both
/// sides idempotent-composable from generator i, with equal total
/// multiplicity vectors whose sum is at most `bound`.  `visit` returns false
/// to stop early.
void for_each_conserved_tuple(
    const StrandsAlgebra& alg, Idempotent i, int bound,
    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& visit);

/// A-infinity structure equation (with m_{1,0,0} = 0) on every generator and
/// conserved input tuple whose per-side multiplicity is at most `bound`.
CheckResult check_aa_structure(const StrandsAlgebra& alg, const AAEvaluator& m, int bound);

/// `m[1,p,q] <gen> ; <b'1> ; ... ; <b1> ; ... -> <gen>`, sorted.
std::string dump(const StrandsAlgebra& alg, const AAActionTable& t);

// ---------------------------------------------------------------------------
// Rank-1 DA bimodules over A (type D on the left, A-infinity on the right).

/// delta^1_{1+n}([i]; inputs) as F2-normalised (output basis index, target).
using DATerm = std::pair<int, Idempotent>;
using DAEvaluator = std::function<std::vector<DATerm>(Idempotent, const std::vector<int>&)>;

struct TypeDAStructure {
  std::vector<Idempotent> generators;
  DAEvaluator delta;
};

/// DA structure equation on every generator and composable tuple of
/// non-idempotent inputs with total multiplicity at most `bound`.
CheckResult check_da_structure(const StrandsAlgebra& alg, const TypeDAStructure& da, int bound);

/// Components phi_n of an A-infinity morphism A -> A, as F2 sums of basis
/// indices.
using AInftyMorphism = std::function<std::vector<int>(const std::vector<int>&)>;

/// Throws std::invalid_argument when delta^1_1 is nonzero on some generator.
AInftyMorphism extract_morphism(const StrandsAlgebra& alg, const TypeDAStructure& da);
/// The rank-1 DA bimodule [phi].
TypeDAStructure da_from_morphism(const StrandsAlgebra& alg, AInftyMorphism phi);

/// phi_1 commutes with d on every basis element, and on every homology block
/// the matrix of phi_1 in the block's representatives has full rank.
/// Idempotents are taken to be fixed.
CheckResult check_homology_isomorphism(const StrandsAlgebra& alg, const HomologyBasis& hb,
                                       const AInftyMorphism& phi);

/// How the box tensor product orders the chain of DD coefficients.
enum class BoxConvention {
  /// First DD arrow's A' coefficient is the first left input of the AA
  /// action; the D-output is e_1 * ... * e_k.
  Forward,
  /// Both orders reversed (kept for the negative control).
  Reversed,
};

/// N box DD for a rank-1 AA bimodule N and a DD structure with generators
/// matched by idempotent.  Evaluated lazily.
TypeDAStructure box_aa_dd(const StrandsAlgebra& alg, AAEvaluator aa, const TypeDDStructure& dd,
                          BoxConvention conv = BoxConvention::Forward);

}  // namespace bordered
