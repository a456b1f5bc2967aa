#pragma once

// The cobar resolution Cob(A): words of duals a* of non-idempotent basis
// elements, with the dual differential and the splitting a* -> b* (x) b'*
// over bb' = a.  Also the map phi_1: A -> Cob(A) read off from N and linear
// algebra certificates for boundaries.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bordered/strands.hpp"

namespace bordered {

/// Written left to right; consecutive letters b*, b'* satisfy
/// right(b) = left(b').
struct CobarMonomial {
  std::vector<int> word;
  auto operator<=>(const CobarMonomial&) const = default;
};

/// F2 sum, sorted without repeats.
using CobarElement = std::vector<CobarMonomial>;

void normalize(CobarElement& x);
bool is_valid(const StrandsAlgebra& alg, const CobarMonomial& m);

/// `(1-2,h3)* (2-3,h1)*`; the empty word prints as `1`.
std::string to_string(const StrandsAlgebra& alg, const CobarMonomial& m);
/// Monomials sorted by text, joined by " + "; "0" when empty.
std::string to_string(const StrandsAlgebra& alg, const CobarElement& x);
/// Inverse of to_string.  Throws ParseError on bad syntax and
/// std::invalid_argument on idempotent letters or non-composable words.
CobarElement parse_cobar(const StrandsAlgebra& alg, std::string_view text);

/// The idempotent itself for an idempotent basis element, nullopt otherwise.
std::optional<int> augmentation(const StrandsAlgebra& alg, int a);

CobarElement cobar_diff(const StrandsAlgebra& alg, const CobarMonomial& m);
CobarElement cobar_diff(const StrandsAlgebra& alg, const CobarElement& x);

/// Sum over phi1_terms(a) of the words b'_p* ... b'_1*.
CobarElement phi1(const StrandsAlgebra& alg, int a);
CobarElement phi1(const StrandsAlgebra& alg, const AlgebraElement& a);

/// Total multiplicity and outer idempotents of a monomial; d preserves all
/// three.
struct CobarGrading {
  Multiplicity mult;
  Idempotent left, right;
  auto operator<=>(const CobarGrading&) const = default;
};
CobarGrading grading(const StrandsAlgebra& alg, const CobarMonomial& m);

/// Every valid monomial with the given grading, sorted.
std::vector<CobarMonomial> graded_piece(const StrandsAlgebra& alg, const CobarGrading& g);

struct BoundaryCertificate {
  bool boundary = false;
  CobarElement primitive;  // d(primitive) = x when boundary
  std::size_t piece_dim = 0;
  std::size_t rank_d = 0;        // rank of d on the graded piece
  std::size_t rank_with_x = 0;   // rank after adjoining x; > rank_d iff not a boundary
};

/// Solves d(y) = x over the graded piece of x.  Throws std::invalid_argument
/// when x is not homogeneous.  The zero element is a boundary of 0.
BoundaryCertificate is_boundary(const StrandsAlgebra& alg, const CobarElement& x);

/// d^2 = 0 on every monomial of the piece; returns the first offending
/// monomial's text, or "".
std::string check_cobar_d_squared(const StrandsAlgebra& alg, const std::vector<CobarMonomial>& piece);

/// a + b is a boundary in A.  Throws std::invalid_argument unless both are
/// homogeneous cycles.  Cycles in different blocks are homologous only when
/// both are boundaries.
bool homologous_in_A(const StrandsAlgebra& alg, const HomologyBasis& hb, const AlgebraElement& a,
                     const AlgebraElement& b);

}  // namespace bordered
