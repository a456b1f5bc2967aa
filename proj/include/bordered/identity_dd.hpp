#pragma once

#include "bordered/fstructs.hpp"

namespace bordered {

/// CFDD of the identity: one generator per idempotent i (paired with o(i)),
/// and for every chord an arrow i -> (i a(xi), decoration of xi with right
/// idempotent o(i)) j whenever both decorations exist.
TypeDDStructure build_identity_dd(const StrandsAlgebra& alg);

/// Iterates delta, multiplying the coefficients on both sides, and returns the
/// largest k with delta^k nonzero.  Throws std::logic_error if a product's
/// total multiplicity exceeds 2k(4k-1).
int check_bounded(const StrandsAlgebra& alg, const TypeDDStructure& dd);

}  // namespace bordered
