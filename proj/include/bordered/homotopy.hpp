#pragma once

// The homotopy H on the large model M with d H + H d = I + f g, the
// classification of generators that drives it, and the d-side / H-side
// pairing.

#include <string>
#include <vector>

#include "bordered/bigmodel.hpp"

namespace bordered {

enum class Side { Left, Right };

enum class CaseTag {
  Idempotent,
  // multiplicity one
  H1, H2, H3, H4, D5, D6, D7, D8,
  // higher multiplicity: i strand side / j strand side
  HM1, DM1,  // both left; H side when they cross
  HM2, DM2,  // both right; H side when they do not cross
  HM3,       // i left, j right
  DM4,       // i right, j left
};

std::string to_string(CaseTag t);
bool is_h_side(CaseTag t);
bool is_d_side(CaseTag t);

struct Classification {
  CaseTag tag = CaseTag::Idempotent;

  // Multiplicity one: key segment (p, p+1), key pair {p+1, q}.
  int p = 0;
  int q = 0;
  Side segment_side = Side::Left;
  Side pair_side = Side::Left;
  bool pair_moving = false;
  /// A strand ends at q on the left.
  bool special = false;

  // Higher multiplicity: (i, i+1) is the lowest segment covered twice and the
  // j strand covers (i-1, i).
  int i = 0;
  int j = 0;
  Side i_side = Side::Left;
  Side j_side = Side::Left;
  bool crossing = false;

  bool multiplicity_one() const { return tag >= CaseTag::H1 && tag <= CaseTag::D8; }
};

Classification classify(const StrandsAlgebra& alg, BigGenerator x);

/// Switches for the three families of special H terms; turning one off is
/// only useful for negative controls.
struct HomotopyOptions {
  bool case2_special = true;
  bool case4_first_special = true;
  bool case4_second_special = true;
};

struct HomotopyTerm {
  BigGenerator target;
  bool special = false;
};

/// Every H-arrow out of x, before F2 cancellation.  Throws std::logic_error if
/// a constructed diagram is not a valid strand diagram.
std::vector<HomotopyTerm> homotopy_terms(const StrandsAlgebra& alg, BigGenerator x,
                                         const HomotopyOptions& opt = {});
BigElement homotopy(const StrandsAlgebra& alg, BigGenerator x, const HomotopyOptions& opt = {});
BigElement homotopy(const StrandsAlgebra& alg, const BigElement& x, const HomotopyOptions& opt = {});

/// d H x + H d x for one generator.
BigElement homotopy_defect(const StrandsAlgebra& alg, BigGenerator x, const HomotopyOptions& opt = {});

/// d H + H d = I + f g on every generator of M.  The failure message names
/// the first failing generator (in M's order) with both sides.
CheckResult verify_homotopy(const BigModel& m, const HomotopyOptions& opt = {}, int jobs = 1);

struct PairingResult {
  /// (d-side x, H-side y) with a d-arrow x -> y and the ordinary H y = x.
  std::vector<std::pair<BigGenerator, BigGenerator>> pairs;
  CheckResult check;
};

/// The perfect matching of non-idempotent generators.
PairingResult pairing(const BigModel& m, int jobs = 1);

}  // namespace bordered
