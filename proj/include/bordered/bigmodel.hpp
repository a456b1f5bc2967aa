#pragma once

// The large model M of the AA identity bimodule: generators [a1 | a2] with
// complementary left idempotents, its differential, the two actions, and the
// idempotent subcomplex N with the maps f and g.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bordered/fstructs.hpp"
#include "bordered/strands.hpp"

namespace bordered {

/// A generator [a1 | a2] of M, stored as basis indices.
struct BigGenerator {
  int a1 = -1;
  int a2 = -1;
  bool operator==(const BigGenerator&) const = default;
  auto operator<=>(const BigGenerator&) const = default;
  std::uint64_t key() const { return std::uint64_t(std::uint32_t(a1)) << 32 | std::uint32_t(a2); }
};

bool is_generator(const StrandsAlgebra& alg, BigGenerator x);
/// `[<a1> | <a2>]`.
std::string to_string(const StrandsAlgebra& alg, BigGenerator x);
/// Throws ParseError on bad syntax and std::invalid_argument when the left
/// idempotents are not complementary.
BigGenerator parse_generator(const StrandsAlgebra& alg, std::string_view text);
/// F2 sums of generators: sorted, no repeats.
using BigElement = std::vector<BigGenerator>;
std::string to_string(const StrandsAlgebra& alg, const BigElement& x);

/// Differential arrows by family.  (i) d on a2; (ii) the dual differential on
/// a1, x -> [c | a2] for every c with a1 a term of d(c); (iii) moving a chord
/// from the front of a1 to the front of a2.
std::vector<BigGenerator> d_type_i(const StrandsAlgebra& alg, BigGenerator x);
std::vector<BigGenerator> d_type_ii(const StrandsAlgebra& alg, BigGenerator x);
std::vector<BigGenerator> d_type_iii(const StrandsAlgebra& alg, BigGenerator x);
/// Sum of the three families, F2-normalised.
BigElement big_d(const StrandsAlgebra& alg, BigGenerator x);
BigElement big_d(const StrandsAlgebra& alg, const BigElement& x);

/// m_{1,1,0}: [a1 | a2 b], or nothing when the product vanishes.
std::optional<BigGenerator> act_right(const StrandsAlgebra& alg, BigGenerator x, int b);
/// m_{1,0,1}: sum of [c | a2] over all c with c b = a1.
BigElement act_left(const StrandsAlgebra& alg, BigGenerator x, int b);

Multiplicity multiplicity_of(const StrandsAlgebra& alg, BigGenerator x);
bool is_idempotent_pair(const StrandsAlgebra& alg, BigGenerator x);

/// The generator [o(i) | i] of N.
BigGenerator f_map(const StrandsAlgebra& alg, Idempotent i);
/// i for [o(i) | i], nothing for every other generator.
std::optional<Idempotent> g_map(const StrandsAlgebra& alg, BigGenerator x);

void normalize(BigElement& x);

class BigModel {
 public:
  explicit BigModel(const StrandsAlgebra& alg);

  const StrandsAlgebra& algebra() const { return *alg_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const std::vector<BigGenerator>& generators() const { return gens_; }
  const BigGenerator& generator(int k) const { return gens_[k]; }
  /// -1 when absent.
  int find(BigGenerator x) const;
  /// Generators of N, in idempotent order.
  std::vector<BigGenerator> n_generators() const;

  /// Differential of generator k as generator indices (computed on demand).
  std::vector<int> d(int k) const;
  /// d^2 = 0 on every generator; parallel over `jobs` threads.
  CheckResult check_d_squared(int jobs = 1) const;
  /// Every arrow preserves multiplicity_of; no arrow touches N.
  CheckResult check_arrows(int jobs = 1) const;
  /// `d <gen> -> <gen>`, one line per arrow, sorted.
  std::string dump() const;

 private:
  const StrandsAlgebra* alg_;
  std::vector<BigGenerator> gens_;
  std::unordered_map<std::uint64_t, int> index_;
};

}  // namespace bordered
