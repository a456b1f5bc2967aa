#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bordered/pmc.hpp"

namespace bordered {

/// Basis element of A(Z): moving strands s -> t (s < t) plus double
/// horizontals.  `end[s]` is the end of the strand starting at s, or 0.
struct StrandDiagram {
  std::array<std::int8_t, kMaxPoints + 1> end{};
  std::uint32_t horizontals = 0;  // mask over pair indices

  static StrandDiagram idempotent(Idempotent i) {
    StrandDiagram d;
    d.horizontals = i.mask;
    return d;
  }
  bool has_moving() const {
    for (auto e : end)
      if (e) return true;
    return false;
  }
  int num_moving() const {
    int n = 0;
    for (auto e : end) n += e != 0;
    return n;
  }
  std::vector<std::pair<int, int>> strands() const;
  void add_strand(int s, int t) { end[s] = static_cast<std::int8_t>(t); }
  void remove_strand(int s) { end[s] = 0; }
  /// Start of the strand ending at t, or 0.
  int start_of(int t) const {
    for (int s = 1; s <= kMaxPoints; ++s)
      if (end[s] == t) return s;
    return 0;
  }

  bool operator==(const StrandDiagram&) const = default;
  auto operator<=>(const StrandDiagram&) const = default;
};

struct StrandDiagramHash {
  std::size_t operator()(const StrandDiagram& d) const {
    std::uint64_t h = 1469598103934665603ull ^ d.horizontals;
    for (auto e : d.end) h = (h ^ static_cast<std::uint8_t>(e)) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

/// Multiplicity per segment; entry k is the segment (k+1, k+2).
using Multiplicity = std::vector<int>;

bool is_valid(const Pmc& z, const StrandDiagram& d);
/// Throws std::invalid_argument describing the violated invariant.
void validate(const Pmc& z, const StrandDiagram& d);
Idempotent left_idempotent(const Pmc& z, const StrandDiagram& d);
Idempotent right_idempotent(const Pmc& z, const StrandDiagram& d);
Multiplicity multiplicity(const Pmc& z, const StrandDiagram& d);

std::string to_string(const Pmc& z, const StrandDiagram& d);
/// Parses a diagram literal (`1-3,h2`; `{}` is the empty diagram).
StrandDiagram parse_diagram(const Pmc& z, std::string_view text);

/// F2 sum of basis diagrams, kept sorted with no repeated terms.
struct AlgebraElement {
  std::vector<StrandDiagram> terms;

  bool is_zero() const { return terms.empty(); }
  void normalize();
  AlgebraElement& operator+=(const AlgebraElement& o);
  bool operator==(const AlgebraElement&) const = default;
};

/// Terms sorted by their canonical strings, joined by " + "; "0" when empty.
std::string to_string(const Pmc& z, const AlgebraElement& a);
AlgebraElement parse_element(const Pmc& z, std::string_view text);

// ---- normative semantics: horizontal expansion into the big strands algebra

/// A diagram of the big strands algebra on 4k points: end[s] = t >= s, with
/// t == s a single horizontal, or 0 when nothing starts at s.
struct BigTerm {
  std::array<std::int8_t, kMaxPoints + 1> end{};
  auto operator<=>(const BigTerm&) const = default;
};

std::vector<BigTerm> expand(const Pmc& z, const StrandDiagram& d);
int inversions(const BigTerm& t);
std::vector<BigTerm> big_diff(const BigTerm& t);
/// 0 or 1 terms.
std::vector<BigTerm> big_mul(const BigTerm& a, const BigTerm& b);
/// Regroups an F2 sum of big terms into A(Z) diagrams.  Throws
/// std::logic_error when the sum is not in the image of A(Z).
std::vector<StrandDiagram> regroup(const Pmc& z, std::vector<BigTerm> terms);

AlgebraElement diff(const Pmc& z, const StrandDiagram& d);
AlgebraElement mul(const Pmc& z, const StrandDiagram& a, const StrandDiagram& b);
/// The decoration of the chord with left idempotent exactly i, or 0.
AlgebraElement chord_element(const Pmc& z, Chord xi, Idempotent i);
/// The decoration of the chord with right idempotent exactly j, or 0.
AlgebraElement chord_element_right(const Pmc& z, Chord xi, Idempotent j);

/// All basis diagrams, sorted by (number of strands, canonical string).
std::vector<StrandDiagram> enumerate_basis(const Pmc& z);

// ---- indexed algebra with cached structure maps

/// (left idempotent, right idempotent, multiplicity) packed into one key.
struct BlockKey {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::uint64_t mult = 0;  // 4 bits per segment
  bool operator==(const BlockKey&) const = default;
};
struct BlockKeyHash {
  std::size_t operator()(const BlockKey& k) const {
    return std::hash<std::uint64_t>()(k.mult * 0x9e3779b97f4a7c15ull ^
                                      (std::uint64_t{k.left} << 32 | k.right));
  }
};
std::uint64_t pack_multiplicity(const Multiplicity& m);

class StrandsAlgebra {
 public:
  explicit StrandsAlgebra(Pmc z);

  const Pmc& pmc() const { return z_; }
  const std::vector<StrandDiagram>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const StrandDiagram& diagram(int idx) const { return basis_[idx]; }
  /// -1 when `d` is not a basis diagram.
  int find(const StrandDiagram& d) const;
  int index(const StrandDiagram& d) const;
  int idempotent_index(Idempotent i) const { return find(StrandDiagram::idempotent(i)); }

  Idempotent left(int idx) const { return info_[idx].left; }
  Idempotent right(int idx) const { return info_[idx].right; }
  const Multiplicity& mult(int idx) const { return info_[idx].mult; }
  int total_mult(int idx) const { return info_[idx].total; }
  bool is_idempotent(int idx) const { return info_[idx].total == 0; }
  BlockKey block_key(int idx) const { return info_[idx].key; }

  /// Computed on first use and cached; safe to call from several threads.
  const std::vector<int>& diff(int idx) const;
  /// Basis elements whose differential contains idx.
  const std::vector<int>& codiff(int idx) const;
  /// Product a*b as an index, or -1 for zero.
  int mul(int a, int b) const;
  const std::vector<int>& block(const BlockKey& key) const;
  /// All c with c*b = a.
  std::vector<int> factor_right(int a, int b) const;
  /// All c with e*c = a.
  std::vector<int> factor_left(int a, int e) const;

  std::string str(int idx) const { return to_string(z_, basis_[idx]); }

 private:
  struct Info {
    Idempotent left, right;
    Multiplicity mult;
    int total = 0;
    BlockKey key;
  };

  Pmc z_;
  std::vector<StrandDiagram> basis_;
  std::unordered_map<StrandDiagram, int, StrandDiagramHash> index_;
  std::vector<Info> info_;
  std::unordered_map<BlockKey, std::vector<int>, BlockKeyHash> blocks_;

  mutable std::mutex diff_mutex_;
  mutable std::unordered_map<int, std::vector<int>> diff_cache_;
  mutable std::unordered_map<int, std::vector<int>> codiff_cache_;

  mutable std::mutex mul_mutex_;
  mutable std::unordered_map<std::uint64_t, int> mul_cache_;
};

// ---- homology

/// Homology of one (left, right, multiplicity) block of A(Z).
struct HomologyBlock {
  BlockKey key;
  std::vector<int> members;                 // basis indices
  std::vector<AlgebraElement> representatives;
};

class HomologyBasis {
 public:
  explicit HomologyBasis(const StrandsAlgebra& alg);

  const std::vector<HomologyBlock>& blocks() const { return blocks_; }
  int total_rank() const;
  /// True iff `x` is a cycle.
  bool is_cycle(const AlgebraElement& x) const;
  /// True iff `x` (which must be homogeneous) is a boundary.
  bool is_boundary(const AlgebraElement& x) const;
  /// Coordinates of a homogeneous cycle in the representatives of its block.
  /// Throws std::invalid_argument for non-cycles or inhomogeneous input.
  std::vector<bool> coordinates(const AlgebraElement& x) const;
  /// Block index containing basis element idx.
  int block_of(int idx) const { return block_of_[idx]; }

 private:
  struct Solver;
  const StrandsAlgebra* alg_;
  std::vector<HomologyBlock> blocks_;
  std::vector<int> block_of_;
  std::vector<int> pos_in_block_;
  std::vector<std::shared_ptr<Solver>> solvers_;
  int homogeneous_block(const AlgebraElement& x) const;
};

}  // namespace bordered
