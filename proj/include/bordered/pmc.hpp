#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bordered {

/// Largest supported number of points (genus 4).  Diagrams store strand ends in
/// fixed arrays of this size.
inline constexpr int kMaxPoints = 16;

/// Malformed textual input (PMC files, literals).  `line` and `column` are
/// 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(format(msg, line, column)), detail_(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  static std::string format(const std::string& msg, int line, int column);
  std::string detail_;
  int line_;
  int column_;
};

/// A matching that does not describe a pointed matched circle.
class InvalidPmc : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Segment (p, p+1), stored by its lower point.
struct Segment {
  int lower = 0;
  auto operator<=>(const Segment&) const = default;
};

struct Chord {
  int start = 0;
  int end = 0;
  auto operator<=>(const Chord&) const = default;
};

/// A set of matched pairs, as a bit mask over pair indices.  Pair indices are
/// assigned in increasing order of the pair's smaller point.
struct Idempotent {
  std::uint32_t mask = 0;

  bool contains(int pair) const { return (mask >> pair) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  auto operator<=>(const Idempotent&) const = default;
};

class Pmc {
 public:
  /// Validates and builds a PMC from explicit pairs (any order, either
  /// orientation).  Throws InvalidPmc when the points are not matched in
  /// pairs or the segment traversal does not visit every segment.
  static Pmc from_pairs(int num_points, const std::vector<std::pair<int, int>>& pairs);
  /// Parses the `points N` / `pair p q` text format.  Throws ParseError for
  /// syntax problems and InvalidPmc for bad matchings.
  static Pmc parse(std::string_view text);
  static Pmc load(const std::string& path);

  /// The genus-1 circle {1,3},{2,4}.
  static Pmc genus1();
  /// {1,3},{2,4},{5,7},{6,8}.
  static Pmc split_genus2();
  /// {1,5},{2,6},{3,7},{4,8}.
  static Pmc antipodal_genus2();
  /// Every valid PMC on `num_points` points, in lexicographic order of the
  /// matching.
  static std::vector<Pmc> enumerate(int num_points);

  std::string to_text() const;

  int num_points() const { return n_; }
  int genus() const { return n_ / 4; }
  int num_pairs() const { return n_ / 2; }
  int num_segments() const { return n_ - 1; }

  int partner(int pt) const;
  /// Index of the pair containing `pt`.
  int pair_of(int pt) const;
  int pair_low(int pair) const { return pair_low_[pair]; }
  int pair_high(int pair) const { return partner_[pair_low_[pair]]; }

  /// Segments in the traversal order <_Z.
  const std::vector<Segment>& segment_order() const { return order_; }
  /// Position of segment (lower, lower+1) in segment_order().
  int segment_rank(int lower) const { return rank_[lower]; }
  /// The segment immediately before (lower, lower+1), or nullopt-like -1 for
  /// the initial segment.
  int predecessor(int lower) const;

  std::vector<Chord> all_chords() const;

  Idempotent full_idempotent() const { return {(1u << num_pairs()) - 1u}; }
  Idempotent complement(Idempotent i) const { return {full_idempotent().mask & ~i.mask}; }
  /// All 2^(2k) idempotents, in increasing mask order.
  std::vector<Idempotent> all_idempotents() const;

  bool operator==(const Pmc& o) const { return n_ == o.n_ && partner_ == o.partner_; }

 private:
  Pmc() = default;

  int n_ = 0;
  std::vector<int> partner_;   // indexed by point, 1-based
  std::vector<int> pair_of_;   // point -> pair index
  std::vector<int> pair_low_;  // pair index -> smaller point
  std::vector<Segment> order_;
  std::vector<int> rank_;      // lower point -> position in order_
};

}  // namespace bordered
