#pragma once

// Small F2 helpers: mod-2 normalisation of term lists, dense bit vectors and
// an incremental echelon basis that remembers how each row was formed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bordered {

/// Sorts `terms` and cancels equal terms in pairs (coefficients are in F2).
template <class T, class Less = std::less<T>>
void f2_normalize(std::vector<T>& terms, Less less = {}) {
  std::sort(terms.begin(), terms.end(), less);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    while (j < terms.size() && !less(terms[i], terms[j])) ++j;
    if ((j - i) % 2 == 1) {
      if (out != i) terms[out] = std::move(terms[i]);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  // Index of the highest set bit, or -1 when the vector is zero.
  long highest() const {
    for (std::size_t w = words_.size(); w-- > 0;)
      if (words_[w]) return static_cast<long>(w * 64 + 63 - __builtin_clzll(words_[w]));
    return -1;
  }
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) r.push_back(i);
    return r;
  }
  bool operator==(const BitVector&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Echelon basis of a subspace of F2^dim.  Every stored row carries the set of
/// inserted source vectors it is the sum of, so membership tests also produce
/// a certificate (which sources add up to the tested vector).
class F2Echelon {
 public:
  F2Echelon(std::size_t dim, std::size_t num_sources) : dim_(dim), num_sources_(num_sources) {}

  /// Inserts `v` tagged with `source`.  Returns true when `v` was independent
  /// of the rows already present; otherwise returns false and, if `relation`
  /// is non-null, stores the sources summing to zero together with `source`.
  bool insert(BitVector v, std::size_t source, BitVector* relation = nullptr) {
    BitVector comb(num_sources_);
    comb.flip(source);
    reduce_in_place(v, comb);
    if (!v.any()) {
      if (relation) *relation = std::move(comb);
      return false;
    }
    long piv = v.highest();
    pivot_[piv] = rows_.size();
    rows_.push_back({std::move(v), std::move(comb)});
    return true;
  }

  /// Reduces `v` against the basis.  Returns the residual (zero iff `v` lies in
  /// the span) and the combination of sources that was subtracted.
  std::pair<BitVector, BitVector> reduce(BitVector v) const {
    BitVector comb(num_sources_);
    reduce_in_place(v, comb);
    return {std::move(v), std::move(comb)};
  }

  bool contains(const BitVector& v) const { return !reduce(v).first.any(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  struct Row {
    BitVector vec;
    BitVector comb;
  };

  void reduce_in_place(BitVector& v, BitVector& comb) const {
    for (long h = v.highest(); h >= 0; h = v.highest()) {
      auto it = pivot_.find(h);
      if (it == pivot_.end()) return;
      v ^= rows_[it->second].vec;
      comb ^= rows_[it->second].comb;
    }
  }

  std::size_t dim_;
  std::size_t num_sources_;
  std::vector<Row> rows_;
  std::unordered_map<long, std::size_t> pivot_;
};

}  // namespace bordered
