#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hopfalgd/field.hpp"

namespace hopfalgd {

// Sorted, zero-free sparse vector over uint64 indices.
class SparseVec {
 public:
  using Entry = std::pair<uint64_t, Fq>;

  SparseVec() = default;
  static SparseVec single(uint64_t i, Fq v);
  static SparseVec from_map(const std::map<uint64_t, Fq>& m);

  bool empty() const { return e_.empty(); }
  size_t nnz() const { return e_.size(); }
  const std::vector<Entry>& entries() const { return e_; }
  const Fq* at(uint64_t i) const;
  uint64_t lead() const { return e_.front().first; }
  const Fq& lead_val() const { return e_.front().second; }

  void axpy(const Fq& c, const SparseVec& o);  // this += c * o
  void scale(const Fq& c);
  bool operator==(const SparseVec& o) const;

 private:
  std::vector<Entry> e_;
};

// Incremental exact echelon basis of a growing set of sparse columns, with
// optional tracking of each stored column as a combination of the original
// columns (needed to extract membership certificates).
class SpanSolver {
 public:
  SpanSolver(Field k, bool track_combinations) : k_(k), track_(track_combinations) {}

  // Reduces v against the current basis and stores it if independent.
  // Returns true if the column was inserted.
  bool add_column(uint64_t col_id, SparseVec v);

  // Fully pivot-reduces v in place; if comb != nullptr accumulates the
  // combination of original column ids consumed by the reduction.
  void reduce(SparseVec& v, SparseVec* comb) const;

  bool contains(const SparseVec& v) const;
  // target as a combination of original column ids, if representable
  std::optional<SparseVec> solve(const SparseVec& target) const;

  size_t rank() const { return col_.size(); }
  const std::vector<uint64_t>& inserted_ids() const { return ids_; }

 private:
  std::map<uint64_t, int> pivot_;  // leading row -> slot
  std::vector<SparseVec> col_;     // normalized: leading coefficient 1
  std::vector<SparseVec> comb_;    // over original column ids
  std::vector<uint64_t> ids_;
  Field k_ = Field::rationals();
  bool track_;
};

}  // namespace hopfalgd
