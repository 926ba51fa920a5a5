#include "hopfalgd/spansolver.hpp"

#include <algorithm>

namespace hopfalgd {

SparseVec SparseVec::single(uint64_t i, Fq v) {
  SparseVec s;
  if (!v.is_zero()) s.e_.emplace_back(i, std::move(v));
  return s;
}

SparseVec SparseVec::from_map(const std::map<uint64_t, Fq>& m) {
  SparseVec s;
  s.e_.reserve(m.size());
  for (const auto& [i, v] : m)
    if (!v.is_zero()) s.e_.emplace_back(i, v);
  return s;
}

const Fq* SparseVec::at(uint64_t i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const Entry& a, uint64_t b) { return a.first < b; });
  if (it == e_.end() || it->first != i) return nullptr;
  return &it->second;
}

void SparseVec::axpy(const Fq& c, const SparseVec& o) {
  if (c.is_zero() || o.e_.empty()) return;
  std::vector<Entry> out;
  out.reserve(e_.size() + o.e_.size());
  size_t i = 0, j = 0;
  while (i < e_.size() && j < o.e_.size()) {
    if (e_[i].first < o.e_[j].first) {
      out.push_back(std::move(e_[i++]));
    } else if (e_[i].first > o.e_[j].first) {
      out.emplace_back(o.e_[j].first, c * o.e_[j].second);
      ++j;
    } else {
      Fq v = e_[i].second + c * o.e_[j].second;
      if (!v.is_zero()) out.emplace_back(e_[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  while (i < e_.size()) out.push_back(std::move(e_[i++]));
  while (j < o.e_.size()) {
    out.emplace_back(o.e_[j].first, c * o.e_[j].second);
    ++j;
  }
  e_ = std::move(out);
}

void SparseVec::scale(const Fq& c) {
  if (c.is_zero()) {
    e_.clear();
    return;
  }
  for (auto& [i, v] : e_) v *= c;
}

bool SparseVec::operator==(const SparseVec& o) const {
  if (e_.size() != o.e_.size()) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i].first != o.e_[i].first || e_[i].second != o.e_[i].second) return false;
  return true;
}

void SpanSolver::reduce(SparseVec& v, SparseVec* comb) const {
  // Leading indices strictly increase, so one pass over pivots terminates.
  while (!v.empty()) {
    auto it = pivot_.find(v.lead());
    if (it == pivot_.end()) {
      // the lead is pivot-free; eliminate any later entries that have pivots
      bool touched = false;
      for (const auto& [row, val] : v.entries()) {
        auto jt = pivot_.find(row);
        if (jt != pivot_.end()) {
          Fq c = -val;
          v.axpy(c, col_[jt->second]);
          if (comb) comb->axpy(c, comb_[jt->second]);
          touched = true;
          break;
        }
      }
      if (!touched) return;
    } else {
      Fq c = -v.lead_val();
      v.axpy(c, col_[it->second]);
      if (comb) comb->axpy(c, comb_[it->second]);
    }
  }
}

bool SpanSolver::add_column(uint64_t col_id, SparseVec v) {
  SparseVec comb = SparseVec::single(col_id, k_.one());
  reduce(v, track_ ? &comb : nullptr);
  if (v.empty()) return false;
  Fq inv = v.lead_val().inv();
  v.scale(inv);
  if (track_) comb.scale(inv);
  pivot_[v.lead()] = static_cast<int>(col_.size());
  col_.push_back(std::move(v));
  comb_.push_back(track_ ? std::move(comb) : SparseVec());
  ids_.push_back(col_id);
  return true;
}

bool SpanSolver::contains(const SparseVec& v) const {
  SparseVec copy = v;
  reduce(copy, nullptr);
  return copy.empty();
}

std::optional<SparseVec> SpanSolver::solve(const SparseVec& target) const {
  SparseVec v = target;
  SparseVec comb;
  while (!v.empty()) {
    auto it = pivot_.find(v.lead());
    if (it == pivot_.end()) {
      bool touched = false;
      for (const auto& [row, val] : v.entries()) {
        auto jt = pivot_.find(row);
        if (jt != pivot_.end()) {
          Fq c = val;
          v.axpy(-c, col_[jt->second]);
          comb.axpy(c, comb_[jt->second]);
          touched = true;
          break;
        }
      }
      if (!touched) return std::nullopt;
    } else {
      Fq c = v.lead_val();
      v.axpy(-c, col_[it->second]);
      comb.axpy(c, comb_[it->second]);
    }
  }
  return comb;
}

}  // namespace hopfalgd
