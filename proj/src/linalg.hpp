#pragma once

// Incremental row echelon form over a number field, with optional tracking of
// the combination of input rows that produced each stored row.

#include <map>
#include <optional>

#include "foliage/field.hpp"

namespace foliage::detail {

using SparseRow = std::map<int, FieldElem>;

class Echelon {
 public:
  explicit Echelon(FieldPtr f) : f_(std::move(f)) {}

  // Reduces `row` against the stored pivots.  Returns the combination of
  // earlier tags when the row becomes zero, otherwise stores it.
  std::optional<SparseRow> add(SparseRow row, int tag = -1) {
    SparseRow comb;
    if (tag >= 0) comb[tag] = FieldElem(f_, Rational(1));
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) {
        FieldElem inv = lead->second.inv();
        for (auto& [c, v] : row) v *= inv;
        for (auto& [c, v] : comb) v *= inv;
        pivots_.emplace(lead->first, Stored{std::move(row), std::move(comb)});
        return std::nullopt;
      }
      FieldElem factor = lead->second;
      axpy(row, it->second.row, factor);
      axpy(comb, it->second.comb, factor);
    }
    return comb;
  }

  size_t rank() const { return pivots_.size(); }

 private:
  struct Stored {
    SparseRow row;
    SparseRow comb;
  };

  // dst -= factor * src
  static void axpy(SparseRow& dst, const SparseRow& src, const FieldElem& factor) {
    for (const auto& [c, v] : src) {
      auto it = dst.find(c);
      if (it == dst.end()) {
        dst.emplace(c, -(factor * v));
      } else {
        it->second -= factor * v;
        if (it->second.is_zero()) dst.erase(it);
      }
    }
  }

  FieldPtr f_;
  std::map<int, Stored> pivots_;
};

// Column index of the monomial x^i y^j in degree-graded order.
inline int monomial_index(int i, int j) {
  int n = i + j;
  return n * (n + 1) / 2 + j;
}

}  // namespace foliage::detail
