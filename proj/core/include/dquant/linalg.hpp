#pragma once

#include <map>
#include <vector>

#include "dquant/rational.hpp"

namespace dquant {

// Reduced row echelon form over Q, maintained incrementally on sparse rows.
// Every stored row has leading coefficient 1 and zeros in all other pivot
// columns, so reducing a vector needs a single pass.
class SparseRref {
 public:
  explicit SparseRref(int ncols) : ncols_(ncols) {}

  SparseVec reduce(const SparseVec& v) const;
  // Returns true when v was independent of the stored rows.
  bool insert(const SparseVec& v);
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  // One kernel vector per free column, with a 1 in that column and zeros in
  // the other free columns.
  std::vector<SparseVec> kernel() const;
  std::vector<int> free_columns() const;
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  int ncols_;
  std::map<int, SparseVec> rows_;
};

int rank_of(const std::vector<SparseVec>& rows, int ncols);

using DenseMatrix = std::vector<std::vector<Rational>>;
int rank_of(const DenseMatrix& m);
SparseVec to_sparse(const std::vector<Rational>& v);

DenseMatrix identity_matrix(int n);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b);
Rational trace(const DenseMatrix& a);
// Gauss-Jordan inverse; throws std::invalid_argument when singular.
DenseMatrix inverse(const DenseMatrix& a);

}  // namespace dquant
