#include "dquant/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dquant {

SparseVec SparseRref::reduce(const SparseVec& v) const {
  SparseVec r = v;
  for (const auto& [col, c] : v) {
    auto it = rows_.find(col);
    if (it == rows_.end()) continue;
    Rational coef = coeff_at(r, col);
    if (coef != 0) axpy(r, -coef, it->second);
  }
  return r;
}

bool SparseRref::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  int pivot = r.front().first;
  if (pivot >= ncols_) throw std::out_of_range("SparseRref: column index out of range");
  Rational inv = 1 / r.front().second;
  for (auto& [i, c] : r) c *= inv;
  for (auto& [p, row] : rows_) {
    Rational coef = coeff_at(row, pivot);
    if (coef != 0) axpy(row, -coef, r);
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<int> SparseRref::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < ncols_; ++c)
    if (!rows_.count(c)) out.push_back(c);
  return out;
}

std::vector<SparseVec> SparseRref::kernel() const {
  std::vector<SparseVec> basis;
  for (int f : free_columns()) {
    SparseVec x;
    x.emplace_back(f, Rational(1));
    for (const auto& [p, row] : rows_) {
      Rational c = coeff_at(row, f);
      if (c != 0) x.emplace_back(p, -c);
    }
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(x));
  }
  return basis;
}

int rank_of(const std::vector<SparseVec>& rows, int ncols) {
  SparseRref e(ncols);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

SparseVec to_sparse(const std::vector<Rational>& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

int rank_of(const DenseMatrix& m) {
  if (m.empty()) return 0;
  std::vector<SparseVec> rows;
  rows.reserve(m.size());
  for (const auto& r : m) rows.push_back(to_sparse(r));
  return rank_of(rows, static_cast<int>(m.front().size()));
}

DenseMatrix identity_matrix(int n) {
  DenseMatrix m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b.front().size();
  DenseMatrix c(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix ab = multiply(a, b), ba = multiply(b, a);
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab[i].size(); ++j) ab[i][j] -= ba[i][j];
  return ab;
}

Rational trace(const DenseMatrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

DenseMatrix inverse(const DenseMatrix& a) {
  const int n = static_cast<int>(a.size());
  DenseMatrix m = a, inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rational s = 1 / m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace dquant
