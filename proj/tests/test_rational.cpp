#include "doctest.h"

#include <cmath>

#include "dquant/linalg.hpp"

using namespace dquant;

namespace {

// Plain dense Gaussian elimination, independent of SparseRref.
int dense_rank(DenseMatrix m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      Rational f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(parse_rational("-3/2") == make_rational(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("10/4") == make_rational(5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Rational q = rng.nonzero_rational(1000, 1000);
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("make_rational reduces") {
  Rational a = make_rational(44, 46), b = make_rational(22, 23);
  CHECK(a == b);
  CHECK(a.get_num() == 22);
  CHECK(make_rational(3, -6).get_den() == 2);
}

TEST_CASE("continued-fraction rationalization") {
  CHECK(rationalize(0.5, 100) == make_rational(1, 2));
  CHECK(rationalize(-1.0 / 3.0, 1000000) == make_rational(-1, 3));
  CHECK(rationalize(355.0 / 113.0, 1000) == make_rational(355, 113));
  Rational pi = rationalize(M_PI, 100);
  CHECK(pi == make_rational(22, 7));  // last convergent, not a semiconvergent
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Rational q = rng.nonzero_rational(100000, 999);
    CHECK(rationalize(q.get_d(), 1000000) == q);
  }
}

TEST_CASE("sparse rref against dense elimination") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = static_cast<int>(rng.uniform(1, 8)), cols = static_cast<int>(rng.uniform(1, 8));
    DenseMatrix m(rows, std::vector<Rational>(cols));
    for (auto& r : m)
      for (auto& x : r)
        if (rng.uniform(0, 2) == 0) x = rng.nonzero_rational(5, 3);
    // Duplicate a combination so the rank drops sometimes.
    if (rows > 2)
      for (int j = 0; j < cols; ++j) m[rows - 1][j] = m[0][j] * 2 - m[1][j];
    std::vector<SparseVec> sp;
    for (const auto& r : m) sp.push_back(to_sparse(r));
    CHECK(rank_of(sp, cols) == dense_rank(m));
    CHECK(rank_of(m) == dense_rank(m));
    SparseRref rref(cols);
    for (const auto& r : sp) rref.insert(r);
    auto ker = rref.kernel();
    CHECK(static_cast<int>(ker.size()) == cols - rref.rank());
    for (const auto& v : ker)
      for (const auto& r : m) {
        Rational dot = 0;
        for (const auto& [j, c] : v) dot += r[j] * c;
        CHECK(dot == 0);
      }
  }
}

TEST_CASE("dense inverse") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(rng.uniform(1, 5));
    DenseMatrix a(n, std::vector<Rational>(n));
    for (auto& r : a)
      for (auto& x : r) x = rng.nonzero_rational(6, 4);
    if (dense_rank(a) < n) {
      CHECK_THROWS_AS(inverse(a), std::invalid_argument);
      continue;
    }
    CHECK(multiply(a, inverse(a)) == identity_matrix(n));
    CHECK(multiply(inverse(a), a) == identity_matrix(n));
  }
  CHECK(trace(identity_matrix(4)) == 4);
  DenseMatrix x{{0, 1}, {0, 0}}, y{{0, 0}, {1, 0}};
  CHECK(commutator(x, y) == DenseMatrix{{1, 0}, {0, -1}});
}
