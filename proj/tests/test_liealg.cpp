#include "doctest.h"

#include <map>
#include <numeric>

#include "dquant/liealg.hpp"

using namespace dquant;

namespace {

// Closed-form positive root counts.
int expected_positive_roots(char type, int n) {
  switch (type) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
  }
  return -1;
}

SparseVec jacobi(const RootSystem& rs, int a, int b, int c) {
  SparseVec out = rs.bracket(rs.bracket(a, b), basis_vector(c));
  axpy(out, 1, rs.bracket(rs.bracket(b, c), basis_vector(a)));
  axpy(out, 1, rs.bracket(rs.bracket(c, a), basis_vector(b)));
  return out;
}

Rational kill(const RootSystem& rs, const SparseVec& x, const SparseVec& y) {
  Rational s = 0;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) s += ca * cb * rs.killing[a][b];
  return s;
}

// Poincare polynomial of G/P in x = t^2 from the product formula
// prod_{alpha>0} (1 - x^{ht+1})/(1 - x^{ht}), divided by the same product over Omega_Gamma^+.
std::vector<long> macdonald_betti(const LeviDatum& lv) {
  const RootSystem& rs = *lv.parent;
  using Poly = std::vector<long>;
  auto mul = [](const Poly& p, int deg) {  // p * (1 - x^deg)
    Poly out(p.size() + deg, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[i] += p[i];
      out[i + deg] -= p[i];
    }
    return out;
  };
  Poly num{1}, den{1};
  for (int k = 0; k < rs.num_positive; ++k) {
    int h = rs.height(k);
    num = mul(num, h + 1);
    den = mul(den, h);
    bool in_gamma = !lv.in_m[rs.e(k)];
    if (in_gamma) {
      num = mul(num, h);
      den = mul(den, h + 1);
    }
  }
  // Exact division num / den (den has constant term 1).
  while (!num.empty() && num.back() == 0) num.pop_back();
  while (!den.empty() && den.back() == 0) den.pop_back();
  Poly q(num.size() - den.size() + 1, 0);
  for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
    long c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (long r : num) REQUIRE(r == 0);
  return q;
}

std::vector<std::pair<char, int>> small_types() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}};
}

}  // namespace

TEST_CASE("positive root counts match closed forms") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{
           {'A', 1}, {'A', 2}, {'A', 5}, {'A', 8}, {'B', 2}, {'B', 4}, {'C', 3}, {'C', 5}, {'D', 4},
           {'D', 6}, {'E', 6}, {'E', 7}, {'F', 4}, {'G', 2}}) {
    auto rs = build_root_system(t, n);
    CHECK(rs->num_positive == expected_positive_roots(t, n));
    CHECK(rs->dim == n + 2 * rs->num_positive);
  }
  CHECK(build_root_system('A', 2)->num_positive == 3);
  CHECK(build_root_system('G', 2)->num_positive == 6);
  CHECK(build_root_system('D', 4)->num_positive == 12);
}

TEST_CASE("E8 builds with 120 positive roots") {
  auto rs = build_root_system('E', 8);
  CHECK(rs->num_positive == 120);
  CHECK(maximal_root_coefficients(*rs) == std::vector<int>{2, 3, 4, 6, 5, 4, 3, 2});
}

TEST_CASE("invalid types are rejected with an explanation") {
  std::string why;
  CHECK_FALSE(is_valid_type('D', 3, &why));
  CHECK(why.find("D3") != std::string::npos);
  CHECK_THROWS_AS(build_root_system('E', 5), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('A', 9), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('X', 2), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('G', 3), std::invalid_argument);
}

TEST_CASE("maximal root coefficients") {
  CHECK(maximal_root_coefficients(*build_root_system('A', 3)) == std::vector<int>{1, 1, 1});
  CHECK(maximal_root_coefficients(*build_root_system('E', 6)) == std::vector<int>{1, 2, 2, 3, 2, 1});
  CHECK(maximal_root_coefficients(*build_root_system('G', 2)) == std::vector<int>{3, 2});
  CHECK(maximal_root_coefficients(*build_root_system('B', 3)) == std::vector<int>{1, 2, 2});
  CHECK(maximal_root_coefficients(*build_root_system('C', 3)) == std::vector<int>{2, 2, 1});
  CHECK(maximal_root_coefficients(*build_root_system('D', 4)) == std::vector<int>{1, 2, 1, 1});
  CHECK(maximal_root_coefficients(*build_root_system('F', 4)) == std::vector<int>{2, 3, 4, 2});
  // The highest root is dominant.
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    auto th = maximal_root_coefficients(*rs);
    for (int i = 0; i < n; ++i) {
      int pair = 0;
      for (int j = 0; j < n; ++j) pair += rs->cartan[i][j] * th[j];
      CHECK(pair >= 0);
    }
  }
}

TEST_CASE("G2 has alpha_1 short") {
  auto rs = build_root_system('G', 2);
  CHECK(rs->simple_length2[0] < rs->simple_length2[1]);
  CHECK(rs->cartan[0][1] == -3);
}

TEST_CASE("structure constants: antisymmetry, weights, Jacobi") {
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    const int d = rs->dim;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        SparseVec s = rs->bracket(a, b);
        axpy(s, 1, rs->bracket(b, a));
        CHECK(s.empty());
        for (const auto& [c, coef] : rs->bracket(a, b)) {
          Root w = rs->weights[a];
          for (int i = 0; i < n; ++i) w[i] += rs->weights[b][i];
          CHECK(rs->weights[c] == w);
        }
      }
    if (d <= 30) {
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
          for (int c = b + 1; c < d; ++c) CHECK(jacobi(*rs, a, b, c).empty());
    }
  }
}

TEST_CASE("Jacobi on a sample of F4 and E6 triples") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'F', 4}, {'E', 6}}) {
    auto rs = build_root_system(t, n);
    Rng rng(11);
    for (int trial = 0; trial < 3000; ++trial) {
      int a = rng.uniform(0, rs->dim - 1), b = rng.uniform(0, rs->dim - 1), c = rng.uniform(0, rs->dim - 1);
      CHECK(jacobi(*rs, a, b, c).empty());
    }
  }
}

TEST_CASE("Chevalley integrality before rescaling") {
  // [e_alpha, e_beta] = +-(p+1) e_{alpha+beta} for positive roots.
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    for (int i = 0; i < rs->num_positive; ++i)
      for (int j = 0; j < rs->num_positive; ++j) {
        const auto& br = rs->bracket(rs->e(i), rs->e(j));
        if (br.empty()) continue;
        REQUIRE(br.size() == 1);
        Root beta = rs->positive_roots[j];
        int p = 0;
        while (true) {
          for (int x = 0; x < n; ++x) beta[x] -= rs->positive_roots[i][x];
          if (rs->basis_of_root(beta) < 0) break;
          ++p;
        }
        Rational c = br[0].second;
        CHECK(abs(c) == p + 1);
      }
  }
}

TEST_CASE("Killing form: invariance, orthogonality, normalization, root-sum oracle") {
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    const int d = rs->dim;
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          if (d > 30 && (x + y + z) % 3 != 0) continue;
          Rational v = kill(*rs, rs->bracket(x, y), basis_vector(z)) + kill(*rs, basis_vector(y), rs->bracket(x, z));
          CHECK(v == 0);
        }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Root w = rs->weights[a];
        for (int i = 0; i < n; ++i) w[i] += rs->weights[b][i];
        bool opposite = std::all_of(w.begin(), w.end(), [](int v) { return v == 0; });
        if (!opposite) CHECK(rs->killing[a][b] == 0);
      }
    for (int k = 0; k < rs->num_positive; ++k) CHECK(rs->killing[rs->e(k)][rs->f(k)] == 1);
    // On the Cartan: kappa(h_i, h_j) = sum over all roots of alpha(h_i) alpha(h_j).
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long s = 0;
        for (const auto& r : rs->positive_roots) {
          long ai = 0, aj = 0;
          for (int x = 0; x < n; ++x) {
            ai += rs->cartan[i][x] * r[x];
            aj += rs->cartan[j][x] * r[x];
          }
          s += 2 * ai * aj;
        }
        CHECK(rs->killing[i][j] == s);
      }
  }
}

TEST_CASE("Cartan involution") {
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      int a = rng.uniform(0, rs->dim - 1), b = rng.uniform(0, rs->dim - 1);
      CHECK(apply_theta(*rs, apply_theta(*rs, basis_vector(a))) == basis_vector(a));
      SparseVec lhs = apply_theta(*rs, rs->bracket(a, b));
      SparseVec rhs = rs->bracket(apply_theta(*rs, basis_vector(a)), apply_theta(*rs, basis_vector(b)));
      CHECK(lhs == rhs);
    }
    // theta(E_alpha) pairs with E_alpha to -kappa-scaled values: theta is an isometry.
    for (int a = 0; a < rs->dim; ++a)
      for (int b = 0; b < rs->dim; ++b)
        if (rs->killing[a][b] != 0)
          CHECK(kill(*rs, apply_theta(*rs, basis_vector(a)), apply_theta(*rs, basis_vector(b))) ==
                rs->killing[a][b]);
  }
}

TEST_CASE("levi data") {
  auto a2 = build_root_system('A', 2);
  auto l0 = levi_datum(a2, {});
  CHECK(l0->num_quasiroots() == 3);
  for (const auto& f : l0->fibers) CHECK(f.size() == 1);

  auto l2 = levi_datum(a2, {1});
  REQUIRE(l2->num_quasiroots() == 1);
  std::vector<Root> fiber;
  for (int k : l2->fibers[0]) fiber.push_back(a2->positive_roots[k]);
  std::sort(fiber.begin(), fiber.end());
  CHECK(fiber == std::vector<Root>{{1, 0}, {1, 1}});
  CHECK(l2->is_symmetric());

  auto d4 = build_root_system('D', 4);
  auto ld = levi_datum(d4, {1, 3});
  CHECK(ld->omega_gamma.size() == 6);
  CHECK(ld->m_basis.size() == 18);

  CHECK_THROWS_AS(levi_datum(a2, {0, 1}), std::invalid_argument);
}

TEST_CASE("levi invariants over all proper subsets") {
  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    for (int mask = 0; mask < (1 << n) - 1; ++mask) {
      std::vector<int> g;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) g.push_back(i);
      auto lv = levi_datum(rs, g);
      std::size_t total = 0;
      for (std::size_t q = 0; q < lv->fibers.size(); ++q) {
        total += 2 * lv->fibers[q].size();
        for (int x : lv->positive_quasiroots[q]) CHECK(x >= 0);
        CHECK(std::accumulate(lv->positive_quasiroots[q].begin(), lv->positive_quasiroots[q].end(), 0) > 0);
      }
      CHECK(total == lv->m_basis.size());
      CHECK(static_cast<int>(lv->m_basis.size() + lv->omega_gamma.size()) == 2 * rs->num_positive);
      // Negative fibers mirror positive ones.
      std::map<int, int> pos_count, neg_count;
      for (int a : lv->m_basis) {
        int q = lv->quasiroot_of_basis[a];
        CHECK(q != 0);
        (q > 0 ? pos_count[q] : neg_count[-q])++;
      }
      CHECK(pos_count == neg_count);
      // Simple quasiroots are the images of Pi minus Gamma.
      REQUIRE(lv->simple_quasiroots.size() == lv->complement.size());
      for (std::size_t i = 0; i < lv->complement.size(); ++i) {
        Root unit(lv->complement.size(), 0);
        unit[i] = 1;
        CHECK(lv->positive_quasiroots[lv->simple_quasiroots[i]] == unit);
      }
    }
  }
}

TEST_CASE("betti numbers") {
  auto a2 = build_root_system('A', 2);
  CHECK(betti_numbers(*levi_datum(a2, {1})) == std::vector<long>{1, 1, 1});
  auto a3 = build_root_system('A', 3);
  auto b = betti_numbers(*levi_datum(a3, {}));
  CHECK(b == std::vector<long>{1, 3, 5, 6, 5, 3, 1});
  CHECK(std::accumulate(b.begin(), b.end(), 0L) == 24);

  for (auto [t, n] : small_types()) {
    auto rs = build_root_system(t, n);
    for (int mask = 0; mask < (1 << n) - 1; ++mask) {
      std::vector<int> g;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) g.push_back(i);
      auto lv = levi_datum(rs, g);
      auto bn = betti_numbers(*lv);
      CHECK(bn.front() == 1);
      if (bn.size() > 1) CHECK(bn[1] == static_cast<long>(lv->complement.size()));
      CHECK(bn == macdonald_betti(*lv));
    }
  }
  CHECK_THROWS_AS(betti_numbers(*levi_datum(build_root_system('E', 7), {})), std::invalid_argument);
}
