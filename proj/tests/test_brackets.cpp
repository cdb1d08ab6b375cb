#include "doctest.h"

#include <algorithm>

#include "dquant/brackets.hpp"

using namespace dquant;

namespace {

OrbitPoint random_point(const LeviPtr& lv, Rng& rng) {
  std::vector<Rational> lam;
  for (std::size_t i = 0; i < lv->complement.size(); ++i) lam.push_back(Rational(rng.uniform(1, 9)));
  return make_orbit_point(lv, lam);
}

std::vector<Rational> random_c(const LeviPtr& lv, Rng& rng) {
  std::vector<Rational> c;
  for (int q = 0; q < lv->num_quasiroots(); ++q) c.push_back(rng.nonzero_rational(7, 5));
  return c;
}

bool zeros(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// All proper subsets of the simple roots, as 0-based index lists.
std::vector<std::vector<int>> proper_subsets(int rank) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << rank) - 1; ++mask) {
    std::vector<int> g;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) g.push_back(i);
    out.push_back(g);
  }
  return out;
}

int quasiroot(const LeviDatum& lv, Root r) { return lv.quasiroot_index(r); }

// Independent evaluation of one addition-table equation from the quasiroot vectors.
Rational ff_direct(const InvariantBivector& f, const Root& a, const Root& b, const Rational& K) {
  const LeviDatum& lv = *f.levi;
  Root s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  Rational ca = f.c[quasiroot(lv, a)], cb = f.c[quasiroot(lv, b)], cs = f.c[quasiroot(lv, s)];
  return cs * (ca + cb) - ca * cb - K * K;
}

}  // namespace

TEST_CASE("invariant bivectors are g_Gamma-invariant and theta-anti-invariant") {
  Rng rng(3);
  for (auto [t, n, g] : std::vector<std::tuple<char, int, std::vector<int>>>{
           {'A', 3, {1}}, {'A', 3, {}}, {'B', 3, {0}}, {'C', 3, {1, 2}}, {'G', 2, {1}}, {'D', 4, {1, 3}}}) {
    auto lv = levi_datum(build_root_system(t, n), g);
    for (int trial = 0; trial < 3; ++trial) {
      Multivector v = make_bivector(lv, random_c(lv, rng)).to_multivector();
      CHECK(is_gamma_invariant(*lv, v));
      CHECK(apply_theta(v) == -v);
    }
  }
  // Different coefficients on two roots over the same quasiroot break invariance.
  auto a3 = build_root_system('A', 3);
  auto lv = levi_datum(a3, {1});
  int q = lv->simple_quasiroots[0];
  REQUIRE(lv->fibers[q].size() == 2);
  Multivector bad(a3, 2);
  bad += Multivector::monomial(a3, {a3->e(lv->fibers[q][0]), a3->f(lv->fibers[q][0])}, 1);
  bad += Multivector::monomial(a3, {a3->e(lv->fibers[q][1]), a3->f(lv->fibers[q][1])}, 2);
  CHECK_FALSE(is_gamma_invariant(*lv, bad));
  CHECK_THROWS_AS(make_bivector(lv, {1}), std::invalid_argument);
}

TEST_CASE("solve_ff") {
  auto a2 = levi_datum(build_root_system('A', 2), {});
  auto r = solve_ff(a2, {1, 1}, 0);
  REQUIRE(r.bivector);
  CHECK(r.bivector->c[2] == Rational(1, 2));

  auto d = solve_ff(a2, {1, -1}, 5);
  REQUIRE(d.conflict);
  CHECK(d.conflict->kind == FfConflict::Kind::DegeneratePair);
  CHECK(d.conflict->message.find("degenerate pair") != std::string::npos);
  CHECK(d.conflict->message.find("(1,0)") != std::string::npos);
  CHECK(d.conflict->message.find("(0,1)") != std::string::npos);

  auto a3 = levi_datum(build_root_system('A', 3), {});
  auto lam = solve_ff(a3, {Rational(1, 2), Rational(1, 3), Rational(1, 5)}, 0);
  REQUIRE(lam.bivector);
  CHECK(zeros(ff_residuals(*lam.bivector, 0)));
  // Propagation agrees with the closed form 1/lambda.
  CHECK(lam.bivector->c == lambda_poisson(make_orbit_point(a3, {2, 3, 5})).c);
  // ... and with the multiplicative closed form at K = 1.
  auto ps = solve_ff(a3, {psi(2), psi(3), psi(5)}, 1);
  REQUIRE(ps.bivector);
  CHECK(ps.bivector->c == psi_solution(a3, {2, 3, 5}, 1).c);

  Rng rng(11);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 3}, {'G', 2}, {'A', 4}}) {
    auto lv = levi_datum(build_root_system(t, n), {});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> init;
      for (int i = 0; i < n; ++i) init.push_back(rng.nonzero_rational(9, 4));
      Rational K = Rational(rng.uniform(0, 3));
      Rational u = rng.nonzero_rational(5, 3);
      auto base = solve_ff(lv, init, K);
      std::vector<Rational> scaled_init;
      for (auto& x : init) scaled_init.push_back(u * x);
      auto sc = solve_ff(lv, scaled_init, u * K);
      REQUIRE(base.bivector.has_value() == sc.bivector.has_value());
      if (!base.bivector) continue;
      for (int q = 0; q < lv->num_quasiroots(); ++q) CHECK(sc.bivector->c[q] == u * base.bivector->c[q]);
      for (const auto& [a, b, s] : lv->addition_table)
        CHECK(ff_direct(*base.bivector, lv->positive_quasiroots[a], lv->positive_quasiroots[b], K) == 0);
    }
  }
}

TEST_CASE("lambda form and KKS bracket") {
  auto a2 = levi_datum(build_root_system('A', 2), {});
  auto f = lambda_poisson(make_orbit_point(a2, {2, 3}));
  CHECK(f.c == std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 5)});
  CHECK(Rational(1, 5) * (Rational(1, 2) + Rational(1, 3)) == Rational(1, 2) * Rational(1, 3));
  auto f2 = lambda_poisson(make_orbit_point(a2, {4, 6}));
  for (int q = 0; q < 3; ++q) CHECK(f2.c[q] == f.c[q] / 2);
  CHECK_THROWS_WITH_AS(lambda_poisson(make_orbit_point(a2, {1, -1})), doctest::Contains("(1,1)"),
                       std::invalid_argument);

  Rng rng(13);
  for (auto [t, n, g] : std::vector<std::tuple<char, int, std::vector<int>>>{
           {'A', 3, {}}, {'B', 2, {}}, {'G', 2, {}}, {'C', 3, {0}}, {'D', 4, {1}}}) {
    auto lv = levi_datum(build_root_system(t, n), g);
    for (int trial = 0; trial < 4; ++trial) {
      OrbitPoint p = random_point(lv, rng);
      auto s = kks(p);
      CHECK(s.c == lambda_poisson(p).c);
      CHECK(zeros(ff_residuals(s, 0)));
      auto chk = verify_schouten_condition(s, 0);
      CHECK(chk.holds);
      CHECK(chk.equivalent);
      Multivector sv = s.to_multivector();
      CHECK(project_m(*lv, schouten(sv, sv)).is_zero());
    }
  }
}

TEST_CASE("kks against the lambda-weighted bivector is colinear with phi_M") {
  Rng rng(17);
  std::set<std::string> ratios;
  for (auto [t, n, g] : std::vector<std::tuple<char, int, std::vector<int>>>{
           {'A', 2, {}}, {'A', 3, {}}, {'A', 3, {1}}, {'B', 2, {}}, {'G', 2, {}}, {'C', 3, {0}}, {'D', 4, {1, 3}}}) {
    auto lv = levi_datum(build_root_system(t, n), g);
    Multivector pm = phi_M(*lv);
    REQUIRE_FALSE(pm.is_zero());
    for (int trial = 0; trial < 3; ++trial) {
      OrbitPoint p = random_point(lv, rng);
      Multivector v = kks(p).to_multivector(), w = lambda_weighted(p).to_multivector();
      Rational ratio;
      REQUIRE(colinear(pm, project_m(*lv, schouten(v, w)), &ratio));
      ratios.insert(to_string(ratio));
    }
  }
  REQUIRE(ratios.size() == 1);
  // Coefficient-level oracle: the triple coefficient of project_m([[v, v]]) is
  // Q(c) = c(a+b)(c(a)+c(b)) - c(a)c(b) times that of phi_M, so [[v, w]] carries
  // the polarization B(c, d). For c = 1/l and d = l it is 3/2 on every triple.
  for (int trial = 0; trial < 50; ++trial) {
    Rational la = rng.nonzero_rational(20, 7), lb = rng.nonzero_rational(20, 7);
    if (la + lb == 0) continue;
    Rational ls = la + lb;
    Rational B = (1 / ls * (la + lb) + ls * (1 / la + 1 / lb) - lb / la - la / lb) / 2;
    CHECK(B == Rational(3, 2));
  }
  CHECK(*ratios.begin() == "3/2");
}

TEST_CASE("psi solutions") {
  CHECK(psi(3) == 2);
  CHECK_THROWS_AS(psi(1), std::invalid_argument);
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    Rational x = rng.nonzero_rational(20, 7), y = rng.nonzero_rational(20, 7);
    if (x == 1 || y == 1 || x * y == 1) continue;
    CHECK(psi(x * y) == (psi(x) * psi(y) + 1) / (psi(x) + psi(y)));
  }
  auto a3 = levi_datum(build_root_system('A', 3), {});
  auto f = psi_solution(a3, {2, 3, 5}, 1);
  CHECK(f.c[a3->simple_quasiroots[1]] == 2);
  CHECK(zeros(ff_residuals(f, 1)));
  auto chk = verify_schouten_condition(f, 1);
  CHECK(chk.holds);
  CHECK(chk.equivalent);
  CHECK_THROWS_WITH_AS(psi_solution(a3, {1, 3, 5}, 1), doctest::Contains("pole"), std::invalid_argument);
  // lambda(a1) lambda(a2) = 1 makes the pair degenerate.
  CHECK_THROWS_WITH_AS(psi_solution(a3, {2, Rational(1, 2), 5}, 1), doctest::Contains("regularity"),
                       std::invalid_argument);
  CHECK_THROWS_AS(psi_solution(a3, {2, 3, 5}, 0), std::invalid_argument);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'B', 3}, {'G', 2}, {'D', 4}}) {
    auto lv = levi_datum(build_root_system(t, n), {});
    std::vector<Rational> vals;
    for (int i = 0; i < n; ++i) vals.push_back(Rational(i + 2, 1) + Rational(1, 7));
    auto g = psi_solution(lv, vals, 3);
    CHECK(zeros(ff_residuals(g, 3)));
  }
}

TEST_CASE("strata") {
  auto a3 = levi_datum(build_root_system('A', 3), {});
  const std::vector<Rational> ell{1, 1, 1};
  const std::vector<Rational> vals{2, 3, 5};

  std::vector<int> all;
  for (int q = 0; q < a3->num_quasiroots(); ++q) all.push_back(q);
  Stratum full = make_stratum(a3, all, ell, vals, 1);
  CHECK(stratum_problems(full).empty());
  CHECK(full.X.empty());
  CHECK(stratum_solution(full).c == psi_solution(a3, vals, 1).c);

  Stratum empty = make_stratum(a3, {}, ell, vals, Rational(7, 3));
  CHECK(stratum_problems(empty).empty());
  auto fc = stratum_solution(empty);
  for (const auto& c : fc.c) CHECK(c == Rational(7, 3));
  CHECK(zeros(ff_residuals(fc, Rational(7, 3))));

  for (int gen = 0; gen < 3; ++gen) {
    for (auto l : std::vector<std::vector<Rational>>{{1, 1, 1}, {1, -3, 1}, {-1, 2, 5}}) {
      Stratum mixed = make_stratum(a3, {a3->simple_quasiroots[gen]}, l, vals, 2);
      if (!stratum_problems(mixed).empty()) continue;
      CHECK(mixed.omega_prime.size() == 1);
      auto f = stratum_solution(mixed);
      CHECK(zeros(ff_residuals(f, 2)));
      CHECK(verify_schouten_condition(f, 2).holds);
    }
  }
  // Rank-two span inside B3 without Gamma.
  auto b3 = levi_datum(build_root_system('B', 3), {});
  Stratum s2 = make_stratum(b3, {b3->simple_quasiroots[1], b3->simple_quasiroots[2]}, {1, 0, 0}, {2, 3, 5}, 1);
  CHECK(stratum_problems(s2).empty());
  CHECK(zeros(ff_residuals(stratum_solution(s2), 1)));

  // Violations.
  Stratum bad = full;
  bad.omega_prime.erase(a3->num_quasiroots() - 1);
  CHECK_FALSE(stratum_problems(bad).empty());
  CHECK_THROWS_AS(stratum_solution(bad), std::invalid_argument);
  Stratum half = make_stratum(a3, {}, {1, -1, 0}, vals, 1);  // ell vanishes on a projection
  CHECK_FALSE(stratum_problems(half).empty());
  Stratum both = empty;
  for (const auto& x : empty.X) {
    std::vector<Rational> neg = x;
    for (auto& y : neg) y = -y;
    both.X.insert(neg);
  }
  CHECK_FALSE(stratum_problems(both).empty());
  Stratum pole = make_stratum(a3, {a3->simple_quasiroots[0]}, ell, {1, 3, 5}, 1);
  CHECK_FALSE(stratum_problems(pole).empty());
  Stratum nonmult = full;
  nonmult.lambda_mult[a3->num_quasiroots() - 1] = 11;
  CHECK_FALSE(stratum_problems(nonmult).empty());
}

TEST_CASE("Schouten condition is equivalent to the coefficient equations") {
  Rng rng(23);
  for (auto [t, n, g] : std::vector<std::tuple<char, int, std::vector<int>>>{
           {'A', 3, {}}, {'A', 3, {1}}, {'B', 3, {}}, {'G', 2, {}}, {'C', 3, {2}}, {'D', 4, {1}}}) {
    auto lv = levi_datum(build_root_system(t, n), g);
    for (int trial = 0; trial < 4; ++trial) {
      OrbitPoint p = random_point(lv, rng);
      // Valid solution, then a single perturbed coefficient.
      std::vector<Rational> mult;
      for (const auto& x : p.lambda) mult.push_back(x + 1);
      InvariantBivector f = trial % 2 ? lambda_poisson(p) : psi_solution(lv, mult, 1);
      Rational K = trial % 2 ? 0 : 1;
      if (!zeros(ff_residuals(f, K))) continue;
      auto ok = verify_schouten_condition(f, K);
      CHECK(ok.holds);
      CHECK(ok.equivalent);
      int q = rng.uniform(0, lv->num_quasiroots() - 1);
      InvariantBivector bad = f;
      bad.c[q] += rng.nonzero_rational(3, 2);
      auto chk = verify_schouten_condition(bad, K);
      CHECK(chk.equivalent);
      std::set<int> nonzero;
      for (std::size_t i = 0; i < chk.ff.size(); ++i)
        if (chk.ff[i] != 0) nonzero.insert(static_cast<int>(i));
      CHECK(chk.residual_triples == nonzero);
      for (int i : chk.residual_triples) {
        REQUIRE(i >= 0);
        const auto& tr = lv->addition_table[i];
        CHECK((tr[0] == q || tr[1] == q || tr[2] == q));
      }
      CHECK(chk.holds == nonzero.empty());
    }
    // Fully random coefficients, both directions.
    for (int trial = 0; trial < 3; ++trial) {
      InvariantBivector f = make_bivector(lv, random_c(lv, rng));
      auto chk = verify_schouten_condition(f, 1);
      CHECK(chk.equivalent);
      CHECK(chk.residual_triples.count(-1) == 0);
    }
  }
}

TEST_CASE("compatibility with the KKS bracket") {
  Rng rng(29);
  for (auto [t, n, g] : std::vector<std::tuple<char, int, std::vector<int>>>{
           {'A', 3, {}}, {'B', 2, {}}, {'G', 2, {}}, {'C', 3, {0}}, {'D', 4, {1, 3}}, {'A', 4, {2}}}) {
    auto lv = levi_datum(build_root_system(t, n), g);
    OrbitPoint p = random_point(lv, rng);
    CHECK(zeros(compatibility_residuals(kks(p), p)));
    auto ones = make_bivector(lv, std::vector<Rational>(lv->num_quasiroots(), Rational(1)));
    CHECK_FALSE(zeros(compatibility_residuals(ones, p)));
    for (int trial = 0; trial < 8; ++trial) {
      InvariantBivector f = make_bivector(lv, random_c(lv, rng));
      if (trial % 2) {
        // mu = c * lambda^2 linear in the quasiroot, so (comp) holds.
        std::vector<Rational> mu;
        for (std::size_t i = 0; i < lv->complement.size(); ++i) mu.push_back(rng.nonzero_rational(9, 3));
        for (int q = 0; q < lv->num_quasiroots(); ++q) {
          Rational m = 0, l = p.value(q);
          for (std::size_t i = 0; i < mu.size(); ++i) m += lv->positive_quasiroots[q][i] * mu[i];
          f.c[q] = m / (l * l);
        }
        CHECK(zeros(compatibility_residuals(f, p)));
      }
      CHECK(zeros(compatibility_residuals(f, p)) == compatibility_multivector(f, p).is_zero());
    }
  }
}

TEST_CASE("good orbit classification") {
  Rng rng(31);
  auto a3 = build_root_system('A', 3);
  for (const auto& g : proper_subsets(3)) {
    auto rep = classify_good_orbit(random_point(levi_datum(a3, g), rng));
    CHECK(rep.is_good);
    CHECK_FALSE(rep.discrepancy);
  }
  auto d4 = build_root_system('D', 4);
  auto lv = levi_datum(d4, {1, 3});
  CHECK(maximal_root_coefficients(*d4)[0] == 1);
  CHECK(maximal_root_coefficients(*d4)[2] == 1);
  auto rep = classify_good_orbit(random_point(lv, rng));
  CHECK(rep.is_good);
  CHECK(rep.evidence == "exact");
  REQUIRE(rep.witness);

  auto g2 = build_root_system('G', 2);
  auto g2rep = classify_good_orbit(random_point(levi_datum(g2, {0}), rng));
  CHECK_FALSE(g2rep.rule);
  CHECK_FALSE(g2rep.solver);
  CHECK_FALSE(g2rep.is_good);

  for (auto [t, n] : std::vector<std::pair<char, int>>{
           {'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}}) {
    auto rs = build_root_system(t, n);
    for (const auto& g : proper_subsets(n)) {
      auto l = levi_datum(rs, g);
      auto r = classify_good_orbit(random_point(l, rng));
      INFO(rs->label() << " Gamma size " << g.size() << " evidence " << r.evidence);
      CHECK(r.rule == r.solver);
      if (r.solver && r.evidence != "numeric-only evidence") {
        REQUIRE(r.witness);
        CHECK(zeros(ff_residuals(*r.witness, l->is_symmetric() ? 0 : 1)));
      }
    }
  }
}

TEST_CASE("good family") {
  Rng rng(37);
  auto lv = levi_datum(build_root_system('D', 4), {1, 3});
  OrbitPoint p = random_point(lv, rng);
  auto rep = classify_good_orbit(p);
  REQUIRE(rep.witness);
  const InvariantBivector& f0 = *rep.witness;
  CHECK(good_family(f0, p, 0, 1).c == f0.c);
  auto neg = good_family(f0, p, 0, -1);
  for (std::size_t q = 0; q < f0.c.size(); ++q) CHECK(neg.c[q] == -f0.c[q]);
  for (int sign : {1, -1})
    for (Rational t : {Rational(1), Rational(-2), Rational(1, 3)}) {
      auto f = good_family(f0, p, t, sign);
      CHECK(zeros(ff_residuals(f, 1)));
      CHECK(zeros(compatibility_residuals(f, p)));
      CHECK(verify_schouten_condition(f, 1).holds);
      CHECK(compatibility_multivector(f, p).is_zero());
    }
  CHECK_THROWS_AS(good_family(f0, p, 1, 0), std::invalid_argument);
}
