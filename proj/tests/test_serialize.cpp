#include "doctest.h"

#include "dquant/serialize.hpp"

using namespace dquant;

TEST_CASE("rationals are written as strings") {
  CHECK(rational_json(make_rational(-3, 6)) == "-1/2");
  CHECK(rational_json(Rational(4)) == "4/1");
  CHECK(rational_from_json(Json("7/21")) == make_rational(1, 3));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), std::invalid_argument);
}

TEST_CASE("root system document") {
  auto rs = build_root_system('G', 2);
  Json j = root_system_json(*rs);
  CHECK(j["type_label"] == "G");
  CHECK(j["rank"] == 2);
  CHECK(j["positive_roots"].size() == 6);
  CHECK(j["maximal_root_coeffs"] == Json::array({3, 2}));
  CHECK(j["cartan_matrix"].size() == 2);
  // Structure constants come back exactly.
  for (const auto& entry : j["structure_constants"]) {
    int a = entry["a"], b = entry["b"];
    SparseVec v;
    for (const auto& t : entry["value"]) v.push_back({t["index"].get<int>(), rational_from_json(t["coeff"])});
    CHECK(v == rs->bracket(a, b));
  }
  for (const auto& entry : j["killing"]) CHECK(rational_from_json(entry["value"]) == rs->killing[entry["a"]][entry["b"]]);
}

TEST_CASE("Levi datum document") {
  auto lv = levi_datum(build_root_system('B', 3), {1, 2});
  Json j = levi_json(*lv);
  CHECK(j["gamma"] == Json::array({2, 3}));
  CHECK(j["positive_quasiroots"].size() == static_cast<std::size_t>(lv->num_quasiroots()));
  CHECK(j["m_basis"].size() == lv->m_basis.size());
  std::size_t fiber_total = 0;
  for (const auto& f : j["fibers"]) fiber_total += f["roots"].size();
  CHECK(2 * fiber_total == lv->m_basis.size());
  for (const auto& t : j["addition_table"]) {
    auto a = t[0].get<Root>(), b = t[1].get<Root>(), c = t[2].get<Root>();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] + b[i] == c[i]);
  }
}

TEST_CASE("multivector round trip") {
  auto rs = build_root_system('A', 3);
  Rng rng(91);
  for (int k = 1; k <= 3; ++k) {
    Multivector m(rs, k);
    for (int t = 0; t < 5; ++t) {
      std::vector<int> idx;
      for (int i = 0; i < k; ++i) idx.push_back(static_cast<int>(rng.uniform(0, rs->dim - 1)));
      m += Multivector::monomial(rs, idx, rng.nonzero_rational(9, 7));
    }
    Json j = multivector_json(m);
    CHECK(multivector_from_json(rs, k, Json::parse(j.dump())) == m);
  }
  CHECK_THROWS_AS(multivector_from_json(rs, 2, Json::parse(R"([{"indices":[3,1],"coeff":"1/1"}])")),
                  std::invalid_argument);
  CHECK_THROWS_AS(multivector_from_json(rs, 2, Json::parse(R"([{"indices":[1],"coeff":"1/1"}])")),
                  std::invalid_argument);
}

TEST_CASE("report documents") {
  auto lv = levi_datum(build_root_system('A', 2), {1});
  OrbitPoint p = make_orbit_point(lv, {make_rational(5, 2)});
  Json b = bivector_report_json(lambda_poisson(p), p, 0);
  CHECK(b["c"]["[1]"] == "2/5");
  CHECK(b["ff_residual_max"] == "0/1");
  CHECK(b["verdicts"]["schouten"] == true);

  Json c = cohomology_report_json(build_complex(lambda_poisson(p), 0));
  CHECK(c["h_dims"] == Json::array({1, 0, 1, 0, 1}));
  CHECK(c["betti"] == Json::array({1, 1, 1}));

  PencilReport pr = verify_pencil(3, 2, 1);
  Json pj = pencil_report_json(pr);
  CHECK(pj["dim_hom"] == 1);
  CHECK(rational_from_json(pj["u"]) == pr.u);
  CHECK(pj["pencil_checks"]["tangency_pass_count"] == 2);
}
