#include "dquant/serialize.hpp"

#include <stdexcept>

namespace dquant {

namespace {

Rational max_abs(const std::vector<Rational>& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max<Rational>(m, abs(x));
  return m;
}

Json sparse_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back({{"index", i}, {"coeff", rational_json(c)}});
  return out;
}

Json signed_root(const RootSystem& rs, int basis_index) {
  Root r = rs.positive_roots[rs.root_of(basis_index)];
  if (rs.is_negative(basis_index))
    for (int& x : r) x = -x;
  return r;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Json root_system_json(const RootSystem& rs) {
  Json structure = Json::array();
  for (int a = 0; a < rs.dim; ++a)
    for (int b = a + 1; b < rs.dim; ++b)
      if (!rs.bracket(a, b).empty()) structure.push_back({{"a", a}, {"b", b}, {"value", sparse_json(rs.bracket(a, b))}});
  Json killing = Json::array();
  for (int a = 0; a < rs.dim; ++a)
    for (int b = a; b < rs.dim; ++b)
      if (rs.killing[a][b] != 0) killing.push_back({{"a", a}, {"b", b}, {"value", rational_json(rs.killing[a][b])}});
  return Json{{"type_label", std::string(1, rs.type)},
              {"rank", rs.rank},
              {"dim", rs.dim},
              {"simple_roots", rs.simple_roots},
              {"positive_roots", rs.positive_roots},
              {"cartan_matrix", rs.cartan},
              {"structure_constants", structure},
              {"killing", killing},
              {"maximal_root_coeffs", maximal_root_coefficients(rs)}};
}

Json levi_json(const LeviDatum& levi) {
  const RootSystem& rs = *levi.parent;
  Json omega = Json::array(), m = Json::array(), qof = Json::array();
  for (int a : levi.omega_gamma) omega.push_back(signed_root(rs, a));
  for (int a : levi.m_basis) {
    Json r = signed_root(rs, a);
    m.push_back(r);
    qof.push_back({{"root", r}, {"quasiroot", levi.quasiroot_of(r.get<Root>())}});
  }
  Json fibers = Json::array();
  for (int q = 0; q < levi.num_quasiroots(); ++q) {
    Json roots = Json::array();
    for (int k : levi.fibers[q]) roots.push_back(rs.positive_roots[k]);
    fibers.push_back({{"quasiroot", levi.positive_quasiroots[q]}, {"roots", roots}});
  }
  Json table = Json::array();
  for (const auto& t : levi.addition_table)
    table.push_back(
        {levi.positive_quasiroots[t[0]], levi.positive_quasiroots[t[1]], levi.positive_quasiroots[t[2]]});
  return Json{{"parent", {{"type_label", std::string(1, rs.type)}, {"rank", rs.rank}}},
              {"gamma", levi.gamma_bourbaki()},
              {"omega_gamma", omega},
              {"m_basis", m},
              {"quasiroot_of", qof},
              {"positive_quasiroots", levi.positive_quasiroots},
              {"fibers", fibers},
              {"addition_table", table}};
}

Json multivector_json(const Multivector& m) {
  Json out = Json::array();
  for (const auto& [key, c] : m.terms()) out.push_back({{"indices", key_indices(key)}, {"coeff", rational_json(c)}});
  return out;
}

Multivector multivector_from_json(RootSystemPtr rs, int degree, const Json& j) {
  Multivector m(rs, degree);
  for (const auto& term : j) {
    auto idx = term.at("indices").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != degree) throw std::invalid_argument("term degree does not match");
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] < 0 || idx[i] >= rs->dim || (i > 0 && idx[i] <= idx[i - 1]))
        throw std::invalid_argument("indices must be strictly increasing basis indices");
    m.add_term(make_key(idx), rational_from_json(term.at("coeff")));
  }
  return m;
}

std::string quasiroot_key(const Root& qr) {
  std::string s = "[";
  for (std::size_t i = 0; i < qr.size(); ++i) s += (i ? "," : "") + std::to_string(qr[i]);
  return s + "]";
}

Json bivector_report_json(const InvariantBivector& f, const OrbitPoint& point, const Rational& K) {
  const LeviDatum& levi = *f.levi;
  Json c = Json::object();
  for (int q = 0; q < levi.num_quasiroots(); ++q) c[quasiroot_key(levi.positive_quasiroots[q])] = rational_json(f.c[q]);
  std::vector<Rational> ff = ff_residuals(f, K), comp = compatibility_residuals(f, point);
  SchoutenCheck sc = verify_schouten_condition(f, K);
  Json quasiroots = Json::array();
  for (const auto& q : levi.positive_quasiroots) quasiroots.push_back(quasiroot_key(q));
  return Json{{"type", std::string(1, levi.parent->type)},
              {"rank", levi.parent->rank},
              {"gamma", levi.gamma_bourbaki()},
              {"lambda", rationals_json(point.lambda)},
              {"quasiroots", quasiroots},
              {"c", c},
              {"K", rational_json(K)},
              {"ff_residual_max", rational_json(max_abs(ff))},
              {"comp_residual_max", rational_json(max_abs(comp))},
              {"verdicts",
               {{"ff", max_abs(ff) == 0},
                {"schouten", sc.holds},
                {"comp", max_abs(comp) == 0},
                {"compatible_with_kks", compatibility_multivector(f, point).is_zero()}}}};
}

Json classification_row_json(const GoodOrbitReport& r) {
  Json row{{"gamma", r.levi->gamma_bourbaki()},
           {"rule_verdict", r.rule},
           {"solver_verdict", r.solver},
           {"is_good", r.is_good},
           {"discrepancy", r.discrepancy},
           {"evidence", r.evidence},
           {"numeric_residual", r.residual},
           {"family_param", r.family_param}};
  if (r.witness) {
    Json c = Json::object();
    for (int q = 0; q < r.levi->num_quasiroots(); ++q)
      c[quasiroot_key(r.levi->positive_quasiroots[q])] = rational_json(r.witness->c[q]);
    row["witness"] = c;
  } else {
    row["witness"] = nullptr;
  }
  return row;
}

Json cohomology_report_json(const InvariantComplex& cx) {
  std::vector<long> betti = betti_numbers(*cx.levi);
  return Json{{"type", std::string(1, cx.levi->parent->type)},
              {"rank", cx.levi->parent->rank},
              {"gamma", cx.levi->gamma_bourbaki()},
              {"K", rational_json(cx.K)},
              {"chain_dims", cx.chain_dims()},
              {"h_dims", cohomology_dims(cx)},
              {"betti", betti},
              {"admissible", true}};
}

Json pencil_report_json(const PencilReport& r) {
  return Json{{"n", r.n},
              {"dim_hom", r.dim_hom},
              {"low_degree_dims", r.low_degree_dims},
              {"u", r.ff_colinear ? Json(rational_json(r.u)) : Json(nullptr)},
              {"pencil_checks",
               {{"sf_zero", r.sf_zero},
                {"ff_colinear", r.ff_colinear},
                {"rescalable", r.rescalable},
                {"scale", r.rescalable ? Json(rational_json(r.scale)) : Json(nullptr)},
                {"r_compatible", r.r_compatible},
                {"pp_zero", r.pp_zero},
                {"tangency_pass_count", r.tangency_pass},
                {"tangency_total", r.tangency_total}}}};
}

Json re_pbw_report_json(const FlatnessReport& flat, const FirstOrderReport& first) {
  Json out{{"n", flat.n},
           {"q_samples", rationals_json(flat.q_samples)},
           {"convention", to_string(flat.convention)},
           {"quad_rel_dim", flat.quad_rel_dim},
           {"graded_dims", flat.graded_dims},
           {"expected_dims", flat.expected_dims},
           {"flat", flat.flat},
           {"poisson_jacobi", first.jacobi},
           {"poisson_antisymmetric", first.antisymmetric},
           {"trace_central", first.trace_central},
           {"qpb_pass", first.qpb.pass},
           {"qpb_kappa", rational_json(first.qpb.kappa)}};
  if (first.invariant) {
    out["invariant_component"] = {{"found", first.invariant->found},
                                  {"c", rational_json(first.invariant->c)},
                                  {"colinear_with_f", first.invariant->colinear_with_f},
                                  {"ratio", rational_json(first.invariant->ratio)}};
  }
  return out;
}

}  // namespace dquant
