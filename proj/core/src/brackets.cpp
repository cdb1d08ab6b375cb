#include "dquant/brackets.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace dquant {

namespace {

std::string qname(const LeviDatum& levi, int q) {
  std::string s = "(";
  const Root& r = levi.positive_quasiroots[q];
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

std::map<std::array<int, 3>, int> triple_lookup(const LeviDatum& levi) {
  std::map<std::array<int, 3>, int> out;
  for (std::size_t t = 0; t < levi.addition_table.size(); ++t) out[levi.addition_table[t]] = static_cast<int>(t);
  return out;
}

Rational ipow(const Rational& x, int n) {
  Rational r = 1;
  const Rational base = n < 0 ? Rational(1 / x) : x;
  for (int i = 0; i < std::abs(n); ++i) r *= base;
  return r;
}

std::vector<Rational> as_rational(const Root& r) {
  std::vector<Rational> v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i];
  return v;
}

SparseRref span_of(const Stratum& s) {
  SparseRref rref(static_cast<int>(s.levi->complement.size()));
  for (int q : s.omega_prime) rref.insert(to_sparse(as_rational(s.levi->positive_quasiroots[q])));
  return rref;
}

std::vector<Rational> densify(const SparseVec& v, std::size_t n) {
  std::vector<Rational> out(n);
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

Multivector InvariantBivector::to_multivector() const {
  const RootSystem& rs = *levi->parent;
  Multivector v(levi->parent, 2);
  for (int q = 0; q < levi->num_quasiroots(); ++q) {
    if (c[q] == 0) continue;
    for (int k : levi->fibers[q]) v.add_term(make_key({rs.e(k), rs.f(k)}), c[q]);
  }
  return v;
}

InvariantBivector make_bivector(LeviPtr levi, std::vector<Rational> c) {
  if (static_cast<int>(c.size()) != levi->num_quasiroots())
    throw std::invalid_argument("bivector needs one coefficient per positive quasiroot");
  for (auto& x : c) x.canonicalize();
  return InvariantBivector{std::move(levi), std::move(c)};
}

bool is_gamma_invariant(const LeviDatum& levi, const Multivector& v) {
  std::vector<int> basis;
  for (int i = 0; i < levi.parent->rank; ++i) basis.push_back(i);
  basis.insert(basis.end(), levi.omega_gamma.begin(), levi.omega_gamma.end());
  for (int x : basis)
    if (!project_m(levi, ad_action(x, v)).is_zero()) return false;
  return true;
}

std::vector<Rational> ff_residuals(const InvariantBivector& f, const Rational& K) {
  std::vector<Rational> out;
  out.reserve(f.levi->addition_table.size());
  const Rational K2 = K * K;
  for (const auto& [a, b, s] : f.levi->addition_table) out.push_back(f.c[s] * (f.c[a] + f.c[b]) - f.c[a] * f.c[b] - K2);
  return out;
}

std::vector<Rational> compatibility_residuals(const InvariantBivector& f, const OrbitPoint& point) {
  if (f.levi != point.levi) throw std::invalid_argument("bivector and orbit point over different Levi data");
  std::vector<Rational> out;
  for (const auto& [a, b, s] : f.levi->addition_table) {
    Rational la = point.value(a), lb = point.value(b), ls = point.value(s);
    out.push_back(f.c[a] * la * la + f.c[b] * lb * lb - f.c[s] * ls * ls);
  }
  return out;
}

FfSolveResult solve_ff(LeviPtr levi, const std::vector<Rational>& initial, const Rational& K) {
  const std::size_t k = levi->complement.size();
  if (initial.size() != k) throw std::invalid_argument("solve_ff needs one value per simple quasiroot");
  const int n = levi->num_quasiroots();
  std::vector<Rational> c(n);
  std::vector<char> known(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    c[levi->simple_quasiroots[i]] = initial[i];
    known[levi->simple_quasiroots[i]] = 1;
  }
  // Triples grouped by their sum; quasiroots are already in height order.
  std::vector<std::vector<std::pair<int, int>>> parts(n);
  for (const auto& [a, b, s] : levi->addition_table) parts[s].push_back({a, b});
  const Rational K2 = K * K;
  FfSolveResult result;
  for (int q = 0; q < n; ++q) {
    if (known[q]) continue;
    std::optional<std::pair<int, int>> first_pair;
    for (const auto& [a, b] : parts[q]) {
      Rational den = c[a] + c[b];
      if (den == 0) {
        FfConflict cf{FfConflict::Kind::DegeneratePair, a, b, q, c[a], c[b],
                      "degenerate pair " + qname(*levi, a) + " + " + qname(*levi, b) + ": c values " +
                          to_string(c[a]) + " and " + to_string(c[b]) + " sum to zero"};
        result.conflict = cf;
        return result;
      }
      Rational cand = (c[a] * c[b] + K2) / den;
      if (!first_pair) {
        first_pair = {a, b};
        c[q] = cand;
        known[q] = 1;
      } else if (cand != c[q]) {
        FfConflict cf{FfConflict::Kind::PathConflict, a, b, q, c[q], cand,
                      "conflict at " + qname(*levi, q) + ": " + to_string(c[q]) + " via " +
                          qname(*levi, first_pair->first) + "+" + qname(*levi, first_pair->second) + ", " +
                          to_string(cand) + " via " + qname(*levi, a) + "+" + qname(*levi, b)};
        result.conflict = cf;
        return result;
      }
    }
    if (!known[q]) throw std::logic_error("quasiroot " + qname(*levi, q) + " is not a sum of smaller quasiroots");
  }
  InvariantBivector f{levi, std::move(c)};
  auto res = ff_residuals(f, K);
  for (std::size_t t = 0; t < res.size(); ++t)
    if (res[t] != 0) throw std::logic_error("propagated coefficients violate an addition-table equation");
  result.bivector = std::move(f);
  return result;
}

namespace {

InvariantBivector from_linear(const OrbitPoint& point, bool invert) {
  const LeviDatum& levi = *point.levi;
  std::vector<Rational> c(levi.num_quasiroots());
  for (int q = 0; q < levi.num_quasiroots(); ++q) {
    Rational l = point.value(q);
    if (l == 0) throw std::invalid_argument("lambda vanishes on quasiroot " + qname(levi, q));
    c[q] = invert ? Rational(1 / l) : l;
  }
  return InvariantBivector{point.levi, std::move(c)};
}

}  // namespace

InvariantBivector lambda_poisson(const OrbitPoint& point) { return from_linear(point, true); }
InvariantBivector kks(const OrbitPoint& point) { return from_linear(point, true); }
InvariantBivector lambda_weighted(const OrbitPoint& point) { return from_linear(point, false); }

Rational psi(const Rational& x) {
  if (x == 1) throw std::invalid_argument("psi has a pole at 1");
  return (x + 1) / (x - 1);
}

std::vector<Rational> multiplicative_values(const LeviDatum& levi, const std::vector<Rational>& simple_values) {
  if (simple_values.size() != levi.complement.size())
    throw std::invalid_argument("multiplicative map needs one value per simple quasiroot");
  for (const auto& v : simple_values)
    if (v == 0) throw std::invalid_argument("multiplicative map must be nonzero");
  std::vector<Rational> out(levi.num_quasiroots());
  for (int q = 0; q < levi.num_quasiroots(); ++q) {
    Rational v = 1;
    for (std::size_t i = 0; i < simple_values.size(); ++i) v *= ipow(simple_values[i], levi.positive_quasiroots[q][i]);
    out[q] = v;
  }
  return out;
}

InvariantBivector psi_solution(LeviPtr levi, const std::vector<Rational>& simple_values, const Rational& K) {
  if (K == 0) throw std::invalid_argument("psi solution needs K != 0");
  std::vector<Rational> lam = multiplicative_values(*levi, simple_values);
  // Mixed-sign pairs a, -b give lambda(a - b) = 1, which the pole check below catches.
  for (const auto& [a, b, s] : levi->addition_table)
    if (lam[a] * lam[b] == 1)
      throw std::invalid_argument("regularity violated by pair " + qname(*levi, a) + ", " + qname(*levi, b));
  for (int q = 0; q < levi->num_quasiroots(); ++q)
    if (lam[q] == 1) throw std::invalid_argument("pole: lambda equals 1 on quasiroot " + qname(*levi, q));
  std::vector<Rational> c(levi->num_quasiroots());
  for (int q = 0; q < levi->num_quasiroots(); ++q) c[q] = K * psi(lam[q]);
  return InvariantBivector{std::move(levi), std::move(c)};
}

std::vector<Rational> stratum_projection(const Stratum& s, int q, int sign) {
  std::vector<Rational> v = as_rational(s.levi->positive_quasiroots[q]);
  if (sign < 0)
    for (auto& x : v) x = -x;
  return densify(span_of(s).reduce(to_sparse(v)), v.size());
}

std::vector<std::string> stratum_problems(const Stratum& s) {
  std::vector<std::string> out;
  const LeviDatum& levi = *s.levi;
  const int n = levi.num_quasiroots();
  SparseRref rref = span_of(s);
  const std::size_t k = levi.complement.size();
  for (int q = 0; q < n; ++q) {
    bool in_span = rref.contains(to_sparse(as_rational(levi.positive_quasiroots[q])));
    if (in_span != (s.omega_prime.count(q) > 0))
      out.push_back("omega_prime is not linear: quasiroot " + qname(levi, q) +
                    (in_span ? " lies in its span but is missing" : " is listed but outside its span"));
  }
  // Projected quasiroots outside omega_prime, both signs.
  std::set<std::vector<Rational>> projected;
  for (int q = 0; q < n; ++q) {
    if (s.omega_prime.count(q)) continue;
    for (int sign : {1, -1}) {
      std::vector<Rational> v = as_rational(levi.positive_quasiroots[q]);
      if (sign < 0)
        for (auto& x : v) x = -x;
      projected.insert(densify(rref.reduce(to_sparse(v)), k));
    }
  }
  for (const auto& x : s.X)
    if (!projected.count(x)) out.push_back("X contains a vector that is not a projected quasiroot");
  for (const auto& p : projected) {
    std::vector<Rational> neg = p;
    for (auto& x : neg) x = -x;
    bool a = s.X.count(p) > 0, b = s.X.count(neg) > 0;
    if (a && b) out.push_back("X meets -X");
    if (!a && !b) out.push_back("X union -X misses a projected quasiroot");
  }
  for (const auto& x : s.X)
    for (const auto& y : s.X) {
      std::vector<Rational> sum(k);
      for (std::size_t i = 0; i < k; ++i) sum[i] = x[i] + y[i];
      if (projected.count(sum) && !s.X.count(sum)) out.push_back("X is not closed under sums");
    }
  if (!s.omega_prime.empty()) {
    if (static_cast<int>(s.lambda_mult.size()) != n) {
      out.push_back("lambda_mult needs a value for every positive quasiroot");
      return out;
    }
    for (int q : s.omega_prime)
      if (s.lambda_mult[q] == 0) out.push_back("lambda_mult vanishes on " + qname(levi, q));
    if (!out.empty()) return out;
    for (int q : s.omega_prime)
      if (s.lambda_mult[q] == 1) out.push_back("pole: lambda_mult equals 1 on " + qname(levi, q));
    for (const auto& [a, b, c] : levi.addition_table) {
      if (!s.omega_prime.count(a) || !s.omega_prime.count(b) || !s.omega_prime.count(c)) continue;
      const Rational &la = s.lambda_mult[a], &lb = s.lambda_mult[b], &lc = s.lambda_mult[c];
      if (la * lb != lc) out.push_back("lambda_mult is not multiplicative on " + qname(levi, a) + "+" + qname(levi, b));
      if (la * lb == 1 || lc / la == 1 || lc / lb == 1)
        out.push_back("lambda_mult regularity violated near " + qname(levi, c));
    }
  }
  return out;
}

Stratum make_stratum(LeviPtr levi, const std::vector<int>& generators, const std::vector<Rational>& ell,
                     const std::vector<Rational>& coordinate_values, const Rational& K) {
  Stratum s;
  s.levi = levi;
  s.K = K;
  SparseRref rref(static_cast<int>(levi->complement.size()));
  for (int g : generators) rref.insert(to_sparse(as_rational(levi->positive_quasiroots[g])));
  for (int q = 0; q < levi->num_quasiroots(); ++q)
    if (rref.contains(to_sparse(as_rational(levi->positive_quasiroots[q])))) s.omega_prime.insert(q);
  for (int q = 0; q < levi->num_quasiroots(); ++q) {
    if (s.omega_prime.count(q)) continue;
    for (int sign : {1, -1}) {
      std::vector<Rational> p = stratum_projection(s, q, sign);
      Rational val = 0;
      for (std::size_t i = 0; i < p.size(); ++i) val += ell[i] * p[i];
      if (val > 0) s.X.insert(p);
    }
  }
  s.lambda_mult = multiplicative_values(*levi, coordinate_values);
  return s;
}

InvariantBivector stratum_solution(const Stratum& s) {
  auto problems = stratum_problems(s);
  if (!problems.empty()) throw std::invalid_argument("invalid stratum: " + problems.front());
  const LeviDatum& levi = *s.levi;
  std::vector<Rational> c(levi.num_quasiroots());
  for (int q = 0; q < levi.num_quasiroots(); ++q) {
    if (s.omega_prime.count(q))
      c[q] = s.K * psi(s.lambda_mult[q]);
    else
      c[q] = s.X.count(stratum_projection(s, q, 1)) ? s.K : Rational(-s.K);
  }
  return InvariantBivector{s.levi, std::move(c)};
}

std::set<int> triples_in_support(const LeviDatum& levi, const Multivector& m) {
  auto lookup = triple_lookup(levi);
  std::set<int> out;
  for (const auto& [key, coef] : m.terms()) {
    std::vector<int> idx = key_indices(key);
    std::vector<int> pos, neg;
    bool ok = idx.size() == 3;
    for (int a : idx) {
      int s = levi.quasiroot_of_basis[a];
      if (s > 0) pos.push_back(s - 1);
      else if (s < 0) neg.push_back(-s - 1);
      else ok = false;
    }
    if (!ok) {
      out.insert(-1);
      continue;
    }
    // One quasiroot on one side, the two summands on the other.
    const std::vector<int>& lone = pos.size() == 1 ? pos : neg;
    const std::vector<int>& pair = pos.size() == 1 ? neg : pos;
    if (lone.size() != 1 || pair.size() != 2) {
      out.insert(-1);
      continue;
    }
    std::array<int, 3> t{std::min(pair[0], pair[1]), std::max(pair[0], pair[1]), lone[0]};
    auto it = lookup.find(t);
    out.insert(it == lookup.end() ? -1 : it->second);
  }
  return out;
}

SchoutenCheck verify_schouten_condition(const InvariantBivector& f, const Rational& K) {
  const LeviDatum& levi = *f.levi;
  Multivector v = f.to_multivector();
  Multivector r = sklyanin_r(levi.parent);
  Multivector full = schouten(v, v) - schouten(r, r) * (K * K);
  SchoutenCheck out{false, project_m(levi, full), gamma_component(levi, full), {}, {}, false};
  out.holds = out.residual.is_zero();
  out.ff = ff_residuals(f, K);
  out.residual_triples = triples_in_support(levi, out.residual);
  out.equivalent = out.holds == all_zero(out.ff);
  return out;
}

Multivector compatibility_multivector(const InvariantBivector& f, const OrbitPoint& point) {
  Multivector v = f.to_multivector();
  Multivector s = kks(point).to_multivector();
  return schouten_projected(*f.levi, v, s);
}

bool rule_verdict(const LeviDatum& levi) {
  if (levi.parent->type == 'A') return true;
  if (levi.complement.size() > 2) return false;
  std::vector<int> coeff = maximal_root_coefficients(*levi.parent);
  return std::all_of(levi.complement.begin(), levi.complement.end(), [&](int i) { return coeff[i] == 1; });
}

namespace {

// With mu = c * lambda^2, the compatibility equations say mu is linear, and
// adding t * kks shifts mu by t * lambda. The search fixes mu on the first
// simple quasiroot to zero and solves the addition-table equations at K = 1
// for the remaining simple values.
struct FfSystem {
  const LeviDatum& levi;
  std::vector<double> inv_l2;  // 1 / lambda^2 per quasiroot
  int unknowns;

  std::vector<double> coefficients(const Eigen::VectorXd& x) const {
    const int n = levi.num_quasiroots();
    std::vector<double> c(n);
    for (int q = 0; q < n; ++q) {
      double mu = 0;
      for (int i = 1; i <= unknowns; ++i) mu += levi.positive_quasiroots[q][i] * x[i - 1];
      c[q] = mu * inv_l2[q];
    }
    return c;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    auto c = coefficients(x);
    Eigen::VectorXd r(levi.addition_table.size());
    for (std::size_t t = 0; t < levi.addition_table.size(); ++t) {
      const auto& [a, b, s] = levi.addition_table[t];
      r[t] = c[s] * (c[a] + c[b]) - c[a] * c[b] - 1.0;
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    auto c = coefficients(x);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(levi.addition_table.size(), unknowns);
    for (std::size_t t = 0; t < levi.addition_table.size(); ++t) {
      const auto& [a, b, s] = levi.addition_table[t];
      for (int i = 1; i <= unknowns; ++i) {
        double da = levi.positive_quasiroots[a][i] * inv_l2[a];
        double db = levi.positive_quasiroots[b][i] * inv_l2[b];
        double ds = levi.positive_quasiroots[s][i] * inv_l2[s];
        J(t, i - 1) = ds * (c[a] + c[b]) + c[s] * (da + db) - da * c[b] - c[a] * db;
      }
    }
    return J;
  }
};

double levenberg_marquardt(const FfSystem& sys, Eigen::VectorXd& x, int max_iterations, double tol) {
  Eigen::VectorXd r = sys.residual(x);
  double cost = r.squaredNorm();
  double nu = 1e-3;
  for (int it = 0; it < max_iterations && r.lpNorm<Eigen::Infinity>() >= tol; ++it) {
    Eigen::MatrixXd J = sys.jacobian(x);
    Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * r;
    bool improved = false;
    while (nu < 1e12) {
      Eigen::MatrixXd Ad = A;
      Ad.diagonal().array() += nu * (1.0 + A.diagonal().array());
      Eigen::VectorXd step = Ad.ldlt().solve(-g);
      Eigen::VectorXd xn = x + step;
      Eigen::VectorXd rn = sys.residual(xn);
      double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        nu = std::max(nu / 5, 1e-15);
        improved = true;
        break;
      }
      nu *= 4;
    }
    if (!improved) break;
  }
  return r.lpNorm<Eigen::Infinity>();
}

}  // namespace

GoodOrbitReport classify_good_orbit(const OrbitPoint& point, const SolverOptions& opt) {
  const LeviDatum& levi = *point.levi;
  if (!is_regular_point(point)) throw std::invalid_argument("orbit point is not regular");
  GoodOrbitReport rep;
  rep.levi = point.levi;
  rep.rule = rule_verdict(levi);
  rep.family_param = "+-f0 + t*s, t rational, s = kks";
  const int n = levi.num_quasiroots();
  if (levi.is_symmetric()) {
    rep.solver = true;
    rep.evidence = "symmetric";
    rep.witness = InvariantBivector{point.levi, std::vector<Rational>(n, Rational(0))};
  } else {
    FfSystem sys{levi, {}, static_cast<int>(levi.complement.size()) - 1};
    std::vector<Rational> l2(n);
    for (int q = 0; q < n; ++q) {
      Rational l = point.value(q);
      l2[q] = l * l;
      sys.inv_l2.push_back(1.0 / l2[q].get_d());
    }
    Rng rng(opt.seed);
    double best = std::numeric_limits<double>::infinity();
    std::optional<Eigen::VectorXd> best_x;
    const int starts = sys.unknowns == 0 ? 1 : opt.starts;
    for (int s = 0; s < starts; ++s) {
      Eigen::VectorXd x(sys.unknowns);
      for (int i = 0; i < sys.unknowns; ++i)
        x[i] = 2.0 * rng.normal() * l2[levi.simple_quasiroots[i + 1]].get_d();
      double res = levenberg_marquardt(sys, x, opt.max_iterations, opt.tolerance);
      if (res < best) {
        best = res;
        best_x = x;
      }
      if (res >= opt.tolerance) continue;
      // Exact re-verification of the rationalized point.
      std::vector<Rational> mu_simple(levi.complement.size(), Rational(0));
      for (int i = 0; i < sys.unknowns; ++i) mu_simple[i + 1] = rationalize(x[i], opt.max_denominator);
      std::vector<Rational> c(n);
      for (int q = 0; q < n; ++q) {
        Rational mu = 0;
        for (std::size_t i = 0; i < mu_simple.size(); ++i) mu += levi.positive_quasiroots[q][i] * mu_simple[i];
        c[q] = mu / l2[q];
      }
      InvariantBivector f{point.levi, std::move(c)};
      if (all_zero(ff_residuals(f, 1)) && all_zero(compatibility_residuals(f, point))) {
        rep.solver = true;
        rep.evidence = "exact";
        rep.witness = std::move(f);
        rep.residual = 0;
        break;
      }
    }
    if (!rep.solver) {
      rep.residual = best;
      if (best < opt.tolerance) {
        rep.solver = true;
        rep.evidence = "numeric-only evidence";
      } else {
        rep.evidence = "no solution";
      }
    }
  }
  rep.is_good = rep.rule && rep.solver;
  rep.discrepancy = rep.rule != rep.solver;
  return rep;
}

InvariantBivector good_family(const InvariantBivector& f0, const OrbitPoint& point, const Rational& t, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  InvariantBivector s = kks(point);
  std::vector<Rational> c(f0.c.size());
  for (std::size_t q = 0; q < c.size(); ++q) c[q] = sign * f0.c[q] + t * s.c[q];
  return InvariantBivector{f0.levi, std::move(c)};
}

}  // namespace dquant
