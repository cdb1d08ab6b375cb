#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dquant/liealg.hpp"
#include "dquant/schouten.hpp"

namespace dquant {

// v = sum over alpha in Omega^+ minus Omega_Gamma of c(quasiroot(alpha)) E_alpha ^ E_{-alpha}.
struct InvariantBivector {
  LeviPtr levi;
  std::vector<Rational> c;  // indexed by positive quasiroot

  Multivector to_multivector() const;
};

InvariantBivector make_bivector(LeviPtr levi, std::vector<Rational> c);

// project_m(schouten(x, v)) for every x in a basis of g_Gamma.
bool is_gamma_invariant(const LeviDatum& levi, const Multivector& v);

// (ff): c(a+b)(c(a)+c(b)) - c(a)c(b) - K^2, one entry per addition-table triple.
std::vector<Rational> ff_residuals(const InvariantBivector& f, const Rational& K);
// (comp): c(a)l(a)^2 + c(b)l(b)^2 - c(a+b)l(a+b)^2, one entry per triple.
std::vector<Rational> compatibility_residuals(const InvariantBivector& f, const OrbitPoint& point);

struct FfConflict {
  enum class Kind { DegeneratePair, PathConflict };
  Kind kind;
  int a = -1, b = -1, target = -1;
  Rational first, second;
  std::string message;
};

struct FfSolveResult {
  std::optional<InvariantBivector> bivector;
  std::optional<FfConflict> conflict;
};

// Height-ordered propagation of c(a+b) = (c(a)c(b)+K^2)/(c(a)+c(b)) from the
// simple quasiroots, checking that every decomposition agrees.
FfSolveResult solve_ff(LeviPtr levi, const std::vector<Rational>& initial, const Rational& K);

InvariantBivector lambda_poisson(const OrbitPoint& point);
InvariantBivector kks(const OrbitPoint& point);
// w = sum lambda(quasiroot) E_alpha ^ E_{-alpha}.
InvariantBivector lambda_weighted(const OrbitPoint& point);

Rational psi(const Rational& x);
// Multiplicative lambda from values on simple quasiroots.
std::vector<Rational> multiplicative_values(const LeviDatum& levi, const std::vector<Rational>& simple_values);
// Throws std::invalid_argument on a pole (lambda = 1) or a regularity violation.
InvariantBivector psi_solution(LeviPtr levi, const std::vector<Rational>& simple_values, const Rational& K);

struct Stratum {
  LeviPtr levi;
  std::set<int> omega_prime;       // positive quasiroot indices
  std::set<std::vector<Rational>> X;  // reduced projections modulo span(omega_prime)
  std::vector<Rational> lambda_mult;  // per positive quasiroot; used on omega_prime only
  Rational K;
};

// Canonical representative of a quasiroot (signed: sign = +-1) modulo span(omega_prime).
std::vector<Rational> stratum_projection(const Stratum& s, int q, int sign);
// Empty when all stratum invariants hold.
std::vector<std::string> stratum_problems(const Stratum& s);
// omega_prime = positive quasiroots in span(generators); X = {x : ell(x) > 0}
// on the projections of the remaining quasiroots; lambda multiplicative from
// per-coordinate values.
Stratum make_stratum(LeviPtr levi, const std::vector<int>& generators, const std::vector<Rational>& ell,
                     const std::vector<Rational>& coordinate_values, const Rational& K);
InvariantBivector stratum_solution(const Stratum& s);

struct SchoutenCheck {
  bool holds = false;
  Multivector residual;  // project_m([[v,v]]) - K^2 phi_M
  Multivector gamma_part;  // g_Gamma component of [[v,v]] - K^2 phi, dropped by the projection
  std::vector<Rational> ff;
  // Addition-table triples carrying residual terms; -1 marks an unmatched term.
  std::set<int> residual_triples;
  bool equivalent = false;  // residual zero  <=>  all ff residuals zero
};

SchoutenCheck verify_schouten_condition(const InvariantBivector& f, const Rational& K);
// Residual of the compatibility condition at Schouten level: project_m([[f, s]]).
Multivector compatibility_multivector(const InvariantBivector& f, const OrbitPoint& point);
// Addition-table triples touched by the terms of a weight-zero trivector.
std::set<int> triples_in_support(const LeviDatum& levi, const Multivector& m);

bool rule_verdict(const LeviDatum& levi);

struct SolverOptions {
  std::uint64_t seed = 1;
  int starts = 64;
  int max_iterations = 200;
  double tolerance = 1e-12;
  long max_denominator = 1000000;
};

struct GoodOrbitReport {
  LeviPtr levi;
  bool rule = false;
  bool solver = false;
  bool is_good = false;
  bool discrepancy = false;
  // "exact", "numeric-only evidence", "symmetric", or "no solution".
  std::string evidence;
  double residual = 0;
  std::optional<InvariantBivector> witness;
  std::string family_param;
};

GoodOrbitReport classify_good_orbit(const OrbitPoint& point, const SolverOptions& opt = {});

// sign * f0 + t * kks(point).
InvariantBivector good_family(const InvariantBivector& f0, const OrbitPoint& point, const Rational& t, int sign);

}  // namespace dquant
