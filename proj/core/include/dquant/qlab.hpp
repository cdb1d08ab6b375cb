#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dquant/polyvect.hpp"

namespace dquant {

// a + b*eps with eps^2 = 0.
struct Dual {
  Rational a, b;

  Dual() = default;
  Dual(const Rational& re) : a(re) {}  // NOLINT(google-explicit-constructor)
  Dual(const Rational& re, const Rational& eps) : a(re), b(eps) {}
  static Dual epsilon() { return Dual(0, 1); }

  Dual& operator+=(const Dual& o);
  Dual& operator-=(const Dual& o);
  Dual& operator*=(const Dual& o);
  // Division needs an invertible real part.
  Dual& operator/=(const Dual& o);
  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
  friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
  Dual operator-() const { return Dual(-a, -b); }
  bool operator==(const Dual& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Dual& o) const { return !(*this == o); }
  bool is_zero() const { return a == 0 && b == 0; }
};

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Braided R-matrix on V (x) V, dim V = n; index of v_i (x) v_j is i*n + j.
template <class T>
struct BraidOperator {
  int n = 0;
  T q;
  Matrix<T> matrix;
};

// R(v_i v_i) = q v_i v_i; for i < j: R(v_i v_j) = v_j v_i,
// R(v_j v_i) = v_i v_j + (q - 1/q) v_j v_i.
BraidOperator<Rational> standard_rmatrix(int n, const Rational& q);
// Same operator at q = 1 + eps.
BraidOperator<Dual> standard_rmatrix_first_order(int n);

template <class T>
bool braid_relation_holds(const BraidOperator<T>& r);
template <class T>
bool hecke_relation_holds(const BraidOperator<T>& r);

// Which reflection equation is expanded for K = I + tB:
//   SecondFactor: K_2 R K_2 R = R K_2 R K_2
//   FirstFactor:  R K_1 R K_1 = K_1 R K_1 R
enum class ReConvention { SecondFactor, FirstFactor };
std::string to_string(ReConvention c);

// Generators are the entries b_ij of B, indexed i*n + j (N = n^2). Each entry
// of the matrix identity gives one relation quad + t * lin. Quadratic rows are
// indexed by words x*N + y. The raw t-coefficient equals (q - 1/q) times
// `linear` by the Hecke relation; `linear` is stored so that q = 1 is regular.
template <class T>
struct QuadraticLinearPresentation {
  int n = 0;
  int generator_count = 0;
  ReConvention convention = ReConvention::SecondFactor;
  Matrix<T> quadratic_part;
  Matrix<T> linear_part;
  Matrix<T> t_coefficient;
};

template <class T>
QuadraticLinearPresentation<T> re_relations(const BraidOperator<T>& r, ReConvention c);

int quadratic_relation_dim(const QuadraticLinearPresentation<Rational>& p);
// Dimensions of the quadratic algebra in degrees 0..max_degree.
std::vector<long> pbw_dims(const QuadraticLinearPresentation<Rational>& p, int max_degree);
// dim S^d of an N-dimensional space, d = 0..max_degree.
std::vector<long> symmetric_dims(int N, int max_degree);

struct FlatnessReport {
  int n = 0;
  std::vector<Rational> q_samples;
  ReConvention convention = ReConvention::SecondFactor;
  int quad_rel_dim = 0;  // agreed value across samples, -1 on disagreement
  std::vector<std::vector<long>> graded_dims;  // per q sample
  std::vector<long> expected_dims;
  bool flat = false;
};

// q samples a/b with 2 <= a, b <= 19, a != b. Tries the SecondFactor convention
// first and switches to FirstFactor only if its relation count is wrong.
FlatnessReport re_pbw_report(int n, int max_degree, int samples = 3, std::uint64_t seed = 1);

// Commutative polynomial on the N generators.
using GlPoly = std::map<PolyKey, Rational>;

void add_to(GlPoly& p, const GlPoly& q, const Rational& c = 1);
GlPoly poly_product(const GlPoly& p, const GlPoly& q);
GlPoly generator_poly(int i);
bool is_homogeneous(const GlPoly& p, int degree);

// First-order bracket {b_x, b_y} read off the eps-part of the quadratic
// relations at q = 1 + eps.
struct FirstOrderBracket {
  int n = 0;
  int N = 0;
  ReConvention convention = ReConvention::SecondFactor;
  Matrix<GlPoly> table;
  bool complete = false;    // every pair (x, y), x != y, got an entry
  bool consistent = false;  // all relations agree, including orientation
};

FirstOrderBracket first_order_poisson(int n, ReConvention c = ReConvention::SecondFactor);

GlPoly poisson(const FirstOrderBracket& br, const GlPoly& a, const GlPoly& b);
bool bracket_antisymmetric(const FirstOrderBracket& br);
bool bracket_quadratic(const FirstOrderBracket& br);
bool jacobi_holds(const FirstOrderBracket& br);
// The trace sum_i b_ii Poisson-commutes with every generator.
bool trace_central(const FirstOrderBracket& br);

// x . p(a, b) - p(x . a, b) - p(a, x . b) = kappa * mu(delta(x))(a, b) with
// delta(x) = [r, Delta(x)], r = sum e_k ^ f_k, for all sl(n) basis x and all
// generator pairs, with one global kappa.
struct QpbResult {
  bool pass = false;
  Rational kappa;
  int checked = 0;
  int failures = 0;
  // Failures that disappear after setting the trace to zero.
  bool only_trace_failures = false;
};

QpbResult qpb_invariance_check(const FirstOrderBracket& br, const SlRep& rep);

// Bracket restricted to the traceless generators with the trace set to zero,
// as a quadratic bivector field on sl(n)*.
PolyVector traceless_bracket(const FirstOrderBracket& br, const SlRep& rep);

struct InvariantComponent {
  bool found = false;       // some c makes p + c * r-bracket invariant
  Rational c;
  bool colinear_with_f = false;
  Rational ratio;           // (p + c r) = ratio * f
};

InvariantComponent invariant_component(const PolyVector& p, const PolyVector& f);

struct FirstOrderReport {
  int n = 0;
  FirstOrderBracket bracket;
  bool antisymmetric = false;
  bool quadratic = false;
  bool jacobi = false;
  bool trace_central = false;
  QpbResult qpb;
  std::optional<InvariantComponent> invariant;  // n >= 3
};

FirstOrderReport first_order_report(int n);

}  // namespace dquant
