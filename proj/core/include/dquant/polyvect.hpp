#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dquant/schouten.hpp"

namespace dquant {

// Non-decreasing variable indices of a commutative monomial x_{i1} ... x_{ik}.
using PolyKey = std::string;

PolyKey make_poly_key(std::vector<int> vars);

// Polynomial polyvector field on g*: an element of S(g) (x) Lambda(g), where
// x_a is the linear function given by the a-th basis element and xi_a is the
// coordinate vector field d/dx_a. Bi-homogeneous of type (poly, vector).
class PolyVector {
 public:
  using Key = std::pair<PolyKey, IndexKey>;

  PolyVector(RootSystemPtr parent, int poly_degree, int vector_degree);

  static PolyVector monomial(RootSystemPtr parent, const std::vector<int>& vars, const std::vector<int>& fields,
                             const Rational& coeff = 1);
  static PolyVector constant(RootSystemPtr parent, const Rational& c);
  // Linear function of type (1, 0).
  static PolyVector linear(RootSystemPtr parent, const SparseVec& x);
  // Constant-coefficient field of type (0, k).
  static PolyVector from_multivector(const Multivector& m);

  const RootSystemPtr& parent() const { return parent_; }
  int poly_degree() const { return poly_degree_; }
  int vector_degree() const { return vector_degree_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const PolyKey& p, const IndexKey& v, const Rational& c);
  PolyVector& operator+=(const PolyVector& o);
  PolyVector& operator-=(const PolyVector& o);
  PolyVector& operator*=(const Rational& c);
  PolyVector operator+(const PolyVector& o) const;
  PolyVector operator-(const PolyVector& o) const;
  PolyVector operator*(const Rational& c) const;
  PolyVector operator-() const;
  bool operator==(const PolyVector& o) const;
  bool operator!=(const PolyVector& o) const { return !(*this == o); }

 private:
  void check_compatible(const PolyVector& o) const;

  RootSystemPtr parent_;
  int poly_degree_;
  int vector_degree_;
  std::map<Key, Rational> terms_;
};

// Product in S(g) (x) Lambda(g) (functions commute, fields anticommute).
PolyVector product(const PolyVector& u, const PolyVector& v);
PolyVector partial_x(const PolyVector& u, int i);
// Derivative in xi_i taken from the right.
PolyVector partial_xi(const PolyVector& u, int i);

// [[P, Q]] = sum_i dP/dxi_i dQ/dx_i - (-1)^{(p-1)(q-1)} dQ/dxi_i dP/dx_i,
// xi-derivatives from the right. On vector fields it is the commutator.
PolyVector schouten_poly(const PolyVector& u, const PolyVector& v);

// Hamiltonian vector field of a linear function for the Lie-Poisson bracket:
// rho(x) = sum_a [x, x_a] d/dx_a. Extended multiplicatively to Lambda g it
// intertwines the two Schouten brackets.
PolyVector action_field(RootSystemPtr rs, const SparseVec& x);
PolyVector action_embedding(const Multivector& m);

PolyVector lie_poisson(RootSystemPtr rs);
// {a, b}_r = sum over positive roots of (E_a . a)(E_-a . b) - (E_-a . a)(E_a . b).
PolyVector r_matrix_bracket(RootSystemPtr rs);
// Three-vector field induced by phi = [[r, r]] through the action embedding.
PolyVector phi_bar(RootSystemPtr rs);

// F(da, db) for a bivector field F and functions a, b.
PolyVector bracket_of(const PolyVector& F, const PolyVector& a, const PolyVector& b);
// Contraction of F with the differential dc in its first slot.
PolyVector contract(const PolyVector& F, const PolyVector& c);
// Value at a point of g* given by the coordinates x_a; result has poly degree 0.
PolyVector evaluate(const PolyVector& F, const std::vector<Rational>& coords);

// Basis of g-invariant fields of type (poly, vector), by exact kernel computation.
std::vector<PolyVector> invariant_fields(RootSystemPtr rs, int poly_degree, int vector_degree);

struct QuadraticF {
  int dimension = 0;
  std::optional<PolyVector> f;
  std::string note;
};

// Invariant maps wedge^2 g -> S^2 g, i.e. invariant fields of type (2, 2).
QuadraticF quadratic_f(RootSystemPtr rs);

// sl(n) in its defining representation, matched to the Chevalley basis of A_{n-1}.
struct SlRep {
  RootSystemPtr rs;
  int n = 0;
  std::vector<DenseMatrix> mats;  // mats[a] represents basis element a
  std::vector<DenseMatrix> dual;  // trace(dual[a] * mats[b]) = delta_ab
};

SlRep sl_matrix_rep(int n);
// Coordinates x_a(P) = trace(P * mats[a]) of a traceless matrix P.
std::vector<Rational> point_coordinates(const SlRep& rep, const DenseMatrix& P);
// trace(xi^k), k = 2..n, as polynomial functions on sl(n)*.
std::vector<PolyVector> casimirs(const SlRep& rep);

struct TangencyResult {
  bool casimir_contractions_zero = false;
  bool in_tangent_space = false;
};

TangencyResult tangency_check(const SlRep& rep, const std::vector<PolyVector>& cas, const DenseMatrix& P,
                              const PolyVector& F);

// Mixed Jacobiator written out as in the proof of strong restriction:
// [x,{y,z}] + [y,{z,x}] + [z,{x,y}] + {x,[y,z]} + {y,[z,x]} + {z,[x,y]}.
PolyVector mixed_jacobiator(const PolyVector& s, const PolyVector& f, const PolyVector& x, const PolyVector& y,
                            const PolyVector& z);
// {z,[x,y]} - [z,{x,y}] - psi(x,y,z) with psi the mixed Jacobiator.
PolyVector scomp_residual(const PolyVector& s, const PolyVector& f, const PolyVector& x, const PolyVector& y,
                          const PolyVector& z);

struct PencilReport {
  int n = 0;
  int dim_hom = 0;
  std::array<int, 2> low_degree_dims{};  // invariant bivector fields of poly degree 0 and 1
  bool sf_zero = false;
  bool ff_colinear = false;
  Rational u;  // [[f, f]] = u * phi_bar
  bool rescalable = false;  // -1/u is a rational square
  Rational scale;           // k with k^2 u = -1 when rescalable
  bool r_compatible = false;  // [[f, r-bracket]] = 0
  bool pp_zero = false;       // [[k f - r, k f - r]] = 0
  int tangency_pass = 0;
  int tangency_total = 0;
  std::optional<PolyVector> f;
};

// Pencil checks for sl(n). Tangency is tested at `points` points: one regular
// nilpotent point and random diagonalizable ones.
PencilReport verify_pencil(int n, int points = 20, std::uint64_t seed = 1);

struct ScompReport {
  int checked = 0;
  int passed = 0;
  bool psi_zero = false;
};

ScompReport scomp_identity(int n, int samples, std::uint64_t seed = 1);

struct NoGoReport {
  std::array<int, 3> dims{};  // invariant bivector fields of poly degree 0, 1, 2
  std::string argument;
};

NoGoReport no_go_degree_argument(RootSystemPtr rs);

// True when c * a == b for some nonzero rational c, stored in *ratio.
bool colinear(const PolyVector& a, const PolyVector& b, Rational* ratio = nullptr);

// Rational square root when it exists.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace dquant
