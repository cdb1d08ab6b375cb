#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dquant/linalg.hpp"
#include "dquant/rational.hpp"

namespace dquant {

using Root = std::vector<int>;

// A simple Lie algebra in a Chevalley-type basis.
//
// Basis layout, with l = rank and N = number of positive roots:
//   [0, l)          coroots h_i
//   [l, l+N)        E_alpha for the k-th positive root
//   [l+N, l+2N)     E_{-alpha}, rescaled so that killing(E_alpha, E_{-alpha}) = 1
struct RootSystem {
  char type = 'A';
  int rank = 0;
  int num_positive = 0;
  int dim = 0;

  // cartan[i][j] = <alpha_i^vee, alpha_j>, Bourbaki node order.
  std::vector<std::vector<int>> cartan;
  // (alpha_i, alpha_i) for a W-invariant form with rational values.
  std::vector<Rational> simple_length2;
  std::vector<Root> simple_roots;
  // Sorted by height, then lexicographically descending.
  std::vector<Root> positive_roots;
  std::vector<int> maximal_root;

  // Weight of each basis vector in simple-root coordinates (zero for h_i).
  std::vector<Root> weights;
  // structure[a][b] = [x_a, x_b].
  std::vector<std::vector<SparseVec>> structure;
  DenseMatrix killing;
  // Cartan involution: theta(x_a) = theta_coeff[a] * x_{theta_target[a]}.
  std::vector<int> theta_target;
  std::vector<Rational> theta_coeff;
  // killing(E_alpha, E_{-alpha}) before rescaling, per positive root.
  std::vector<Rational> unscaled_pairing;

  int e(int k) const { return rank + k; }
  int f(int k) const { return rank + num_positive + k; }
  bool is_cartan(int a) const { return a < rank; }
  bool is_positive(int a) const { return a >= rank && a < rank + num_positive; }
  bool is_negative(int a) const { return a >= rank + num_positive; }
  // Positive-root index of a root vector basis element (either sign).
  int root_of(int a) const;
  // The basis element paired with a under the Killing form.
  int opposite(int a) const;

  int positive_root_index(const Root& r) const;
  // Basis index of the root vector for a root of either sign, or -1.
  int basis_of_root(const Root& r) const;
  int height(int k) const;

  const SparseVec& bracket(int a, int b) const { return structure[a][b]; }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;

  std::string label() const;
  std::string basis_label(int a) const;

 private:
  friend std::shared_ptr<const RootSystem> build_root_system(char, int);
  std::map<Root, int> root_lookup_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Throws std::invalid_argument for unsupported (type, rank) pairs.
RootSystemPtr build_root_system(char type, int rank);
bool is_valid_type(char type, int rank, std::string* why = nullptr);

std::vector<int> maximal_root_coefficients(const RootSystem& rs);
long double weyl_group_order(char type, int rank);

SparseVec apply_theta(const RootSystem& rs, const SparseVec& x);

// Lie-algebra homomorphism check helpers.
SparseVec basis_vector(int a);

struct LeviDatum {
  RootSystemPtr parent;
  std::vector<int> gamma;       // 0-based simple-root indices
  std::vector<int> complement;  // Pi minus Gamma, 0-based

  // Basis indices of root vectors E_{+-alpha} with alpha in span(Gamma).
  std::vector<int> omega_gamma;
  // Basis indices spanning m, sorted.
  std::vector<int> m_basis;
  std::vector<char> in_m;

  // Positive quasiroots: coordinates on complement, sorted by height then
  // lexicographically descending. Simple quasiroots come first.
  std::vector<Root> positive_quasiroots;
  // Per positive quasiroot, the positive-root indices projecting to it.
  std::vector<std::vector<int>> fibers;
  // Per basis index: q+1 for E_alpha over quasiroot q, -(q+1) for E_{-alpha}, 0 in g_Gamma.
  std::vector<int> quasiroot_of_basis;
  // Triples (a, b, a+b) of positive quasiroot indices with a <= b.
  std::vector<std::array<int, 3>> addition_table;
  // simple_quasiroots[i] = index of the image of complement[i].
  std::vector<int> simple_quasiroots;

  Root quasiroot_of(const Root& alpha) const;
  int quasiroot_index(const Root& qr) const;
  int quasiroot_height(int q) const;
  bool is_symmetric() const { return addition_table.empty(); }
  int num_quasiroots() const { return static_cast<int>(positive_quasiroots.size()); }
  // 1-based Bourbaki labels.
  std::vector<int> gamma_bourbaki() const;
};

using LeviPtr = std::shared_ptr<const LeviDatum>;

// gamma holds 0-based indices. Throws when gamma is all of Pi (the orbit is a point).
LeviPtr levi_datum(RootSystemPtr rs, std::vector<int> gamma);

struct OrbitPoint {
  LeviPtr levi;
  std::vector<Rational> lambda;  // values on simple quasiroots, complement order

  Rational value(int q) const;
};

// Throws if lambda vanishes on a simple quasiroot.
OrbitPoint make_orbit_point(LeviPtr levi, std::vector<Rational> lambda);
// True when lambda is nonzero on every quasiroot (needed for 1/lambda).
bool is_regular_point(const OrbitPoint& p);

// Poincare polynomial coefficients b_0, b_2, ... of G/P via minimal coset
// representatives. Throws when |W| exceeds 10^6.
std::vector<long> betti_numbers(const LeviDatum& levi);

}  // namespace dquant
