#pragma once

#include <map>
#include <string>
#include <vector>

#include "dquant/liealg.hpp"

namespace dquant {

// Strictly increasing basis-index tuple packed into bytes (dim <= 248 fits).
using IndexKey = std::string;

IndexKey make_key(const std::vector<int>& sorted_indices);
std::vector<int> key_indices(const IndexKey& key);
// out = sorted union of two disjoint keys; returns the sign of the sorting
// permutation, or 0 when the keys share an index.
int wedge_keys(const IndexKey& a, const IndexKey& b, IndexKey& out);

// Homogeneous element of the exterior power Lambda^k g.
class Multivector {
 public:
  Multivector(RootSystemPtr parent, int degree);

  // Wedge of basis vectors in the given order (sign from sorting, zero on repeats).
  static Multivector monomial(RootSystemPtr parent, const std::vector<int>& indices,
                              const Rational& coeff = 1);
  static Multivector from_vector(RootSystemPtr parent, const SparseVec& x);
  static Multivector scalar(RootSystemPtr parent, const Rational& c);

  const RootSystemPtr& parent() const { return parent_; }
  int degree() const { return degree_; }
  const std::map<IndexKey, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const std::vector<int>& sorted_indices) const;

  void add_term(const IndexKey& key, const Rational& c);
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(const Rational& c);
  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator*(const Rational& c) const;
  Multivector operator-() const;
  bool operator==(const Multivector& o) const;
  bool operator!=(const Multivector& o) const { return !(*this == o); }

 private:
  void check_compatible(const Multivector& o) const;

  RootSystemPtr parent_;
  int degree_;
  std::map<IndexKey, Rational> terms_;
};

Multivector wedge(const Multivector& u, const Multivector& v);
Multivector schouten(const Multivector& u, const Multivector& v);
// project_m(levi, schouten(u, v)) without materializing the g_Gamma terms.
Multivector schouten_projected(const LeviDatum& levi, const Multivector& u, const Multivector& v);
// Derivation action of a basis element: ad_x(u) = schouten(x, u).
Multivector ad_action(int x, const Multivector& u);
Multivector project_m(const LeviDatum& levi, const Multivector& u);
// Part of u with at least one g_Gamma index (what project_m discards).
Multivector gamma_component(const LeviDatum& levi, const Multivector& u);
Multivector apply_theta(const Multivector& u);

// Sum of the weights of the indices of a key.
Root key_weight(const RootSystem& rs, const IndexKey& key);

Multivector sklyanin_r(RootSystemPtr rs);
Multivector phi(RootSystemPtr rs);
Multivector phi_M(const LeviDatum& levi);

// True when c * a == b for some nonzero rational c, stored in *ratio.
bool colinear(const Multivector& a, const Multivector& b, Rational* ratio = nullptr);

}  // namespace dquant
