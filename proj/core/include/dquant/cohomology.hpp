#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dquant/brackets.hpp"

namespace dquant {

// Basis of (Lambda^k m)^{g_Gamma}. Each basis vector has coefficient 1 on its
// own pivot monomial and 0 on the pivots of the others, so coordinates of an
// invariant are its coefficients on the pivot monomials.
struct InvariantSpace {
  int degree = 0;
  std::vector<Multivector> basis;
  std::vector<IndexKey> pivots;

  int dim() const { return static_cast<int>(basis.size()); }
  // Throws std::invalid_argument when u is not in the span.
  SparseVec coordinates(const Multivector& u) const;
};

InvariantSpace invariant_basis(const LeviDatum& levi, int k);

struct InvariantComplex {
  LeviPtr levi;
  InvariantBivector f;
  Rational K;
  std::vector<InvariantSpace> spaces;  // degrees 0 .. dim m
  // differentials[k][j] = coordinates of delta(spaces[k].basis[j]) in spaces[k+1].
  std::vector<std::vector<SparseVec>> differentials;

  std::vector<int> chain_dims() const;
};

// Throws std::invalid_argument when f fails [[f,f]] = K^2 phi_M, and
// std::logic_error if delta^2 != 0.
InvariantComplex build_complex(const InvariantBivector& f, const Rational& K);
std::vector<int> cohomology_dims(const InvariantComplex& c);
// Betti numbers of G/P placed in even degrees, zeros in odd degrees.
std::vector<int> expected_cohomology(const LeviDatum& levi);

struct LemmaCheck {
  bool applicable = false;
  int dimension = 0;  // theta-invariant part of (Lambda^3 m)^{g_Gamma}
  bool colinear = false;
  Rational ratio;  // generator * ratio == phi_M
  bool discrepancy = false;
  std::string verdict;
};

LemmaCheck lemma_three_vector_check(const LeviDatum& levi);

}  // namespace dquant
