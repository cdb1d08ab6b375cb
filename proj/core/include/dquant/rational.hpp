#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dquant {

using Rational = mpq_class;

// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

// num/den in lowest terms; throws std::invalid_argument when den == 0.
// (mpq_class(num, den) does not reduce, and GMP assumes reduced operands.)
Rational make_rational(long num, long den);

// "p/q" with q >= 1, always including the denominator.
std::string to_string(const Rational& q);
// Accepts "p/q", "p", or a decimal like "0.25".
Rational parse_rational(const std::string& text);

// Last continued-fraction convergent of x with denominator <= max_den.
Rational rationalize(double x, long max_den);

// y += a * x
void axpy(SparseVec& y, const Rational& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Rational& a);
Rational coeff_at(const SparseVec& x, int index);
bool is_zero(const SparseVec& x);

// Deterministic generator; the distribution helpers avoid the
// implementation-defined std:: distributions so outputs are stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  double unit();
  double normal();
  // Random nonzero rational a/b with |a| <= num_max, 1 <= b <= den_max.
  Rational nonzero_rational(long num_max, long den_max);

 private:
  std::uint64_t state_[4];
};

}  // namespace dquant
