#include "dquant/cohomology.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dquant {

namespace {

constexpr double kMaxMonomials = 2e7;
constexpr int kMaxChainDim = 50000;

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Weight-zero k-subsets of m, grouped by the sorted list of signed quasiroots.
std::map<std::vector<int>, std::vector<IndexKey>> weight_zero_blocks(const LeviDatum& levi, int k) {
  const RootSystem& rs = *levi.parent;
  const auto& mb = levi.m_basis;
  if (binomial(static_cast<int>(mb.size()), k) > kMaxMonomials)
    throw std::invalid_argument("Lambda^" + std::to_string(k) + " m is too large to enumerate");
  std::map<std::vector<int>, std::vector<IndexKey>> blocks;
  std::vector<int> chosen;
  Root weight(rs.rank, 0);
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      if (std::any_of(weight.begin(), weight.end(), [](int w) { return w != 0; })) return;
      std::vector<int> content;
      for (int a : chosen) content.push_back(levi.quasiroot_of_basis[a]);
      std::sort(content.begin(), content.end());
      blocks[content].push_back(make_key(chosen));
      return;
    }
    for (std::size_t i = start; i + (k - chosen.size()) <= mb.size(); ++i) {
      const Root& w = rs.weights[mb[i]];
      chosen.push_back(mb[i]);
      for (int j = 0; j < rs.rank; ++j) weight[j] += w[j];
      self(self, i + 1);
      for (int j = 0; j < rs.rank; ++j) weight[j] -= w[j];
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return blocks;
}

}  // namespace

SparseVec InvariantSpace::coordinates(const Multivector& u) const {
  SparseVec out;
  Multivector rebuilt(u.parent(), degree);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    auto it = u.terms().find(pivots[i]);
    if (it == u.terms().end()) continue;
    out.push_back({static_cast<int>(i), it->second});
    rebuilt += basis[i] * it->second;
  }
  if (rebuilt != u) throw std::invalid_argument("multivector is not in the invariant subspace");
  return out;
}

InvariantSpace invariant_basis(const LeviDatum& levi, int k) {
  const RootSystem& rs = *levi.parent;
  InvariantSpace space;
  space.degree = k;
  if (k < 0 || k > static_cast<int>(levi.m_basis.size())) return space;
  if (k == 0) {
    space.basis.push_back(Multivector::scalar(levi.parent, 1));
    space.pivots.push_back(IndexKey());
    return space;
  }
  // Raising and lowering operators of g_Gamma; the lowering ones are redundant
  // for weight-zero vectors but cheap.
  std::vector<int> ops;
  for (int g : levi.gamma) {
    int p = rs.positive_root_index(rs.simple_roots[g]);
    ops.push_back(rs.e(p));
    ops.push_back(rs.f(p));
  }
  for (auto& [content, keys] : weight_zero_blocks(levi, k)) {
    const int n = static_cast<int>(keys.size());
    std::map<IndexKey, SparseVec> rows;
    for (int j = 0; j < n; ++j) {
      Multivector mono(levi.parent, k);
      mono.add_term(keys[j], 1);
      for (std::size_t o = 0; o < ops.size(); ++o) {
        Multivector img = ad_action(ops[o], mono);
        for (const auto& [key, c] : img.terms()) {
          IndexKey tagged = key;
          tagged.push_back(static_cast<char>(o));
          rows[tagged].push_back({j, c});
        }
      }
    }
    SparseRref rref(n);
    for (auto& [key, row] : rows) rref.insert(row);
    std::vector<int> free = rref.free_columns();
    std::vector<SparseVec> kernel = rref.kernel();
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      Multivector b(levi.parent, k);
      for (const auto& [j, c] : kernel[i]) b.add_term(keys[j], c);
      space.basis.push_back(std::move(b));
      space.pivots.push_back(keys[free[i]]);
    }
    if (space.dim() > kMaxChainDim) throw std::invalid_argument("invariant chain space exceeds the size cap");
  }
  return space;
}

std::vector<int> InvariantComplex::chain_dims() const {
  std::vector<int> out;
  for (const auto& s : spaces) out.push_back(s.dim());
  return out;
}

InvariantComplex build_complex(const InvariantBivector& f, const Rational& K) {
  const LeviDatum& levi = *f.levi;
  if (!verify_schouten_condition(f, K).holds)
    throw std::invalid_argument("bivector does not satisfy [[f,f]] = K^2 phi_M");
  InvariantComplex cx{f.levi, f, K, {}, {}};
  const int top = static_cast<int>(levi.m_basis.size());
  for (int k = 0; k <= top; ++k) cx.spaces.push_back(invariant_basis(levi, k));
  Multivector fv = f.to_multivector();
  for (int k = 0; k < top; ++k) {
    std::vector<SparseVec> cols;
    for (const auto& b : cx.spaces[k].basis) cols.push_back(cx.spaces[k + 1].coordinates(schouten_projected(levi, fv, b)));
    cx.differentials.push_back(std::move(cols));
  }
  for (int k = 0; k + 1 < top; ++k)
    for (const auto& col : cx.differentials[k]) {
      SparseVec img;
      for (const auto& [i, c] : col) axpy(img, c, cx.differentials[k + 1][i]);
      if (!img.empty()) throw std::logic_error("delta_f squared is nonzero in degree " + std::to_string(k));
    }
  return cx;
}

std::vector<int> cohomology_dims(const InvariantComplex& c) {
  const int top = static_cast<int>(c.spaces.size()) - 1;
  std::vector<int> rank(top + 1, 0);  // rank of delta out of degree k
  for (int k = 0; k < top; ++k) rank[k] = rank_of(c.differentials[k], c.spaces[k + 1].dim());
  std::vector<int> h;
  for (int k = 0; k <= top; ++k) h.push_back(c.spaces[k].dim() - rank[k] - (k > 0 ? rank[k - 1] : 0));
  return h;
}

std::vector<int> expected_cohomology(const LeviDatum& levi) {
  std::vector<long> b = betti_numbers(levi);
  std::vector<int> out(levi.m_basis.size() + 1, 0);
  for (std::size_t j = 0; j < b.size() && 2 * j < out.size(); ++j) out[2 * j] = static_cast<int>(b[j]);
  return out;
}

LemmaCheck lemma_three_vector_check(const LeviDatum& levi) {
  LemmaCheck out;
  Multivector pm = phi_M(levi);
  if (pm.is_zero()) {
    out.verdict = "skipped: phi_M = 0 (symmetric orbit)";
    return out;
  }
  const char t = levi.parent->type;
  out.applicable = (t == 'D' || t == 'E') && levi.complement.size() == 2 && rule_verdict(levi);
  InvariantSpace inv = invariant_basis(levi, 3);
  // Kernel of theta - 1 on the invariant space.
  std::vector<SparseVec> cols;
  for (const auto& b : inv.basis) cols.push_back(inv.coordinates(apply_theta(b) - b));
  SparseRref rref(inv.dim());
  std::vector<SparseVec> rows(inv.dim());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, c] : cols[j]) rows[i].push_back({static_cast<int>(j), c});
  for (const auto& r : rows) rref.insert(r);
  std::vector<SparseVec> kernel = rref.kernel();
  out.dimension = static_cast<int>(kernel.size());
  if (out.dimension == 1) {
    Multivector gen(levi.parent, 3);
    for (const auto& [j, c] : kernel[0]) gen += inv.basis[j] * c;
    out.colinear = colinear(gen, pm, &out.ratio);
  }
  out.discrepancy = out.applicable && (out.dimension != 1 || !out.colinear);
  if (!out.applicable)
    out.verdict = "outside the lemma hypothesis (needs a good D/E orbit with two simple quasiroots)";
  else
    out.verdict = out.discrepancy ? "discrepancy" : "one-dimensional, multiple of phi_M";
  return out;
}

}  // namespace dquant
