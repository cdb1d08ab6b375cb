#include "dquant/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace dquant {

namespace {

using SparseMatrix = std::vector<SparseVec>;  // columns

int height_of(const Root& r) { return std::accumulate(r.begin(), r.end(), 0); }

bool root_order(const Root& a, const Root& b) {
  int ha = height_of(a), hb = height_of(b);
  if (ha != hb) return ha < hb;
  return a > b;
}

struct CartanData {
  std::vector<std::vector<int>> a;
  std::vector<Rational> len2;
};

// Bourbaki numbering, 0-based internally.
CartanData cartan_for(char type, int n) {
  CartanData d;
  d.a.assign(n, std::vector<int>(n, 0));
  d.len2.assign(n, Rational(2));
  for (int i = 0; i < n; ++i) d.a[i][i] = 2;
  auto link = [&](int i, int j) {
    d.a[i][j] = -1;
    d.a[j][i] = -1;
  };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      d.a[n - 1][n - 2] = -2;  // alpha_n short
      d.len2[n - 1] = 1;
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      d.a[n - 2][n - 1] = -2;  // alpha_n long
      for (int i = 0; i + 1 < n; ++i) d.len2[i] = 1;
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      d.a[2][1] = -2;
      d.len2[2] = 1;
      d.len2[3] = 1;
      break;
    case 'G':
      // alpha_1 short: <alpha_1^vee, alpha_2> = -3, <alpha_2^vee, alpha_1> = -1.
      d.a[0][1] = -3;
      d.a[1][0] = -1;
      d.len2[0] = 2;
      d.len2[1] = 6;
      break;
  }
  return d;
}

SparseMatrix mat_mul(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(b.size());
  for (std::size_t col = 0; col < b.size(); ++col)
    for (const auto& [k, c] : b[col]) axpy(out[col], c, a[k]);
  return out;
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b, const Rational& scale) {
  SparseMatrix ab = mat_mul(a, b);
  SparseMatrix ba = mat_mul(b, a);
  for (std::size_t col = 0; col < ab.size(); ++col) {
    axpy(ab[col], Rational(-1), ba[col]);
    for (auto& [i, c] : ab[col]) c *= scale;
  }
  return ab;
}

// Builds the positive-root action of the Chevalley generators by recursion on
// height. E_alpha is defined as [e_i, E_beta] / (p+1) where i is the smallest
// index with alpha - alpha_i a root and p is the length of the alpha_i-string
// below beta; this keeps the basis a Chevalley basis up to signs.
class ChevalleyBuilder {
 public:
  ChevalleyBuilder(const std::vector<std::vector<int>>& a, const std::vector<Root>& pos,
                   const std::map<Root, int>& lookup)
      : a_(a), pos_(pos), lookup_(lookup), l_(static_cast<int>(a.size())),
        n_(static_cast<int>(pos.size())) {
    path_i_.assign(n_, -1);
    path_beta_.assign(n_, -1);
    path_p_.assign(n_, 0);
    simple_.assign(n_, -1);
    for (int k = 0; k < n_; ++k) {
      if (height_of(pos_[k]) == 1) {
        for (int i = 0; i < l_; ++i)
          if (pos_[k][i] == 1) simple_[k] = i;
        continue;
      }
      for (int i = 0; i < l_; ++i) {
        int b = shift(k, i, -1);
        if (b < 0) continue;
        path_i_[k] = i;
        path_beta_[k] = b;
        int p = 0;
        for (int cur = shift(b, i, -1); cur >= 0; cur = shift(cur, i, -1)) ++p;
        path_p_[k] = p;
        break;
      }
    }
    up_memo_.assign(l_, std::vector<std::optional<Rational>>(n_));
    down_memo_.assign(l_, std::vector<std::optional<Rational>>(n_));
  }

  int shift(int k, int i, int sign) const {
    Root r = pos_[k];
    r[i] += sign;
    auto it = lookup_.find(r);
    return it == lookup_.end() ? -1 : it->second;
  }
  int pairing(int i, int k) const {
    int s = 0;
    for (int j = 0; j < l_; ++j) s += a_[i][j] * pos_[k][j];
    return s;
  }
  int simple_index(int i) const {
    Root r(l_, 0);
    r[i] = 1;
    return lookup_.at(r);
  }
  int path_i(int k) const { return path_i_[k]; }
  int path_beta(int k) const { return path_beta_[k]; }
  int path_p(int k) const { return path_p_[k]; }

  // [e_i, E_k] = up(i, k) E_{k + alpha_i}
  Rational up(int i, int k) {
    if (up_memo_[i][k]) return *up_memo_[i][k];
    Rational result = 0;
    int t = shift(k, i, +1);
    if (t >= 0) {
      int kk = path_i_[t];
      if (kk == i && path_beta_[t] == k) {
        result = path_p_[t] + 1;
      } else {
        // Compare [f_kk, [e_i, E_k]] with [f_kk, E_t] in the weight space of E_{beta(t)}.
        Rational x = 0;
        if (simple_[k] == kk) {
          x += a_[kk][i];
        } else {
          Rational d = down(kk, k);
          if (d != 0) x += d * up(i, shift(k, kk, -1));
        }
        Rational y = down(kk, t);
        if (y == 0) throw std::logic_error("Chevalley recursion: vanishing lowering coefficient");
        result = x / y;
      }
    }
    up_memo_[i][k] = result;
    return result;
  }

  // [f_j, E_k] = down(j, k) E_{k - alpha_j}, valid when E_k is not e_j.
  Rational down(int j, int k) {
    if (down_memo_[j][k]) return *down_memo_[j][k];
    Rational result = 0;
    if (shift(k, j, -1) >= 0) {
      int i = path_i_[k];
      int b = path_beta_[k];
      Rational val = 0;
      if (i == j) val -= pairing(i, b);
      if (simple_[b] == j) {
        val += a_[j][i];
      } else {
        Rational d = down(j, b);
        if (d != 0) val += d * up(i, shift(b, j, -1));
      }
      result = val / (path_p_[k] + 1);
    }
    down_memo_[j][k] = result;
    return result;
  }

  bool is_simple(int k, int i) const { return simple_[k] == i; }

 private:
  const std::vector<std::vector<int>>& a_;
  const std::vector<Root>& pos_;
  const std::map<Root, int>& lookup_;
  int l_, n_;
  std::vector<int> path_i_, path_beta_, path_p_, simple_;
  std::vector<std::vector<std::optional<Rational>>> up_memo_, down_memo_;
};

}  // namespace

bool is_valid_type(char type, int rank, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (rank < 1 || rank > 8) return fail("rank must be between 1 and 8");
  switch (type) {
    case 'A':
      return true;
    case 'B':
    case 'C':
      if (rank < 2) return fail(std::string(1, type) + "_n needs n >= 2 (use A1)");
      return true;
    case 'D':
      if (rank < 4) return fail("D_n needs n >= 4 (D3 = A3, D2 is not simple)");
      return true;
    case 'E':
      if (rank < 6) return fail("E_n exists only for n = 6, 7, 8");
      return true;
    case 'F':
      if (rank != 4) return fail("F exists only in rank 4");
      return true;
    case 'G':
      if (rank != 2) return fail("G exists only in rank 2");
      return true;
    default:
      return fail(std::string("unknown type label '") + type + "'");
  }
}

long double weyl_group_order(char type, int n) {
  auto fact = [](int k) {
    long double r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  switch (type) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return std::pow(2.0L, n) * fact(n);
    case 'D': return std::pow(2.0L, n - 1) * fact(n);
    case 'E': return n == 6 ? 51840.0L : n == 7 ? 2903040.0L : 696729600.0L;
    case 'F': return 1152.0L;
    case 'G': return 12.0L;
  }
  return 0;
}

int RootSystem::root_of(int a) const {
  if (is_positive(a)) return a - rank;
  if (is_negative(a)) return a - rank - num_positive;
  return -1;
}

int RootSystem::opposite(int a) const {
  if (is_positive(a)) return a + num_positive;
  if (is_negative(a)) return a - num_positive;
  return a;
}

int RootSystem::positive_root_index(const Root& r) const {
  auto it = root_lookup_.find(r);
  return it == root_lookup_.end() ? -1 : it->second;
}

int RootSystem::basis_of_root(const Root& r) const {
  int k = positive_root_index(r);
  if (k >= 0) return e(k);
  Root neg(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
  k = positive_root_index(neg);
  return k >= 0 ? f(k) : -1;
}

int RootSystem::height(int k) const { return height_of(positive_roots[k]); }

SparseVec RootSystem::bracket(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) axpy(out, ca * cb, structure[a][b]);
  return out;
}

std::string RootSystem::label() const { return std::string(1, type) + std::to_string(rank); }

std::string RootSystem::basis_label(int a) const {
  if (is_cartan(a)) return "h" + std::to_string(a + 1);
  const Root& r = positive_roots[root_of(a)];
  std::string s = is_positive(a) ? "e[" : "f[";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

SparseVec basis_vector(int a) { return SparseVec{{a, Rational(1)}}; }

SparseVec apply_theta(const RootSystem& rs, const SparseVec& x) {
  SparseVec out;
  for (const auto& [a, c] : x) out.emplace_back(rs.theta_target[a], c * rs.theta_coeff[a]);
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  return out;
}

RootSystemPtr build_root_system(char type, int rank) {
  std::string why;
  if (!is_valid_type(type, rank, &why)) throw std::invalid_argument(why);

  auto rs = std::make_shared<RootSystem>();
  rs->type = type;
  rs->rank = rank;
  CartanData cd = cartan_for(type, rank);
  rs->cartan = cd.a;
  rs->simple_length2 = cd.len2;
  const int l = rank;
  const auto& A = rs->cartan;

  // Positive roots by closure: beta + alpha_i is a root iff q > 0 where
  // p - q = <alpha_i^vee, beta> and p counts alpha_i-steps down from beta.
  std::set<Root> found;
  std::vector<Root> level;
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    rs->simple_roots.push_back(r);
    found.insert(r);
    level.push_back(r);
  }
  while (!level.empty()) {
    std::set<Root> next;
    for (const Root& beta : level) {
      for (int i = 0; i < l; ++i) {
        int p = 0;
        Root down = beta;
        while (true) {
          down[i] -= 1;
          if (!found.count(down)) break;
          ++p;
        }
        int pair = 0;
        for (int j = 0; j < l; ++j) pair += A[i][j] * beta[j];
        if (p - pair > 0) {
          Root up = beta;
          up[i] += 1;
          if (!found.count(up)) next.insert(up);
        }
      }
    }
    level.assign(next.begin(), next.end());
    for (const Root& r : level) found.insert(r);
  }
  rs->positive_roots.assign(found.begin(), found.end());
  std::sort(rs->positive_roots.begin(), rs->positive_roots.end(), root_order);
  const int N = static_cast<int>(rs->positive_roots.size());
  rs->num_positive = N;
  rs->dim = l + 2 * N;
  for (int k = 0; k < N; ++k) rs->root_lookup_[rs->positive_roots[k]] = k;
  rs->maximal_root = rs->positive_roots.back();

  rs->weights.assign(rs->dim, Root(l, 0));
  for (int k = 0; k < N; ++k) {
    rs->weights[rs->e(k)] = rs->positive_roots[k];
    Root neg = rs->positive_roots[k];
    for (int& x : neg) x = -x;
    rs->weights[rs->f(k)] = neg;
  }

  ChevalleyBuilder cb(A, rs->positive_roots, rs->root_lookup_);
  const int dim = rs->dim;

  // Adjoint matrices of the generators e_i, f_i, h_i.
  std::vector<SparseMatrix> ad_e(l, SparseMatrix(dim)), ad_f(l, SparseMatrix(dim)),
      ad_h(l, SparseMatrix(dim));
  for (int i = 0; i < l; ++i) {
    int si = cb.simple_index(i);
    for (int j = 0; j < l; ++j) {
      if (A[j][i] != 0) {
        ad_e[i][j] = {{rs->e(si), Rational(-A[j][i])}};
        ad_f[i][j] = {{rs->f(si), Rational(A[j][i])}};
      }
    }
    for (int k = 0; k < N; ++k) {
      Rational c = cb.up(i, k);
      if (c != 0) {
        int t = cb.shift(k, i, +1);
        ad_e[i][rs->e(k)] = {{rs->e(t), c}};
        ad_f[i][rs->f(k)] = {{rs->f(t), -c}};
      }
      if (cb.is_simple(k, i)) {
        ad_e[i][rs->f(k)] = {{i, Rational(1)}};
        ad_f[i][rs->e(k)] = {{i, Rational(-1)}};
      } else {
        Rational d = cb.down(i, k);
        if (d != 0) {
          int t = cb.shift(k, i, -1);
          ad_f[i][rs->e(k)] = {{rs->e(t), d}};
          ad_e[i][rs->f(k)] = {{rs->f(t), -d}};
        }
      }
      int pr = cb.pairing(i, k);
      if (pr != 0) {
        ad_h[i][rs->e(k)] = {{rs->e(k), Rational(pr)}};
        ad_h[i][rs->f(k)] = {{rs->f(k), Rational(-pr)}};
      }
    }
  }

  std::vector<SparseMatrix> ad(dim);
  for (int i = 0; i < l; ++i) ad[i] = ad_h[i];
  for (int k = 0; k < N; ++k) {
    int s = -1;
    for (int i = 0; i < l; ++i)
      if (cb.is_simple(k, i)) s = i;
    if (s >= 0) {
      ad[rs->e(k)] = ad_e[s];
      ad[rs->f(k)] = ad_f[s];
      continue;
    }
    int i = cb.path_i(k), b = cb.path_beta(k);
    Rational inv(1, cb.path_p(k) + 1);
    ad[rs->e(k)] = commutator(ad_e[i], ad[rs->e(b)], inv);
    ad[rs->f(k)] = commutator(ad_f[i], ad[rs->f(b)], -inv);
  }

  // Unscaled structure constants.
  std::vector<std::vector<SparseVec>> c(dim, std::vector<SparseVec>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) c[a][b] = ad[a][b];

  // Killing form as the trace of ad(x) ad(y); only weight-opposite pairs can be nonzero.
  auto trace_form = [&](int a, int b) {
    Rational tr = 0;
    for (int d = 0; d < dim; ++d)
      for (const auto& [k, coef] : c[b][d]) {
        Rational back = coeff_at(c[a][k], d);
        if (back != 0) tr += coef * back;
      }
    return tr;
  };
  DenseMatrix kill(dim, std::vector<Rational>(dim, Rational(0)));
  for (int i = 0; i < l; ++i)
    for (int j = i; j < l; ++j) kill[i][j] = kill[j][i] = trace_form(i, j);
  rs->unscaled_pairing.resize(N);
  for (int k = 0; k < N; ++k) {
    Rational v = trace_form(rs->e(k), rs->f(k));
    if (v == 0) throw std::logic_error("degenerate Killing pairing");
    rs->unscaled_pairing[k] = v;
  }

  // Rescale E_{-alpha} by 1 / killing(E_alpha, E_{-alpha}).
  std::vector<Rational> s(dim, Rational(1));
  for (int k = 0; k < N; ++k) s[rs->f(k)] = 1 / rs->unscaled_pairing[k];
  rs->structure.assign(dim, std::vector<SparseVec>(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      SparseVec v = c[a][b];
      for (auto& [k, coef] : v) coef *= s[a] * s[b] / s[k];
      rs->structure[a][b] = std::move(v);
    }
  for (int k = 0; k < N; ++k) {
    kill[rs->e(k)][rs->f(k)] = 1;
    kill[rs->f(k)][rs->e(k)] = 1;
  }
  rs->killing = std::move(kill);

  // theta(E_alpha) = -E_{-alpha}, theta(E_{-alpha}) = -E_alpha, theta(h) = -h on
  // the unscaled basis, conjugated by the rescaling.
  rs->theta_target.resize(dim);
  rs->theta_coeff.resize(dim);
  for (int i = 0; i < l; ++i) {
    rs->theta_target[i] = i;
    rs->theta_coeff[i] = -1;
  }
  for (int k = 0; k < N; ++k) {
    rs->theta_target[rs->e(k)] = rs->f(k);
    rs->theta_coeff[rs->e(k)] = -rs->unscaled_pairing[k];
    rs->theta_target[rs->f(k)] = rs->e(k);
    rs->theta_coeff[rs->f(k)] = -1 / rs->unscaled_pairing[k];
  }
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      SparseVec lhs = apply_theta(*rs, rs->structure[a][b]);
      SparseVec rhs = rs->bracket(apply_theta(*rs, basis_vector(a)), apply_theta(*rs, basis_vector(b)));
      axpy(lhs, Rational(-1), rhs);
      if (!lhs.empty()) throw std::logic_error("Cartan involution is not an automorphism");
    }
  return rs;
}

std::vector<int> maximal_root_coefficients(const RootSystem& rs) {
  const Root* best = &rs.positive_roots.front();
  for (const auto& r : rs.positive_roots)
    if (height_of(r) > height_of(*best)) best = &r;
  return *best;
}

Root LeviDatum::quasiroot_of(const Root& alpha) const {
  Root q;
  q.reserve(complement.size());
  for (int i : complement) q.push_back(alpha[i]);
  return q;
}

int LeviDatum::quasiroot_index(const Root& qr) const {
  for (std::size_t i = 0; i < positive_quasiroots.size(); ++i)
    if (positive_quasiroots[i] == qr) return static_cast<int>(i);
  return -1;
}

int LeviDatum::quasiroot_height(int q) const { return height_of(positive_quasiroots[q]); }

std::vector<int> LeviDatum::gamma_bourbaki() const {
  std::vector<int> out;
  for (int g : gamma) out.push_back(g + 1);
  return out;
}

LeviPtr levi_datum(RootSystemPtr rs, std::vector<int> gamma) {
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  for (int g : gamma)
    if (g < 0 || g >= rs->rank) throw std::invalid_argument("gamma index out of range");
  if (static_cast<int>(gamma.size()) == rs->rank)
    throw std::invalid_argument("gamma = Pi is degenerate: the orbit is a point");

  auto lv = std::make_shared<LeviDatum>();
  lv->parent = rs;
  lv->gamma = gamma;
  for (int i = 0; i < rs->rank; ++i)
    if (!std::binary_search(gamma.begin(), gamma.end(), i)) lv->complement.push_back(i);

  std::set<Root, decltype(&root_order)> qset(&root_order);
  lv->in_m.assign(rs->dim, 0);
  for (int k = 0; k < rs->num_positive; ++k) {
    Root q = lv->quasiroot_of(rs->positive_roots[k]);
    bool zero = std::all_of(q.begin(), q.end(), [](int x) { return x == 0; });
    if (zero) {
      lv->omega_gamma.push_back(rs->e(k));
      lv->omega_gamma.push_back(rs->f(k));
    } else {
      qset.insert(q);
      lv->in_m[rs->e(k)] = 1;
      lv->in_m[rs->f(k)] = 1;
    }
  }
  std::sort(lv->omega_gamma.begin(), lv->omega_gamma.end());
  for (int a = 0; a < rs->dim; ++a)
    if (lv->in_m[a]) lv->m_basis.push_back(a);
  lv->positive_quasiroots.assign(qset.begin(), qset.end());
  const int nq = lv->num_quasiroots();
  lv->fibers.assign(nq, {});
  lv->quasiroot_of_basis.assign(rs->dim, 0);
  for (int k = 0; k < rs->num_positive; ++k) {
    if (!lv->in_m[rs->e(k)]) continue;
    int q = lv->quasiroot_index(lv->quasiroot_of(rs->positive_roots[k]));
    lv->fibers[q].push_back(k);
    lv->quasiroot_of_basis[rs->e(k)] = q + 1;
    lv->quasiroot_of_basis[rs->f(k)] = -(q + 1);
  }
  for (std::size_t i = 0; i < lv->complement.size(); ++i) {
    Root unit(lv->complement.size(), 0);
    unit[i] = 1;
    lv->simple_quasiroots.push_back(lv->quasiroot_index(unit));
  }
  for (int a = 0; a < nq; ++a)
    for (int b = a; b < nq; ++b) {
      Root sum = lv->positive_quasiroots[a];
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += lv->positive_quasiroots[b][i];
      int c = lv->quasiroot_index(sum);
      if (c >= 0) lv->addition_table.push_back({a, b, c});
    }
  return lv;
}

Rational OrbitPoint::value(int q) const {
  const Root& qr = levi->positive_quasiroots[q];
  Rational v = 0;
  for (std::size_t i = 0; i < qr.size(); ++i) v += qr[i] * lambda[i];
  return v;
}

OrbitPoint make_orbit_point(LeviPtr levi, std::vector<Rational> lambda) {
  if (lambda.size() != levi->complement.size())
    throw std::invalid_argument("orbit point needs one value per simple quasiroot");
  for (auto& v : lambda) {
    v.canonicalize();
    if (v == 0) throw std::invalid_argument("lambda must be nonzero on every simple quasiroot");
  }
  return OrbitPoint{std::move(levi), std::move(lambda)};
}

bool is_regular_point(const OrbitPoint& p) {
  for (int q = 0; q < p.levi->num_quasiroots(); ++q)
    if (p.value(q) == 0) return false;
  return true;
}

std::vector<long> betti_numbers(const LeviDatum& levi) {
  const RootSystem& rs = *levi.parent;
  if (weyl_group_order(rs.type, rs.rank) > 1e6L)
    throw std::invalid_argument("Weyl group of " + rs.label() + " exceeds 10^6 elements");
  const int l = rs.rank;
  // Orbit of rho_Gamma = sum of fundamental weights off Gamma; its stabilizer is W_Gamma.
  // Applying s_i where the i-th coordinate is positive raises length by one.
  std::vector<int> start(l, 0);
  for (int i : levi.complement) start[i] = 1;
  std::set<std::vector<int>> seen{start};
  std::vector<std::vector<int>> level{start};
  std::vector<long> betti;
  while (!level.empty()) {
    betti.push_back(static_cast<long>(level.size()));
    std::set<std::vector<int>> next;
    for (const auto& mu : level)
      for (int i = 0; i < l; ++i) {
        if (mu[i] <= 0) continue;
        std::vector<int> nu = mu;
        for (int j = 0; j < l; ++j) nu[j] -= mu[i] * rs.cartan[j][i];
        if (!seen.count(nu)) next.insert(nu);
      }
    for (const auto& nu : next) seen.insert(nu);
    level.assign(next.begin(), next.end());
  }
  return betti;
}

}  // namespace dquant
