#include "dquant/qlab.hpp"

#include <algorithm>
#include <stdexcept>

namespace dquant {

Dual& Dual::operator+=(const Dual& o) {
  a += o.a;
  b += o.b;
  return *this;
}

Dual& Dual::operator-=(const Dual& o) {
  a -= o.a;
  b -= o.b;
  return *this;
}

Dual& Dual::operator*=(const Dual& o) {
  b = a * o.b + b * o.a;
  a *= o.a;
  return *this;
}

Dual& Dual::operator/=(const Dual& o) {
  if (o.a == 0) throw std::domain_error("dual number with zero real part is not invertible");
  Rational inv = 1 / o.a;
  b = (b - a * o.b * inv) * inv;
  a *= inv;
  return *this;
}

std::string to_string(ReConvention c) { return c == ReConvention::SecondFactor ? "paper" : "standard"; }

namespace {

bool is_zero(const Rational& x) { return x == 0; }
bool is_zero(const Dual& x) { return x.is_zero(); }

template <class T>
Matrix<T> zeros(int r, int c) {
  return Matrix<T>(r, std::vector<T>(c, T(Rational(0))));
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& x, const Matrix<T>& y) {
  const int r = static_cast<int>(x.size()), m = static_cast<int>(y.size()), c = static_cast<int>(y[0].size());
  Matrix<T> out = zeros<T>(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < m; ++k) {
      if (is_zero(x[i][k])) continue;
      for (int j = 0; j < c; ++j)
        if (!is_zero(y[k][j])) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

template <class T>
Matrix<T> kron_identity_left(const Matrix<T>& m, int n) {  // I_n (x) m
  const int d = static_cast<int>(m.size());
  Matrix<T> out = zeros<T>(n * d, n * d);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[k * d + i][k * d + j] = m[i][j];
  return out;
}

template <class T>
Matrix<T> kron_identity_right(const Matrix<T>& m, int n) {  // m (x) I_n
  const int d = static_cast<int>(m.size());
  Matrix<T> out = zeros<T>(n * d, n * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < n; ++k) out[i * n + k][j * n + k] = m[i][j];
  return out;
}

template <class T>
BraidOperator<T> build_rmatrix(int n, const T& q, const T& qinv) {
  if (n < 2) throw std::invalid_argument("R-matrix needs n >= 2");
  BraidOperator<T> r;
  r.n = n;
  r.q = q;
  r.matrix = zeros<T>(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    r.matrix[i * n + i][i * n + i] = q;
    for (int j = i + 1; j < n; ++j) {
      r.matrix[j * n + i][i * n + j] = T(Rational(1));
      r.matrix[i * n + j][j * n + i] = T(Rational(1));
      r.matrix[j * n + i][j * n + i] = q - qinv;
    }
  }
  return r;
}

// Matrices over V (x) V whose entries are linear forms in the generators.
template <class T>
using Lin = std::map<int, T>;
template <class T>
using LinMatrix = std::vector<std::vector<Lin<T>>>;

// B_2 = I (x) B or B_1 = B (x) I.
template <class T>
LinMatrix<T> b_matrix(int n, bool second) {
  const int d = n * n;
  LinMatrix<T> m(d, std::vector<Lin<T>>(d));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
          if (second && a == e) m[a * n + b][e * n + f][b * n + f] = T(Rational(1));
          if (!second && b == f) m[a * n + b][e * n + f][a * n + e] = T(Rational(1));
        }
  return m;
}

template <class T>
LinMatrix<T> lin_times(const LinMatrix<T>& l, const Matrix<T>& s) {
  const int d = static_cast<int>(l.size());
  LinMatrix<T> out(d, std::vector<Lin<T>>(d));
  for (int r = 0; r < d; ++r)
    for (int m = 0; m < d; ++m)
      for (const auto& [g, c] : l[r][m])
        for (int col = 0; col < d; ++col)
          if (!is_zero(s[m][col])) out[r][col][g] += c * s[m][col];
  return out;
}

template <class T>
LinMatrix<T> times_lin(const Matrix<T>& s, const LinMatrix<T>& l) {
  const int d = static_cast<int>(l.size());
  LinMatrix<T> out(d, std::vector<Lin<T>>(d));
  for (int r = 0; r < d; ++r)
    for (int m = 0; m < d; ++m) {
      if (is_zero(s[r][m])) continue;
      for (int col = 0; col < d; ++col)
        for (const auto& [g, c] : l[m][col]) out[r][col][g] += s[r][m] * c;
    }
  return out;
}

template <class T>
LinMatrix<T> lin_sub(LinMatrix<T> x, const LinMatrix<T>& y) {
  for (std::size_t r = 0; r < x.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c)
      for (const auto& [g, v] : y[r][c]) x[r][c][g] -= v;
  return x;
}

// Entry (r, c) of x*y as a vector over words g*N + h.
template <class T>
Matrix<T> quad_entries(const LinMatrix<T>& x, const LinMatrix<T>& y, int N) {
  const int d = static_cast<int>(x.size());
  Matrix<T> out = zeros<T>(d * d, N * N);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      for (int m = 0; m < d; ++m)
        for (const auto& [g, u] : x[r][m])
          for (const auto& [h, v] : y[m][c]) out[r * d + c][g * N + h] += u * v;
  return out;
}

template <class T>
std::vector<T> lin_row(const Lin<T>& l, int N) {
  std::vector<T> row(N, T(Rational(0)));
  for (const auto& [g, c] : l) row[g] += c;
  return row;
}

SparseVec sparse_row(const std::vector<Rational>& v) { return to_sparse(v); }

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BraidOperator<Rational> standard_rmatrix(int n, const Rational& q) {
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  return build_rmatrix<Rational>(n, q, 1 / q);
}

BraidOperator<Dual> standard_rmatrix_first_order(int n) {
  return build_rmatrix<Dual>(n, Dual(1, 1), Dual(1, -1));
}

template <class T>
bool braid_relation_holds(const BraidOperator<T>& r) {
  Matrix<T> r12 = kron_identity_right(r.matrix, r.n), r23 = kron_identity_left(r.matrix, r.n);
  return mat_mul(mat_mul(r12, r23), r12) == mat_mul(mat_mul(r23, r12), r23);
}

template <class T>
bool hecke_relation_holds(const BraidOperator<T>& r) {
  const int d = r.n * r.n;
  T qinv = T(Rational(1)) / r.q;
  Matrix<T> a = r.matrix, b = r.matrix;
  for (int i = 0; i < d; ++i) {
    a[i][i] -= r.q;
    b[i][i] += qinv;
  }
  Matrix<T> prod = mat_mul(a, b);
  for (const auto& row : prod)
    for (const auto& x : row)
      if (!is_zero(x)) return false;
  return true;
}

template <class T>
QuadraticLinearPresentation<T> re_relations(const BraidOperator<T>& r, ReConvention conv) {
  const int n = r.n, d = n * n, N = n * n;
  const Matrix<T>& S = r.matrix;
  Matrix<T> S2 = mat_mul(S, S);
  QuadraticLinearPresentation<T> p;
  p.n = n;
  p.generator_count = N;
  p.convention = conv;
  LinMatrix<T> B = b_matrix<T>(n, conv == ReConvention::SecondFactor);
  LinMatrix<T> bs = lin_times(B, S), sb = times_lin(S, B);
  LinMatrix<T> lin, tco;
  if (conv == ReConvention::SecondFactor) {
    p.quadratic_part = quad_entries(bs, bs, N);
    Matrix<T> minus = quad_entries(sb, sb, N);
    for (std::size_t i = 0; i < minus.size(); ++i)
      for (int w = 0; w < N * N; ++w) p.quadratic_part[i][w] -= minus[i][w];
    lin = lin_sub(bs, sb);
    tco = lin_sub(lin_times(B, S2), times_lin(S2, B));
  } else {
    p.quadratic_part = quad_entries(sb, sb, N);
    Matrix<T> minus = quad_entries(bs, bs, N);
    for (std::size_t i = 0; i < minus.size(); ++i)
      for (int w = 0; w < N * N; ++w) p.quadratic_part[i][w] -= minus[i][w];
    lin = lin_sub(sb, bs);
    tco = lin_sub(times_lin(S2, B), lin_times(B, S2));
  }
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      p.linear_part.push_back(lin_row(lin[a][c], N));
      p.t_coefficient.push_back(lin_row(tco[a][c], N));
    }
  return p;
}

template bool braid_relation_holds(const BraidOperator<Rational>&);
template bool braid_relation_holds(const BraidOperator<Dual>&);
template bool hecke_relation_holds(const BraidOperator<Rational>&);
template bool hecke_relation_holds(const BraidOperator<Dual>&);
template QuadraticLinearPresentation<Rational> re_relations(const BraidOperator<Rational>&, ReConvention);
template QuadraticLinearPresentation<Dual> re_relations(const BraidOperator<Dual>&, ReConvention);

int quadratic_relation_dim(const QuadraticLinearPresentation<Rational>& p) {
  std::vector<SparseVec> rows;
  for (const auto& r : p.quadratic_part) rows.push_back(sparse_row(r));
  return rank_of(rows, p.generator_count * p.generator_count);
}

std::vector<long> pbw_dims(const QuadraticLinearPresentation<Rational>& p, int max_degree) {
  const long N = p.generator_count;
  if (max_degree > 4 || (N > 9 && max_degree > 3) || (N > 16 && max_degree > 2))
    throw std::invalid_argument("graded dimension request exceeds the size cap");
  SparseRref rel(static_cast<int>(N * N));
  for (const auto& r : p.quadratic_part) rel.insert(sparse_row(r));
  std::vector<long> dims;
  long power = 1;
  for (int d = 0; d <= max_degree; ++d) {
    if (d < 2) {
      dims.push_back(power);
      power *= N;
      continue;
    }
    // Ideal in degree d: words u (x) rho (x) w with rho a relation.
    SparseRref ideal(static_cast<int>(power));
    for (int pos = 0; pos + 2 <= d; ++pos) {
      long left = 1, right = 1;
      for (int i = 0; i < pos; ++i) left *= N;
      for (int i = pos + 2; i < d; ++i) right *= N;
      for (const auto& [pivot, rho] : rel.rows())
        for (long u = 0; u < left; ++u)
          for (long w = 0; w < right; ++w) {
            SparseVec row;
            for (const auto& [word, c] : rho) row.push_back({static_cast<int>((u * N * N + word) * right + w), c});
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            ideal.insert(row);
          }
    }
    dims.push_back(power - ideal.rank());
    power *= N;
  }
  return dims;
}

std::vector<long> symmetric_dims(int N, int max_degree) {
  std::vector<long> out;
  for (int d = 0; d <= max_degree; ++d) out.push_back(binom(N + d - 1, d));
  return out;
}

FlatnessReport re_pbw_report(int n, int max_degree, int samples, std::uint64_t seed) {
  FlatnessReport rep;
  rep.n = n;
  const int N = n * n;
  rep.expected_dims = symmetric_dims(N, max_degree);
  Rng rng(seed);
  while (static_cast<int>(rep.q_samples.size()) < samples) {
    long a = rng.uniform(2, 19), b = rng.uniform(2, 19);
    if (a == b) continue;
    Rational q = make_rational(a, b);
    if (std::find(rep.q_samples.begin(), rep.q_samples.end(), q) == rep.q_samples.end()) rep.q_samples.push_back(q);
  }
  const int target = N * (N - 1) / 2;
  // The convention is fixed by the first sample and then kept for all of them.
  auto first = standard_rmatrix(n, rep.q_samples.front());
  rep.convention = quadratic_relation_dim(re_relations(first, ReConvention::SecondFactor)) == target
                       ? ReConvention::SecondFactor
                       : ReConvention::FirstFactor;
  rep.flat = true;
  for (std::size_t s = 0; s < rep.q_samples.size(); ++s) {
    auto pres = re_relations(standard_rmatrix(n, rep.q_samples[s]), rep.convention);
    int dim = quadratic_relation_dim(pres);
    if (s == 0)
      rep.quad_rel_dim = dim;
    else if (dim != rep.quad_rel_dim)
      rep.quad_rel_dim = -1;
    rep.graded_dims.push_back(pbw_dims(pres, max_degree));
    if (dim != target || rep.graded_dims.back() != rep.expected_dims) rep.flat = false;
  }
  return rep;
}

void add_to(GlPoly& p, const GlPoly& q, const Rational& c) {
  if (c == 0) return;
  for (const auto& [k, v] : q) {
    Rational& slot = p[k];
    slot += c * v;
    if (slot == 0) p.erase(k);
  }
}

GlPoly poly_product(const GlPoly& p, const GlPoly& q) {
  GlPoly out;
  for (const auto& [ka, a] : p)
    for (const auto& [kb, b] : q) {
      std::vector<int> vars;
      for (char ch : ka) vars.push_back(static_cast<unsigned char>(ch));
      for (char ch : kb) vars.push_back(static_cast<unsigned char>(ch));
      add_to(out, GlPoly{{make_poly_key(vars), a * b}});
    }
  return out;
}

GlPoly generator_poly(int i) { return GlPoly{{make_poly_key({i}), Rational(1)}}; }

bool is_homogeneous(const GlPoly& p, int degree) {
  return std::all_of(p.begin(), p.end(), [degree](const auto& t) { return static_cast<int>(t.first.size()) == degree; });
}

namespace {

GlPoly partial(const GlPoly& p, int i) {
  GlPoly out;
  for (const auto& [k, c] : p) {
    auto pos = k.find(static_cast<char>(i));
    if (pos == PolyKey::npos) continue;
    long mult = std::count(k.begin(), k.end(), static_cast<char>(i));
    PolyKey rest = k;
    rest.erase(pos, 1);
    add_to(out, GlPoly{{rest, Rational(mult) * c}});
  }
  return out;
}

// Replace every variable v by image[v] (a polynomial), multiplicatively.
GlPoly substitute(const GlPoly& p, const std::vector<GlPoly>& image) {
  GlPoly out;
  for (const auto& [k, c] : p) {
    GlPoly t{{PolyKey(), c}};
    for (char ch : k) t = poly_product(t, image[static_cast<unsigned char>(ch)]);
    add_to(out, t);
  }
  return out;
}

// Derivation action of a gl(n) matrix X on polynomials, b_ij <-> E_ij:
// X . b_ij = [X, E_ij] = sum_k X_ki b_kj - sum_l X_jl b_il.
GlPoly act(const DenseMatrix& X, const GlPoly& p, int n) {
  GlPoly out;
  for (const auto& [k, c] : p)
    for (std::size_t pos = 0; pos < k.size(); ++pos) {
      int g = static_cast<unsigned char>(k[pos]), i = g / n, j = g % n;
      GlPoly image;
      for (int m = 0; m < n; ++m) {
        add_to(image, generator_poly(m * n + j), X[m][i]);
        add_to(image, generator_poly(i * n + m), -X[j][m]);
      }
      PolyKey rest = k;
      rest.erase(pos, 1);
      GlPoly others{{rest, c}};
      add_to(out, poly_product(others, image));
    }
  return out;
}

// Work modulo the trace: eliminate b_{n-1,n-1} = -sum_{k<n-1} b_kk.
GlPoly mod_trace(const GlPoly& p, int n) {
  std::vector<GlPoly> image;
  for (int g = 0; g < n * n; ++g) image.push_back(generator_poly(g));
  GlPoly last;
  for (int k = 0; k + 1 < n; ++k) add_to(last, generator_poly(k * n + k), -1);
  image[(n - 1) * n + n - 1] = last;
  return substitute(p, image);
}

bool poly_colinear(const GlPoly& a, const GlPoly& b, Rational& ratio) {
  if (a.empty()) return b.empty();
  auto it = b.find(a.begin()->first);
  if (it == b.end()) return false;
  ratio = it->second / a.begin()->second;
  GlPoly diff = b;
  add_to(diff, a, -ratio);
  return diff.empty();
}

}  // namespace

FirstOrderBracket first_order_poisson(int n, ReConvention conv) {
  FirstOrderBracket br;
  br.n = n;
  br.N = n * n;
  br.convention = conv;
  const int N = br.N;
  br.table.assign(N, std::vector<GlPoly>(N));
  std::vector<std::vector<char>> seen(N, std::vector<char>(N, 0));
  br.consistent = true;
  auto pres = re_relations(standard_rmatrix_first_order(n), conv);
  for (const auto& row : pres.quadratic_part) {
    std::vector<int> support;
    for (int w = 0; w < N * N; ++w)
      if (row[w].a != 0) support.push_back(w);
    GlPoly sym;
    for (int w = 0; w < N * N; ++w)
      if (row[w].b != 0) add_to(sym, GlPoly{{make_poly_key({w / N, w % N}), row[w].b}});
    if (support.empty()) {
      if (!sym.empty()) br.consistent = false;
      continue;
    }
    // At eps = 0 every relation is a multiple of a commutator xy - yx.
    int x = support[0] / N, y = support[0] % N;
    if (support.size() != 2 || x == y || support[1] != y * N + x || row[support[0]].a != -row[support[1]].a) {
      br.consistent = false;
      continue;
    }
    const Rational alpha = row[x * N + y].a;
    // xy - yx + eps * C = 0 gives x*y - y*x = -eps * C at first order.
    GlPoly value;
    add_to(value, sym, -1 / alpha);
    GlPoly neg;
    add_to(neg, value, -1);
    if (seen[x][y]) {
      if (br.table[x][y] != value) br.consistent = false;
    } else {
      br.table[x][y] = value;
      br.table[y][x] = neg;
      seen[x][y] = seen[y][x] = 1;
    }
  }
  br.complete = true;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (x != y && !seen[x][y]) br.complete = false;
  return br;
}

GlPoly poisson(const FirstOrderBracket& br, const GlPoly& a, const GlPoly& b) {
  GlPoly out;
  for (int i = 0; i < br.N; ++i) {
    GlPoly da = partial(a, i);
    if (da.empty()) continue;
    for (int j = 0; j < br.N; ++j) {
      if (br.table[i][j].empty()) continue;
      GlPoly db = partial(b, j);
      if (db.empty()) continue;
      add_to(out, poly_product(poly_product(da, db), br.table[i][j]));
    }
  }
  return out;
}

bool bracket_antisymmetric(const FirstOrderBracket& br) {
  for (int x = 0; x < br.N; ++x)
    for (int y = 0; y < br.N; ++y) {
      GlPoly s = br.table[x][y];
      add_to(s, br.table[y][x]);
      if (!s.empty()) return false;
    }
  return true;
}

bool bracket_quadratic(const FirstOrderBracket& br) {
  for (const auto& row : br.table)
    for (const auto& p : row)
      if (!is_homogeneous(p, 2)) return false;
  return true;
}

bool jacobi_holds(const FirstOrderBracket& br) {
  for (int i = 0; i < br.N; ++i)
    for (int j = i + 1; j < br.N; ++j)
      for (int k = j + 1; k < br.N; ++k) {
        GlPoly s = poisson(br, generator_poly(i), br.table[j][k]);
        add_to(s, poisson(br, generator_poly(j), br.table[k][i]));
        add_to(s, poisson(br, generator_poly(k), br.table[i][j]));
        if (!s.empty()) return false;
      }
  return true;
}

bool trace_central(const FirstOrderBracket& br) {
  GlPoly tr;
  for (int i = 0; i < br.n; ++i) add_to(tr, generator_poly(i * br.n + i));
  for (int g = 0; g < br.N; ++g)
    if (!poisson(br, tr, generator_poly(g)).empty()) return false;
  return true;
}

QpbResult qpb_invariance_check(const FirstOrderBracket& br, const SlRep& rep) {
  if (rep.n != br.n) throw std::invalid_argument("representation size does not match the bracket");
  const int n = br.n;
  const RootSystem& rs = *rep.rs;
  QpbResult out;
  bool have_kappa = false;
  bool trace_only = true;
  for (int xa = 0; xa < rs.dim; ++xa) {
    const DenseMatrix& X = rep.mats[xa];
    std::vector<DenseMatrix> ek, fk, ekx, fkx;
    for (int k = 0; k < rs.num_positive; ++k) {
      ek.push_back(rep.mats[rs.e(k)]);
      fk.push_back(rep.mats[rs.f(k)]);
      ekx.push_back(commutator(ek.back(), X));
      fkx.push_back(commutator(fk.back(), X));
    }
    for (int g1 = 0; g1 < br.N; ++g1)
      for (int g2 = g1 + 1; g2 < br.N; ++g2) {
        GlPoly a = generator_poly(g1), b = generator_poly(g2);
        GlPoly lhs = act(X, br.table[g1][g2], n);
        add_to(lhs, poisson(br, act(X, a, n), b), -1);
        add_to(lhs, poisson(br, a, act(X, b, n)), -1);
        GlPoly rhs;
        for (int k = 0; k < rs.num_positive; ++k) {
          add_to(rhs, poly_product(act(ekx[k], a, n), act(fk[k], b, n)));
          add_to(rhs, poly_product(act(ek[k], a, n), act(fkx[k], b, n)));
          add_to(rhs, poly_product(act(fkx[k], a, n), act(ek[k], b, n)), -1);
          add_to(rhs, poly_product(act(fk[k], a, n), act(ekx[k], b, n)), -1);
        }
        ++out.checked;
        if (!have_kappa && !rhs.empty()) {
          Rational r;
          if (poly_colinear(rhs, lhs, r)) {
            out.kappa = r;
            have_kappa = true;
            continue;
          }
        }
        GlPoly diff = lhs;
        add_to(diff, rhs, -out.kappa);
        if (!diff.empty()) {
          ++out.failures;
          if (!mod_trace(diff, n).empty()) trace_only = false;
        }
      }
  }
  out.pass = have_kappa && out.failures == 0;
  out.only_trace_failures = out.failures > 0 && trace_only;
  return out;
}

PolyVector traceless_bracket(const FirstOrderBracket& br, const SlRep& rep) {
  if (rep.n != br.n) throw std::invalid_argument("representation size does not match the bracket");
  const int n = br.n;
  const RootSystemPtr& rs = rep.rs;
  // b_ij = sum_a dual[a]_ji x_a + delta_ij * trace / n; the trace is dropped.
  std::vector<PolyVector> proj;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> v(rs->dim);
      for (int a = 0; a < rs->dim; ++a) v[a] = rep.dual[a][j][i];
      proj.push_back(PolyVector::linear(rs, to_sparse(v)));
    }
  auto lift = [&](int a) {
    GlPoly x;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) add_to(x, generator_poly(i * n + j), rep.mats[a][i][j]);
    return x;
  };
  PolyVector out(rs, 2, 2);
  for (int a = 0; a < rs->dim; ++a)
    for (int b = a + 1; b < rs->dim; ++b) {
      GlPoly val = poisson(br, lift(a), lift(b));
      for (const auto& [k, c] : val) {
        PolyVector t = PolyVector::constant(rs, c);
        for (char ch : k) t = product(t, proj[static_cast<unsigned char>(ch)]);
        for (const auto& [tk, tc] : t.terms()) out.add_term(tk.first, make_key({a, b}), tc);
      }
    }
  return out;
}

InvariantComponent invariant_component(const PolyVector& p, const PolyVector& f) {
  const RootSystemPtr& rs = p.parent();
  PolyVector rb = r_matrix_bracket(rs);
  std::vector<PolyVector> ops;
  for (int i = 0; i < rs->rank; ++i) {
    int k = rs->positive_root_index(rs->simple_roots[i]);
    ops.push_back(action_field(rs, basis_vector(rs->e(k))));
    ops.push_back(action_field(rs, basis_vector(rs->f(k))));
  }
  InvariantComponent out;
  bool have_c = false;
  for (const auto& op : ops) {
    PolyVector a = schouten_poly(op, p), b = schouten_poly(op, rb);
    if (b.is_zero()) continue;
    if (a.is_zero()) {
      out.c = 0;
    } else {
      Rational ratio;
      if (!colinear(b, a, &ratio)) return out;
      out.c = -ratio;
    }
    have_c = true;
    break;
  }
  if (!have_c) return out;
  PolyVector inv = p + rb * out.c;
  for (const auto& op : ops)
    if (!schouten_poly(op, inv).is_zero()) return out;
  out.found = true;
  out.colinear_with_f = colinear(f, inv, &out.ratio);
  return out;
}

FirstOrderReport first_order_report(int n) {
  FirstOrderReport rep;
  rep.n = n;
  rep.bracket = first_order_poisson(n);
  if (!rep.bracket.complete || !rep.bracket.consistent) rep.bracket = first_order_poisson(n, ReConvention::FirstFactor);
  rep.antisymmetric = rep.bracket.consistent && bracket_antisymmetric(rep.bracket);
  rep.quadratic = bracket_quadratic(rep.bracket);
  rep.jacobi = jacobi_holds(rep.bracket);
  rep.trace_central = trace_central(rep.bracket);
  SlRep sl = sl_matrix_rep(n);
  rep.qpb = qpb_invariance_check(rep.bracket, sl);
  if (n >= 3) {
    QuadraticF qf = quadratic_f(sl.rs);
    if (qf.f) rep.invariant = invariant_component(traceless_bracket(rep.bracket, sl), *qf.f);
  }
  return rep;
}

}  // namespace dquant
