#include "dquant/polyvect.hpp"

#include <algorithm>
#include <stdexcept>

namespace dquant {

namespace {

inline int at(const std::string& k, std::size_t i) { return static_cast<unsigned char>(k[i]); }

PolyKey merge_poly(const PolyKey& a, const PolyKey& b) {
  PolyKey out(a.size() + b.size(), '\0');
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin(),
             [](char x, char y) { return static_cast<unsigned char>(x) < static_cast<unsigned char>(y); });
  return out;
}

// Sign of sorting `fields`, 0 on a repeat; sorts in place.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

// Derivative in xi_i from the left (sign (-1)^pos) or right (sign (-1)^{len-1-pos}).
PolyVector partial_xi_side(const PolyVector& u, int i, bool right) {
  PolyVector out(u.parent(), u.poly_degree(), std::max(0, u.vector_degree() - 1));
  for (const auto& [key, c] : u.terms()) {
    const IndexKey& v = key.second;
    for (std::size_t pos = 0; pos < v.size(); ++pos) {
      if (at(v, pos) != i) continue;
      IndexKey rest = v;
      rest.erase(rest.begin() + pos);
      std::size_t moves = right ? v.size() - 1 - pos : pos;
      out.add_term(key.first, rest, moves % 2 ? Rational(-c) : c);
    }
  }
  return out;
}

}  // namespace

PolyKey make_poly_key(std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  PolyKey k(vars.size(), '\0');
  for (std::size_t i = 0; i < vars.size(); ++i) k[i] = static_cast<char>(vars[i]);
  return k;
}

PolyVector::PolyVector(RootSystemPtr parent, int poly_degree, int vector_degree)
    : parent_(std::move(parent)), poly_degree_(poly_degree), vector_degree_(vector_degree) {
  if (poly_degree < 0 || vector_degree < 0) throw std::invalid_argument("negative polyvector degree");
}

PolyVector PolyVector::monomial(RootSystemPtr parent, const std::vector<int>& vars, const std::vector<int>& fields,
                                const Rational& coeff) {
  PolyVector m(parent, static_cast<int>(vars.size()), static_cast<int>(fields.size()));
  std::vector<int> f = fields;
  int sign = sort_sign(f);
  if (sign == 0) return m;
  m.add_term(make_poly_key(vars), make_key(f), sign * coeff);
  return m;
}

PolyVector PolyVector::constant(RootSystemPtr parent, const Rational& c) {
  PolyVector m(parent, 0, 0);
  m.add_term(PolyKey(), IndexKey(), c);
  return m;
}

PolyVector PolyVector::linear(RootSystemPtr parent, const SparseVec& x) {
  PolyVector m(parent, 1, 0);
  for (const auto& [a, c] : x) m.add_term(make_poly_key({a}), IndexKey(), c);
  return m;
}

PolyVector PolyVector::from_multivector(const Multivector& mv) {
  PolyVector m(mv.parent(), 0, mv.degree());
  for (const auto& [k, c] : mv.terms()) m.add_term(PolyKey(), k, c);
  return m;
}

void PolyVector::add_term(const PolyKey& p, const IndexKey& v, const Rational& c) {
  if (static_cast<int>(p.size()) != poly_degree_ || static_cast<int>(v.size()) != vector_degree_)
    throw std::invalid_argument("polyvector term degree mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{p, v}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void PolyVector::check_compatible(const PolyVector& o) const {
  if (parent_ != o.parent_) throw std::invalid_argument("polyvectors over different Lie algebras");
  if ((poly_degree_ != o.poly_degree_ || vector_degree_ != o.vector_degree_) && !terms_.empty() &&
      !o.terms_.empty())
    throw std::invalid_argument("adding polyvectors of different types");
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
  check_compatible(o);
  if (terms_.empty()) {
    poly_degree_ = o.poly_degree_;
    vector_degree_ = o.vector_degree_;
  }
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) { return *this += o * Rational(-1); }

PolyVector& PolyVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

PolyVector PolyVector::operator+(const PolyVector& o) const {
  PolyVector r = *this;
  r += o;
  return r;
}
PolyVector PolyVector::operator-(const PolyVector& o) const {
  PolyVector r = *this;
  r -= o;
  return r;
}
PolyVector PolyVector::operator*(const Rational& c) const {
  PolyVector r = *this;
  r *= c;
  return r;
}
PolyVector PolyVector::operator-() const { return *this * Rational(-1); }

bool PolyVector::operator==(const PolyVector& o) const {
  if (parent_ != o.parent_) return false;
  if (terms_.empty() && o.terms_.empty()) return true;
  return poly_degree_ == o.poly_degree_ && vector_degree_ == o.vector_degree_ && terms_ == o.terms_;
}

PolyVector product(const PolyVector& u, const PolyVector& v) {
  if (u.parent() != v.parent()) throw std::invalid_argument("product of polyvectors over different Lie algebras");
  PolyVector out(u.parent(), u.poly_degree() + v.poly_degree(), u.vector_degree() + v.vector_degree());
  IndexKey merged;
  for (const auto& [ka, ca] : u.terms())
    for (const auto& [kb, cb] : v.terms()) {
      int s = wedge_keys(ka.second, kb.second, merged);
      if (s == 0) continue;
      out.add_term(merge_poly(ka.first, kb.first), merged, s * ca * cb);
    }
  return out;
}

PolyVector partial_x(const PolyVector& u, int i) {
  PolyVector out(u.parent(), std::max(0, u.poly_degree() - 1), u.vector_degree());
  for (const auto& [key, c] : u.terms()) {
    const PolyKey& p = key.first;
    int mult = static_cast<int>(std::count_if(p.begin(), p.end(), [i](char ch) { return static_cast<unsigned char>(ch) == i; }));
    if (mult == 0) continue;
    PolyKey rest = p;
    rest.erase(rest.begin() + rest.find(static_cast<char>(i)));
    out.add_term(rest, key.second, mult * c);
  }
  return out;
}

PolyVector partial_xi(const PolyVector& u, int i) { return partial_xi_side(u, i, true); }

PolyVector schouten_poly(const PolyVector& u, const PolyVector& v) {
  if (u.parent() != v.parent()) throw std::invalid_argument("Schouten bracket over different Lie algebras");
  const int p = u.vector_degree(), q = v.vector_degree();
  PolyVector out(u.parent(), std::max(0, u.poly_degree() + v.poly_degree() - 1), std::max(0, p + q - 1));
  if (p + q == 0 || u.is_zero() || v.is_zero()) return out;
  const bool minus = ((p - 1) * (q - 1)) % 2 == 0;
  for (int i = 0; i < u.parent()->dim; ++i) {
    if (p > 0) {
      PolyVector a = partial_xi(u, i);
      if (!a.is_zero()) {
        PolyVector b = partial_x(v, i);
        if (!b.is_zero()) out += product(a, b);
      }
    }
    if (q > 0) {
      PolyVector a = partial_xi(v, i);
      if (!a.is_zero()) {
        PolyVector b = partial_x(u, i);
        if (!b.is_zero()) {
          PolyVector t = product(a, b);
          if (minus)
            out -= t;
          else
            out += t;
        }
      }
    }
  }
  return out;
}

PolyVector action_field(RootSystemPtr rs, const SparseVec& x) {
  PolyVector out(rs, 1, 1);
  for (int a = 0; a < rs->dim; ++a) {
    SparseVec br = rs->bracket(x, basis_vector(a));
    for (const auto& [c, v] : br) out.add_term(make_poly_key({c}), make_key({a}), v);
  }
  return out;
}

PolyVector action_embedding(const Multivector& m) {
  PolyVector out(m.parent(), m.degree(), m.degree());
  std::vector<PolyVector> fields;
  for (int a = 0; a < m.parent()->dim; ++a) fields.push_back(action_field(m.parent(), basis_vector(a)));
  for (const auto& [key, c] : m.terms()) {
    PolyVector t = PolyVector::constant(m.parent(), c);
    for (int a : key_indices(key)) t = product(t, fields[a]);
    out += t;
  }
  return out;
}

PolyVector lie_poisson(RootSystemPtr rs) {
  PolyVector s(rs, 1, 2);
  for (int a = 0; a < rs->dim; ++a)
    for (int b = a + 1; b < rs->dim; ++b)
      for (const auto& [c, v] : rs->bracket(a, b)) s.add_term(make_poly_key({c}), make_key({a, b}), v);
  return s;
}

PolyVector r_matrix_bracket(RootSystemPtr rs) {
  // Adjoint action of a basis element on the linear function x_a.
  auto act = [&](int e, int a) { return PolyVector::linear(rs, rs->bracket(e, a)); };
  PolyVector out(rs, 2, 2);
  for (int a = 0; a < rs->dim; ++a)
    for (int b = a + 1; b < rs->dim; ++b) {
      PolyVector coef(rs, 2, 0);
      for (int k = 0; k < rs->num_positive; ++k) {
        coef += product(act(rs->e(k), a), act(rs->f(k), b));
        coef -= product(act(rs->f(k), a), act(rs->e(k), b));
      }
      for (const auto& [key, c] : coef.terms()) out.add_term(key.first, make_key({a, b}), c);
    }
  return out;
}

PolyVector phi_bar(RootSystemPtr rs) { return action_embedding(phi(rs)); }

PolyVector contract(const PolyVector& F, const PolyVector& c) {
  PolyVector out(F.parent(), F.poly_degree() + std::max(0, c.poly_degree() - 1), std::max(0, F.vector_degree() - 1));
  for (int i = 0; i < F.parent()->dim; ++i) {
    PolyVector dc = partial_x(c, i);
    if (dc.is_zero()) continue;
    PolyVector dF = partial_xi_side(F, i, false);
    if (!dF.is_zero()) out += product(dc, dF);
  }
  return out;
}

PolyVector bracket_of(const PolyVector& F, const PolyVector& a, const PolyVector& b) {
  if (F.vector_degree() != 2) throw std::invalid_argument("bracket_of needs a bivector field");
  return contract(contract(F, a), b);
}

PolyVector evaluate(const PolyVector& F, const std::vector<Rational>& coords) {
  PolyVector out(F.parent(), 0, F.vector_degree());
  for (const auto& [key, c] : F.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < key.first.size(); ++i) v *= coords[at(key.first, i)];
    out.add_term(PolyKey(), key.second, v);
  }
  return out;
}

bool colinear(const PolyVector& a, const PolyVector& b, Rational* ratio) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return false;
  const auto& [k0, c0] = *a.terms().begin();
  auto it = b.terms().find(k0);
  if (it == b.terms().end()) return false;
  Rational r = it->second / c0;
  if (a * r != b) return false;
  if (ratio) *ratio = r;
  return true;
}

std::vector<PolyVector> invariant_fields(RootSystemPtr rs, int poly_degree, int vector_degree) {
  if (poly_degree > 6 || vector_degree > 3) throw std::invalid_argument("polyvector degree cap exceeded");
  const int n = rs->dim;
  // Weight-zero monomials.
  std::vector<PolyVector::Key> cols;
  std::vector<int> vars, fields;
  Root w(rs->rank, 0);
  auto add_w = [&](int a, int s) {
    for (int j = 0; j < rs->rank; ++j) w[j] += s * rs->weights[a][j];
  };
  auto rec_fields = [&](auto&& self, int start) -> void {
    if (static_cast<int>(fields.size()) == vector_degree) {
      if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; }))
        cols.push_back({make_poly_key(vars), make_key(fields)});
      return;
    }
    for (int a = start; a < n; ++a) {
      fields.push_back(a);
      add_w(a, -1);
      self(self, a + 1);
      add_w(a, 1);
      fields.pop_back();
    }
  };
  auto rec_vars = [&](auto&& self, int start) -> void {
    if (static_cast<int>(vars.size()) == poly_degree) {
      rec_fields(rec_fields, 0);
      return;
    }
    for (int a = start; a < n; ++a) {
      vars.push_back(a);
      add_w(a, 1);
      self(self, a);
      add_w(a, -1);
      vars.pop_back();
    }
  };
  rec_vars(rec_vars, 0);

  std::vector<PolyVector> ops;
  for (int i = 0; i < rs->rank; ++i) {
    int k = rs->positive_root_index(rs->simple_roots[i]);
    ops.push_back(action_field(rs, basis_vector(rs->e(k))));
    ops.push_back(action_field(rs, basis_vector(rs->f(k))));
  }
  std::map<std::pair<int, PolyVector::Key>, SparseVec> rows;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    PolyVector mono(rs, poly_degree, vector_degree);
    mono.add_term(cols[j].first, cols[j].second, 1);
    for (std::size_t o = 0; o < ops.size(); ++o) {
      PolyVector img = schouten_poly(ops[o], mono);
      for (const auto& [key, c] : img.terms())
        rows[{static_cast<int>(o), key}].push_back({static_cast<int>(j), c});
    }
  }
  SparseRref rref(static_cast<int>(cols.size()));
  for (const auto& [key, row] : rows) rref.insert(row);
  std::vector<PolyVector> out;
  for (const auto& kv : rref.kernel()) {
    PolyVector f(rs, poly_degree, vector_degree);
    for (const auto& [j, c] : kv) f.add_term(cols[j].first, cols[j].second, c);
    out.push_back(std::move(f));
  }
  return out;
}

QuadraticF quadratic_f(RootSystemPtr rs) {
  QuadraticF out;
  std::vector<PolyVector> fs = invariant_fields(rs, 2, 2);
  out.dimension = static_cast<int>(fs.size());
  if (out.dimension == 1) {
    out.f = fs.front();
    out.note = "unique up to a factor";
  } else if (out.dimension == 0) {
    out.note = "no invariant quadratic bracket on " + rs->label();
  } else {
    out.note = std::to_string(out.dimension) + "-dimensional space of invariant quadratic brackets";
  }
  return out;
}

SlRep sl_matrix_rep(int n) {
  if (n < 2) throw std::invalid_argument("sl(n) needs n >= 2");
  SlRep rep;
  rep.n = n;
  rep.rs = build_root_system('A', n - 1);
  const RootSystem& rs = *rep.rs;
  auto unit = [n](int i, int j) {
    DenseMatrix m(n, std::vector<Rational>(n));
    m[i][j] = 1;
    return m;
  };
  rep.mats.assign(rs.dim, DenseMatrix());
  std::vector<char> done(rs.dim, 0);
  for (int i = 0; i < rs.rank; ++i) {
    DenseMatrix h = unit(i, i);
    h[i + 1][i + 1] = -1;
    rep.mats[i] = h;
    done[i] = 1;
  }
  for (int i = 0; i < rs.rank; ++i) {
    int k = rs.positive_root_index(rs.simple_roots[i]);
    rep.mats[rs.e(k)] = unit(i, i + 1);
    const SparseVec& ef = rs.bracket(rs.e(k), rs.f(k));
    if (ef.size() != 1 || ef[0].first != i) throw std::logic_error("unexpected [e_i, f_i] in type A");
    DenseMatrix f = unit(i + 1, i);
    f[i + 1][i] = ef[0].second;
    rep.mats[rs.f(k)] = f;
    done[rs.e(k)] = done[rs.f(k)] = 1;
  }
  // Remaining root vectors by height, through brackets with simple ones.
  for (int k = 0; k < rs.num_positive; ++k) {
    if (done[rs.e(k)]) continue;
    for (int i = 0; i < rs.rank && !done[rs.e(k)]; ++i) {
      Root beta = rs.positive_roots[k];
      beta[i] -= 1;
      int b = rs.positive_root_index(beta);
      if (b < 0) continue;
      int si = rs.positive_root_index(rs.simple_roots[i]);
      for (bool up : {true, false}) {
        int x = up ? rs.e(si) : rs.f(si), y = up ? rs.e(b) : rs.f(b), target = up ? rs.e(k) : rs.f(k);
        const SparseVec& br = rs.bracket(x, y);
        if (br.size() != 1 || br[0].first != target) throw std::logic_error("unexpected bracket in type A");
        DenseMatrix m = commutator(rep.mats[x], rep.mats[y]);
        Rational inv = 1 / br[0].second;
        for (auto& row : m)
          for (auto& v : row) v *= inv;
        rep.mats[target] = m;
        done[target] = 1;
      }
    }
  }
  for (int a = 0; a < rs.dim; ++a)
    for (int b = 0; b < rs.dim; ++b) {
      DenseMatrix lhs = commutator(rep.mats[a], rep.mats[b]);
      DenseMatrix rhs(n, std::vector<Rational>(n));
      for (const auto& [c, v] : rs.bracket(a, b))
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) rhs[i][j] += v * rep.mats[c][i][j];
      if (lhs != rhs) throw std::logic_error("matrix representation does not respect the bracket");
    }
  DenseMatrix gram(rs.dim, std::vector<Rational>(rs.dim));
  for (int a = 0; a < rs.dim; ++a)
    for (int b = 0; b < rs.dim; ++b) gram[a][b] = trace(multiply(rep.mats[a], rep.mats[b]));
  DenseMatrix ginv = inverse(gram);
  for (int a = 0; a < rs.dim; ++a) {
    DenseMatrix d(n, std::vector<Rational>(n));
    for (int b = 0; b < rs.dim; ++b)
      if (ginv[b][a] != 0)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) d[i][j] += ginv[b][a] * rep.mats[b][i][j];
    rep.dual.push_back(std::move(d));
  }
  return rep;
}

std::vector<Rational> point_coordinates(const SlRep& rep, const DenseMatrix& P) {
  if (trace(P) != 0) throw std::invalid_argument("point must be traceless");
  std::vector<Rational> x;
  for (const auto& m : rep.mats) x.push_back(trace(multiply(P, m)));
  return x;
}

std::vector<PolyVector> casimirs(const SlRep& rep) {
  const int n = rep.n;
  const auto& rs = rep.rs;
  using PolyMatrix = std::vector<std::vector<PolyVector>>;
  PolyMatrix X(n, std::vector<PolyVector>(n, PolyVector(rs, 1, 0)));
  for (int a = 0; a < rs->dim; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rep.dual[a][i][j] != 0) X[i][j].add_term(make_poly_key({a}), IndexKey(), rep.dual[a][i][j]);
  std::vector<PolyVector> out;
  PolyMatrix power = X;
  for (int k = 2; k <= n; ++k) {
    PolyMatrix next(n, std::vector<PolyVector>(n, PolyVector(rs, k, 0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) next[i][j] += product(power[i][l], X[l][j]);
    power = std::move(next);
    PolyVector tr(rs, k, 0);
    for (int i = 0; i < n; ++i) tr += power[i][i];
    out.push_back(std::move(tr));
  }
  return out;
}

TangencyResult tangency_check(const SlRep& rep, const std::vector<PolyVector>& cas, const DenseMatrix& P,
                              const PolyVector& F) {
  if (F.vector_degree() != 2) throw std::invalid_argument("tangency check expects a bivector field");
  const auto& rs = *rep.rs;
  std::vector<Rational> x = point_coordinates(rep, P);
  TangencyResult out;
  out.casimir_contractions_zero = true;
  for (const auto& c : cas)
    if (!evaluate(contract(F, c), x).is_zero()) out.casimir_contractions_zero = false;
  // Tangent space of the coadjoint orbit: components [x_a, x_b](P).
  SparseRref tangent(rs.dim);
  for (int a = 0; a < rs.dim; ++a) {
    std::vector<Rational> v(rs.dim);
    for (int b = 0; b < rs.dim; ++b)
      for (const auto& [c, coef] : rs.bracket(a, b)) v[b] += coef * x[c];
    tangent.insert(to_sparse(v));
  }
  out.in_tangent_space = true;
  for (int b = 0; b < rs.dim && out.in_tangent_space; ++b) {
    PolyVector col = evaluate(contract(F, PolyVector::linear(rep.rs, basis_vector(b))), x);
    SparseVec v;
    for (const auto& [key, c] : col.terms()) v.push_back({at(key.second, 0), c});
    std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    if (!tangent.contains(v)) out.in_tangent_space = false;
  }
  return out;
}

PolyVector mixed_jacobiator(const PolyVector& s, const PolyVector& f, const PolyVector& x, const PolyVector& y,
                            const PolyVector& z) {
  auto L = [&](const PolyVector& a, const PolyVector& b) { return bracket_of(s, a, b); };
  auto B = [&](const PolyVector& a, const PolyVector& b) { return bracket_of(f, a, b); };
  return L(x, B(y, z)) + L(y, B(z, x)) + L(z, B(x, y)) + B(x, L(y, z)) + B(y, L(z, x)) + B(z, L(x, y));
}

PolyVector scomp_residual(const PolyVector& s, const PolyVector& f, const PolyVector& x, const PolyVector& y,
                          const PolyVector& z) {
  return bracket_of(f, z, bracket_of(s, x, y)) - bracket_of(s, z, bracket_of(f, x, y)) -
         mixed_jacobiator(s, f, x, y, z);
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class &num = q.get_num(), &den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  Rational r(a, b);
  r.canonicalize();
  return r;
}

namespace {

DenseMatrix random_diagonalizable(int n, Rng& rng) {
  DenseMatrix d(n, std::vector<Rational>(n));
  Rational sum = 0;
  for (int i = 0; i + 1 < n; ++i) {
    d[i][i] = Rational(rng.uniform(-9, 9));
    sum += d[i][i];
  }
  d[n - 1][n - 1] = -sum;
  DenseMatrix q;
  while (true) {
    q.assign(n, std::vector<Rational>(n));
    for (auto& row : q)
      for (auto& v : row) v = Rational(rng.uniform(-4, 4));
    try {
      DenseMatrix qi = inverse(q);
      return multiply(multiply(q, d), qi);
    } catch (const std::invalid_argument&) {
    }
  }
}

SparseVec random_linear(const RootSystem& rs, Rng& rng) {
  std::vector<Rational> v(rs.dim);
  for (int t = 0; t < 3; ++t) v[rng.uniform(0, rs.dim - 1)] += rng.nonzero_rational(5, 3);
  return to_sparse(v);
}

}  // namespace

PencilReport verify_pencil(int n, int points, std::uint64_t seed) {
  PencilReport rep;
  rep.n = n;
  SlRep sl = sl_matrix_rep(n);
  RootSystemPtr rs = sl.rs;
  QuadraticF qf = quadratic_f(rs);
  rep.dim_hom = qf.dimension;
  rep.low_degree_dims = {static_cast<int>(invariant_fields(rs, 0, 2).size()),
                         static_cast<int>(invariant_fields(rs, 1, 2).size())};
  if (!qf.f) return rep;
  const PolyVector& f = *qf.f;
  rep.f = f;
  PolyVector s = lie_poisson(rs);
  PolyVector rb = r_matrix_bracket(rs);
  rep.sf_zero = schouten_poly(s, f).is_zero();
  rep.ff_colinear = colinear(phi_bar(rs), schouten_poly(f, f), &rep.u);
  rep.r_compatible = schouten_poly(f, rb).is_zero();
  PolyVector fk = f;
  if (rep.ff_colinear) {
    if (auto k = rational_sqrt(-1 / rep.u)) {
      rep.rescalable = true;
      rep.scale = *k;
      fk = f * *k;
      PolyVector p = fk - rb;
      rep.pp_zero = schouten_poly(p, p).is_zero();
    }
  }
  std::vector<PolyVector> cas = casimirs(sl);
  PolyVector p = fk - rb;
  Rng rng(seed);
  for (int t = 0; t < points; ++t) {
    DenseMatrix P;
    if (t == 0) {
      P.assign(n, std::vector<Rational>(n));
      for (int i = 0; i + 1 < n; ++i) P[i][i + 1] = 1;
    } else {
      P = random_diagonalizable(n, rng);
    }
    bool ok = true;
    for (const PolyVector* F : std::vector<const PolyVector*>{&f, &s, &rb, &p}) {
      TangencyResult r = tangency_check(sl, cas, P, *F);
      ok = ok && r.casimir_contractions_zero && r.in_tangent_space;
    }
    ++rep.tangency_total;
    if (ok) ++rep.tangency_pass;
  }
  return rep;
}

ScompReport scomp_identity(int n, int samples, std::uint64_t seed) {
  SlRep sl = sl_matrix_rep(n);
  RootSystemPtr rs = sl.rs;
  QuadraticF qf = quadratic_f(rs);
  ScompReport rep;
  if (!qf.f) return rep;
  PolyVector s = lie_poisson(rs);
  const PolyVector& f = *qf.f;
  std::vector<PolyVector> cas = casimirs(sl);
  Rng rng(seed);
  rep.psi_zero = true;
  for (int t = 0; t < samples; ++t) {
    PolyVector x = PolyVector::linear(rs, random_linear(*rs, rng));
    PolyVector y = PolyVector::linear(rs, random_linear(*rs, rng));
    PolyVector z(rs, 1, 0);
    switch (t % 3) {
      case 0:
        z = PolyVector::linear(rs, random_linear(*rs, rng));
        break;
      case 1:
        z = product(PolyVector::linear(rs, random_linear(*rs, rng)), PolyVector::linear(rs, random_linear(*rs, rng)));
        break;
      default:
        z = cas[rng.uniform(0, static_cast<long>(cas.size()) - 1)];
        break;
    }
    if (!mixed_jacobiator(s, f, x, y, z).is_zero()) rep.psi_zero = false;
    ++rep.checked;
    if (scomp_residual(s, f, x, y, z).is_zero()) ++rep.passed;
  }
  return rep;
}

NoGoReport no_go_degree_argument(RootSystemPtr rs) {
  NoGoReport rep;
  for (int d = 0; d < 3; ++d) rep.dims[d] = static_cast<int>(invariant_fields(rs, d, 2).size());
  rep.argument =
      "Invariant bivector fields on " + rs->label() + " by polynomial degree: " + std::to_string(rep.dims[0]) + ", " +
      std::to_string(rep.dims[1]) + ", " + std::to_string(rep.dims[2]) +
      ". A quadratic invariant bracket with [[f,f]] proportional to phi_bar needs a degree-2 invariant; " +
      (rep.dims[2] == 0 ? "there is none, and any invariant bracket built from higher degrees has [[f,f]] of "
                          "polynomial degree at least 5, while phi_bar has degree 3."
                        : "one exists.");
  return rep;
}

}  // namespace dquant
