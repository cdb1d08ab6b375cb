#include "dquant/schouten.hpp"

#include <algorithm>
#include <stdexcept>

namespace dquant {

IndexKey make_key(const std::vector<int>& sorted_indices) {
  IndexKey k(sorted_indices.size(), '\0');
  for (std::size_t i = 0; i < sorted_indices.size(); ++i) k[i] = static_cast<char>(sorted_indices[i]);
  return k;
}

std::vector<int> key_indices(const IndexKey& key) {
  std::vector<int> out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) out[i] = static_cast<unsigned char>(key[i]);
  return out;
}

namespace {

inline int at(const IndexKey& k, std::size_t i) { return static_cast<unsigned char>(k[i]); }

// Merges two sorted keys; returns 0 on overlap, otherwise the permutation sign.
int merge_sign(const IndexKey& a, const IndexKey& b, IndexKey& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
    } else if (i == a.size()) {
      out.push_back(b[j++]);
    } else if (at(a, i) < at(b, j)) {
      out.push_back(a[i++]);
    } else if (at(a, i) > at(b, j)) {
      if ((a.size() - i) & 1) sign = -sign;
      out.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  return sign;
}

// Inserts x at the front of sorted key and sorts; returns 0 if x is present.
int insert_front(int x, const IndexKey& rest, IndexKey& out) {
  std::size_t pos = 0;
  while (pos < rest.size() && at(rest, pos) < x) ++pos;
  if (pos < rest.size() && at(rest, pos) == x) return 0;
  out = rest;
  out.insert(out.begin() + pos, static_cast<char>(x));
  return (pos & 1) ? -1 : 1;
}

IndexKey remove_at(const IndexKey& k, std::size_t i) {
  IndexKey out = k;
  out.erase(out.begin() + i);
  return out;
}

Multivector schouten_impl(const Multivector& u, const Multivector& v, const LeviDatum* levi) {
  const RootSystem& rs = *u.parent();
  if (u.degree() == 0 || v.degree() == 0) return Multivector(u.parent(), std::max(0, u.degree() + v.degree() - 1));
  Multivector out(u.parent(), u.degree() + v.degree() - 1);
  std::map<IndexKey, Rational> acc;
  IndexKey merged, full;
  for (const auto& [ka, ca] : u.terms()) {
    for (const auto& [kb, cb] : v.terms()) {
      Rational cab = ca * cb;
      for (std::size_t i = 0; i < ka.size(); ++i) {
        IndexKey ra = remove_at(ka, i);
        if (levi) {
          bool ok = true;
          for (char ch : ra) ok = ok && levi->in_m[static_cast<unsigned char>(ch)];
          if (!ok) continue;
        }
        for (std::size_t j = 0; j < kb.size(); ++j) {
          const SparseVec& br = rs.structure[at(ka, i)][at(kb, j)];
          if (br.empty()) continue;
          IndexKey rb = remove_at(kb, j);
          int s1 = merge_sign(ra, rb, merged);
          if (s1 == 0) continue;
          if (levi) {
            bool ok = true;
            for (char ch : rb) ok = ok && levi->in_m[static_cast<unsigned char>(ch)];
            if (!ok) continue;
          }
          int base = ((i + j) & 1) ? -s1 : s1;
          for (const auto& [c, cc] : br) {
            if (levi && !levi->in_m[c]) continue;
            int s2 = insert_front(c, merged, full);
            if (s2 == 0) continue;
            Rational term = cab * cc;
            if (base * s2 < 0) term = -term;
            auto it = acc.find(full);
            if (it == acc.end()) {
              acc.emplace(full, std::move(term));
            } else {
              it->second += term;
            }
          }
        }
      }
    }
  }
  for (auto& [k, c] : acc)
    if (c != 0) out.add_term(k, c);
  return out;
}

}  // namespace

int wedge_keys(const IndexKey& a, const IndexKey& b, IndexKey& out) { return merge_sign(a, b, out); }

Multivector::Multivector(RootSystemPtr parent, int degree) : parent_(std::move(parent)), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative multivector degree");
}

Multivector Multivector::monomial(RootSystemPtr parent, const std::vector<int>& indices, const Rational& coeff) {
  Multivector m(parent, static_cast<int>(indices.size()));
  std::vector<int> idx = indices;
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return m;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return m;
  m.add_term(make_key(idx), sign * coeff);
  return m;
}

Multivector Multivector::from_vector(RootSystemPtr parent, const SparseVec& x) {
  Multivector m(parent, 1);
  for (const auto& [a, c] : x) m.add_term(make_key({a}), c);
  return m;
}

Multivector Multivector::scalar(RootSystemPtr parent, const Rational& c) {
  Multivector m(parent, 0);
  m.add_term(IndexKey(), c);
  return m;
}

Rational Multivector::coeff(const std::vector<int>& sorted_indices) const {
  auto it = terms_.find(make_key(sorted_indices));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Multivector::add_term(const IndexKey& key, const Rational& c) {
  if (static_cast<int>(key.size()) != degree_) throw std::invalid_argument("term degree mismatch");
  if (c == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Multivector::check_compatible(const Multivector& o) const {
  if (parent_ != o.parent_) throw std::invalid_argument("multivectors over different Lie algebras");
  if (degree_ != o.degree_ && !o.terms_.empty() && !terms_.empty())
    throw std::invalid_argument("adding multivectors of different degrees");
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_compatible(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_compatible(o);
  if (terms_.empty()) degree_ = o.degree_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Multivector& Multivector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Multivector Multivector::operator+(const Multivector& o) const {
  Multivector r = *this;
  r += o;
  return r;
}
Multivector Multivector::operator-(const Multivector& o) const {
  Multivector r = *this;
  r -= o;
  return r;
}
Multivector Multivector::operator*(const Rational& c) const {
  Multivector r = *this;
  r *= c;
  return r;
}
Multivector Multivector::operator-() const { return *this * Rational(-1); }

bool Multivector::operator==(const Multivector& o) const {
  if (parent_ != o.parent_) return false;
  if (terms_.empty() && o.terms_.empty()) return true;
  return degree_ == o.degree_ && terms_ == o.terms_;
}

Multivector wedge(const Multivector& u, const Multivector& v) {
  if (u.parent() != v.parent()) throw std::invalid_argument("wedge of multivectors over different Lie algebras");
  Multivector out(u.parent(), u.degree() + v.degree());
  IndexKey merged;
  for (const auto& [ka, ca] : u.terms())
    for (const auto& [kb, cb] : v.terms()) {
      int s = merge_sign(ka, kb, merged);
      if (s != 0) out.add_term(merged, s * ca * cb);
    }
  return out;
}

Multivector schouten(const Multivector& u, const Multivector& v) {
  if (u.parent() != v.parent()) throw std::invalid_argument("Schouten bracket over different Lie algebras");
  return schouten_impl(u, v, nullptr);
}

Multivector schouten_projected(const LeviDatum& levi, const Multivector& u, const Multivector& v) {
  if (u.parent() != v.parent() || u.parent() != levi.parent)
    throw std::invalid_argument("Schouten bracket over different Lie algebras");
  return schouten_impl(u, v, &levi);
}

Multivector ad_action(int x, const Multivector& u) {
  return schouten(Multivector::from_vector(u.parent(), basis_vector(x)), u);
}

Multivector project_m(const LeviDatum& levi, const Multivector& u) {
  Multivector out(u.parent(), u.degree());
  for (const auto& [k, c] : u.terms()) {
    bool keep = true;
    for (char ch : k) keep = keep && levi.in_m[static_cast<unsigned char>(ch)];
    if (keep) out.add_term(k, c);
  }
  return out;
}

Multivector gamma_component(const LeviDatum& levi, const Multivector& u) { return u - project_m(levi, u); }

Multivector apply_theta(const Multivector& u) {
  const RootSystem& rs = *u.parent();
  Multivector out(u.parent(), u.degree());
  for (const auto& [k, c] : u.terms()) {
    std::vector<int> idx;
    Rational coef = c;
    for (std::size_t i = 0; i < k.size(); ++i) {
      int a = at(k, i);
      idx.push_back(rs.theta_target[a]);
      coef *= rs.theta_coeff[a];
    }
    out += Multivector::monomial(u.parent(), idx, coef);
  }
  return out;
}

Root key_weight(const RootSystem& rs, const IndexKey& key) {
  Root w(rs.rank, 0);
  for (std::size_t i = 0; i < key.size(); ++i) {
    const Root& r = rs.weights[at(key, i)];
    for (int j = 0; j < rs.rank; ++j) w[j] += r[j];
  }
  return w;
}

Multivector sklyanin_r(RootSystemPtr rs) {
  Multivector r(rs, 2);
  for (int k = 0; k < rs->num_positive; ++k) r.add_term(make_key({rs->e(k), rs->f(k)}), 1);
  return r;
}

Multivector phi(RootSystemPtr rs) {
  Multivector r = sklyanin_r(rs);
  return schouten(r, r);
}

Multivector phi_M(const LeviDatum& levi) { return project_m(levi, phi(levi.parent)); }

bool colinear(const Multivector& a, const Multivector& b, Rational* ratio) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.size() != b.size()) return false;
  const auto& [k0, c0] = *a.terms().begin();
  auto it = b.terms().find(k0);
  if (it == b.terms().end()) return false;
  Rational r = it->second / c0;
  if (a * r != b) return false;
  if (ratio) *ratio = r;
  return true;
}

}  // namespace dquant
