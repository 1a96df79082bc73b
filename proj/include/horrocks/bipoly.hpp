// Bihomogeneous forms in k[s,t;u,v].
//
// A form of bidegree (a,b) is stored densely over the monomials
// s^i t^(a-i) u^j v^(b-j), ordered by i descending and then j descending.
// The diagonal (d,d) pieces realize the coordinate ring of the quadric with
// x0,x1,x2,x3 = su,sv,tu,tv.
#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "horrocks/error.hpp"
#include "horrocks/exactla.hpp"

namespace horrocks {

struct BiDegree {
  int a = 0;
  int b = 0;

  bool valid() const { return a >= 0 && b >= 0; }
  friend BiDegree operator+(BiDegree x, BiDegree y) { return {x.a + y.a, x.b + y.b}; }
  friend BiDegree operator-(BiDegree x, BiDegree y) { return {x.a - y.a, x.b - y.b}; }
  BiDegree operator-() const { return {-a, -b}; }
  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
  std::string to_string() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

/// Exponents (i, j) of the monomial s^i t^(a-i) u^j v^(b-j).
struct Monomial {
  int i = 0;
  int j = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline std::size_t form_dim(BiDegree d) {
  return d.valid() ? static_cast<std::size_t>(d.a + 1) * static_cast<std::size_t>(d.b + 1) : 0;
}

inline std::size_t monomial_index(BiDegree d, int i, int j) {
  return static_cast<std::size_t>(d.a - i) * static_cast<std::size_t>(d.b + 1) + static_cast<std::size_t>(d.b - j);
}

inline std::vector<Monomial> monomial_basis(BiDegree d) {
  std::vector<Monomial> out;
  if (!d.valid()) return out;
  out.reserve(form_dim(d));
  for (int i = d.a; i >= 0; --i)
    for (int j = d.b; j >= 0; --j) out.push_back({i, j});
  return out;
}

/// Basis of the degree-d piece of S(Q), i.e. the (d,d) monomials.
inline std::vector<Monomial> sq_piece(int d) { return monomial_basis({d, d}); }

template <class K>
class BiForm {
 public:
  BiForm() = default;
  explicit BiForm(BiDegree d) : deg_(d), c_(form_dim(d)) {}
  BiForm(BiDegree d, Vec<K> coeffs) : deg_(d), c_(std::move(coeffs)) {
    if (c_.size() != form_dim(d)) throw Error(ErrorKind::Internal, "coefficient count does not match bidegree");
  }

  static BiForm monomial(BiDegree d, int i, int j, const K& coef) {
    BiForm f(d);
    if (!d.valid() || i < 0 || i > d.a || j < 0 || j > d.b)
      throw Error(ErrorKind::Internal, "monomial outside bidegree " + d.to_string());
    f.c_[monomial_index(d, i, j)] = coef;
    return f;
  }
  static BiForm constant(const K& c) { return monomial({0, 0}, 0, 0, c); }

  // The four variables and the quadric coordinates.
  static BiForm s(const typename K::Field& f) { return monomial({1, 0}, 1, 0, f.one()); }
  static BiForm t(const typename K::Field& f) { return monomial({1, 0}, 0, 0, f.one()); }
  static BiForm u(const typename K::Field& f) { return monomial({0, 1}, 0, 1, f.one()); }
  static BiForm v(const typename K::Field& f) { return monomial({0, 1}, 0, 0, f.one()); }
  static BiForm x(int k, const typename K::Field& f) {
    return monomial({1, 1}, k < 2 ? 1 : 0, (k % 2 == 0) ? 1 : 0, f.one());
  }

  static BiForm random(BiDegree d, const typename K::Field& f, std::mt19937_64& rng) {
    return BiForm(d, random_vector<K>(form_dim(d), f, rng));
  }

  BiDegree degree() const { return deg_; }
  const Vec<K>& coeffs() const { return c_; }
  Vec<K>& coeffs() { return c_; }
  const K& coeff(int i, int j) const { return c_[monomial_index(deg_, i, j)]; }
  bool is_zero() const { return is_zero_vec(c_); }

  friend BiForm operator+(const BiForm& x, const BiForm& y) {
    if (x.is_empty_zero()) return y;
    if (y.is_empty_zero()) return x;
    if (x.deg_ != y.deg_) throw Error(ErrorKind::Internal, "adding forms of bidegrees " + x.deg_.to_string() + " and " + y.deg_.to_string());
    BiForm r = x;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += y.c_[k];
    return r;
  }
  BiForm operator-() const {
    BiForm r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend BiForm operator-(const BiForm& x, const BiForm& y) { return x + (-y); }
  friend BiForm operator*(const K& c, BiForm x) {
    for (auto& e : x.c_) e = c * e;
    return x;
  }
  friend BiForm operator*(const BiForm& x, const BiForm& y) {
    BiForm r(x.deg_ + y.deg_);
    if (!r.deg_.valid()) return r;
    for (int i1 = 0; i1 <= x.deg_.a; ++i1)
      for (int j1 = 0; j1 <= x.deg_.b; ++j1) {
        const K& cx = x.coeff(i1, j1);
        if (cx.is_zero()) continue;
        for (int i2 = 0; i2 <= y.deg_.a; ++i2)
          for (int j2 = 0; j2 <= y.deg_.b; ++j2) {
            const K& cy = y.coeff(i2, j2);
            if (!cy.is_zero()) r.c_[monomial_index(r.deg_, i1 + i2, j1 + j2)] += cx * cy;
          }
      }
    return r;
  }
  friend bool operator==(const BiForm& x, const BiForm& y) {
    if (x.is_zero() && y.is_zero()) return true;
    return x.deg_ == y.deg_ && x.c_ == y.c_;
  }

  /// Value at a point (s,t,u,v) of the affine cone.
  K eval(const typename K::Field& f, const K& s, const K& t, const K& u, const K& v) const {
    auto pw = [&](const K& x, int e) {
      K r = f.one();
      for (int k = 0; k < e; ++k) r = r * x;
      return r;
    };
    K r = f.zero();
    for (int i = 0; i <= deg_.a; ++i)
      for (int j = 0; j <= deg_.b; ++j) {
        const K& c = coeff(i, j);
        if (!c.is_zero()) r += c * pw(s, i) * pw(t, deg_.a - i) * pw(u, j) * pw(v, deg_.b - j);
      }
    return r;
  }

  std::string to_string() const;

 private:
  // A default-constructed form: zero of unspecified bidegree.
  bool is_empty_zero() const { return c_.empty() && deg_ == BiDegree{}; }

  BiDegree deg_;
  Vec<K> c_;
};

/// Matrix of multiplication by f from bidegree src to src + deg f.
template <class K>
Matrix<K> mult_matrix(const BiForm<K>& f, BiDegree src) {
  const BiDegree dst = src + f.degree();
  Matrix<K> m(form_dim(dst), form_dim(src));
  if (!dst.valid() || !src.valid()) return m;
  const BiDegree fd = f.degree();
  for (int i = 0; i <= src.a; ++i)
    for (int j = 0; j <= src.b; ++j) {
      const std::size_t col = monomial_index(src, i, j);
      for (int p = 0; p <= fd.a; ++p)
        for (int q = 0; q <= fd.b; ++q) {
          const K& c = f.coeff(p, q);
          if (!c.is_zero()) m(monomial_index(dst, i + p, j + q), col) += c;
        }
    }
  return m;
}

namespace detail {

template <class K>
std::string coeff_prefix(const K& c, bool first, bool has_monomial) {
  std::string s = c.to_string();
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s = s.substr(1);
  std::string out = first ? (neg ? "-" : "") : (neg ? " - " : " + ");
  if (!has_monomial) return out + s;
  if (s != "1") out += s + "*";
  return out;
}

inline std::string monomial_text(BiDegree d, int i, int j) {
  std::string out;
  auto var = [&](char v, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += v;
    if (e > 1) out += "^" + std::to_string(e);
  };
  var('s', i);
  var('t', d.a - i);
  var('u', j);
  var('v', d.b - j);
  return out;
}

}  // namespace detail

template <class K>
std::string BiForm<K>::to_string() const {
  std::string out;
  bool first = true;
  for (const Monomial& m : monomial_basis(deg_)) {
    const K& c = coeff(m.i, m.j);
    if (c.is_zero()) continue;
    const std::string mono = detail::monomial_text(deg_, m.i, m.j);
    out += detail::coeff_prefix(c, first, !mono.empty()) + mono;
    first = false;
  }
  return first ? "0" : out;
}

/// Parse text such as `3*s^2*u - t^2*v`. The variables are s,t,u,v and the
/// quadric coordinates x0..x3; constants are allowed only in bidegree (0,0).
/// An all-zero text ("0") parses to the zero form of `expected` when given.
template <class K>
BiForm<K> parse_form(const std::string& text, const typename K::Field& f,
                     const BiDegree* expected = nullptr) {
  struct Term {
    K coef;
    int s = 0, t = 0, u = 0, v = 0;
  };
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Parse, "polynomial '" + text + "': " + why);
  };
  skip();
  if (pos == text.size()) throw fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
      neg = text[pos] == '-';
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected + or - at position " + std::to_string(pos));
    }
    first = false;
    Term term{f.one()};
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size()) break;
      const char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t end = pos;
        while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '/')) ++end;
        term.coef = term.coef * f.parse(text.substr(pos, end - pos));
        pos = end;
      } else if (ch == 's' || ch == 't' || ch == 'u' || ch == 'v' || ch == 'x') {
        ++pos;
        int ds = 0, dt = 0, du = 0, dv = 0;
        if (ch == 'x') {
          if (pos >= text.size() || text[pos] < '0' || text[pos] > '3') throw fail("x must be followed by 0..3");
          const int k = text[pos++] - '0';
          (k < 2 ? ds : dt) = 1;
          (k % 2 == 0 ? du : dv) = 1;
        } else {
          (ch == 's' ? ds : ch == 't' ? dt : ch == 'u' ? du : dv) = 1;
        }
        int e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          std::size_t end = pos;
          while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
          if (end == pos) throw fail("missing exponent");
          e = std::stoi(text.substr(pos, end - pos));
          pos = end;
        }
        term.s += ds * e;
        term.t += dt * e;
        term.u += du * e;
        term.v += dv * e;
      } else {
        throw fail(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])))) continue;
      break;
    }
    if (!any) throw fail("empty term");
    if (neg) term.coef = -term.coef;
    terms.push_back(term);
  }
  // Zero terms carry no bidegree information.
  std::vector<Term> nonzero;
  for (const Term& t : terms)
    if (!t.coef.is_zero()) nonzero.push_back(t);
  if (nonzero.empty()) {
    if (expected) return BiForm<K>(*expected);
    return BiForm<K>(BiDegree{0, 0});
  }
  const BiDegree d{nonzero[0].s + nonzero[0].t, nonzero[0].u + nonzero[0].v};
  BiForm<K> out(d);
  for (const Term& t : nonzero) {
    if (t.s + t.t != d.a || t.u + t.v != d.b) throw fail("terms of different bidegrees");
    out.coeffs()[monomial_index(d, t.s, t.u)] += t.coef;
  }
  if (expected && !out.is_zero() && out.degree() != *expected)
    throw Error(ErrorKind::Validation, "polynomial '" + text + "' has bidegree " + out.degree().to_string() +
                                          ", expected " + expected->to_string());
  if (expected && out.is_zero()) return BiForm<K>(*expected);
  return out;
}

}  // namespace horrocks
