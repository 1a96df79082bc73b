// Exact scalar types: prime fields F_p and the rationals.
//
// Every computation in the library is templated on one of these scalar
// types. A scalar type K carries a nested K::Field describing the concrete
// field (the prime for F_p, nothing for Q); the field object is what makes
// constants, parses coefficients and draws random elements.
#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "horrocks/error.hpp"

namespace horrocks {

/// Element of F_p. The modulus travels with the element so that mixing two
/// different prime fields is detected; a default-constructed element is an
/// untyped zero that adopts the modulus of whatever it meets.
class Fp {
 public:
  struct Field {
    std::uint32_t p = 32003;

    Field() = default;
    explicit Field(std::uint32_t prime) : p(prime) {
      if (!is_prime(prime)) throw Error(ErrorKind::Validation, "not a prime: " + std::to_string(prime));
    }

    Fp make(long long n) const {
      long long r = n % static_cast<long long>(p);
      if (r < 0) r += p;
      return Fp(static_cast<std::uint32_t>(r), p);
    }
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp random(std::mt19937_64& rng) const {
      std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
      return Fp(dist(rng), p);
    }
    Fp random_nonzero(std::mt19937_64& rng) const {
      std::uniform_int_distribution<std::uint32_t> dist(1, p - 1);
      return Fp(dist(rng), p);
    }
    Fp parse(const std::string& text) const;
    std::string name() const { return "p=" + std::to_string(p); }
    bool operator==(const Field&) const = default;

    static bool is_prime(std::uint32_t n) {
      if (n < 2) return false;
      for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
      return true;
    }
  };

  Fp() = default;
  Fp(std::uint32_t v, std::uint32_t p) : v_(v % p), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  long long signed_value() const {
    if (p_ == 0) return 0;
    return v_ > p_ / 2 ? static_cast<long long>(v_) - p_ : static_cast<long long>(v_);
  }

  Fp operator-() const { return v_ == 0 ? *this : Fp(p_ - v_, p_); }
  friend Fp operator+(const Fp& a, const Fp& b) {
    const std::uint32_t p = common(a, b);
    if (p == 0) return Fp();
    std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
    if (s >= p) s -= p;
    return Fp(static_cast<std::uint32_t>(s), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    const std::uint32_t p = common(a, b);
    if (p == 0) return Fp();
    return Fp(static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.v_) * b.v_) % p), p);
  }
  Fp inv() const {
    if (v_ == 0) throw Error(ErrorKind::Internal, "inverse of zero in F_p");
    // Fermat: a^(p-2)
    std::uint64_t base = v_, r = 1, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Fp(static_cast<std::uint32_t>(r), p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw Error(ErrorKind::FieldMismatch, "comparing elements of different prime fields");
    return a.v_ == b.v_;
  }

  std::string to_string() const { return std::to_string(signed_value()); }

 private:
  static std::uint32_t common(const Fp& a, const Fp& b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
    throw Error(ErrorKind::FieldMismatch,
                "mixing F_" + std::to_string(a.p_) + " and F_" + std::to_string(b.p_));
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline Fp Fp::Field::parse(const std::string& text) const {
  // integers, optionally a/b
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class z(text);
      mpz_class r = z % p;
      if (r < 0) r += p;
      return Fp(static_cast<std::uint32_t>(r.get_ui()), p);
    }
    return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "bad coefficient '" + text + "'");
  }
}

/// Element of Q with arbitrary-precision numerator and denominator.
class Rational {
 public:
  struct Field {
    Rational make(long long n) const { return Rational(mpq_class(static_cast<long>(n))); }
    Rational zero() const { return Rational(); }
    Rational one() const { return make(1); }
    Rational random(std::mt19937_64& rng) const {
      std::uniform_int_distribution<int> dist(-9, 9);
      return make(dist(rng));
    }
    Rational random_nonzero(std::mt19937_64& rng) const {
      std::uniform_int_distribution<int> dist(1, 9);
      std::bernoulli_distribution sign(0.5);
      const int v = dist(rng);
      return make(sign(rng) ? v : -v);
    }
    Rational parse(const std::string& text) const {
      try {
        mpq_class q(text);
        q.canonicalize();
        return Rational(q);
      } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::Parse, "bad coefficient '" + text + "'");
      }
    }
    std::string name() const { return "rationals"; }
    bool operator==(const Field&) const = default;
  };

  Rational() = default;
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }

  Rational operator-() const { return Rational(-q_); }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
  Rational inv() const {
    if (is_zero()) throw Error(ErrorKind::Internal, "inverse of zero in Q");
    return Rational(1 / q_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_;
};

template <class K>
concept FieldScalar = requires(K a, K b, const typename K::Field& f) {
  { a + b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { f.make(1) } -> std::same_as<K>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

}  // namespace horrocks
