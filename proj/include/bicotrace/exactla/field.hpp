#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "bicotrace/error.hpp"

namespace bicotrace {

enum class FieldKind { rationals, prime };

/// Runtime description of the ground field: the rationals or F_p with p < 2^31.
struct Field {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t p = 0;

  static Field rationals() { return {}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw Error(ErrorKind::InvalidField, "modulus " + std::to_string(p) + " is not a prime below 2^31");
    return {FieldKind::prime, static_cast<std::uint32_t>(p)};
  }

  /// Parses "Q" or "F<p>" (e.g. "F5").
  static Field parse(std::string_view s) {
    if (s == "Q") return rationals();
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) return prime(std::stoull(std::string(s.substr(1))));
    throw Error(ErrorKind::InvalidField, "unknown field '" + std::string(s) + "'");
  }

  std::string name() const { return kind == FieldKind::rationals ? "Q" : "F" + std::to_string(p); }

  /// Characteristic; 0 for the rationals.
  std::uint32_t characteristic() const { return kind == FieldKind::rationals ? 0 : p; }

  bool operator==(const Field&) const = default;

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Residue modulo a prime. The modulus travels with the value so that
/// arithmetic between different prime fields is caught at runtime.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    return raw(static_cast<std::uint32_t>(s >= p_ ? s - p_ : s));
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_));
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
  Fp operator*(const Fp& o) const {
    check(o);
    return raw(static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_));
  }
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }

  Fp inverse() const {
    if (v_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in F" + std::to_string(p_));
    // extended Euclid on (v, p)
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0, p_);
  }

 private:
  Fp raw(std::uint32_t v) const {
    Fp r;
    r.v_ = v;
    r.p_ = p_;
    return r;
  }
  void check(const Fp& o) const {
    if (p_ != o.p_) throw Error(ErrorKind::FieldMismatch, "mixing residues of different moduli");
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

/// Per-scalar-type glue: construction from integers, zero tests and the
/// canonical "num/den" text form.
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr FieldKind kind = FieldKind::rationals;

  static Rational from_int(const Field&, std::int64_t v) { return Rational(v); }
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational inverse(const Rational& x) {
    if (x == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in Q");
    return 1 / x;
  }
  static std::string to_string(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
  }
  static Rational parse(const Field&, const std::string& s) {
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return Rational(boost::multiprecision::mpz_int(s));
      boost::multiprecision::mpz_int num(s.substr(0, slash)), den(s.substr(slash + 1));
      if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
      return Rational(num, den);
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const Error*>(&e)) throw;
      throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
    }
  }
};

template <>
struct ScalarTraits<Fp> {
  static constexpr FieldKind kind = FieldKind::prime;

  static Fp from_int(const Field& f, std::int64_t v) { return Fp(v, f.p); }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static Fp inverse(const Fp& x) { return x.inverse(); }
  static std::string to_string(const Fp& x) { return std::to_string(x.value()) + "/1"; }
  static Fp parse(const Field& f, const std::string& s) {
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return Fp(std::stoll(s), f.p);
      Fp num(std::stoll(s.substr(0, slash)), f.p), den(std::stoll(s.substr(slash + 1)), f.p);
      return num / den;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad residue '" + s + "'");
    }
  }
};

template <class K>
K scalar(const Field& f, std::int64_t v) {
  return ScalarTraits<K>::from_int(f, v);
}

template <class K>
bool is_zero(const K& x) {
  return ScalarTraits<K>::is_zero(x);
}

template <class K>
std::string to_string(const K& x) {
  return ScalarTraits<K>::to_string(x);
}

}  // namespace bicotrace
