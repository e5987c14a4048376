#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hk {

/// Raised on malformed input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact scalars are stored as GMP rationals; the owning Ring decides which
/// values are admissible and how results are reduced.
using Scalar = mpq_class;

/// An exact commutative ring: the integers, the rationals, or Z/m.
class Ring {
 public:
  enum class Kind { Integer, Rational, Modular };

  static Ring integers() { return Ring(Kind::Integer, 0); }
  static Ring rationals() { return Ring(Kind::Rational, 0); }
  /// m >= 2; m need not be prime.
  static Ring modular(const mpz_class& m);

  Kind kind() const { return kind_; }
  const mpz_class& modulus() const { return modulus_; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  bool is_field() const;

  bool contains(const Scalar& x) const;
  /// Canonical representative; throws if x is not an element of this ring.
  Scalar normalize(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool is_unit(const Scalar& a) const;

  /// "Z", "Q" or "Z/m".
  std::string name() const;
  std::string format(const Scalar& x) const;
  Scalar parse(const std::string& text) const;

  bool operator==(const Ring& other) const = default;

 private:
  Ring(Kind kind, const mpz_class& m) : kind_(kind), modulus_(m) {}
  Scalar reduce(const Scalar& x) const;

  Kind kind_;
  mpz_class modulus_;
};

/// Floor division for integers, as used by the normal-form algorithms.
mpz_class floor_div(const mpz_class& a, const mpz_class& b);

}  // namespace hk
