#include "hk/ring.hpp"

namespace hk {

Ring Ring::modular(const mpz_class& m) {
  if (m < 2) throw Error("modulus must be at least 2");
  return Ring(Kind::Modular, m);
}

bool Ring::is_field() const {
  switch (kind_) {
    case Kind::Rational:
      return true;
    case Kind::Integer:
      return false;
    case Kind::Modular:
      return mpz_probab_prime_p(modulus_.get_mpz_t(), 40) != 0;
  }
  return false;
}

bool Ring::contains(const Scalar& x) const {
  switch (kind_) {
    case Kind::Rational:
      return true;
    case Kind::Integer:
      return x.get_den() == 1;
    case Kind::Modular:
      return x.get_den() == 1 && x >= 0 && x.get_num() < modulus_;
  }
  return false;
}

Scalar Ring::reduce(const Scalar& x) const {
  if (kind_ != Kind::Modular) return x;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_num().get_mpz_t(), modulus_.get_mpz_t());
  return Scalar(r);
}

Scalar Ring::normalize(const Scalar& x) const {
  Scalar c = x;
  c.canonicalize();
  if (kind_ != Kind::Rational && c.get_den() != 1)
    throw Error("non-integral value " + c.get_str() + " in ring " + name());
  return reduce(c);
}

bool Ring::is_unit(const Scalar& a) const {
  switch (kind_) {
    case Kind::Rational:
      return sgn(a) != 0;
    case Kind::Integer:
      return a == 1 || a == -1;
    case Kind::Modular: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integer:
      return "Z";
    case Kind::Rational:
      return "Q";
    case Kind::Modular:
      return "Z/" + modulus_.get_str();
  }
  return "?";
}

std::string Ring::format(const Scalar& x) const { return x.get_str(); }

Scalar Ring::parse(const std::string& text) const {
  Scalar v;
  if (text.empty() || v.set_str(text, 10) != 0 || v.get_den() == 0)
    throw Error("cannot parse ring element '" + text + "'");
  return normalize(v);
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace hk
