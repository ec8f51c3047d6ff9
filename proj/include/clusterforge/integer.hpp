#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace clusterforge {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Integer& z) { return sgn(z); }

// [z]_+ = max(z, 0)
inline Integer positive_part(const Integer& z) { return sgn(z) > 0 ? z : Integer(0); }

inline bool fits_int64(const Integer& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

inline std::optional<std::int64_t> to_int64(const Integer& z) {
  if (!fits_int64(z)) return std::nullopt;
  return static_cast<std::int64_t>(z.get_si());
}

inline Integer from_int64(std::int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Integer igcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer ilcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Exact quotient; caller guarantees divisibility.
inline Integer divexact(const Integer& a, const Integer& b) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace clusterforge
