#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ainf {

// Exact rationals. mpq_class keeps values canonical (reduced, positive denominator).
using Scalar = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad rational literal, bad JSON shape, unknown label).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value was built but violates a named structural invariant.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

// Precondition failure of an operation (arity out of range, mismatched algebras, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parses "n", "-n" or "n/d" with d != 0.
Scalar parse_scalar(std::string_view text);

// "n" for integers, "n/d" otherwise.
std::string to_string(const Scalar& x);

// n/d in canonical form (the two-argument mpq_class constructor does not reduce).
inline Scalar frac(long n, long d) {
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

inline int sign_of_parity(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace ainf
