#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

// Coordinates of the parameter spaces: intervals and squares use s (first) and t (second).
enum class Var : int { S = 0, T = 1 };

inline constexpr std::uint8_t kDs = 1;
inline constexpr std::uint8_t kDt = 2;

// One monomial  c * s^ps * t^pt * (ds)^a (dt)^b, with ds written before dt.
struct FormTerm {
  std::uint32_t key;  // (ps << 16) | (pt << 8) | mask
  Scalar c;

  int ps() const { return static_cast<int>(key >> 16); }
  int pt() const { return static_cast<int>((key >> 8) & 0xff); }
  std::uint8_t mask() const { return static_cast<std::uint8_t>(key & 0xff); }
  int degree() const { return __builtin_popcount(mask()); }
};

inline std::uint32_t form_key(int ps, int pt, std::uint8_t mask) {
  return (static_cast<std::uint32_t>(ps) << 16) | (static_cast<std::uint32_t>(pt) << 8) | mask;
}

// Polynomial differential form on [0,1]^2 with rational coefficients: an element of
// Q[s,t] (x) Lambda(ds,dt). This is the coefficient ring of every multilinear map in the
// library; plain maps use constants only.
class Form {
 public:
  Form() = default;
  Form(const Scalar& c);  // NOLINT: constants convert implicitly
  Form(long c) : Form(Scalar(c)) {}  // NOLINT

  static Form monomial(const Scalar& c, int ps, int pt, std::uint8_t mask);
  static Form var(Var v) { return v == Var::S ? monomial(1, 1, 0, 0) : monomial(1, 0, 1, 0); }
  static Form differential(Var v) { return monomial(1, 0, 0, v == Var::S ? kDs : kDt); }

  const std::vector<FormTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of 1).
  Scalar constant() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) { return a *= Scalar(-1); }
  friend Form operator*(Form a, const Scalar& c) { return a *= c; }
  friend Form operator*(const Scalar& c, Form a) { return a *= c; }
  friend Form operator*(const Form& a, const Form& b);
  friend bool operator==(const Form& a, const Form& b);

  // Parts by form degree / parity.
  Form degree_part(int m) const;
  Form parity_part(int parity) const;
  int max_degree() const;
  int max_poly_degree() const;
  bool has_differential(std::uint8_t bit) const;
  bool depends_on(Var v) const;

  // Exterior derivative d = d_s + d_t, and its two halves (derivative placed on the left).
  Form d() const { return d_part(Var::S) + d_part(Var::T); }
  Form d_part(Var v) const;
  // Partial derivative of the polynomial coefficients, leaving the form part alone.
  Form partial(Var v) const;
  // Contraction with the coordinate vector field of v.
  Form contract(Var v) const;
  // Antiderivative in v from 0 (form parts unchanged).
  Form antiderivative(Var v) const;
  // Pullback to the line {v = x}: substitutes x and kills dv.
  Form restrict(Var v, const Scalar& x) const;
  Form swap_vars() const;

  std::string str() const;

 private:
  void normalize();
  std::vector<FormTerm> terms_;  // sorted by key, no zero coefficients
};

}  // namespace ainf
