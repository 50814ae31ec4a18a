#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ainf/graded_space.hpp"

namespace ainf {

// Multilinear map V^{(x)n} -> W with coefficients in the form ring, stored densely on basis
// tuples. `shift` is the total degree shift: for every nonzero monomial
//   deg(out) + formdeg(coefficient) = sum deg(inputs) + shift.
// Constant maps are ordinary multilinear maps of degree `shift`.
class MultiMap {
 public:
  MultiMap() = default;
  MultiMap(SpacePtr src, SpacePtr dst, int arity, int shift);
  static MultiMap identity(SpacePtr space);

  const SpacePtr& src() const { return src_; }
  const SpacePtr& dst() const { return dst_; }
  int arity() const { return arity_; }
  int shift() const { return shift_; }
  // Shifted (Hochschild) degree ||f|| = shift + arity - 1.
  int shifted_degree() const { return shift_ + arity_ - 1; }
  size_t tuple_count() const { return tuples_; }

  std::vector<size_t> decode(size_t tuple) const;
  size_t encode(const std::vector<size_t>& inputs) const;
  int input_degree_sum(size_t tuple) const;

  const Form& at(size_t tuple, size_t out) const { return table_[tuple * dst_->dim() + out]; }
  Form& at(size_t tuple, size_t out) { return table_[tuple * dst_->dim() + out]; }
  const Form& at(const std::vector<size_t>& in, size_t out) const { return at(encode(in), out); }
  Form& at(const std::vector<size_t>& in, size_t out) { return at(encode(in), out); }
  // Adds c to a coefficient, checking homogeneity.
  void add(const std::vector<size_t>& in, size_t out, const Form& c);

  bool is_zero() const;
  bool is_constant() const;
  // First nonzero (tuple, out), used as a witness in reports.
  std::optional<std::pair<size_t, size_t>> first_nonzero() const;
  std::string witness_string(size_t tuple, size_t out) const;

  MultiMap& operator+=(const MultiMap& o);
  MultiMap& operator-=(const MultiMap& o);
  MultiMap& operator*=(const Scalar& c);
  friend MultiMap operator+(MultiMap a, const MultiMap& b) { return a += b; }
  friend MultiMap operator-(MultiMap a, const MultiMap& b) { return a -= b; }
  friend MultiMap operator-(MultiMap a) { return a *= Scalar(-1); }
  friend MultiMap operator*(const Scalar& c, MultiMap a) { return a *= c; }
  bool operator==(const MultiMap& o) const;
  bool operator!=(const MultiMap& o) const { return !(*this == o); }

  // Applies op to every coefficient; the result has total shift `new_shift`.
  MultiMap map_coefficients(const std::function<Form(const Form&)>& op, int new_shift) const;
  // omega * f, coefficient-wise left multiplication.
  MultiMap left_multiply(const Form& omega) const;
  // Part whose coefficients have the given form degree (shift unchanged).
  MultiMap form_degree_part(int m) const;
  int max_form_degree() const;

  // Checks the homogeneity invariant of every coefficient.
  void validate(const std::string& name = "map") const;
  std::string str() const;

 private:
  SpacePtr src_, dst_;
  int arity_ = 0;
  int shift_ = 0;
  size_t tuples_ = 0;
  std::vector<Form> table_;
};

// f with g inserted in slot j: f(a_1..a_j, g(a_{j+1}..), ...). When `signed_`, carries the
// Koszul sign (-1)^(||g|| * sum_{i<=j}(|a_i|-1)) and the signs of moving coefficient forms of
// g to the left of f.
MultiMap insert(const MultiMap& f, const MultiMap& g, int j, bool signed_ = true);

// f o (g_1 (x) ... (x) g_k); empty optional entries stand for the identity.
MultiMap compose_blocks(const MultiMap& f, const std::vector<const MultiMap*>& blocks);

// Multilinear evaluation with Koszul signs for form-valued arguments.
Element evaluate(const MultiMap& f, const std::vector<Element>& args);

}  // namespace ainf
