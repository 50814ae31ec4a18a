#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ainf/form.hpp"

namespace ainf {

// Finite graded vector space given by an ordered basis of labelled homogeneous vectors.
class GradedSpace {
 public:
  GradedSpace(std::vector<std::string> labels, std::vector<int> degrees);

  size_t dim() const { return labels_.size(); }
  const std::string& label(size_t i) const { return labels_[i]; }
  int degree(size_t i) const { return degrees_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

  // Throws ParseError for an unknown label.
  size_t index_of(const std::string& label) const;
  std::optional<size_t> find(const std::string& label) const;

  bool operator==(const GradedSpace& o) const { return labels_ == o.labels_ && degrees_ == o.degrees_; }

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::map<std::string, size_t> index_;
  int min_degree_ = 0;
  int max_degree_ = 0;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::vector<std::pair<std::string, int>> basis);
bool same_space(const SpacePtr& a, const SpacePtr& b);

// (-1)^(sum_{i<j} (degrees[i]-1)), i.e. the sign of the first j inputs.
int koszul_prefix_sign(const std::vector<int>& degrees, size_t j);

// Vector in V with form-valued coefficients. Plain vectors have constant coefficients.
struct Element {
  SpacePtr space;
  std::vector<Form> coeffs;

  static Element zero(SpacePtr space);
  static Element basis(SpacePtr space, size_t i, const Form& c = Form(1));

  bool is_zero() const;
  // Total degree (basis degree + form degree) if every nonzero term agrees.
  std::optional<int> homogeneous_degree() const;
  Element& operator+=(const Element& o);
  Element& operator*=(const Scalar& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  bool operator==(const Element& o) const;
  std::string str() const;
};

}  // namespace ainf
