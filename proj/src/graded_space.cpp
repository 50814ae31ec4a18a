#include "ainf/graded_space.hpp"

#include <algorithm>

namespace ainf {

GradedSpace::GradedSpace(std::vector<std::string> labels, std::vector<int> degrees)
    : labels_(std::move(labels)), degrees_(std::move(degrees)) {
  if (labels_.empty()) throw InvariantError("space-nonempty", "a graded space needs at least one basis element");
  if (labels_.size() != degrees_.size()) throw DomainError("labels and degrees differ in length");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw InvariantError("space-labels", "empty basis label");
    if (!index_.emplace(labels_[i], i).second)
      throw InvariantError("space-labels-unique", "duplicate basis label \"" + labels_[i] + "\"");
  }
  min_degree_ = *std::min_element(degrees_.begin(), degrees_.end());
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
}

size_t GradedSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ParseError("unknown basis label \"" + label + "\"");
  return it->second;
}

std::optional<size_t> GradedSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SpacePtr make_space(std::vector<std::pair<std::string, int>> basis) {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (auto& [l, d] : basis) {
    labels.push_back(l);
    degrees.push_back(d);
  }
  return std::make_shared<const GradedSpace>(std::move(labels), std::move(degrees));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || (a && b && *a == *b); }

int koszul_prefix_sign(const std::vector<int>& degrees, size_t j) {
  if (j > degrees.size()) throw DomainError("koszul_prefix_sign: index out of range");
  int e = 0;
  for (size_t i = 0; i < j; ++i) e += degrees[i] - 1;
  return sign_of_parity(e & 1);
}

Element Element::zero(SpacePtr space) {
  Element e;
  e.coeffs.assign(space->dim(), Form());
  e.space = std::move(space);
  return e;
}

Element Element::basis(SpacePtr space, size_t i, const Form& c) {
  Element e = zero(std::move(space));
  e.coeffs.at(i) = c;
  return e;
}

bool Element::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Form& f) { return f.is_zero(); });
}

std::optional<int> Element::homogeneous_degree() const {
  std::optional<int> deg;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& t : coeffs[i].terms()) {
      int d = space->degree(i) + t.degree();
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
  }
  return deg;
}

Element& Element::operator+=(const Element& o) {
  if (!same_space(space, o.space)) throw DomainError("adding elements of different spaces");
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  for (auto& f : coeffs) f *= c;
  return *this;
}

bool Element::operator==(const Element& o) const { return same_space(space, o.space) && coeffs == o.coeffs; }

std::string Element::str() const {
  std::string out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs[i].str() + ")*" + space->label(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace ainf
