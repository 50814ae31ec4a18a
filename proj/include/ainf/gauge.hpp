#pragma once

#include <vector>

#include "ainf/field.hpp"

namespace ainf {

// Gauge action by exp(gamma) on a Maurer-Cartan field, computed modulo F_{K+1}:
//   sum_k ad_gamma^k(alpha) / k!  -  sum_k ad_gamma^k(d gamma) / (k+1)!
// The base grid must not use the path variable t. gamma has total degree 0 and every
// monomial of level >= 1; alpha has level >= 0.
Field gauge_exp(const Field& gamma, const Field& alpha0, int K);

// alpha_t = exp(t gamma) (*) alpha0 with t kept as a polynomial variable.
Field gauge_path(const Field& gamma, const Field& alpha0, int K);

// The element alpha_t - dt.gamma on (base grid) x [0,1]_t. (In the left-form convention used
// here dt stands to the left of gamma, which flips the sign of the "gamma dt" convention.)
Field gauge_path_element(const Field& gamma, const Field& alpha0, int K);

struct PathCheck {
  bool start_matches = false;          // alpha_t at t = 0 equals alpha0
  bool defect_zero = false;            // MC defect of the path element vanishes mod F_{K+1}
  std::vector<Scalar> samples;
  std::vector<bool> derivative_ok;     // d alpha_t/dt = -d gamma + [gamma, alpha_t] at each sample
  std::string witness;
  bool ok() const;
};

PathCheck mc_path_check(const Field& gamma, const Field& alpha0, int K, const std::vector<Scalar>& samples);

// Validation of the filtration hypotheses; throws DomainError / InvariantError.
void check_gauge_inputs(const Field& gamma, const Field& alpha0, int K);

}  // namespace ainf
