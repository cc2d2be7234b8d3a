#pragma once

#include <vector>

#include "koszulkit/field.hpp"
#include "koszulkit/polynomial.hpp"

namespace kk::ca {

struct GroebnerResult {
  std::vector<Polynomial> basis;  ///< reduced, monic, sorted by leading monomial (grevlex ascending)
  int trusted_degree = -1;        ///< -1 when complete in all degrees
};

/// Reduced Gröbner basis of a homogeneous ideal for grevlex. When
/// degree_bound >= 0, S-pairs above that degree are skipped and the result is
/// only a Gröbner basis through that degree. Throws std::invalid_argument on
/// non-homogeneous input.
GroebnerResult buchberger(const la::Field& f, const std::vector<Polynomial>& relations, int degree_bound = -1);

/// Full reduction of p modulo a list of polynomials with monic leading terms.
Polynomial reduce_fully(const la::Field& f, const Polynomial& p, const std::vector<Polynomial>& basis);

}  // namespace kk::ca
