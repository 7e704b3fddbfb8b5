#pragma once

#include "purif/constants.hpp"

namespace purif {

enum class ReplicaLimit { FM = 0, BR = 1 };

// <S_n> in the N -> 0 (FM) or N -> 1 (BR) limit, from the interpolated coefficients.
ScalingSeries renyi_series(int n, ReplicaLimit limit, int beta, int order);

// Orders available from closed forms: 4 for BR, 2 for FM.
int vn_max_order(ReplicaLimit limit);

// von Neumann entropy for beta = 1. BR uses -d/dN (M_N / Omega_N) at N = 1 with the closed
// forms of M_N and Omega_N; FM uses the n -> 1 limit of the generic-n bracket at N = 0.
ScalingSeries vn_series(ReplicaLimit limit, int beta, int order);

// Generic-n bracket route to the von Neumann entropy at any replica N, order <= 2.
ScalingSeries vn_series_from_bracket(const ExactScalar& N, int order);

// Generic-n bracket evaluated at integer n >= 2 for cross-checks against renyi_series.
ScalingSeries renyi_series_from_bracket(int n, const ExactScalar& N);

}  // namespace purif
