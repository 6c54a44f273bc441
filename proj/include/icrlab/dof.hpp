#pragma once

#include <array>
#include <vector>

#include "icrlab/errors.hpp"
#include "icrlab/rational.hpp"

namespace icrlab {

struct DofPoint {
    std::vector<Rational> d;

    Rational sum() const;
    bool operator==(const DofPoint& other) const = default;
};

// Per-user perfect-CSIT fractions the region bounds are parameterized by.
struct RegionSpec {
    int users = 0;
    std::vector<Rational> gamma;
};

// K^2 / (2K - 1), the scheme's sum DoF.
Rational achievable_dof(int users);

// (lambda_P, lambda_D, lambda_N) = ((K-1)^2/(2K^2-K), (K-1)/(2K-1), 1/K).
std::array<Rational, 3> icr_state_distribution(int users);

// All-delayed-CSIT baseline K / (1 + 1/2 + ... + 1/K).
Rational mat_dof(int users);

// Sum-DoF bound K (M + (min(M,K)-1) lambda) / (M+K-1) with lambda = min(M,K)/K
// for an M-antenna transmitter.
Rational tandon_bound(int antennas, int users);

// (K^2 + (K-1) sum_i gamma_i) / (2K - 1).
Rational upper_bound_total(const RegionSpec& spec);

// The 3-user region polytope: 0 <= d_i <= 1 and, for each i,
// 3 d_i + sum_{j != i} d_j <= 3 + 2 gamma_i.

// Maximizes d_1 + d_2 + d_3 by exact vertex enumeration; tie-broken to the
// lexicographically largest optimal vertex.
DofPoint dof_region_lp(const Rational& g1, const Rational& g2, const Rational& g3);

// d_i = (3 + 4 gamma_i - sum_{j != i} gamma_j) / 5, valid when all three sum
// constraints are the active set; throws ActiveSetViolation when any
// coordinate leaves [0, 1].
DofPoint closed_form_region(const Rational& g1, const Rational& g2, const Rational& g3);

// All vertices of the polytope, deduplicated and sorted lexicographically
// descending (the LP optimum is among them).
std::vector<DofPoint> region_vertices(const Rational& g1, const Rational& g2,
                                      const Rational& g3);

}  // namespace icrlab
