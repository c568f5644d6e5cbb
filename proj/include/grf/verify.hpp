#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grf/equilibria.hpp"

namespace grf {

/// One verified invariant: its worst observed defect against the pinned
/// tolerance.
struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0;
  double tol = 0;
  std::string note;
};

/// Algebraic identities of the ring operations on random elements:
/// associativity, distributivity, unit laws, adjoint involution and
/// product rule, trace cyclicity, the Frobenius pairing, Cauchy-Schwarz,
/// translation-matrix identities, coefficient reconstruction through the
/// matrices, and automorphism extension.
std::vector<CheckResult> verify_ring(const GroupPtr& group,
                                     std::uint64_t seed, int trials);

/// Flow-level invariants on short seeded runs: derivative cross-check,
/// norm conservation, variance monotonicity and its dissipation balance,
/// order-parameter growth, the variance identity, automorphism
/// equivariance, and stationarity in self-inverse commutative groups.
std::vector<CheckResult> verify_dynamics(const GroupPtr& group,
                                         std::uint64_t seed, int trials);

/// Null-space structure and classification: coset nullity vs. integer
/// elimination, basis annihilation, power inclusion, the cyclic-group
/// nullity formula, and classifier/residual agreement on rejected random
/// states and accepted constructed equilibria.
std::vector<CheckResult> verify_equilibria(const GroupPtr& group,
                                           std::uint64_t seed, int trials);

}  // namespace grf
