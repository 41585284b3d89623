#pragma once

// Acceptance criteria and structural invariant checks, shared by the
// acceptance test binary and `ufavg verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufavg/channels.hpp"
#include "ufavg/numerics.hpp"
#include "ufavg/schur.hpp"

namespace ufavg {

struct CheckResult {
  std::string id;     // e.g. "AC2" or "basis/completeness"
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double runtime_limit = 0.0;  // 0 means unbounded
};

struct VerifyConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 100000;
  QuadratureSpec quadrature;
  TolerancePolicy policy;
  bool enforce_runtime = true;
};

/// The eight acceptance criteria in order.
std::vector<CheckResult> run_acceptance(const VerifyConfig& config);

CheckResult check_schur_golden(const VerifyConfig& config);
CheckResult check_oracle_triangle(const VerifyConfig& config);
CheckResult check_one_design(const VerifyConfig& config);
CheckResult check_beta_reproduction(const VerifyConfig& config);
CheckResult check_noncompact_consistency(const VerifyConfig& config);
CheckResult check_size_table(const VerifyConfig& config);
CheckResult check_structural_invariants(const VerifyConfig& config);
CheckResult check_trace_behavior(const VerifyConfig& config);

/// Named invariants of a single basis: orthonormality, completeness,
/// sector-dimensions, row-invariance, lambda-alignment, projector-identity,
/// commutation, block-orthogonality, term-count.
std::vector<CheckResult> check_basis_invariants(const SchurBasis& basis, const VerifyConfig& config);

/// Channel-level properties beyond the acceptance criteria: equivariance of
/// the output, positivity, and independence from the choice of operator basis.
std::vector<CheckResult> check_channel_invariants(const VerifyConfig& config);

/// Seeded random density matrices.
std::vector<DensityMatrix> random_states(std::size_t dim, std::size_t count, std::uint64_t seed);

/// β values quoted for the SL(2,C) filter family at t = 4.
inline constexpr double kReferenceBeta[3] = {0.30036, 0.14652, 0.12290};

}  // namespace ufavg
