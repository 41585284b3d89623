#pragma once

// Size accounting for finite averaging sets over U^⊗t and L^⊗t.
//
// D(d, r, s) denotes the dimension of span{U^⊗r ⊗ conj(U)^⊗s : U ∈ U(d)}.
// The universal finite set for U^⊗t has D(d, t, 0) elements; the lower bound
// on the size of a unitary t-design is D(d, ⌈t/2⌉, ⌊t/2⌋).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufavg/numerics.hpp"
#include "ufavg/schur.hpp"

namespace ufavg {

class InsufficientSamplesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// D(d, t, 0) = binom(d² + t - 1, t).
std::uint64_t universal_set_size(int d, int t);

/// D(d, 1, 1) = d⁴ - 2d² + 2.
std::uint64_t lower_bound_t2(int d);

/// Weyl dimension of the U(d) irrep with the given non-increasing highest weight.
std::uint64_t weyl_dimension(const std::vector<int>& highest_weight);

/// D(d, r, s) as Σ dim(μ)² over the U(d) irreps μ occurring in V^⊗r ⊗ V*^⊗s,
/// i.e. the mixed weights (α, 0, ..., 0, -β^rev) with α ⊢ r-j, β ⊢ s-j.
std::uint64_t mixed_span_dimension(int d, int r, int s);

/// Numerical rank of {vec(U_i^⊗r ⊗ conj(U_i)^⊗s)} for Haar U_i. Samples are
/// consumed in batches of d^(2(r+s)); stops once the rank is unchanged for
/// three consecutive batches, and throws InsufficientSamplesError if the
/// budget runs out while the rank is still growing.
std::size_t operator_span_dim(int d, int r, int s, std::size_t samples, std::uint64_t seed,
                              const TolerancePolicy& policy = {});

/// Σ_k (D_G^k)².
std::uint64_t sector_term_count(const SchurBasis& basis);

struct SizeRow {
  int d = 0;
  int t = 0;
  std::uint64_t universal = 0;
  std::uint64_t bound = 0;
  std::optional<std::uint64_t> known_unitary;
  std::optional<std::uint64_t> known_sl;
  std::string bound_source;                      // "closed-form" (t = 2) or "weyl-dimension"
  std::string known_source = "table-citation";  // literature constants, not recomputed
};

/// The eleven (d, t) rows of the size comparison table.
std::vector<SizeRow> emit_table();

/// D(d,2,0) / D(d,1,1).
double t2_size_ratio(int d);

std::string size_table_csv(const std::vector<SizeRow>& rows);

}  // namespace ufavg
