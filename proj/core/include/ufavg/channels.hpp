#pragma once

// Twirling channels over collective group actions on (C^d)^⊗t.
//
// Finite constructions:
//   compact_finite_twirl     Σ_k (1/D_G²) Σ_l γ̃_l ρ γ̃_l†       (U(d), p_k = 1)
//   noncompact_finite_twirl  Σ_k p_k (1/D_G²) Σ_l γ̃_l ρ γ̃_l†   (SL(2,C) filtering)
// Oracles:
//   haar_projection_twirl    closed-form Haar twirl through the commutant basis
//   mc_haar_twirl            Monte-Carlo average of U^⊗t ρ U^⊗t†
//   mc_cartan_twirl          Monte-Carlo average of (S A_n S')^⊗t ρ (...)†

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufavg/numerics.hpp"
#include "ufavg/opbasis.hpp"

namespace ufavg {

/// Which reading of the β numerals feeds p_k = β_k / D^k.
///   Raw:        β_k = Tr(M̄ Π̂_k),        so p_k = Tr(M̄ Π̂_k) / D^k
///   Normalized: β_k = Tr(M̄ Π̂_k) / D^k,  so p_k = Tr(M̄ Π̂_k) / (D^k)²
enum class Convention { Raw, Normalized };

std::string_view to_string(Convention c);
std::optional<Convention> parse_convention(std::string_view name);

class InvalidStateError : public std::invalid_argument {
 public:
  InvalidStateError(std::string invariant, const std::string& detail);
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConventionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StateTolerance {
  double hermitian = 1e-8;
  double trace = 1e-8;
  double positivity = 1e-8;
};

/// Throws InvalidStateError naming "square", "hermitian", "trace" or "positivity".
void validate_density_matrix(const ComplexMatrix& m, const StateTolerance& tol = {});

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const StateTolerance& tol = {});

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

struct TwirlResult {
  std::string channel;
  ComplexMatrix state;
  std::vector<double> sector_weights;  // Tr(Π̂_k state); empty for Monte-Carlo channels
  double total_trace = 0.0;
  std::size_t terms = 0;    // unitaries in the finite set, or samples for Monte-Carlo
  std::optional<Convention> convention;
  std::optional<double> oracle_delta;
  std::vector<double> std_error;  // per-entry standard error, row-major; Monte-Carlo only
};

/// Tr(Π̂_k M) for every sector.
std::vector<double> sector_traces(const SchurOperatorSet& s, const ComplexMatrix& m);

/// The embedded operators γ̃_l^(k) for every sector, built once and reused.
class FiniteAveragingSet {
 public:
  FiniteAveragingSet(const SchurOperatorSet& s, const std::vector<UnitaryOperatorBasis>& bases);

  std::size_t sector_count() const { return sectors_.size(); }
  /// Σ_k (D_G^k)².
  std::size_t size() const;
  const std::vector<ComplexMatrix>& sector_elements(std::size_t k) const { return sectors_.at(k); }

  /// (1/D_G²) Σ_l γ̃_l X γ̃_l† on sector k.
  ComplexMatrix apply_sector(std::size_t k, const ComplexMatrix& x) const;

 private:
  std::vector<std::vector<ComplexMatrix>> sectors_;
};

TwirlResult compact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                 const std::vector<UnitaryOperatorBasis>& bases);
TwirlResult compact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                 const FiniteAveragingSet& set);

/// Σ_k (1/D_G^k) Σ_{λ1λ2} Tr(ρ Λ̂_k^{λ1λ2 †}) Λ̂_k^{λ1λ2}.
TwirlResult haar_projection_twirl(const DensityMatrix& rho, const SchurOperatorSet& s);

/// (V^⊗t) X (V^⊗t)† for a d×d matrix V, applied factor by factor.
ComplexMatrix conjugate_by_tensor_power(const ComplexMatrix& x, const ComplexMatrix& v, int t);

TwirlResult mc_haar_twirl(const DensityMatrix& rho, int t, std::size_t samples, std::uint64_t seed);
/// Same samples for every state; element i equals mc_haar_twirl(states[i], ...).
std::vector<TwirlResult> mc_haar_twirl(std::span<const DensityMatrix> states, int t, std::size_t samples,
                                       std::uint64_t seed);

/// Normalized non-compact Cartan factor A_n(x), x >= 1, with a probability
/// density on [1, ∞) and its inverse CDF for sampling.
struct AbelianFamily {
  std::string name;
  std::size_t local_dim = 2;
  std::function<ComplexMatrix(double)> element;
  std::function<double(double)> density;
  std::function<double(double)> inverse_cdf;  // u in (0, 1] -> x
};

/// A_n = diag(1, x^-2) with density e^{-x} / ∫_1^∞ e^{-x} dx.
AbelianFamily sl2c_filter_family();
/// A_n ≡ I with the same density.
AbelianFamily identity_family(std::size_t local_dim = 2);

struct QuadratureSpec {
  double x_max = 40.0;
  std::size_t nodes = 64;
};

/// M̄ = ∫ (A_n A_n†)^⊗t w(x) dx by Gauss–Legendre on [1, x_max].
ComplexMatrix averaged_filter(const AbelianFamily& family, int t, const QuadratureSpec& quad);

struct BetaWeights {
  std::vector<double> raw;          // Tr(M̄ Π̂_k)
  std::vector<double> normalized;   // raw_k / D^k
  std::vector<std::size_t> sector_dims;  // D^k = D_G^k D_C^k
  double refinement_delta = 0.0;    // max_k |normalized at nodes - normalized at 2·nodes|
  double measure_mass = 0.0;        // ∫ w(x) dx over [1, x_max]
  QuadratureSpec quadrature;

  std::vector<double> probabilities(Convention c) const;
};

inline constexpr double kQuadratureRefinementLimit = 1e-6;

/// Throws QuadratureError when the refinement check exceeds 1e-6.
BetaWeights beta_weights(const SchurOperatorSet& s, const AbelianFamily& family, int t,
                         const QuadratureSpec& quad = {});

/// Without an explicit convention the two readings must agree within eq_tol,
/// otherwise ConventionError is thrown.
TwirlResult noncompact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                    const FiniteAveragingSet& set, const BetaWeights& beta,
                                    std::optional<Convention> convention,
                                    const TolerancePolicy& policy = {});
TwirlResult noncompact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                    const std::vector<UnitaryOperatorBasis>& bases, const BetaWeights& beta,
                                    std::optional<Convention> convention,
                                    const TolerancePolicy& policy = {});

TwirlResult mc_cartan_twirl(const DensityMatrix& rho, int t, const AbelianFamily& family, std::size_t samples,
                            std::uint64_t seed);
std::vector<TwirlResult> mc_cartan_twirl(std::span<const DensityMatrix> states, int t,
                                         const AbelianFamily& family, std::size_t samples, std::uint64_t seed);

struct ConventionSelection {
  Convention selected = Convention::Raw;
  double delta_raw = 0.0;         // max-entry deviation from the Monte-Carlo oracle
  double delta_normalized = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Picks the convention whose finite twirl lies closest to mc_cartan_twirl
/// over `states`.
ConventionSelection select_convention(std::span<const DensityMatrix> states, const SchurOperatorSet& s,
                                      const FiniteAveragingSet& set, const BetaWeights& beta,
                                      const AbelianFamily& family, int t, std::size_t samples,
                                      std::uint64_t seed);

/// Max-entry tolerance for Monte-Carlo comparisons: 5e-3 at 1e5 samples,
/// scaled as 1/sqrt(samples).
double mc_tolerance(std::size_t samples);

}  // namespace ufavg
