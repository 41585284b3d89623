#pragma once

// Schur operator bases and unitary operator bases.
//
//   pi_op(k, m1, m2)      = Σ_λ |k,m1,λ><k,m2,λ|   (spans the group algebra on sector k)
//   lambda_op(k, λ1, λ2)  = Σ_m |k,m,λ1><k,m,λ2|   (spans the commutant on sector k)
//   full_op(k,m1,λ1,k',m2,λ2) = |k,m1,λ1><k',m2,λ2|
//
// Operators are built on first use and memoized; the cache is guarded by a
// mutex and entries are never evicted, so returned references stay valid for
// the lifetime of the set.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "ufavg/numerics.hpp"
#include "ufavg/schur.hpp"

namespace ufavg {

class SchurOperatorSet {
 public:
  explicit SchurOperatorSet(std::shared_ptr<const SchurBasis> basis);
  explicit SchurOperatorSet(SchurBasis basis);

  SchurOperatorSet(const SchurOperatorSet&) = delete;
  SchurOperatorSet& operator=(const SchurOperatorSet&) = delete;

  const SchurBasis& basis() const { return *basis_; }
  std::size_t sector_count() const { return basis_->sectors.size(); }
  std::size_t dim_irrep(std::size_t k) const;
  std::size_t multiplicity(std::size_t k) const;
  std::size_t space_dimension() const { return basis_->dimension(); }

  const ComplexMatrix& pi_op(std::size_t k, std::size_t m1, std::size_t m2) const;
  const ComplexMatrix& lambda_op(std::size_t k, std::size_t lambda1, std::size_t lambda2) const;
  ComplexMatrix full_op(std::size_t k, std::size_t m1, std::size_t lambda1, std::size_t k2,
                        std::size_t m2, std::size_t lambda2) const;
  /// Π̂_k.
  const ComplexMatrix& sector_projector(std::size_t k) const;

 private:
  enum class Kind { Pi, Lambda, Projector };
  using Key = std::tuple<Kind, std::size_t, std::size_t, std::size_t>;

  const SchurSector& sector(std::size_t k) const;
  const ComplexMatrix& cached(const Key& key) const;
  ComplexMatrix build(const Key& key) const;

  std::shared_ptr<const SchurBasis> basis_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::unique_ptr<const ComplexMatrix>> cache_;
};

/// K_{m1 m2} = Tr(M Π̂_k^{m1m2 †}) / D_C^k. For M in the span of the group
/// action (e.g. U^⊗t) the coefficients reconstruct Π̂_k M Π̂_k exactly.
ComplexMatrix decompose_in_pi_basis(const SchurOperatorSet& s, std::size_t k, const ComplexMatrix& m);

/// Σ_{m1,m2} K_{m1m2} Π̂_k^{m1m2}.
ComplexMatrix reconstruct_from_pi_basis(const SchurOperatorSet& s, std::size_t k,
                                        const ComplexMatrix& coefficients);

/// D² unitaries on C^D, pairwise orthogonal in the Frobenius inner product.
struct UnitaryOperatorBasis {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> elements;

  /// Checks unitarity and frob_inner(γ_i, γ_j) = D δ_ij within tol.
  bool is_valid(double tol) const;
};

/// Shift X|n> = |n+1 mod D>.
ComplexMatrix shift_operator(std::size_t dim);
/// Clock Z|n> = ω^n |n>, ω = exp(2πi/D).
ComplexMatrix clock_operator(std::size_t dim);

/// {ω^{ij} Z^i X^j}, element index i·D + j.
UnitaryOperatorBasis heisenberg_weyl(std::size_t dim);

/// One Heisenberg–Weyl basis per sector, sized D_G^k.
std::vector<UnitaryOperatorBasis> heisenberg_weyl_bases(const SchurOperatorSet& s);

/// γ̃ = Σ γ_{m1m2} Π̂_k^{m1m2}: γ acting on the irrep factor of sector k,
/// zero outside the sector.
ComplexMatrix embed_gamma(const SchurOperatorSet& s, std::size_t k, const ComplexMatrix& gamma);

}  // namespace ufavg
