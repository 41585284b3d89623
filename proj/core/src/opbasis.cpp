#include "ufavg/opbasis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ufavg {

SchurOperatorSet::SchurOperatorSet(std::shared_ptr<const SchurBasis> basis) : basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("SchurOperatorSet: null basis");
}

SchurOperatorSet::SchurOperatorSet(SchurBasis basis)
    : SchurOperatorSet(std::make_shared<const SchurBasis>(std::move(basis))) {}

const SchurSector& SchurOperatorSet::sector(std::size_t k) const {
  if (k >= basis_->sectors.size()) {
    throw std::out_of_range("SchurOperatorSet: sector index " + std::to_string(k) + " out of range");
  }
  return basis_->sectors[k];
}

std::size_t SchurOperatorSet::dim_irrep(std::size_t k) const { return sector(k).dim_irrep; }
std::size_t SchurOperatorSet::multiplicity(std::size_t k) const { return sector(k).multiplicity; }

const ComplexMatrix& SchurOperatorSet::pi_op(std::size_t k, std::size_t m1, std::size_t m2) const {
  const auto& sec = sector(k);
  if (m1 >= sec.dim_irrep || m2 >= sec.dim_irrep) throw std::out_of_range("pi_op: m index out of range");
  return cached({Kind::Pi, k, m1, m2});
}

const ComplexMatrix& SchurOperatorSet::lambda_op(std::size_t k, std::size_t lambda1,
                                                 std::size_t lambda2) const {
  const auto& sec = sector(k);
  if (lambda1 >= sec.multiplicity || lambda2 >= sec.multiplicity) {
    throw std::out_of_range("lambda_op: λ index out of range");
  }
  return cached({Kind::Lambda, k, lambda1, lambda2});
}

const ComplexMatrix& SchurOperatorSet::sector_projector(std::size_t k) const {
  sector(k);
  return cached({Kind::Projector, k, 0, 0});
}

ComplexMatrix SchurOperatorSet::full_op(std::size_t k, std::size_t m1, std::size_t lambda1, std::size_t k2,
                                        std::size_t m2, std::size_t lambda2) const {
  const auto& a = sector(k);
  const auto& b = sector(k2);
  if (m1 >= a.dim_irrep || lambda1 >= a.multiplicity || m2 >= b.dim_irrep || lambda2 >= b.multiplicity) {
    throw std::out_of_range("full_op: index out of range");
  }
  return outer(a.vector(m1, lambda1), b.vector(m2, lambda2));
}

const ComplexMatrix& SchurOperatorSet::cached(const Key& key) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  auto built = std::make_unique<const ComplexMatrix>(build(key));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(key, std::move(built));
  return *it->second;
}

ComplexMatrix SchurOperatorSet::build(const Key& key) const {
  const auto [kind, k, a, b] = key;
  const auto& sec = basis_->sectors[k];
  const std::size_t n = basis_->dimension();
  ComplexMatrix out(n, n);
  switch (kind) {
    case Kind::Pi:
      for (std::size_t lambda = 0; lambda < sec.multiplicity; ++lambda) {
        out += outer(sec.vector(a, lambda), sec.vector(b, lambda));
      }
      break;
    case Kind::Lambda:
      for (std::size_t m = 0; m < sec.dim_irrep; ++m) out += outer(sec.vector(m, a), sec.vector(m, b));
      break;
    case Kind::Projector:
      out = sec.projector();
      break;
  }
  return out;
}

ComplexMatrix decompose_in_pi_basis(const SchurOperatorSet& s, std::size_t k, const ComplexMatrix& m) {
  const std::size_t dg = s.dim_irrep(k);
  const double dc = static_cast<double>(s.multiplicity(k));
  ComplexMatrix coeff(dg, dg);
  for (std::size_t m1 = 0; m1 < dg; ++m1) {
    for (std::size_t m2 = 0; m2 < dg; ++m2) {
      // Tr(M P†) = frob_inner(P, M).
      coeff(m1, m2) = frob_inner(s.pi_op(k, m1, m2), m) / dc;
    }
  }
  return coeff;
}

ComplexMatrix reconstruct_from_pi_basis(const SchurOperatorSet& s, std::size_t k,
                                        const ComplexMatrix& coefficients) {
  const std::size_t dg = s.dim_irrep(k);
  if (coefficients.rows() != dg || coefficients.cols() != dg) {
    throw DimensionError("reconstruct_from_pi_basis: coefficient matrix must be D_G x D_G");
  }
  const std::size_t n = s.space_dimension();
  ComplexMatrix out(n, n);
  for (std::size_t m1 = 0; m1 < dg; ++m1) {
    for (std::size_t m2 = 0; m2 < dg; ++m2) {
      const Complex c = coefficients(m1, m2);
      if (c != Complex{}) out.add_scaled(s.pi_op(k, m1, m2), c);
    }
  }
  return out;
}

bool UnitaryOperatorBasis::is_valid(double tol) const {
  if (elements.size() != dim * dim) return false;
  for (const auto& g : elements) {
    if (g.rows() != dim || !is_unitary(g, tol)) return false;
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const Complex expected = i == j ? Complex(static_cast<double>(dim)) : Complex{};
      if (std::abs(frob_inner(elements[i], elements[j]) - expected) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix shift_operator(std::size_t dim) {
  ComplexMatrix x(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) x((n + 1) % dim, n) = 1.0;
  return x;
}

ComplexMatrix clock_operator(std::size_t dim) {
  ComplexMatrix z(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    z(n, n) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(dim));
  }
  return z;
}

UnitaryOperatorBasis heisenberg_weyl(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("heisenberg_weyl: dimension must be positive");
  const ComplexMatrix x = shift_operator(dim);
  const ComplexMatrix z = clock_operator(dim);
  UnitaryOperatorBasis basis{dim, {}};
  basis.elements.reserve(dim * dim);
  ComplexMatrix z_pow = ComplexMatrix::identity(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexMatrix x_pow = ComplexMatrix::identity(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      // ω^{ij} with the exponent reduced mod D keeps the phase exact for small D.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * j) % dim) / static_cast<double>(dim);
      basis.elements.push_back(std::polar(1.0, angle) * (z_pow * x_pow));
      x_pow = x * x_pow;
    }
    z_pow = z * z_pow;
  }
  return basis;
}

std::vector<UnitaryOperatorBasis> heisenberg_weyl_bases(const SchurOperatorSet& s) {
  std::vector<UnitaryOperatorBasis> out;
  out.reserve(s.sector_count());
  for (std::size_t k = 0; k < s.sector_count(); ++k) out.push_back(heisenberg_weyl(s.dim_irrep(k)));
  return out;
}

ComplexMatrix embed_gamma(const SchurOperatorSet& s, std::size_t k, const ComplexMatrix& gamma) {
  if (gamma.rows() != s.dim_irrep(k) || gamma.cols() != s.dim_irrep(k)) {
    throw DimensionError("embed_gamma: operator must be D_G^k x D_G^k for sector " + std::to_string(k));
  }
  return reconstruct_from_pi_basis(s, k, gamma);
}

}  // namespace ufavg
