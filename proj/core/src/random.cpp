#include "ufavg/random.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ufavg {

Engine substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, Engine& rng) {
  ComplexMatrix q = ginibre(n, n, rng);
  // Modified Gram–Schmidt on columns is QR with a positive diagonal in R,
  // which is exactly the phase fix that makes Q Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex dot{};
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
      for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

Complex determinant(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant: matrix is not square");
  if (a.rows() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  using M = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const M> m(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                        static_cast<Eigen::Index>(a.cols()));
  return m.determinant();
}

ComplexMatrix haar_special_unitary(std::size_t n, Engine& rng) {
  ComplexMatrix u = haar_unitary(n, rng);
  const Complex det = determinant(u);
  const Complex root = std::polar(1.0, -std::arg(det) / static_cast<double>(n));
  return u * root;
}

ComplexMatrix random_density_matrix(std::size_t dim, Engine& rng) {
  ComplexMatrix g = ginibre(dim, dim, rng);
  ComplexMatrix rho = g * adjoint(g);
  rho *= 1.0 / trace(rho).real();
  return rho;
}

ComplexMatrix random_pure_state(std::size_t dim, Engine& rng) {
  ComplexMatrix psi = ginibre(dim, 1, rng);
  psi *= 1.0 / frob_norm(psi);
  return outer(psi, psi);
}

}  // namespace ufavg
