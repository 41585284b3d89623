#pragma once

// Dense complex linear algebra shared by every ufavg module.
//
// ComplexMatrix is a small row-major value type. Dimensions in this library
// never exceed a few thousand rows, so everything is dense and copied freely.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ufavg {

using Complex = std::complex<double>;

/// Thrown when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by gram_schmidt when a vector lies in the span of its predecessors.
class LinearDependenceError : public std::runtime_error {
 public:
  LinearDependenceError(std::size_t index, double residual);

  std::size_t index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t index_;
  double residual_;
};

struct TolerancePolicy {
  double eq_tol = 1e-10;
  double rank_tol = 1e-9;

  /// Throws std::invalid_argument unless 0 < tol < 1e-2 for both fields.
  void validate() const;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major `entries`; rejects size mismatch and
  /// non-finite values.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix column(std::span<const Complex> values);
  /// Computational basis column vector |index> in dimension n.
  static ComplexMatrix basis_vector(std::size_t n, std::size_t index);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  /// this += scale * other, without a temporary.
  void add_scaled(const ComplexMatrix& other, Complex scale);

  bool all_finite() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// a ⊗ a ⊗ ... (`power` factors); power 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, int power);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a† b).
Complex frob_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frob_norm(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// Largest |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

/// Eigenvalues of the Hermitian part of `a`, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Row-major flattening into a single column.
ComplexMatrix vectorize(const ComplexMatrix& a);
/// Σ_i |v_i><v_i| for column vectors v_i.
ComplexMatrix projector_onto(std::span<const ComplexMatrix> vectors);
/// |a><b| for column vectors.
ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b);

struct GramSchmidtResult {
  std::vector<ComplexMatrix> vectors;
  /// coefficients(i, j) is the weight of input i in output j.
  ComplexMatrix coefficients;
};

/// Classical Gram–Schmidt in input order with one re-orthogonalization pass.
/// The expansion coefficients depend only on the Gram matrix of the input,
/// so two families with equal Gram matrices are orthonormalized identically.
GramSchmidtResult gram_schmidt_with_coefficients(std::span<const ComplexMatrix> vectors,
                                                 const TolerancePolicy& policy = {});
std::vector<ComplexMatrix> gram_schmidt(std::span<const ComplexMatrix> vectors,
                                        const TolerancePolicy& policy = {});

/// Number of singular values above rank_tol times the largest one, for the
/// matrix whose columns are the flattened inputs.
std::size_t numerical_rank(std::span<const ComplexMatrix> vectors, const TolerancePolicy& policy = {});

std::string to_string(const ComplexMatrix& a, int precision = 4);

}  // namespace ufavg
