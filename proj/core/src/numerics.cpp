#include "ufavg/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace ufavg {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMatrix to_eigen(const ComplexMatrix& a) {
  EigenMatrix m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  std::copy(a.data().begin(), a.data().end(), m.data());
  return m;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

LinearDependenceError::LinearDependenceError(std::size_t index, double residual)
    : std::runtime_error("gram_schmidt: vector " + std::to_string(index) +
                         " is linearly dependent on its predecessors (residual " +
                         std::to_string(residual) + ")"),
      index_(index),
      residual_(residual) {}

void TolerancePolicy::validate() const {
  auto ok = [](double v) { return v > 0.0 && v < 1e-2; };
  if (!ok(eq_tol) || !ok(rank_tol)) {
    throw std::invalid_argument("TolerancePolicy: tolerances must lie in (0, 1e-2)");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
  }
  if (!all_finite()) {
    throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::basis_vector(std::size_t n, std::size_t index) {
  ComplexMatrix v(n, 1);
  v(index, 0) = 1.0;
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

void ComplexMatrix::add_scaled(const ComplexMatrix& other, Complex scale) {
  require_same_shape(*this, other, "add_scaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scale) { return a *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out = &c(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Complex aij = a(i1, j1);
      for (std::size_t i2 = 0; i2 < rb; ++i2) {
        for (std::size_t j2 = 0; j2 < cb; ++j2) {
          out(i1 * rb + i2, j1 * cb + j2) = aij * b(i2, j2);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int power) {
  if (power < 0) throw std::invalid_argument("kron_power: negative power");
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int i = 0; i < power; ++i) out = kron(out, a);
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& z : out.data()) z = std::conj(z);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Complex frob_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frob_inner");
  Complex acc{};
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) acc += std::conj(da[i]) * db[i];
  return acc;
}

double frob_norm(const ComplexMatrix& a) { return std::sqrt(frob_inner(a, a).real()); }

Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace: matrix is not square");
  Complex acc{};
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, i);
  return acc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() && max_abs_diff(a, adjoint(a)) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return a.is_square() && max_abs_diff(adjoint(a) * a, ComplexMatrix::identity(a.rows())) <= tol;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  EigenMatrix m = to_eigen(a);
  EigenMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.empty()) return {};
  Eigen::BDCSVD<EigenMatrix> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

ComplexMatrix vectorize(const ComplexMatrix& a) {
  return ComplexMatrix(a.size(), 1, std::vector<Complex>(a.data().begin(), a.data().end()));
}

ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1) throw DimensionError("outer: expected column vectors");
  ComplexMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = a(i, 0) * std::conj(b(j, 0));
  return out;
}

ComplexMatrix projector_onto(std::span<const ComplexMatrix> vectors) {
  if (vectors.empty()) throw std::invalid_argument("projector_onto: no vectors");
  const std::size_t n = vectors.front().rows();
  ComplexMatrix p(n, n);
  for (const auto& v : vectors) p += outer(v, v);
  return p;
}

GramSchmidtResult gram_schmidt_with_coefficients(std::span<const ComplexMatrix> vectors,
                                                 const TolerancePolicy& policy) {
  const std::size_t count = vectors.size();
  GramSchmidtResult result;
  result.coefficients = ComplexMatrix(count, count);
  if (count == 0) return result;

  const std::size_t dim = vectors.front().rows();
  for (const auto& v : vectors) {
    if (v.cols() != 1 || v.rows() != dim) {
      throw DimensionError("gram_schmidt: inputs must be column vectors of equal length");
    }
  }

  auto& coeff = result.coefficients;
  auto& out = result.vectors;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    ComplexMatrix w = vectors[j];
    const double input_norm = frob_norm(w);
    // Column j of coeff tracks w as a combination of the inputs.
    std::vector<Complex> combo(count);
    combo[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<Complex> proj(out.size());
      for (std::size_t i = 0; i < out.size(); ++i) proj[i] = frob_inner(out[i], w);
      for (std::size_t i = 0; i < out.size(); ++i) {
        w.add_scaled(out[i], -proj[i]);
        for (std::size_t r = 0; r < count; ++r) combo[r] -= proj[i] * coeff(r, i);
      }
    }
    const double residual = frob_norm(w);
    if (input_norm == 0.0 || residual < policy.rank_tol * input_norm) {
      throw LinearDependenceError(j, input_norm == 0.0 ? 0.0 : residual / input_norm);
    }
    w *= 1.0 / residual;
    for (std::size_t r = 0; r < count; ++r) coeff(r, j) = combo[r] / residual;
    out.push_back(std::move(w));
  }
  return result;
}

std::vector<ComplexMatrix> gram_schmidt(std::span<const ComplexMatrix> vectors,
                                        const TolerancePolicy& policy) {
  return gram_schmidt_with_coefficients(vectors, policy).vectors;
}

std::size_t numerical_rank(std::span<const ComplexMatrix> vectors, const TolerancePolicy& policy) {
  if (vectors.empty()) throw std::invalid_argument("numerical_rank: empty input");
  const std::size_t len = vectors.front().size();
  EigenMatrix stacked(static_cast<Eigen::Index>(len), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != len) throw DimensionError("numerical_rank: unequal vector lengths");
    auto d = vectors[j].data();
    for (std::size_t i = 0; i < len; ++i) {
      stacked(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d[i];
    }
  }
  Eigen::BDCSVD<EigenMatrix> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = policy.rank_tol * sv(0);
  return static_cast<std::size_t>((sv.array() > cutoff).count());
}

std::string to_string(const ComplexMatrix& a, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      os << a(i, j) << (j + 1 < a.cols() ? ", " : "");
    }
    os << (i + 1 < a.rows() ? "\n" : "]");
  }
  return os.str();
}

}  // namespace ufavg
