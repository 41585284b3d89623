#include "ufavg/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ufavg/quadrature.hpp"
#include "ufavg/random.hpp"

namespace ufavg {

namespace {

std::size_t local_dimension(std::size_t total, int t) {
  if (t < 1) throw std::invalid_argument("tensor power t must be >= 1");
  const auto guess = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(total), 1.0 / t)));
  for (std::size_t d = std::max<std::size_t>(guess, 2) - 1; d <= guess + 1; ++d) {
    std::size_t p = 1;
    for (int i = 0; i < t; ++i) p *= d;
    if (p == total) return d;
  }
  throw DimensionError("state dimension " + std::to_string(total) + " is not a t-th power (t = " +
                       std::to_string(t) + ")");
}

void require_space(const DensityMatrix& rho, const SchurOperatorSet& s) {
  if (rho.dim() != s.space_dimension()) {
    throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                         " does not match Schur basis dimension " + std::to_string(s.space_dimension()));
  }
}

// Left-multiply rows of x by v acting on tensor factor q.
void apply_left(ComplexMatrix& x, const ComplexMatrix& v, std::size_t d, std::size_t stride,
                std::vector<Complex>& buf) {
  const std::size_t n = x.rows();
  const std::size_t cols = x.cols();
  const std::size_t block = stride * d;
  for (std::size_t hi = 0; hi < n; hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const std::size_t base = hi + lo;
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t b = 0; b < d; ++b) buf[b] = x(base + b * stride, c);
        for (std::size_t a = 0; a < d; ++a) {
          Complex acc{};
          for (std::size_t b = 0; b < d; ++b) acc += v(a, b) * buf[b];
          x(base + a * stride, c) = acc;
        }
      }
    }
  }
}

// Right-multiply columns of x by v† acting on tensor factor q.
void apply_right_adjoint(ComplexMatrix& x, const ComplexMatrix& v, std::size_t d, std::size_t stride,
                         std::vector<Complex>& buf) {
  const std::size_t n = x.cols();
  const std::size_t block = stride * d;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t hi = 0; hi < n; hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        for (std::size_t b = 0; b < d; ++b) buf[b] = x(r, base + b * stride);
        for (std::size_t a = 0; a < d; ++a) {
          Complex acc{};
          for (std::size_t b = 0; b < d; ++b) acc += buf[b] * std::conj(v(a, b));
          x(r, base + a * stride) = acc;
        }
      }
    }
  }
}

struct MonteCarloAccumulator {
  ComplexMatrix sum;
  std::vector<double> sum_sq;

  explicit MonteCarloAccumulator(std::size_t n) : sum(n, n), sum_sq(n * n, 0.0) {}

  void add(const ComplexMatrix& x) {
    auto dx = x.data();
    auto ds = sum.data();
    for (std::size_t i = 0; i < dx.size(); ++i) {
      ds[i] += dx[i];
      sum_sq[i] += std::norm(dx[i]);
    }
  }

  TwirlResult finish(std::string channel, std::size_t samples) && {
    const double inv = 1.0 / static_cast<double>(samples);
    TwirlResult r;
    r.channel = std::move(channel);
    r.state = std::move(sum);
    r.state *= inv;
    r.std_error.resize(sum_sq.size());
    auto mean = r.state.data();
    for (std::size_t i = 0; i < sum_sq.size(); ++i) {
      double var = sum_sq[i] * inv - std::norm(mean[i]);
      if (samples > 1) var *= static_cast<double>(samples) / static_cast<double>(samples - 1);
      r.std_error[i] = std::sqrt(std::max(var, 0.0) * inv);
    }
    r.total_trace = trace(r.state).real();
    r.terms = samples;
    return r;
  }
};

// Shared Monte-Carlo driver: `draw` produces the d×d element for sample i.
template <typename Draw>
std::vector<TwirlResult> monte_carlo(std::span<const DensityMatrix> states, int t, std::size_t samples,
                                     std::uint64_t seed, const std::string& channel, Draw&& draw) {
  if (samples < 1) throw std::invalid_argument(channel + ": need at least one sample");
  if (states.empty()) return {};
  const std::size_t n = states.front().dim();
  for (const auto& rho : states) {
    if (rho.dim() != n) throw DimensionError(channel + ": states of unequal dimension");
  }
  const std::size_t d = local_dimension(n, t);

  std::vector<MonteCarloAccumulator> acc;
  acc.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) acc.emplace_back(n);

  for (std::size_t i = 0; i < samples; ++i) {
    Engine rng = substream(seed, i);
    const ComplexMatrix v = draw(rng, d);
    for (std::size_t j = 0; j < states.size(); ++j) {
      acc[j].add(conjugate_by_tensor_power(states[j].matrix(), v, t));
    }
  }

  std::vector<TwirlResult> out;
  out.reserve(states.size());
  for (auto& a : acc) out.push_back(std::move(a).finish(channel, samples));
  return out;
}

TwirlResult finish_finite(std::string channel, ComplexMatrix state, const SchurOperatorSet& s,
                          std::size_t terms) {
  TwirlResult r;
  r.channel = std::move(channel);
  r.sector_weights = sector_traces(s, state);
  r.total_trace = trace(state).real();
  r.state = std::move(state);
  r.terms = terms;
  return r;
}

}  // namespace

std::string_view to_string(Convention c) { return c == Convention::Raw ? "raw" : "normalized"; }

std::optional<Convention> parse_convention(std::string_view name) {
  if (name == "raw") return Convention::Raw;
  if (name == "normalized") return Convention::Normalized;
  return std::nullopt;
}

InvalidStateError::InvalidStateError(std::string invariant, const std::string& detail)
    : std::invalid_argument("invalid density matrix (" + invariant + "): " + detail),
      invariant_(std::move(invariant)) {}

void validate_density_matrix(const ComplexMatrix& m, const StateTolerance& tol) {
  if (!m.is_square() || m.empty()) throw InvalidStateError("square", "matrix must be square and non-empty");
  if (!m.all_finite()) throw InvalidStateError("finite", "non-finite entry");
  const double herm = max_abs_diff(m, adjoint(m));
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "max |rho - rho^dagger| = " << herm;
    throw InvalidStateError("hermitian", os.str());
  }
  const double tr = trace(m).real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "trace = " << tr;
    throw InvalidStateError("trace", os.str());
  }
  const auto ev = hermitian_eigenvalues(m);
  if (!ev.empty() && ev.front() < -tol.positivity) {
    std::ostringstream os;
    os << "smallest eigenvalue = " << ev.front();
    throw InvalidStateError("positivity", os.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, const StateTolerance& tol) : mat_(std::move(m)) {
  validate_density_matrix(mat_, tol);
}

std::vector<double> sector_traces(const SchurOperatorSet& s, const ComplexMatrix& m) {
  std::vector<double> out(s.sector_count());
  for (std::size_t k = 0; k < s.sector_count(); ++k) out[k] = frob_inner(s.sector_projector(k), m).real();
  return out;
}

FiniteAveragingSet::FiniteAveragingSet(const SchurOperatorSet& s, const std::vector<UnitaryOperatorBasis>& bases) {
  if (bases.size() != s.sector_count()) {
    throw DimensionError("FiniteAveragingSet: need one unitary operator basis per sector");
  }
  sectors_.resize(bases.size());
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const std::size_t dg = s.dim_irrep(k);
    if (bases[k].dim != dg || bases[k].elements.size() != dg * dg) {
      throw DimensionError("FiniteAveragingSet: basis for sector " + std::to_string(k) + " has dimension " +
                           std::to_string(bases[k].dim) + ", sector needs " + std::to_string(dg));
    }
    sectors_[k].reserve(bases[k].elements.size());
    for (const auto& gamma : bases[k].elements) sectors_[k].push_back(embed_gamma(s, k, gamma));
  }
}

std::size_t FiniteAveragingSet::size() const {
  std::size_t total = 0;
  for (const auto& sec : sectors_) total += sec.size();
  return total;
}

ComplexMatrix FiniteAveragingSet::apply_sector(std::size_t k, const ComplexMatrix& x) const {
  const auto& elems = sectors_.at(k);
  ComplexMatrix out(x.rows(), x.cols());
  for (const auto& g : elems) out += g * x * adjoint(g);
  out *= 1.0 / static_cast<double>(elems.size());
  return out;
}

TwirlResult compact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                 const FiniteAveragingSet& set) {
  require_space(rho, s);
  if (set.sector_count() != s.sector_count()) throw DimensionError("compact_finite_twirl: sector count mismatch");
  ComplexMatrix out(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < set.sector_count(); ++k) out += set.apply_sector(k, rho.matrix());
  auto r = finish_finite("compact", std::move(out), s, set.size());
  return r;
}

TwirlResult compact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                 const std::vector<UnitaryOperatorBasis>& bases) {
  return compact_finite_twirl(rho, s, FiniteAveragingSet(s, bases));
}

TwirlResult haar_projection_twirl(const DensityMatrix& rho, const SchurOperatorSet& s) {
  require_space(rho, s);
  ComplexMatrix out(rho.dim(), rho.dim());
  std::size_t terms = 0;
  for (std::size_t k = 0; k < s.sector_count(); ++k) {
    const double inv_dg = 1.0 / static_cast<double>(s.dim_irrep(k));
    const std::size_t dc = s.multiplicity(k);
    for (std::size_t l1 = 0; l1 < dc; ++l1) {
      for (std::size_t l2 = 0; l2 < dc; ++l2) {
        const auto& lam = s.lambda_op(k, l1, l2);
        out.add_scaled(lam, frob_inner(lam, rho.matrix()) * inv_dg);
        ++terms;
      }
    }
  }
  return finish_finite("haar", std::move(out), s, terms);
}

ComplexMatrix conjugate_by_tensor_power(const ComplexMatrix& x, const ComplexMatrix& v, int t) {
  const std::size_t d = v.rows();
  if (!v.is_square()) throw DimensionError("conjugate_by_tensor_power: factor must be square");
  std::size_t n = 1;
  for (int i = 0; i < t; ++i) n *= d;
  if (x.rows() != n || x.cols() != n) throw DimensionError("conjugate_by_tensor_power: dimension mismatch");

  ComplexMatrix out = x;
  std::vector<Complex> buf(d);
  std::size_t stride = n;
  for (int q = 0; q < t; ++q) {
    stride /= d;
    apply_left(out, v, d, stride, buf);
    apply_right_adjoint(out, v, d, stride, buf);
  }
  return out;
}

std::vector<TwirlResult> mc_haar_twirl(std::span<const DensityMatrix> states, int t, std::size_t samples,
                                       std::uint64_t seed) {
  return monte_carlo(states, t, samples, seed, "mc-haar",
                     [](Engine& rng, std::size_t d) { return haar_unitary(d, rng); });
}

TwirlResult mc_haar_twirl(const DensityMatrix& rho, int t, std::size_t samples, std::uint64_t seed) {
  return mc_haar_twirl(std::span<const DensityMatrix>(&rho, 1), t, samples, seed).front();
}

AbelianFamily sl2c_filter_family() {
  AbelianFamily f;
  f.name = "sl2c-filter";
  f.local_dim = 2;
  f.element = [](double x) {
    const std::vector<Complex> diag{1.0, 1.0 / (x * x)};
    return ComplexMatrix::diagonal(diag);
  };
  // e^{-x} / ∫_1^∞ e^{-x} dx = e^{1-x}.
  f.density = [](double x) { return x < 1.0 ? 0.0 : std::exp(1.0 - x); };
  f.inverse_cdf = [](double u) { return 1.0 - std::log(u); };
  return f;
}

AbelianFamily identity_family(std::size_t local_dim) {
  AbelianFamily f = sl2c_filter_family();
  f.name = "identity";
  f.local_dim = local_dim;
  f.element = [local_dim](double) { return ComplexMatrix::identity(local_dim); };
  return f;
}

ComplexMatrix averaged_filter(const AbelianFamily& family, int t, const QuadratureSpec& quad) {
  const auto rule = gauss_legendre(quad.nodes, 1.0, quad.x_max);
  ComplexMatrix total;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const ComplexMatrix a = family.element(x);
    ComplexMatrix term = kron_power(a * adjoint(a), t);
    term *= rule.weights[i] * family.density(x);
    if (total.empty()) {
      total = std::move(term);
    } else {
      total += term;
    }
  }
  return total;
}

std::vector<double> BetaWeights::probabilities(Convention c) const {
  std::vector<double> p(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double beta = c == Convention::Raw ? raw[k] : normalized[k];
    p[k] = beta / static_cast<double>(sector_dims[k]);
  }
  return p;
}

BetaWeights beta_weights(const SchurOperatorSet& s, const AbelianFamily& family, int t,
                         const QuadratureSpec& quad) {
  if (quad.nodes < 32) throw std::invalid_argument("beta_weights: quadrature needs at least 32 nodes");
  if (!(quad.x_max > 1.0)) throw std::invalid_argument("beta_weights: x_max must exceed 1");
  if (s.basis().t != t) throw DimensionError("beta_weights: Schur basis built for a different t");

  auto evaluate = [&](std::size_t nodes) {
    const ComplexMatrix m = averaged_filter(family, t, {quad.x_max, nodes});
    return sector_traces(s, m);
  };

  BetaWeights w;
  w.quadrature = quad;
  w.raw = evaluate(quad.nodes);
  const auto refined = evaluate(2 * quad.nodes);
  for (std::size_t k = 0; k < s.sector_count(); ++k) {
    const std::size_t dim = s.dim_irrep(k) * s.multiplicity(k);
    w.sector_dims.push_back(dim);
    w.normalized.push_back(w.raw[k] / static_cast<double>(dim));
    w.refinement_delta =
        std::max(w.refinement_delta, std::abs(w.normalized[k] - refined[k] / static_cast<double>(dim)));
  }
  const auto rule = gauss_legendre(quad.nodes, 1.0, quad.x_max);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) w.measure_mass += rule.weights[i] * family.density(rule.nodes[i]);

  if (w.refinement_delta > kQuadratureRefinementLimit) {
    std::ostringstream os;
    os << "beta_weights: quadrature did not converge (refinement delta " << w.refinement_delta << " > "
       << kQuadratureRefinementLimit << ")";
    throw QuadratureError(os.str());
  }
  return w;
}

TwirlResult noncompact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                    const FiniteAveragingSet& set, const BetaWeights& beta,
                                    std::optional<Convention> convention, const TolerancePolicy& policy) {
  require_space(rho, s);
  if (beta.raw.size() != s.sector_count()) throw DimensionError("noncompact_finite_twirl: β sector count mismatch");

  Convention chosen = Convention::Raw;
  if (convention) {
    chosen = *convention;
  } else {
    const auto a = beta.probabilities(Convention::Raw);
    const auto b = beta.probabilities(Convention::Normalized);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (std::abs(a[k] - b[k]) > policy.eq_tol) {
        throw ConventionError(
            "noncompact_finite_twirl: raw and normalized β readings disagree; choose a convention");
      }
    }
  }
  const auto p = beta.probabilities(chosen);

  ComplexMatrix out(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < set.sector_count(); ++k) {
    if (p[k] == 0.0) continue;
    out.add_scaled(set.apply_sector(k, rho.matrix()), p[k]);
  }
  auto r = finish_finite("noncompact", std::move(out), s, set.size());
  r.convention = chosen;
  return r;
}

TwirlResult noncompact_finite_twirl(const DensityMatrix& rho, const SchurOperatorSet& s,
                                    const std::vector<UnitaryOperatorBasis>& bases, const BetaWeights& beta,
                                    std::optional<Convention> convention, const TolerancePolicy& policy) {
  return noncompact_finite_twirl(rho, s, FiniteAveragingSet(s, bases), beta, convention, policy);
}

std::vector<TwirlResult> mc_cartan_twirl(std::span<const DensityMatrix> states, int t,
                                         const AbelianFamily& family, std::size_t samples, std::uint64_t seed) {
  return monte_carlo(states, t, samples, seed, "mc-cartan", [&family](Engine& rng, std::size_t d) {
    if (d != family.local_dim) throw DimensionError("mc_cartan_twirl: family acts on a different local dimension");
    const ComplexMatrix left = haar_special_unitary(d, rng);
    const ComplexMatrix right = haar_special_unitary(d, rng);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u = 1.0 - uniform(rng);  // (0, 1]
    return left * family.element(family.inverse_cdf(u)) * right;
  });
}

TwirlResult mc_cartan_twirl(const DensityMatrix& rho, int t, const AbelianFamily& family, std::size_t samples,
                            std::uint64_t seed) {
  return mc_cartan_twirl(std::span<const DensityMatrix>(&rho, 1), t, family, samples, seed).front();
}

ConventionSelection select_convention(std::span<const DensityMatrix> states, const SchurOperatorSet& s,
                                      const FiniteAveragingSet& set, const BetaWeights& beta,
                                      const AbelianFamily& family, int t, std::size_t samples,
                                      std::uint64_t seed) {
  if (states.empty()) throw std::invalid_argument("select_convention: no reference states");
  const auto oracle = mc_cartan_twirl(states, t, family, samples, seed);
  ConventionSelection sel;
  sel.samples = samples;
  sel.seed = seed;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto raw = noncompact_finite_twirl(states[i], s, set, beta, Convention::Raw);
    const auto norm = noncompact_finite_twirl(states[i], s, set, beta, Convention::Normalized);
    sel.delta_raw = std::max(sel.delta_raw, max_abs_diff(raw.state, oracle[i].state));
    sel.delta_normalized = std::max(sel.delta_normalized, max_abs_diff(norm.state, oracle[i].state));
  }
  sel.selected = sel.delta_raw <= sel.delta_normalized ? Convention::Raw : Convention::Normalized;
  return sel;
}

double mc_tolerance(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("mc_tolerance: zero samples");
  return 5e-3 * std::sqrt(1e5 / static_cast<double>(samples));
}

}  // namespace ufavg
