#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "ufavg/channels.hpp"
#include "ufavg/random.hpp"
#include "ufavg/verify.hpp"

using namespace ufavg;

namespace {

struct Fixture {
  explicit Fixture(int t) : s(build_schur_basis(2, t)), bases(heisenberg_weyl_bases(s)), set(s, bases) {}
  SchurOperatorSet s;
  std::vector<UnitaryOperatorBasis> bases;
  FiniteAveragingSet set;
};

Fixture& fixture(int t) {
  static std::map<int, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[t];
  if (!slot) slot = std::make_unique<Fixture>(t);
  return *slot;
}

ComplexMatrix pure(std::size_t dim, std::size_t index) {
  const auto v = ComplexMatrix::basis_vector(dim, index);
  return outer(v, v);
}

// e·E_p(1) = ∫_1^∞ x^{-p} e^{1-x} dx via E_{p+1}(1) = (e^{-1} - E_p(1)) / p,
// which is stable in the increasing direction.
double shifted_expint(int p) {
  const double e_inv = std::exp(-1.0);
  if (p == 0) return 1.0;
  double ep = 0.219383934395520273677163775460;  // E_1(1)
  for (int n = 1; n < p; ++n) ep = (e_inv - ep) / n;
  return ep / e_inv;
}

// Tr(Π̂_k (AA†)^⊗t) / D^k for A = diag(1, x^-2): sector of spin j holds the
// weights with n = t/2 - j, ..., t/2 + j excitations, each once per copy.
double analytic_normalized_beta(int t, int j) {
  double sum = 0.0;
  for (int n = t / 2 - j; n <= t / 2 + j; ++n) sum += shifted_expint(4 * n);
  return sum / (2 * j + 1);
}

}  // namespace

TEST(Channels, MaximallyMixedStateIsFixed) {
  for (int t = 2; t <= 4; ++t) {
    auto& f = fixture(t);
    const std::size_t n = f.s.space_dimension();
    const DensityMatrix rho(ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
    EXPECT_LE(max_abs_diff(compact_finite_twirl(rho, f.s, f.set).state, rho.matrix()), 1e-12);
    EXPECT_LE(max_abs_diff(haar_projection_twirl(rho, f.s).state, rho.matrix()), 1e-12);
  }
}

TEST(Channels, ProductZeroStateMapsToSymmetricProjector) {
  auto& f = fixture(4);
  const DensityMatrix rho(pure(16, 0));
  const auto out = compact_finite_twirl(rho, f.s, f.set);
  ASSERT_EQ(out.sector_weights.size(), 3u);
  EXPECT_NEAR(out.sector_weights[0], 1.0, 1e-12);
  EXPECT_NEAR(out.sector_weights[1], 0.0, 1e-12);
  EXPECT_NEAR(out.sector_weights[2], 0.0, 1e-12);
  EXPECT_LE(max_abs_diff(out.state, f.s.sector_projector(0) * Complex(0.2)), 1e-12);
  EXPECT_EQ(out.terms, 35u);
}

TEST(Channels, FiniteTwirlEqualsHaarProjectionOnRandomStates) {
  for (int t = 2; t <= 5; ++t) {
    auto& f = fixture(t);
    for (const auto& rho : random_states(f.s.space_dimension(), 20, 300 + t)) {
      EXPECT_LE(max_abs_diff(compact_finite_twirl(rho, f.s, f.set).state, haar_projection_twirl(rho, f.s).state),
                1e-10);
    }
  }
}

TEST(Channels, OutputIsInvariantUnderCollectiveUnitaries) {
  auto& f = fixture(3);
  const auto states = random_states(8, 5, 17);
  for (std::uint64_t i = 0; i < 20; ++i) {
    Engine rng = substream(400, i);
    const auto u = haar_unitary(2, rng);
    const auto& rho = states[i % states.size()];
    const auto out = compact_finite_twirl(rho, f.s, f.set).state;
    EXPECT_LE(max_abs_diff(conjugate_by_tensor_power(out, u, 3), out), 1e-10);
    // Twirling is also invariant under pre-rotation of the input.
    const DensityMatrix rotated(conjugate_by_tensor_power(rho.matrix(), u, 3));
    EXPECT_LE(max_abs_diff(compact_finite_twirl(rotated, f.s, f.set).state, out), 1e-10);
  }
}

TEST(Channels, AnyUnitaryOperatorBasisGivesTheSameChannel) {
  auto& f = fixture(4);
  auto bases = f.bases;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    Engine rng = substream(500, k);
    const auto w = haar_unitary(bases[k].dim, rng);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto& g : bases[k].elements) g = std::polar(1.0, angle(rng)) * (w * conjugate(g) * adjoint(w));
    ASSERT_TRUE(bases[k].is_valid(1e-10));
  }
  const FiniteAveragingSet alt(f.s, bases);
  for (const auto& rho : random_states(16, 5, 501)) {
    EXPECT_LE(max_abs_diff(compact_finite_twirl(rho, f.s, alt).state, compact_finite_twirl(rho, f.s, f.set).state),
              1e-10);
  }
}

TEST(Channels, NonBasisSetIsNotATwirl) {
  // Repeating the identity D² times is not a 1-design; the result must differ.
  auto& f = fixture(2);
  std::vector<UnitaryOperatorBasis> fake;
  for (std::size_t k = 0; k < f.s.sector_count(); ++k) {
    const std::size_t dg = f.s.dim_irrep(k);
    fake.push_back({dg, std::vector<ComplexMatrix>(dg * dg, ComplexMatrix::identity(dg))});
  }
  const FiniteAveragingSet bad(f.s, fake);
  const DensityMatrix rho(pure(4, 1));
  EXPECT_GT(max_abs_diff(compact_finite_twirl(rho, f.s, bad).state, haar_projection_twirl(rho, f.s).state), 1e-3);
}

TEST(Channels, MismatchedBasisDimensionsThrow) {
  auto& f = fixture(2);
  std::vector<UnitaryOperatorBasis> wrong{heisenberg_weyl(2), heisenberg_weyl(1)};
  EXPECT_THROW(FiniteAveragingSet(f.s, wrong), DimensionError);
  EXPECT_THROW(FiniteAveragingSet(f.s, {heisenberg_weyl(3)}), DimensionError);
  const DensityMatrix rho(pure(8, 0));
  EXPECT_THROW(compact_finite_twirl(rho, f.s, f.set), DimensionError);
}

TEST(Channels, InvalidStatesNameTheViolatedInvariant) {
  auto check = [](const ComplexMatrix& m, const std::string& invariant) {
    try {
      DensityMatrix rho(m);
      ADD_FAILURE() << "expected InvalidStateError for " << invariant;
    } catch (const InvalidStateError& e) {
      EXPECT_EQ(e.invariant(), invariant);
    }
  };
  ComplexMatrix non_herm = pure(2, 0);
  non_herm(0, 1) = 0.3;
  check(non_herm, "hermitian");
  check(pure(2, 0) * Complex(1.1), "trace");
  ComplexMatrix negative(2, 2);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  check(negative, "positivity");
  check(ComplexMatrix(2, 3), "square");
  // Within tolerance is accepted.
  EXPECT_NO_THROW(DensityMatrix(pure(2, 0) * Complex(1.0 + 5e-9)));
}

TEST(Channels, MonteCarloIsSeedDeterministicAndBatchConsistent) {
  const auto states = random_states(4, 3, 9);
  const auto batch = mc_haar_twirl(states, 2, 500, 21);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto single = mc_haar_twirl(states[i], 2, 500, 21);
    EXPECT_EQ(max_abs_diff(single.state, batch[i].state), 0.0);
  }
  EXPECT_GT(max_abs_diff(mc_haar_twirl(states[0], 2, 500, 22).state, batch[0].state), 0.0);
  EXPECT_EQ(batch[0].terms, 500u);
  EXPECT_EQ(batch[0].std_error.size(), 16u);
}

TEST(Channels, SingletPairSectorWeightsAgreeWithMonteCarlo) {
  auto& f = fixture(4);
  ComplexMatrix psi(16, 1);
  const double h = 0.5;
  psi(0b0101, 0) = h;
  psi(0b0110, 0) = -h;
  psi(0b1001, 0) = -h;
  psi(0b1010, 0) = h;
  const DensityMatrix rho(outer(psi, psi));
  const auto exact = haar_projection_twirl(rho, f.s);
  // Two singlets have no weight on the symmetric sector.
  EXPECT_NEAR(exact.sector_weights[0], 0.0, 1e-12);
  const std::size_t samples = 20000;
  const auto mc = mc_haar_twirl(rho, 4, samples, 3);
  EXPECT_LE(max_abs_diff(mc.state, exact.state), mc_tolerance(samples));
  const auto mc_weights = sector_traces(f.s, mc.state);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(mc_weights[k], exact.sector_weights[k], 1e-10);
}

TEST(Channels, MonteCarloToleranceScalesWithSamples) {
  EXPECT_DOUBLE_EQ(mc_tolerance(100000), 5e-3);
  EXPECT_NEAR(mc_tolerance(1000), 5e-3 * 10.0, 1e-15);
  EXPECT_THROW(mc_tolerance(0), std::invalid_argument);
}

TEST(Beta, MatchesExponentialIntegralOracle) {
  for (int t = 2; t <= 4; t += 2) {
    auto& f = fixture(t);
    // Default rule: accurate to its own refinement limit. A finer rule
    // converges to the closed form.
    const auto beta = beta_weights(f.s, sl2c_filter_family(), t);
    const auto fine = beta_weights(f.s, sl2c_filter_family(), t, {40.0, 256});
    ASSERT_EQ(beta.normalized.size(), f.s.sector_count());
    for (std::size_t k = 0; k < f.s.sector_count(); ++k) {
      const int j = t / 2 - static_cast<int>(k);
      const double exact = analytic_normalized_beta(t, j);
      EXPECT_NEAR(beta.normalized[k], exact, kQuadratureRefinementLimit) << "t=" << t << " k=" << k;
      EXPECT_NEAR(fine.normalized[k], exact, 1e-12) << "t=" << t << " k=" << k;
      EXPECT_NEAR(beta.raw[k], beta.normalized[k] * static_cast<double>(beta.sector_dims[k]), 1e-12);
    }
    EXPECT_LT(beta.refinement_delta, kQuadratureRefinementLimit);
    EXPECT_NEAR(beta.measure_mass, 1.0, 1e-12);
  }
}

TEST(Beta, ReferenceValuesAtFourQubits) {
  const auto beta = beta_weights(fixture(4).s, sl2c_filter_family(), 4);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(beta.normalized[k], kReferenceBeta[k], 1e-4);
}

TEST(Beta, TwoQubitValuesDecreaseWithSpin) {
  const auto beta = beta_weights(fixture(2).s, sl2c_filter_family(), 2);
  ASSERT_EQ(beta.normalized.size(), 2u);
  for (double b : beta.normalized) {
    EXPECT_GT(b, 0.0);
    EXPECT_LE(b, 1.0);
  }
  EXPECT_GT(beta.normalized[0], beta.normalized[1]);
}

TEST(Beta, IdentityFamilyGivesUnitWeights) {
  const auto beta = beta_weights(fixture(4).s, identity_family(), 4);
  for (double b : beta.normalized) EXPECT_NEAR(b, 1.0, 1e-12);
  for (double p : beta.probabilities(Convention::Raw)) EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(Beta, RejectsCoarseQuadratureAndMismatchedT) {
  auto& f = fixture(4);
  EXPECT_THROW(beta_weights(f.s, sl2c_filter_family(), 4, {40.0, 16}), std::invalid_argument);
  EXPECT_THROW(beta_weights(f.s, sl2c_filter_family(), 3), DimensionError);
}

TEST(Beta, RefinementFailureIsReported) {
  // A tiny cut-off still converges in the node count; a huge one with the
  // minimum node count does not resolve e^{-x}.
  auto& f = fixture(4);
  EXPECT_THROW(beta_weights(f.s, sl2c_filter_family(), 4, {4000.0, 32}), QuadratureError);
}

TEST(Noncompact, IdentityFamilyReducesToCompactTwirl) {
  auto& f = fixture(3);
  const auto beta = beta_weights(f.s, identity_family(), 3);
  for (const auto& rho : random_states(8, 5, 600)) {
    const auto a = noncompact_finite_twirl(rho, f.s, f.set, beta, Convention::Raw);
    EXPECT_LE(max_abs_diff(a.state, compact_finite_twirl(rho, f.s, f.set).state), 1e-12);
  }
}

TEST(Noncompact, TraceIsWeightedSectorOccupation) {
  auto& f = fixture(4);
  const auto beta = beta_weights(f.s, sl2c_filter_family(), 4);
  for (Convention c : {Convention::Raw, Convention::Normalized}) {
    const auto p = beta.probabilities(c);
    for (const auto& rho : random_states(16, 5, 700)) {
      const auto out = noncompact_finite_twirl(rho, f.s, f.set, beta, c);
      double expected = 0.0;
      const auto occupation = sector_traces(f.s, rho.matrix());
      for (std::size_t k = 0; k < 3; ++k) expected += p[k] * occupation[k];
      EXPECT_NEAR(out.total_trace, expected, 1e-10);
      EXPECT_LT(out.total_trace, 1.0);
      EXPECT_GE(hermitian_eigenvalues(out.state).front(), -1e-10);
    }
  }
}

TEST(Noncompact, AmbiguousConventionIsAnError) {
  auto& f = fixture(4);
  const auto beta = beta_weights(f.s, sl2c_filter_family(), 4);
  const DensityMatrix rho(pure(16, 3));
  EXPECT_THROW(noncompact_finite_twirl(rho, f.s, f.set, beta, std::nullopt), ConventionError);
}

TEST(Noncompact, UnambiguousWhenReadingsCoincide) {
  // With unit sector dimensions both readings give the same p_k.
  auto& f = fixture(2);
  BetaWeights beta;
  beta.raw = {0.6, 0.2};
  beta.normalized = beta.raw;
  beta.sector_dims = {1, 1};
  const DensityMatrix rho(pure(4, 1));
  const auto out = noncompact_finite_twirl(rho, f.s, f.set, beta, std::nullopt);
  const auto occupation = sector_traces(f.s, rho.matrix());
  EXPECT_NEAR(out.total_trace, 0.6 * occupation[0] + 0.2 * occupation[1], 1e-12);
}

TEST(Noncompact, MonteCarloSelectsRawReading) {
  auto& f = fixture(2);
  const auto family = sl2c_filter_family();
  const auto beta = beta_weights(f.s, family, 2);
  const auto states = random_states(4, 3, 800);
  const auto sel = select_convention(states, f.s, f.set, beta, family, 2, 20000, 801);
  EXPECT_EQ(sel.selected, Convention::Raw);
  EXPECT_LE(sel.delta_raw, mc_tolerance(20000));
  EXPECT_GT(sel.delta_normalized, sel.delta_raw);
}

TEST(Conventions, ParseAndPrint) {
  EXPECT_EQ(parse_convention("raw"), Convention::Raw);
  EXPECT_EQ(parse_convention("normalized"), Convention::Normalized);
  EXPECT_FALSE(parse_convention("auto").has_value());
  EXPECT_EQ(to_string(Convention::Normalized), "normalized");
}
