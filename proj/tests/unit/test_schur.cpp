#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "ufavg/random.hpp"
#include "ufavg/schur.hpp"

using namespace ufavg;

namespace {

// Every composition of t into exactly d non-negative parts, keeping the sorted ones.
std::vector<std::vector<int>> brute_force_partitions(int t, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d - 1) {
      parts[static_cast<std::size_t>(i)] = left;
      if (std::is_sorted(parts.rbegin(), parts.rend())) {
        std::vector<int> p;
        for (int x : parts)
          if (x > 0) p.push_back(x);
        out.push_back(p);
      }
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[static_cast<std::size_t>(i)] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, t);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::size_t hook_length_count(const std::vector<int>& rows) {
  int n = std::accumulate(rows.begin(), rows.end(), 0);
  double count = 1.0;
  for (int k = 2; k <= n; ++k) count *= k;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < rows[r]; ++c) {
      int below = 0;
      for (std::size_t r2 = r + 1; r2 < rows.size(); ++r2)
        if (rows[r2] > c) ++below;
      count /= rows[r] - c - 1 + below + 1;
    }
  }
  return static_cast<std::size_t>(std::llround(count));
}

ComplexMatrix swap_operator() {
  ComplexMatrix s(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) s(b * 2 + a, a * 2 + b) = 1.0;
  return s;
}

}  // namespace

TEST(Schur, DiagramsMatchBruteForcePartitions) {
  for (int d = 1; d <= 4; ++d) {
    for (int t = 1; t <= 7; ++t) {
      const auto got = enumerate_diagrams(t, d);
      const auto expected = brute_force_partitions(t, d);
      ASSERT_EQ(got.size(), expected.size()) << "d=" << d << " t=" << t;
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].rows, expected[i]);
    }
  }
}

TEST(Schur, StandardTableauxCountFollowsHookLengths) {
  for (int t = 1; t <= 6; ++t) {
    for (const auto& diagram : enumerate_diagrams(t, t)) {
      const auto tableaux = standard_tableaux(diagram);
      EXPECT_EQ(tableaux.size(), hook_length_count(diagram.rows));
      for (const auto& tab : tableaux) EXPECT_TRUE(is_standard(diagram, tab));
      EXPECT_TRUE(std::is_sorted(tableaux.begin(), tableaux.end()));
    }
  }
}

TEST(Schur, NonStandardTableauRejected) {
  const YoungDiagram d{{2, 1}};
  EXPECT_TRUE(is_standard(d, {{1, 2}, {3}}));
  EXPECT_FALSE(is_standard(d, {{2, 1}, {3}}));
  EXPECT_FALSE(is_standard(d, {{1, 3}, {2, 4}}));
}

TEST(Schur, PermutationOperatorMovesFactors) {
  // |a0 a1 a2> with perm {1,2,0}: factor 0 goes to slot 1, etc.
  const auto p = permutation_operator({1, 2, 0}, 2);
  const std::size_t in = 0b100;  // factor 0 holds |1>
  const std::size_t out = 0b010;  // which lands in slot 1
  EXPECT_EQ(p(out, in), Complex(1.0));
  EXPECT_TRUE(is_unitary(p, 1e-14));
}

TEST(Schur, YoungSymmetrizerIsQuasiIdempotent) {
  for (const auto& diagram : enumerate_diagrams(4, 2)) {
    for (const auto& tab : standard_tableaux(diagram)) {
      const auto y = young_projector(diagram, tab, 2);
      const auto y2 = y * y;
      // Y² = c Y with c read off any non-zero entry.
      std::size_t idx = 0;
      while (std::abs(y.data()[idx]) < 1e-12) ++idx;
      const Complex c = y2.data()[idx] / y.data()[idx];
      EXPECT_NEAR(c.imag(), 0.0, 1e-12);
      EXPECT_GT(c.real(), 0.0);
      EXPECT_LE(max_abs_diff(y2, y * c), 1e-9);
    }
  }
}

TEST(Schur, TwoQubitSectorsAreSwapEigenspaces) {
  const auto basis = build_schur_basis(2, 2);
  ASSERT_EQ(basis.sectors.size(), 2u);
  EXPECT_EQ(basis.sectors[0].dim_irrep, 3u);
  EXPECT_EQ(basis.sectors[0].multiplicity, 1u);
  EXPECT_EQ(basis.sectors[1].dim_irrep, 1u);
  EXPECT_EQ(basis.sectors[1].multiplicity, 1u);
  const auto id = ComplexMatrix::identity(4);
  const auto swap = swap_operator();
  EXPECT_LE(max_abs_diff(basis.sectors[0].projector(), (id + swap) * Complex(0.5)), 1e-12);
  EXPECT_LE(max_abs_diff(basis.sectors[1].projector(), (id - swap) * Complex(0.5)), 1e-12);
}

TEST(Schur, SectorDimensionsForQubits) {
  for (int t = 1; t <= 6; ++t) {
    const auto basis = build_schur_basis(2, t);
    std::size_t total = 0;
    for (const auto& sec : basis.sectors) {
      const int j = sec.diagram.depth() > 1 ? sec.diagram.rows[1] : 0;
      EXPECT_EQ(sec.dim_irrep, static_cast<std::size_t>(t - 2 * j + 1));
      EXPECT_EQ(sec.multiplicity, hook_length_count(sec.diagram.rows));
      total += sec.dimension();
    }
    EXPECT_EQ(total, std::size_t{1} << t);
  }
}

TEST(Schur, ReferenceBasisAtFourQubits) {
  const auto built = build_schur_basis(2, 4);
  const auto ref = reference_basis_t4();
  ASSERT_EQ(built.sectors.size(), 3u);
  ASSERT_EQ(ref.sectors.size(), 3u);
  const std::size_t dg[] = {5, 3, 1};
  const std::size_t dc[] = {1, 3, 2};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(built.sectors[k].dim_irrep, dg[k]);
    EXPECT_EQ(built.sectors[k].multiplicity, dc[k]);
    EXPECT_LE(max_abs_diff(built.sectors[k].projector(), ref.sectors[k].projector()), 1e-10);
  }
}

TEST(Schur, SingletPairSeedsSpanTheSpinZeroSector) {
  const YoungDiagram diagram{{2, 2}};
  const auto seeds = schur_seed_vectors(diagram, 2);
  ASSERT_EQ(seeds.size(), 2u);
  EXPECT_EQ(numerical_rank(seeds), 2u);
  const auto p = projector_onto(gram_schmidt(seeds));
  EXPECT_LE(max_abs_diff(p, reference_basis_t4().sectors[2].projector()), 1e-10);
}

TEST(Schur, ConstructionIsBitDeterministic) {
  const auto a = build_schur_basis(2, 5);
  const auto b = build_schur_basis(2, 5);
  ASSERT_EQ(a.sectors.size(), b.sectors.size());
  for (std::size_t k = 0; k < a.sectors.size(); ++k) {
    ASSERT_EQ(a.sectors[k].vectors.size(), b.sectors[k].vectors.size());
    for (std::size_t i = 0; i < a.sectors[k].vectors.size(); ++i) {
      EXPECT_EQ(max_abs_diff(a.sectors[k].vectors[i], b.sectors[k].vectors[i]), 0.0);
    }
  }
}

TEST(Schur, QuantumSchurTransformIsUnitary) {
  for (int t = 1; t <= 6; ++t) EXPECT_TRUE(is_unitary(build_schur_basis(2, t).transform(), 1e-10)) << t;
}

TEST(Schur, SectorProjectorsCommuteWithCollectiveUnitariesAndPermutations) {
  for (int t = 2; t <= 4; ++t) {
    const auto basis = build_schur_basis(2, t);
    std::vector<int> cycle(static_cast<std::size_t>(t));
    std::iota(cycle.begin(), cycle.end(), 1);
    cycle.back() = 0;
    const auto perm = permutation_operator(cycle, 2);
    for (std::uint64_t i = 0; i < 20; ++i) {
      Engine rng = substream(1234, i);
      const auto u = kron_power(haar_unitary(2, rng), t);
      for (const auto& sec : basis.sectors) {
        const auto p = sec.projector();
        EXPECT_LE(max_abs_diff(u * p, p * u), 1e-10);
        if (i == 0) EXPECT_LE(max_abs_diff(perm * p, p * perm), 1e-10);
      }
    }
  }
}

TEST(Schur, MultiplicitiesMatchPermutationSpan) {
  // The permutation operators span the commutant, of dimension Σ_k D_C².
  for (int t = 2; t <= 5; ++t) {
    std::vector<int> perm(static_cast<std::size_t>(t));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<ComplexMatrix> ops;
    do {
      ops.push_back(permutation_operator(perm, 2));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::size_t expected = 0;
    for (const auto& sec : build_schur_basis(2, t).sectors) expected += sec.multiplicity * sec.multiplicity;
    EXPECT_EQ(numerical_rank(ops), expected) << "t=" << t;
  }
}

TEST(Schur, OutsideEnvelopeIsUnsupported) {
  EXPECT_THROW(build_schur_basis(3, 4), UnsupportedError);
  EXPECT_THROW(build_schur_basis(2, 7), UnsupportedError);
  EXPECT_THROW(build_schur_basis(2, 0), UnsupportedError);
  EXPECT_TRUE(schur_envelope_contains(2, 6));
  EXPECT_FALSE(schur_envelope_contains(3, 2));
}

TEST(Schur, SingleQubitIsOneSector) {
  const auto basis = build_schur_basis(2, 1);
  ASSERT_EQ(basis.sectors.size(), 1u);
  EXPECT_EQ(basis.sectors[0].dim_irrep, 2u);
  EXPECT_EQ(basis.sectors[0].multiplicity, 1u);
}
