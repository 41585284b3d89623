#include <gtest/gtest.h>

#include <algorithm>

#include "ufavg/verify.hpp"

using namespace ufavg;

namespace {

const CheckResult& find(const std::vector<CheckResult>& results, const std::string& id) {
  const auto it = std::find_if(results.begin(), results.end(), [&](const auto& r) { return r.id == id; });
  if (it == results.end()) throw std::runtime_error("missing check " + id);
  return *it;
}

}  // namespace

TEST(Verify, BuiltBasesPassEveryInvariant) {
  for (int t = 1; t <= 4; ++t) {
    for (const auto& r : check_basis_invariants(build_schur_basis(2, t), {})) {
      EXPECT_TRUE(r.passed) << "t=" << t << " " << r.id << ": " << r.detail;
    }
  }
}

TEST(Verify, ReferenceBasisHasConsistentSectors) {
  // Only label-independent checks apply: the hand-written m-labels need not
  // align the λ copies.
  const auto results = check_basis_invariants(reference_basis_t4(), {});
  EXPECT_TRUE(find(results, "basis/orthonormality").passed);
  EXPECT_TRUE(find(results, "basis/completeness").passed);
  EXPECT_TRUE(find(results, "basis/term-count").passed);
}

TEST(Verify, CorruptedBasisFailsCompleteness) {
  auto basis = build_schur_basis(2, 3);
  basis.sectors[1].vectors[0] = basis.sectors[0].vectors[0];
  const auto results = check_basis_invariants(basis, {});
  EXPECT_FALSE(find(results, "basis/completeness").passed);
  EXPECT_FALSE(find(results, "basis/orthonormality").passed);
}

TEST(Verify, WrongVectorCountStopsEarly) {
  auto basis = build_schur_basis(2, 2);
  basis.sectors[0].vectors.pop_back();
  const auto results = check_basis_invariants(basis, {});
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].id, "basis/sector-dimensions");
  EXPECT_FALSE(results[0].passed);
}

TEST(Verify, ChannelInvariantsHold) {
  for (const auto& r : check_channel_invariants({})) EXPECT_TRUE(r.passed) << r.id << ": " << r.detail;
}

TEST(Verify, FastCriteriaPass) {
  VerifyConfig cfg;
  for (const auto& r : {check_schur_golden(cfg), check_one_design(cfg), check_beta_reproduction(cfg),
                        check_size_table(cfg), check_trace_behavior(cfg)}) {
    EXPECT_TRUE(r.passed) << r.id << ": " << r.detail;
  }
}

TEST(Verify, RandomStatesAreSeeded) {
  const auto a = random_states(4, 2, 5);
  const auto b = random_states(4, 2, 5);
  EXPECT_EQ(max_abs_diff(a[1].matrix(), b[1].matrix()), 0.0);
}
