#include "ufavg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ufavg/opbasis.hpp"
#include "ufavg/random.hpp"
#include "ufavg/sizes.hpp"

namespace ufavg {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs `body`, which fills detail and returns pass/fail; exceptions fail the check.
CheckResult run_check(std::string id, std::string name, double runtime_limit, const VerifyConfig& config,
                      const std::function<bool(std::ostringstream&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.runtime_limit = runtime_limit;
  std::ostringstream detail;
  detail.precision(3);
  Stopwatch clock;
  try {
    r.passed = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    r.passed = false;
  }
  r.seconds = clock.seconds();
  if (config.enforce_runtime && runtime_limit > 0.0 && r.seconds > runtime_limit) {
    detail << "; runtime " << r.seconds << " s exceeds " << runtime_limit << " s";
    r.passed = false;
  }
  r.detail = detail.str();
  return r;
}

ComplexMatrix row_projector(const SchurSector& sec, std::size_t lambda) {
  std::vector<ComplexMatrix> row;
  for (std::size_t m = 0; m < sec.dim_irrep; ++m) row.push_back(sec.vector(m, lambda));
  return projector_onto(row);
}

}  // namespace

std::vector<DensityMatrix> random_states(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<DensityMatrix> states;
  states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Engine rng = substream(seed, i);
    states.emplace_back(random_density_matrix(dim, rng));
  }
  return states;
}

CheckResult check_schur_golden(const VerifyConfig& config) {
  return run_check("AC1", "Schur basis golden test (d=2, t=4)", 1.0, config, [&](std::ostringstream& os) {
    const SchurBasis built = build_schur_basis(2, 4, config.policy);
    const SchurBasis reference = reference_basis_t4();
    const std::vector<std::pair<std::size_t, std::size_t>> expected{{5, 1}, {3, 3}, {1, 2}};
    bool ok = built.sectors.size() == expected.size();
    for (std::size_t k = 0; ok && k < expected.size(); ++k) {
      ok = built.sectors[k].dim_irrep == expected[k].first && built.sectors[k].multiplicity == expected[k].second;
    }
    os << "dims " << (ok ? "(5,1),(3,3),(1,2)" : "MISMATCH");
    double worst = 0.0;
    for (std::size_t k = 0; ok && k < expected.size(); ++k) {
      worst = std::max(worst, max_abs_diff(built.sectors[k].projector(), reference.sectors[k].projector()));
    }
    os << "; max projector deviation " << worst;
    return ok && worst <= 1e-10;
  });
}

CheckResult check_oracle_triangle(const VerifyConfig& config) {
  return run_check("AC2", "oracle triangle: finite vs Haar projection vs Monte-Carlo", 120.0, config,
                   [&](std::ostringstream& os) {
                     const double mc_tol = mc_tolerance(config.samples);
                     bool ok = true;
                     for (int t = 2; t <= 4; ++t) {
                       const SchurOperatorSet s(build_schur_basis(2, t, config.policy));
                       const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
                       const auto states = random_states(s.space_dimension(), 20, config.seed + 1000 + t);
                       const auto mc = mc_haar_twirl(states, t, config.samples, config.seed + t);
                       double exact = 0.0;
                       double stochastic = 0.0;
                       for (std::size_t i = 0; i < states.size(); ++i) {
                         const auto finite = compact_finite_twirl(states[i], s, set);
                         const auto haar = haar_projection_twirl(states[i], s);
                         exact = std::max(exact, max_abs_diff(finite.state, haar.state));
                         stochastic = std::max(stochastic, max_abs_diff(finite.state, mc[i].state));
                         stochastic = std::max(stochastic, max_abs_diff(haar.state, mc[i].state));
                       }
                       os << "t=" << t << ": finite-vs-haar " << exact << ", mc " << stochastic << "; ";
                       ok = ok && exact <= 1e-10 && stochastic <= mc_tol;
                     }
                     os << "mc tolerance " << mc_tol << " at " << config.samples << " samples";
                     return ok;
                   });
}

CheckResult check_one_design(const VerifyConfig& config) {
  return run_check("AC3", "Heisenberg-Weyl 1-design identity (D=2,3,5)", 1.0, config, [&](std::ostringstream& os) {
    double worst = 0.0;
    for (std::size_t dim : {2u, 3u, 5u}) {
      const auto hw = heisenberg_weyl(dim);
      for (std::size_t i = 0; i < 20; ++i) {
        Engine rng = substream(config.seed + 77 * dim, i);
        const ComplexMatrix x = ginibre(dim, dim, rng);
        ComplexMatrix avg(dim, dim);
        for (const auto& g : hw.elements) avg += g * x * adjoint(g);
        avg *= 1.0 / static_cast<double>(dim * dim);
        const ComplexMatrix expected = ComplexMatrix::identity(dim) * (trace(x) / static_cast<double>(dim));
        worst = std::max(worst, max_abs_diff(avg, expected));
      }
    }
    os << "max deviation " << worst;
    return worst <= 1e-12;
  });
}

CheckResult check_beta_reproduction(const VerifyConfig& config) {
  return run_check("AC4", "beta reproduction for the SL(2,C) filter family (t=4)", 1.0, config,
                   [&](std::ostringstream& os) {
                     const SchurOperatorSet s(build_schur_basis(2, 4, config.policy));
                     const auto beta = beta_weights(s, sl2c_filter_family(), 4, config.quadrature);
                     double worst = 0.0;
                     os.precision(6);
                     os << "normalized (";
                     for (std::size_t k = 0; k < 3; ++k) {
                       worst = std::max(worst, std::abs(beta.normalized[k] - kReferenceBeta[k]));
                       os << beta.normalized[k] << (k < 2 ? ", " : ")");
                     }
                     os.precision(3);
                     os << "; max deviation " << worst << "; refinement delta " << beta.refinement_delta;
                     return worst <= 1e-4 && beta.refinement_delta < 1e-6;
                   });
}

CheckResult check_noncompact_consistency(const VerifyConfig& config) {
  return run_check("AC5", "non-compact finite twirl vs Monte-Carlo Cartan oracle", 180.0, config,
                   [&](std::ostringstream& os) {
                     const SchurOperatorSet s(build_schur_basis(2, 4, config.policy));
                     const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
                     const auto family = sl2c_filter_family();
                     const auto beta = beta_weights(s, family, 4, config.quadrature);
                     const auto states = random_states(s.space_dimension(), 10, config.seed + 5000);
                     const double tol = mc_tolerance(config.samples);

                     std::vector<ConventionSelection> picks;
                     for (std::uint64_t j = 0; j < 3; ++j) {
                       picks.push_back(select_convention(states, s, set, beta, family, 4, config.samples,
                                                         config.seed + 11 * (j + 1)));
                     }
                     const Convention chosen = picks.front().selected;
                     bool stable = true;
                     bool within = true;
                     for (const auto& p : picks) {
                       stable = stable && p.selected == chosen;
                       const double delta = p.selected == Convention::Raw ? p.delta_raw : p.delta_normalized;
                       within = within && delta <= tol;
                       os << "seed " << p.seed << ": " << to_string(p.selected) << " (raw " << p.delta_raw
                          << ", normalized " << p.delta_normalized << "); ";
                     }
                     os << "tolerance " << tol << (stable ? "; stable" : "; UNSTABLE");
                     return stable && within;
                   });
}

CheckResult check_size_table(const VerifyConfig& config) {
  return run_check("AC6", "size table reproduction + rank oracle", 60.0, config, [&](std::ostringstream& os) {
    static const std::uint64_t universal[] = {10, 20, 56, 45, 165, 325, 666, 1225, 2080, 3321, 5050};
    static const std::uint64_t bound[] = {10, 20, 56, 65, 270, 577, 1226, 2305, 3970, 6401, 9802};
    const auto rows = emit_table();
    bool ok = rows.size() == 11;
    for (std::size_t i = 0; ok && i < rows.size(); ++i) {
      ok = rows[i].universal == universal[i] && rows[i].bound == bound[i];
    }
    os << "table " << (ok ? "exact" : "MISMATCH") << "; rank oracle";
    for (int t = 1; t <= 4; ++t) {
      std::size_t side = 1;
      for (int i = 0; i < t; ++i) side *= 2;
      const std::size_t budget = std::max<std::size_t>(2 * side * side, 4 * universal_set_size(2, t));
      const auto rank = operator_span_dim(2, t, 0, budget, config.seed + 300 + t, config.policy);
      os << " D(2," << t << ",0)=" << rank;
      ok = ok && rank == universal_set_size(2, t);
    }
    const auto mixed = operator_span_dim(2, 1, 1, 64, config.seed + 400, config.policy);
    os << " D(2,1,1)=" << mixed;
    return ok && mixed == 10;
  });
}

CheckResult check_structural_invariants(const VerifyConfig& config) {
  return run_check("AC7", "structural invariants (block-orthogonality, commutation, projector identities)", 30.0,
                   config, [&](std::ostringstream& os) {
                     bool ok = true;
                     for (int t = 1; t <= 6; ++t) {
                       const auto results = check_basis_invariants(build_schur_basis(2, t, config.policy), config);
                       for (const auto& r : results) {
                         if (!r.passed) {
                           os << "t=" << t << " " << r.id << " failed (" << r.detail << "); ";
                           ok = false;
                         }
                       }
                     }
                     os << (ok ? "all invariants hold for t=1..6" : "");
                     return ok;
                   });
}

CheckResult check_trace_behavior(const VerifyConfig& config) {
  return run_check("AC8", "trace preservation (compact) and trace decrease (non-compact)", 0.0, config,
                   [&](std::ostringstream& os) {
                     const SchurOperatorSet s(build_schur_basis(2, 4, config.policy));
                     const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
                     const auto beta = beta_weights(s, sl2c_filter_family(), 4, config.quadrature);
                     const auto p = beta.probabilities(Convention::Raw);
                     const auto states = random_states(s.space_dimension(), 10, config.seed + 8000);
                     double compact_dev = 0.0;
                     double predicted_dev = 0.0;
                     double max_trace = 0.0;
                     for (const auto& rho : states) {
                       compact_dev = std::max(compact_dev, std::abs(compact_finite_twirl(rho, s, set).total_trace - 1.0));
                       compact_dev = std::max(compact_dev, std::abs(haar_projection_twirl(rho, s).total_trace - 1.0));
                       const auto out = noncompact_finite_twirl(rho, s, set, beta, Convention::Raw);
                       double predicted = 0.0;
                       for (std::size_t k = 0; k < s.sector_count(); ++k) {
                         const auto& proj = s.sector_projector(k);
                         predicted += p[k] * trace(proj * rho.matrix() * proj).real();
                       }
                       predicted_dev = std::max(predicted_dev, std::abs(out.total_trace - predicted));
                       max_trace = std::max(max_trace, out.total_trace);
                     }
                     os << "compact |tr-1| " << compact_dev << "; non-compact max trace " << max_trace
                        << ", |tr - Σ p_k tr(Π ρ Π)| " << predicted_dev;
                     return compact_dev <= 1e-10 && max_trace < 1.0 && predicted_dev <= 1e-8;
                   });
}

std::vector<CheckResult> run_acceptance(const VerifyConfig& config) {
  return {check_schur_golden(config),           check_oracle_triangle(config),
          check_one_design(config),             check_beta_reproduction(config),
          check_noncompact_consistency(config), check_size_table(config),
          check_structural_invariants(config),  check_trace_behavior(config)};
}

std::vector<CheckResult> check_basis_invariants(const SchurBasis& basis, const VerifyConfig& config) {
  const double tol = config.policy.eq_tol;
  std::vector<CheckResult> out;
  auto add = [&](const std::string& id, const std::string& name,
                 const std::function<bool(std::ostringstream&)>& body) {
    out.push_back(run_check("basis/" + id, name, 0.0, config, body));
  };

  const std::size_t n = basis.dimension();
  add("sector-dimensions", "Σ_k D_G D_C = d^t and vector counts match", [&](std::ostringstream& os) {
    std::size_t total = 0;
    for (const auto& sec : basis.sectors) {
      if (sec.vectors.size() != sec.dim_irrep * sec.multiplicity) {
        os << "sector vector count differs from D_G*D_C";
        return false;
      }
      total += sec.dimension();
    }
    os << "Σ D^k = " << total << ", d^t = " << n;
    return total == n;
  });
  if (!out.back().passed) return out;

  add("orthonormality", "all basis vectors orthonormal", [&](std::ostringstream& os) {
    const ComplexMatrix q = basis.transform();
    const double dev = max_abs_diff(adjoint(q) * q, ComplexMatrix::identity(n));
    os << "max |Q†Q - I| " << dev;
    return dev <= tol;
  });

  add("completeness", "Σ_k Π̂_k = I", [&](std::ostringstream& os) {
    ComplexMatrix sum(n, n);
    for (const auto& sec : basis.sectors) sum += sec.projector();
    const double dev = max_abs_diff(sum, ComplexMatrix::identity(n));
    os << "max |Σ Π̂_k - I| " << dev;
    return dev <= tol;
  });

  add("term-count", "Σ_k (D_G^k)² = binom(d²+t-1, t)", [&](std::ostringstream& os) {
    const auto count = sector_term_count(basis);
    const auto expected = universal_set_size(basis.d, basis.t);
    os << count << " vs " << expected;
    return count == expected;
  });

  const SchurOperatorSet s(basis);

  add("projector-identity", "Π̂_k = Σ_m Π̂_k^{mm} = Σ_λ Λ̂_k^{λλ}", [&](std::ostringstream& os) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.sector_count(); ++k) {
      ComplexMatrix by_m(n, n);
      ComplexMatrix by_lambda(n, n);
      for (std::size_t m = 0; m < s.dim_irrep(k); ++m) by_m += s.pi_op(k, m, m);
      for (std::size_t l = 0; l < s.multiplicity(k); ++l) by_lambda += s.lambda_op(k, l, l);
      worst = std::max({worst, max_abs_diff(by_m, s.sector_projector(k)),
                        max_abs_diff(by_lambda, s.sector_projector(k))});
    }
    os << "max deviation " << worst;
    return worst <= tol;
  });

  add("commutation", "[Λ̂_k^{λ1λ2}, Π̂_k^{m1m2}] = 0", [&](std::ostringstream& os) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.sector_count(); ++k) {
      const std::size_t dg = s.dim_irrep(k);
      const std::size_t dc = s.multiplicity(k);
      for (std::size_t l1 = 0; l1 < dc; ++l1)
        for (std::size_t l2 = 0; l2 < dc; ++l2)
          for (std::size_t m1 = 0; m1 < dg; ++m1)
            for (std::size_t m2 = 0; m2 < dg; ++m2) {
              const ComplexMatrix c = commutator(s.lambda_op(k, l1, l2), s.pi_op(k, m1, m2));
              worst = std::max(worst, max_abs_diff(c, ComplexMatrix(n, n)));
            }
    }
    os << "max |commutator| " << worst;
    return worst <= tol;
  });

  add("block-orthogonality", "Π̂_k^{m1m2} Π̂_ij^{n1λ1n2λ2} Π̂_k^{r1r2} = Π̂_k^{m1m2} Π̂_k^{n1n2} Λ̂_k^{λ1λ2} Π̂_k^{r1r2}",
      [&](std::ostringstream& os) {
        Engine rng = substream(config.seed + 700, static_cast<std::uint64_t>(basis.t));
        auto pick = [&rng](std::size_t bound) {
          return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
        };
        double worst = 0.0;
        for (int trial = 0; trial < 40; ++trial) {
          const std::size_t k = pick(s.sector_count());
          // Half the trials pick the inner operator inside sector k, the rest anywhere.
          const std::size_t i = trial % 2 == 0 ? k : pick(s.sector_count());
          const std::size_t j = trial % 2 == 0 ? k : pick(s.sector_count());
          const std::size_t m1 = pick(s.dim_irrep(k)), m2 = pick(s.dim_irrep(k));
          const std::size_t r1 = pick(s.dim_irrep(k)), r2 = pick(s.dim_irrep(k));
          const std::size_t n1 = pick(s.dim_irrep(i)), l1 = pick(s.multiplicity(i));
          const std::size_t n2 = pick(s.dim_irrep(j)), l2 = pick(s.multiplicity(j));
          const ComplexMatrix lhs = s.pi_op(k, m1, m2) * s.full_op(i, n1, l1, j, n2, l2) * s.pi_op(k, r1, r2);
          ComplexMatrix rhs(n, n);
          if (i == k && j == k) {
            rhs = s.pi_op(k, m1, m2) * s.pi_op(k, n1, n2) * s.lambda_op(k, l1, l2) * s.pi_op(k, r1, r2);
          }
          worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
        os << "max deviation over 40 random tuples " << worst;
        return worst <= tol;
      });

  // Equivariance needs a concrete group action; only qubit registers are checked.
  if (basis.d == 2) {
    std::vector<ComplexMatrix> actions;
    for (std::uint64_t i = 0; i < 20; ++i) {
      Engine rng = substream(config.seed + 900, i);
      actions.push_back(kron_power(haar_unitary(2, rng), basis.t));
    }
    add("row-invariance", "U^⊗t maps every row G^k_λ into itself", [&](std::ostringstream& os) {
      double worst = 0.0;
      const ComplexMatrix id = ComplexMatrix::identity(n);
      for (const auto& sec : basis.sectors) {
        for (std::size_t l = 0; l < sec.multiplicity; ++l) {
          const ComplexMatrix p = row_projector(sec, l);
          const ComplexMatrix leak = id - p;
          for (const auto& u : actions) worst = std::max(worst, frob_norm(leak * u * p));
        }
      }
      os << "max leakage " << worst << " over 20 Haar samples";
      return worst <= tol;
    });
    add("lambda-alignment", "<k,m1,λ|U^⊗t|k,m2,λ> independent of λ", [&](std::ostringstream& os) {
      double worst = 0.0;
      for (const auto& sec : basis.sectors) {
        for (const auto& u : actions) {
          for (std::size_t m1 = 0; m1 < sec.dim_irrep; ++m1) {
            for (std::size_t m2 = 0; m2 < sec.dim_irrep; ++m2) {
              const Complex ref = frob_inner(sec.vector(m1, 0), u * sec.vector(m2, 0));
              for (std::size_t l = 1; l < sec.multiplicity; ++l) {
                worst = std::max(worst, std::abs(frob_inner(sec.vector(m1, l), u * sec.vector(m2, l)) - ref));
              }
            }
          }
        }
      }
      os << "max deviation " << worst << " over 20 Haar samples";
      return worst <= tol;
    });
  }
  return out;
}

std::vector<CheckResult> check_channel_invariants(const VerifyConfig& config) {
  std::vector<CheckResult> out;
  const SchurOperatorSet s(build_schur_basis(2, 4, config.policy));
  const FiniteAveragingSet set(s, heisenberg_weyl_bases(s));
  const auto states = random_states(s.space_dimension(), 10, config.seed + 9100);
  const double tol = config.policy.eq_tol;

  out.push_back(run_check("channel/equivariance", "U^⊗t T(ρ) U^⊗t† = T(ρ)", 0.0, config, [&](std::ostringstream& os) {
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto result = compact_finite_twirl(states[i], s, set);
      Engine rng = substream(config.seed + 9200, i);
      const ComplexMatrix u = haar_unitary(2, rng);
      worst = std::max(worst, max_abs_diff(conjugate_by_tensor_power(result.state, u, 4), result.state));
    }
    os << "max deviation " << worst;
    return worst <= tol;
  }));

  out.push_back(run_check("channel/positivity", "channel outputs are positive semidefinite", 0.0, config,
                          [&](std::ostringstream& os) {
                            const auto beta = beta_weights(s, sl2c_filter_family(), 4, config.quadrature);
                            double lowest = 0.0;
                            for (const auto& rho : states) {
                              for (const auto& r : {compact_finite_twirl(rho, s, set), haar_projection_twirl(rho, s),
                                                    noncompact_finite_twirl(rho, s, set, beta, Convention::Raw)}) {
                                lowest = std::min(lowest, hermitian_eigenvalues(r.state).front());
                              }
                            }
                            os << "lowest eigenvalue " << lowest;
                            return lowest >= -tol;
                          }));

  out.push_back(run_check("channel/basis-independence", "any unitary operator basis gives the same channel", 0.0,
                          config, [&](std::ostringstream& os) {
                            // Rotate every Heisenberg–Weyl basis by a random unitary and rephase its elements.
                            auto bases = heisenberg_weyl_bases(s);
                            for (std::size_t k = 0; k < bases.size(); ++k) {
                              Engine rng = substream(config.seed + 9300, k);
                              const ComplexMatrix w = haar_unitary(bases[k].dim, rng);
                              std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
                              for (auto& g : bases[k].elements) g = std::polar(1.0, angle(rng)) * (w * g * adjoint(w));
                            }
                            const FiniteAveragingSet rotated(s, bases);
                            double worst = 0.0;
                            for (const auto& rho : states) {
                              worst = std::max(worst, max_abs_diff(compact_finite_twirl(rho, s, rotated).state,
                                                                   compact_finite_twirl(rho, s, set).state));
                            }
                            os << "max deviation " << worst;
                            return worst <= tol;
                          }));
  return out;
}

}  // namespace ufavg
