#pragma once

// JSON and CSV documents exchanged by the command-line tool.
//
// Complex numbers are [re, im] pairs; matrices are row-major lists of them.
// Doubles are written with round-trip precision, so parse(write(x)) == x.
// Schemas for every document live in docs/schemas/.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufavg/channels.hpp"
#include "ufavg/numerics.hpp"
#include "ufavg/schur.hpp"
#include "ufavg/sizes.hpp"
#include "ufavg/verify.hpp"

namespace ufavg {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {d, t, sectors:[{k, diagram, D_G, D_C, vectors:[[[re,im],...], ...]}]}; k is one-based
/// and vectors are listed in [m][λ] order.
std::string schur_basis_to_json(const SchurBasis& basis);
SchurBasis schur_basis_from_json(std::string_view text);

/// {dim, entries:[[re,im], ...]} row-major.
std::string state_to_json(const ComplexMatrix& state);
ComplexMatrix state_from_json(std::string_view text);

/// {channel, dim, state, sector_weights, total_trace, convention, terms, oracle_delta?, std_error?}.
std::string twirl_result_to_json(const TwirlResult& result);
TwirlResult twirl_result_from_json(std::string_view text);

/// `convention` is the reading in force: the selection's choice when present,
/// otherwise the explicit one (or null).
std::string beta_weights_to_json(const BetaWeights& beta, const std::string& family,
                                 std::optional<Convention> convention,
                                 const std::optional<ConventionSelection>& selection);

std::string size_table_to_json(const std::vector<SizeRow>& rows);

/// {passed, checks:[{id, name, passed, detail}]}. Timings are left out so that
/// reports are reproducible byte for byte.
std::string verify_report_to_json(const std::vector<CheckResult>& checks);

}  // namespace ufavg
