#include "ufavg/io.hpp"

#include <json.hpp>

namespace ufavg {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json entries_json(const ComplexMatrix& m) {
  json arr = json::array();
  for (const auto& z : m.data()) arr.push_back(complex_json(z));
  return arr;
}

std::vector<Complex> entries_from(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& z : j) out.push_back(complex_from(z));
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("unexpected document structure: ") + e.what());
  }
}

}  // namespace

std::string schur_basis_to_json(const SchurBasis& basis) {
  json doc;
  doc["d"] = basis.d;
  doc["t"] = basis.t;
  doc["sectors"] = json::array();
  for (std::size_t k = 0; k < basis.sectors.size(); ++k) {
    const auto& sec = basis.sectors[k];
    json js;
    js["k"] = k + 1;
    js["diagram"] = sec.diagram.rows;
    js["D_G"] = sec.dim_irrep;
    js["D_C"] = sec.multiplicity;
    js["vectors"] = json::array();
    for (const auto& v : sec.vectors) js["vectors"].push_back(entries_json(v));
    doc["sectors"].push_back(std::move(js));
  }
  return dump(doc);
}

SchurBasis schur_basis_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    SchurBasis basis;
    basis.d = doc.at("d").get<int>();
    basis.t = doc.at("t").get<int>();
    if (basis.d < 1 || basis.t < 1) throw FormatError("schur basis: d and t must be positive");
    const std::size_t n = basis.dimension();
    for (const auto& js : doc.at("sectors")) {
      SchurSector sec;
      sec.diagram.rows = js.at("diagram").get<std::vector<int>>();
      sec.dim_irrep = js.at("D_G").get<std::size_t>();
      sec.multiplicity = js.at("D_C").get<std::size_t>();
      for (const auto& jv : js.at("vectors")) {
        auto entries = entries_from(jv);
        if (entries.size() != n) throw FormatError("schur basis: vector length differs from d^t");
        sec.vectors.emplace_back(n, 1, std::move(entries));
      }
      if (sec.vectors.size() != sec.dim_irrep * sec.multiplicity) {
        throw FormatError("schur basis: sector vector count differs from D_G * D_C");
      }
      basis.sectors.push_back(std::move(sec));
    }
    return basis;
  });
}

std::string state_to_json(const ComplexMatrix& state) {
  json doc;
  doc["dim"] = state.rows();
  doc["entries"] = entries_json(state);
  return dump(doc);
}

ComplexMatrix state_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    const auto dim = doc.at("dim").get<std::size_t>();
    auto entries = entries_from(doc.at("entries"));
    if (dim == 0 || entries.size() != dim * dim) throw FormatError("state: entries must hold dim*dim values");
    return ComplexMatrix(dim, dim, std::move(entries));
  });
}

std::string twirl_result_to_json(const TwirlResult& result) {
  json doc;
  doc["channel"] = result.channel;
  doc["dim"] = result.state.rows();
  doc["state"] = entries_json(result.state);
  doc["sector_weights"] = result.sector_weights;
  doc["total_trace"] = result.total_trace;
  doc["convention"] = result.convention ? json(std::string(to_string(*result.convention))) : json(nullptr);
  doc["terms"] = result.terms;
  if (result.oracle_delta) doc["oracle_delta"] = *result.oracle_delta;
  if (!result.std_error.empty()) doc["std_error"] = result.std_error;
  return dump(doc);
}

TwirlResult twirl_result_from_json(std::string_view text) {
  const json doc = parse(text);
  return guarded([&] {
    TwirlResult r;
    r.channel = doc.at("channel").get<std::string>();
    const auto dim = doc.at("dim").get<std::size_t>();
    r.state = ComplexMatrix(dim, dim, entries_from(doc.at("state")));
    r.sector_weights = doc.at("sector_weights").get<std::vector<double>>();
    r.total_trace = doc.at("total_trace").get<double>();
    r.terms = doc.at("terms").get<std::size_t>();
    if (!doc.at("convention").is_null()) r.convention = parse_convention(doc["convention"].get<std::string>());
    if (doc.contains("oracle_delta")) r.oracle_delta = doc["oracle_delta"].get<double>();
    if (doc.contains("std_error")) r.std_error = doc["std_error"].get<std::vector<double>>();
    return r;
  });
}

std::string beta_weights_to_json(const BetaWeights& beta, const std::string& family,
                                 std::optional<Convention> convention,
                                 const std::optional<ConventionSelection>& selection) {
  json doc;
  doc["family"] = family;
  doc["raw"] = beta.raw;
  doc["normalized"] = beta.normalized;
  doc["sector_dims"] = beta.sector_dims;
  doc["p_raw"] = beta.probabilities(Convention::Raw);
  doc["p_normalized"] = beta.probabilities(Convention::Normalized);
  doc["refinement_delta"] = beta.refinement_delta;
  doc["measure_mass"] = beta.measure_mass;
  doc["quadrature"] = {{"x_max", beta.quadrature.x_max}, {"nodes", beta.quadrature.nodes}};
  if (selection) convention = selection->selected;
  doc["convention"] = convention ? json(std::string(to_string(*convention))) : json(nullptr);
  if (selection) {
    doc["selection"] = {{"delta_raw", selection->delta_raw},
                        {"delta_normalized", selection->delta_normalized},
                        {"samples", selection->samples},
                        {"seed", selection->seed}};
  }
  return dump(doc);
}

std::string size_table_to_json(const std::vector<SizeRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json jr;
    jr["d"] = r.d;
    jr["t"] = r.t;
    jr["universal"] = r.universal;
    jr["bound"] = r.bound;
    jr["known_unitary"] = r.known_unitary ? json(*r.known_unitary) : json(nullptr);
    jr["known_sl"] = r.known_sl ? json(*r.known_sl) : json(nullptr);
    jr["bound_source"] = r.bound_source;
    jr["known_source"] = r.known_source;
    arr.push_back(std::move(jr));
  }
  json doc;
  doc["rows"] = std::move(arr);
  return dump(doc);
}

std::string verify_report_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  json doc;
  doc["passed"] = all;
  doc["checks"] = std::move(arr);
  return dump(doc);
}

}  // namespace ufavg
