#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "unicrit/criteria.hpp"
#include "unicrit/numfmt.hpp"
#include "unicrit/version.hpp"

namespace unicrit {

// One CLI check run. Serialization is key-sorted (nlohmann objects iterate
// alphabetically) and numbers use the shortest round-trip decimal, so a rerun
// with identical flags is byte-identical; `timing` is the only exception and
// can be suppressed.
struct RunReport {
  std::string criterion;
  std::string function_echo;
  std::optional<double> alpha;
  int levels = 12;
  int angles = 4096;
  int order = 64;
  CheckReport check;
  std::optional<double> timing;  // seconds; absent under --no-timing
};

inline nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["version"] = std::string(kVersion);
  j["criterion"] = r.criterion;
  j["function"] = r.function_echo;
  if (r.alpha)
    j["alpha"] = *r.alpha;
  else
    j["alpha"] = nullptr;
  j["grid"] = {{"levels", r.levels}, {"angles", r.angles}, {"order", r.order}};
  j["hypothesis"] = {
      {"verdict", verdict_name(r.check.hypothesis.verdict)},
      {"sup", r.check.hypothesis.sup},
      {"bound", r.check.bound},
      {"strict", r.check.spec.strict},
      {"witness",
       {{"re", r.check.hypothesis.witness.real()}, {"im", r.check.hypothesis.witness.imag()}}},
      {"certified", r.check.hypothesis.verdict == HypothesisVerdict::CertifiedHold},
  };
  j["oracle"] = {
      {"id", oracle_id_string(r.check.oracle.id)},
      {"result", oracle_result_name(r.check.oracle.result)},
      {"inf_re", r.check.oracle.inf_re},
      {"witness", {{"re", r.check.oracle.witness.real()}, {"im", r.check.oracle.witness.imag()}}},
  };
  j["consistency"] = consistency_name(r.check.consistency);
  j["singular_samples"] =
      r.check.hypothesis.singular_samples + r.check.oracle.singular_samples;
  if (r.timing) j["timing"] = *r.timing;
  return j;
}

// Flat one-row CSV form of the same payload. '.' decimal separator and '\n'
// line endings on every platform.
inline std::string report_csv(const RunReport& r) {
  std::string out =
      "criterion,function,alpha,levels,angles,order,verdict,sup,bound,strict,certified,"
      "witness_re,witness_im,oracle_id,oracle_result,inf_re,oracle_witness_re,"
      "oracle_witness_im,consistency,singular_samples\n";
  auto csv_quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    q += '"';
    return q;
  };
  out += csv_quote(r.criterion) + ',' + csv_quote(r.function_echo) + ',';
  out += (r.alpha ? format_double(*r.alpha) : std::string()) + ',';
  out += std::to_string(r.levels) + ',' + std::to_string(r.angles) + ',' +
         std::to_string(r.order) + ',';
  out += std::string(verdict_name(r.check.hypothesis.verdict)) + ',';
  out += format_double(r.check.hypothesis.sup) + ',' + format_double(r.check.bound) + ',';
  out += (r.check.spec.strict ? "true" : "false");
  out += ',';
  out += (r.check.hypothesis.verdict == HypothesisVerdict::CertifiedHold ? "true" : "false");
  out += ',';
  out += format_double(r.check.hypothesis.witness.real()) + ',' +
         format_double(r.check.hypothesis.witness.imag()) + ',';
  out += oracle_id_string(r.check.oracle.id) + ',';
  out += std::string(oracle_result_name(r.check.oracle.result)) + ',';
  out += format_double(r.check.oracle.inf_re) + ',' +
         format_double(r.check.oracle.witness.real()) + ',' +
         format_double(r.check.oracle.witness.imag()) + ',';
  out += std::string(consistency_name(r.check.consistency)) + ',';
  out += std::to_string(r.check.hypothesis.singular_samples + r.check.oracle.singular_samples);
  out += '\n';
  return out;
}

}  // namespace unicrit
