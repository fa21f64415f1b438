#include "eigenpower/report.hpp"

#include <json.hpp>

namespace eigenpower {

namespace {

using nlohmann::json;

json overlap_json(const OverlapEstimate& o) {
  return json{{"re", o.value.real()},          {"im", o.value.imag()},
              {"std_error", o.std_error},      {"std_error_imag", o.std_error_imag},
              {"shots", o.shots},              {"seed", o.seed}};
}

json config_json(const PipelineConfig& c) {
  return json{{"C", c.c},
              {"D", c.phase.bound},
              {"bits", c.phase.bits},
              {"t0", c.phase.t0},
              {"clock", std::string(clock_state_name(c.phase.clock))},
              {"variant", std::string(variant_name(c.variant))},
              {"backend", std::string(backend_name(c.backend))},
              {"k", c.k},
              {"qubit_cap", c.qubit_cap}};
}

}  // namespace

std::string report_to_json(const EigenReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = std::string(mode_name(r.mode));
  j["lambda_estimates"] = r.lambda_estimates;
  j["oracle_values"] = r.oracle_values;
  j["multiplicative_error"] = r.multiplicative_error;
  j["std_error"] = r.std_error;
  j["imaginary_part"] = r.imaginary_part;
  j["k_used"] = r.k_used;
  j["bound"] = json{{"p", r.bound.p},
                    {"K", r.bound.K},
                    {"n", r.bound.n},
                    {"delta", r.bound.delta},
                    {"k_required", r.bound.k_required},
                    {"degenerate", r.bound.degenerate},
                    {"value_at_k_used", r.bound.bound_at(r.k_used)}};
  const ResourceCounters& c = r.resources.pipeline;
  j["resources"] = json{{"evolutions", c.evolutions},
                        {"inverse_evolutions", c.inverse_evolutions},
                        {"rotations", c.rotations},
                        {"qft_calls", c.qft_calls},
                        {"clock_preparations", c.clock_preparations},
                        {"shots", r.resources.shots},
                        {"qubits", r.resources.qubits}};
  j["seeds"] = json{{"x0_seed", r.x0_seed}, {"x0_seed_used", r.x0_seed_used},
                    {"shot_seed", r.shot_seed}};
  j["warnings"] = r.warnings;
  j["config"] = config_json(r.config);
  j["metadata"] = json{{"condition_number", r.condition_number}, {"sparsity", r.sparsity}};
  if (r.numerator) j["numerator"] = overlap_json(*r.numerator);
  if (r.denominator) j["denominator"] = overlap_json(*r.denominator);
  if (!r.interpretation.empty()) j["interpretation"] = r.interpretation;
  if (r.inverse_estimate) j["inverse_estimate"] = *r.inverse_estimate;
  if (r.kappa) j["kappa"] = *r.kappa;
  if (r.shift) j["shift"] = *r.shift;
  if (r.max_abs_shifted) j["max_abs_shifted"] = *r.max_abs_shifted;
  if (r.krylov) {
    j["krylov"] = json{{"m", r.krylov->m},
                       {"block", r.krylov->block},
                       {"dimension", r.krylov->dimension},
                       {"dropped", r.krylov->dropped}};
  }
  return j.dump(2) + "\n";
}

std::string error_to_json(std::string_view name, int exit_code, std::string_view message) {
  const json j{{"error", std::string(name)},
               {"exit_code", exit_code},
               {"message", std::string(message)}};
  return j.dump() + "\n";
}

std::string error_to_json(const Error& e) {
  return error_to_json(error_name(e.code()), exit_code_for(e.code()), e.what());
}

}  // namespace eigenpower
