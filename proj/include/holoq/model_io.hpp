// JSON (de)serialization: model files (quasi-model + per-sentence state
// assignments, schema "holoq-model/1"), claim files, and replayable
// counterexample files.

#ifndef HOLOQ_MODEL_IO_HPP
#define HOLOQ_MODEL_IO_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "holoq/judgments.hpp"

namespace holoq {

using Json = nlohmann::json;

inline constexpr const char* kModelSchemaVersion = "holoq-model/1";

struct ModelIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State literals: {"kind":"ket","amplitudes":[[re,im],...]} or
// {"kind":"matrix","entries":[[re,im],...]} with row-major entries.
Json state_to_json(const Qumix& rho);
Qumix state_from_json(const Json& j);

// "I", "H", or a flat row-major list of four [re,im] pairs.
Json perspective_to_json(const TruthPerspective& t);
TruthPerspective perspective_from_json(const Json& j);

Json op_to_json(const EpistemicOp& op);
EpistemicOp op_from_json(EpKind kind, const std::string& agent,
                         const std::string& time, const Json& j);

Json quasi_model_to_json(const QuasiModel& qm);
QuasiModel quasi_model_from_json(const Json& j);

struct ModelFile {
  QuasiModel quasi_model;
  ModelAssignment assignment;
};

Json model_file_to_json(const ModelFile& mf);
ModelFile model_file_from_json(const Json& j);

struct ClaimFile {
  Claim claim;
  std::optional<std::string> quasi_model_path;
  SamplerConfig sampler;
};

Json claim_to_json(const Claim& claim, const SamplerConfig& sampler);
ClaimFile claim_from_json(const Json& j);

// A model file extended with a "counterexample" block: the claim, the
// perspective and effective context it failed in, and the probabilities
// observed. The failing top state is stored in the assignments.
Json counterexample_file(const QuasiModel& qm, const Claim& claim,
                         const SamplerConfig& sampler, const Counterexample& cx);

struct ReplayResult {
  double p_alpha = 0.0;
  double p_beta = 0.0;
  double stored_p_alpha = 0.0;
  double stored_p_beta = 0.0;
  // Max |recomputed - stored| over the defined probabilities.
  double deviation = 0.0;
  bool still_fails = false;
};

// Reloads a counterexample file and re-runs the claim on the stored model.
ReplayResult replay_counterexample_file(const Json& file);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

}  // namespace holoq

#endif  // HOLOQ_MODEL_IO_HPP
