// The nine epistemic situations as a runnable scenario suite: sampled
// consequence checks under harmonic/sound presets, constructed countermodel
// witnesses, a sampled refutation of known contradictions, and the fixed
// two-agent cross-perspective construction.

#ifndef HOLOQ_SCENARIOS_HPP
#define HOLOQ_SCENARIOS_HPP

#include "holoq/model_io.hpp"

namespace holoq {

// Preset inconsistency (e.g. a sound-capacity scenario requested with
// agents that fail the soundness check).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioCheck {
  std::string name;
  bool pass = false;
  std::string details;
  std::optional<Json> countermodel;  // replayable file content, when one exists
};

struct ScenarioReport {
  int number = 0;
  std::string title;
  bool pass = false;
  std::vector<ScenarioCheck> checks;
};

struct ScenarioOptions {
  std::uint64_t seed = 2026;
  int samples = 200;                // per sampled claim
  int contradiction_samples = 500;  // scenario 8 total
};

ScenarioReport run_situation(int k, const ScenarioOptions& opts = {});

// Preset models, exposed for tests and the CLI fixtures.
QuasiModel harmonic_sound_model(const TruthPerspective& shared = {});
QuasiModel nonharmonic_model();           // agent a at I, b at H
QuasiModel rotation_agent_model();        // K = pi/4 rotation channel
QuasiModel flip_b_harmonic_model();       // a identity, b flip, shared I
QuasiModel conjunction_table_model();     // scenario 6 agent
QuasiModel memberwise_table_model();      // scenario 7 agent
QuasiModel situation9_model();            // a at I identity, b at H flip-in-I

}  // namespace holoq

#endif  // HOLOQ_SCENARIOS_HPP
