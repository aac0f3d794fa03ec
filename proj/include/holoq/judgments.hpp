// Truth and contextual truth of sentences, consequence claims with
// sampling-based countermodel search, and the no-contradiction lemma suite.
//
// The "for any model / any truth-perspective" quantifiers of the semantics
// are finitized: claims are checked over seeded sampled assignments (plus
// back-solved antecedent-targeted states where the level maps are
// invertible), so verdicts distinguish a certain refutation
// (CounterexampleFound) from sampled non-refutation (NoCounterexampleFound).

#ifndef HOLOQ_JUDGMENTS_HPP
#define HOLOQ_JUDGMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "holoq/holistic.hpp"
#include "holoq/sampling.hpp"

namespace holoq {

struct JudgmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ClaimKind { Truth, ContextualTruth, Consequence, HarmonicConsequence };
enum class PerspectiveScope { Fixed, PerAgent, Sampled };

struct Claim {
  ClaimKind kind = ClaimKind::Truth;
  Sentence context;  // gamma; equals alpha for Truth claims
  Sentence alpha;
  Sentence beta;  // consequence kinds only
  PerspectiveScope scope = PerspectiveScope::Fixed;
  TruthPerspective fixed_perspective;
  std::string agent;  // PerAgent scope
  std::string time;

  std::string describe() const;
};

struct Counterexample {
  Qumix top;                   // top state of the effective context
  TruthPerspective perspective;
  Sentence context;            // effective context the claim was checked in
  double p_alpha = 0.0;
  double p_beta = 0.0;
  int sample_index = -1;
};

struct Verdict {
  enum class Outcome {
    Holds,                   // witnessed analytically (scenario constants)
    NoCounterexampleFound,   // sampled non-refutation
    CounterexampleFound,
    SamplerExhausted,        // no sample satisfied the antecedent
  };
  Outcome outcome = Outcome::NoCounterexampleFound;
  int samples = 0;
  int antecedent_hits = 0;
  int skipped_nonnormal = 0;
  // Samples no holistic model can extend (table-realized op on an input
  // that does not factorize, or a table miss under the error fallback).
  int skipped_unrealizable = 0;
  double max_probability = 0.0;      // largest consequent/root p observed
  std::uint64_t sample_digest = 0;   // FNV over the evaluated probabilities
  std::optional<Counterexample> counterexample;
  std::string note;

  std::string outcome_name() const;
};

// Truth of s in the model given by (qm, assignment) at perspective t.
// Throws JudgmentError if the assignment lacks a top state for s or the
// evaluation is not normal.
bool is_true(const QuasiModel& qm, const TruthPerspective& t, const Sentence& s,
             const ModelAssignment& assignment);

// Contextual truth of the occurrence at pos. Throws on invalid paths and on
// non-normal evaluations.
bool is_true_contextual(const HolisticEvaluation& ev, OccurrencePath pos);

// Samples assignments for the claim's context; for consequence kinds tests
// the implication on every sample whose antecedent is contextually true.
// Deterministic given (claim, cfg). If alpha/beta are not subformulas of
// the stated context, the context is extended with exclusive-or so that the
// claim is well-formed; the verdict notes the extension.
Verdict check_consequence(const QuasiModel& qm, const Claim& claim,
                          const SamplerConfig& cfg);

// Evaluates alpha-and-not-alpha over sampled normal models at five
// perspectives, asserting p <= 1 - 1e-6 throughout; the observed maximum is
// recorded in the verdict.
Verdict lemma_noncontradiction(const Sentence& alpha, const SamplerConfig& cfg,
                               const QuasiModel& qm = {});

// Hunts for a sampled normal model making s true at perspective t
// (p >= 1 - 1e-6). CounterexampleFound means such a model exists;
// NoCounterexampleFound refutes truth of s on all samples and records the
// maximum probability seen.
Verdict refute_truth(const QuasiModel& qm, const TruthPerspective& t,
                     const Sentence& s, const SamplerConfig& cfg);

// Back-solved top state making alpha contextually true, when an occurrence
// of alpha has an invertible chain above it and no t/f leaf blocks the
// construction. Normality is not guaranteed; callers filter.
std::optional<Qumix> antecedent_targeted_top(const SyntacticalTree& tree,
                                             const std::vector<PseudoGate>& gates,
                                             const TruthPerspective& t,
                                             const Sentence& alpha, Rng& rng);

// Probabilities re-derived from a counterexample for replay comparisons:
// evaluates the effective context at the stored top and returns
// (p_alpha, p_beta); p_beta is NaN for truth claims.
std::pair<double, double> replay_counterexample(const QuasiModel& qm,
                                                const Claim& claim,
                                                const Counterexample& cx);

}  // namespace holoq

#endif  // HOLOQ_JUDGMENTS_HPP
