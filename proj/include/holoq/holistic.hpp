// Holistic evaluation: the chain of level meanings of one sentence under a
// truth-perspective and a quasi-model, the truth/falsity constraint on t/f
// occurrences, contextual meanings of occurrences, normality, and the
// commutation checks relating contextual meanings to one-block operations.

#ifndef HOLOQ_HOLISTIC_HPP
#define HOLOQ_HOLISTIC_HPP

#include <map>
#include <string>
#include <vector>

#include "holoq/pseudogate.hpp"

namespace holoq {

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A t/f occurrence whose reduced state is not the required truth/falsity
// projector. Evaluations failing the constraint are rejected.
struct ConstraintViolation : EvaluationError {
  ConstraintViolation(OccurrencePath path, bool wants_truth, double defect);
  OccurrencePath path;
  bool wants_truth;
  double defect;
};

struct ConstraintEntry {
  OccurrencePath path;
  bool wants_truth = false;  // t occurrence (else f)
  double defect = 0.0;
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;
  double max_defect = 0.0;
  bool pass = true;
};

struct NormalityViolation {
  Sentence subformula;
  OccurrencePath first;
  OccurrencePath other;
  double distance = 0.0;
};

struct NormalityReport {
  bool normal = true;
  int groups = 0;  // distinct subformulas with at least one occurrence
  std::vector<NormalityViolation> violations;
};

struct CommutationEntry {
  OccurrencePath path;
  int clause = 0;  // 1 not, 2 sqrtid, 3 toffoli, 4 xor, 5 understands, 6 knows
  double defect = 0.0;
  bool pass = true;
  std::string note;
};

struct CommutationReport {
  bool pass = true;
  double max_defect = 0.0;
  std::vector<CommutationEntry> entries;
};

class HolisticEvaluation {
 public:
  const Sentence& sentence() const noexcept { return sentence_; }
  const TruthPerspective& perspective() const noexcept { return perspective_; }
  const SyntacticalTree& tree() const noexcept { return tree_; }
  const std::vector<PseudoGate>& pseudo_gates() const noexcept { return gates_; }

  // Meaning of one level, 1-based; level 1 is the sentence's meaning.
  const Qumix& level_meaning(int level) const;
  const Qumix& meaning() const { return level_meaning(1); }

  // p_T of the sentence's meaning.
  double probability() const;

  // Reduced state of an occurrence's qubit span within its level meaning.
  Qumix contextual_meaning(OccurrencePath pos) const;

  const ConstraintReport& constraint_report() const noexcept { return constraint_; }

 private:
  friend HolisticEvaluation evaluate(const QuasiModel&, const TruthPerspective&,
                                     const Sentence&, const Qumix&);
  Sentence sentence_;
  TruthPerspective perspective_;
  SyntacticalTree tree_;
  std::vector<PseudoGate> gates_;
  std::vector<Qumix> meanings_;  // meanings_[0] = level 1
  ConstraintReport constraint_;
};

// Runs the full level chain top-down and verifies the t/f constraint at
// every level. Throws ConstraintViolation on the first failing occurrence;
// pseudo-gate errors propagate.
HolisticEvaluation evaluate(const QuasiModel& qm, const TruthPerspective& t,
                            const Sentence& s, const Qumix& top);

// Groups occurrences by structural subformula and compares contextual
// meanings within each group (tolerance 1e-9).
NormalityReport check_normal(const HolisticEvaluation& ev);

// Checks, per molecular occurrence, that its contextual meaning equals the
// corresponding operation applied to the (joint, for binary/ternary gates)
// reduction of the level above. Meaningful on evaluations passing
// check_normal.
CommutationReport check_commutation(const HolisticEvaluation& ev);

// Per-sentence top-level assignments, keyed by canonical sentence text and
// perspective key; together with a quasi-model this is a holistic model
// restricted to the sentences under evaluation.
class ModelAssignment {
 public:
  void assign(const Sentence& s, const TruthPerspective& t, Qumix top);
  // Raw form used by model files; the perspective key is opaque.
  void assign_key(const std::string& sentence_text, const std::string& perspective_key,
                  Qumix top);
  const Qumix* find(const Sentence& s, const TruthPerspective& t) const;
  bool empty() const noexcept { return map_.empty(); }

  const std::map<std::string, std::map<std::string, Qumix>>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::map<std::string, Qumix>> map_;
};

}  // namespace holoq

#endif  // HOLOQ_HOLISTIC_HPP
