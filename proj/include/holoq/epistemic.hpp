// Epistemic operations (understanding and knowledge), epistemic situations
// and quasi-models.
//
// An epistemic operation is realized either as a trace-preserving Kraus
// channel per arity, as a finite lookup table per arity, or as one of two
// presets that work at every arity: the identity channel ("maximal
// epistemic capacity") and the flip channel NOT-in-a-given-basis. Channels
// are the weakest standard assumption that keeps tensor composition with
// gates inside pseudo-gates well defined; tables exist for fully general
// maps at desk scale and only apply level-wide or blockwise on exactly
// factorized input.

#ifndef HOLOQ_EPISTEMIC_HPP
#define HOLOQ_EPISTEMIC_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holoq/perspective.hpp"
#include "holoq/qumix.hpp"

namespace holoq {

struct EpistemicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EpKind { Understanding, Knowledge };

inline const char* ep_kind_letter(EpKind k) {
  return k == EpKind::Knowledge ? "K" : "U";
}

struct KrausChannel {
  std::vector<Matrix> elements;
  // Max |sum K_i^dagger K_i - I| entry.
  double completeness_defect() const;
};

enum class TableFallback { Identity, Error };

struct TableEntry {
  Qumix in;
  Qumix out;
};

struct TableChannel {
  std::vector<TableEntry> pairs;
  TableFallback fallback = TableFallback::Identity;
};

enum class RealizationKind { Kraus, Table, PresetIdentity, PresetFlip };

class EpistemicOp {
 public:
  static EpistemicOp preset_identity(EpKind kind, std::string agent, std::string time);
  static EpistemicOp preset_flip(EpKind kind, std::string agent, std::string time,
                                 TruthPerspective basis);
  // Throws EpistemicError if a channel is not trace-preserving within 1e-9.
  static EpistemicOp kraus(EpKind kind, std::string agent, std::string time,
                           std::map<int, KrausChannel> by_arity);
  // Throws EpistemicError unless all table states are valid qumixes of the
  // declared arity.
  static EpistemicOp table(EpKind kind, std::string agent, std::string time,
                           std::map<int, TableChannel> by_arity);

  EpKind kind() const noexcept { return kind_; }
  const std::string& agent() const noexcept { return agent_; }
  const std::string& time() const noexcept { return time_; }
  std::string label() const;

  RealizationKind realization() const noexcept { return realization_; }
  const std::map<int, KrausChannel>& kraus_map() const { return kraus_; }
  const std::map<int, TableChannel>& table_map() const { return tables_; }
  const TruthPerspective& flip_basis() const { return flip_basis_; }

  bool supports_arity(int n) const;
  bool is_table() const noexcept { return realization_ == RealizationKind::Table; }

  // Kraus elements at the given arity; presets synthesize them on demand.
  // Empty for table realizations.
  std::vector<Matrix> kraus_elements(int n) const;

  // True if the op acts as a single unitary conjugation at this arity.
  bool is_unitary_channel(int n) const;

  // Throws EpistemicError on unsupported arity or on a table miss with the
  // error fallback.
  Qumix apply(const Qumix& rho) const;

 private:
  EpistemicOp(EpKind kind, std::string agent, std::string time, RealizationKind r)
      : kind_(kind), agent_(std::move(agent)), time_(std::move(time)), realization_(r) {}

  EpKind kind_;
  std::string agent_;
  std::string time_;
  RealizationKind realization_;
  std::map<int, KrausChannel> kraus_;
  std::map<int, TableChannel> tables_;
  TruthPerspective flip_basis_;
};

// Declared epistemic domain: every state, or an explicit list.
struct EpistemicDomain {
  bool all = true;
  std::vector<Qumix> states;
  bool contains(const Qumix& rho) const;
};

// One agent at one time: truth-perspective, domain, understanding and
// knowledge operations, plus two derived flags on the knowledge op.
class EpistemicSituation {
 public:
  EpistemicSituation(std::string agent, std::string time, TruthPerspective persp,
                     EpistemicDomain domain, EpistemicOp understanding,
                     EpistemicOp knowledge);

  const std::string& agent() const noexcept { return agent_; }
  const std::string& time() const noexcept { return time_; }
  const TruthPerspective& perspective() const noexcept { return perspective_; }
  const EpistemicDomain& domain() const noexcept { return domain_; }
  const std::shared_ptr<const EpistemicOp>& understanding() const { return understanding_; }
  const std::shared_ptr<const EpistemicOp>& knowledge() const { return knowledge_; }

  // K fixes both truth projectors of the agent's own perspective.
  bool knowledge_sound() const noexcept { return sound_; }
  // Surrogate truth-domination check: probing (200 random states per arity
  // plus the perspective's basis products) found no rho with
  // p(K rho) = 1 but p(rho) < 1 - 1e-6.
  bool knowledge_sound_for_truth() const noexcept { return sound_for_truth_; }

 private:
  std::string agent_;
  std::string time_;
  TruthPerspective perspective_;
  EpistemicDomain domain_;
  std::shared_ptr<const EpistemicOp> understanding_;
  std::shared_ptr<const EpistemicOp> knowledge_;
  bool sound_ = false;
  bool sound_for_truth_ = false;
};

// Times, agents, the epistemic situation of each (agent, time) pair, and
// the denotation of names. Unlisted names denote themselves.
class QuasiModel {
 public:
  void add_time(std::string name);
  void add_agent(std::string name);
  void add_situation(EpistemicSituation sit);
  void bind_name(std::string name, std::string denoted);

  const std::vector<std::string>& times() const noexcept { return times_; }
  const std::vector<std::string>& agents() const noexcept { return agents_; }

  std::string denote(const std::string& name) const;

  // Throws EpistemicError when the pair does not resolve.
  const EpistemicSituation& resolve(const std::string& agent_name,
                                    const std::string& time_name) const;

  const std::vector<EpistemicSituation>& situations() const noexcept { return epsit_; }

  bool is_harmonic() const;
  // All agents' knowledge ops pass the soundness check.
  bool all_knowledge_sound() const;
  bool all_knowledge_sound_for_truth() const;
  std::optional<TruthPerspective> shared_perspective() const;

 private:
  std::vector<std::string> times_;
  std::vector<std::string> agents_;
  std::vector<EpistemicSituation> epsit_;
  std::map<std::string, std::string> den_;
};

}  // namespace holoq

#endif  // HOLOQ_EPISTEMIC_HPP
