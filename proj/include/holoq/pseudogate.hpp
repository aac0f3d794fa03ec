// Pseudo-gates: ordered tensor products of perspective gates and epistemic
// operations, one per transition between adjacent syntactical-tree levels,
// plus the compilation of a sentence into its pseudo-gate tree.

#ifndef HOLOQ_PSEUDOGATE_HPP
#define HOLOQ_PSEUDOGATE_HPP

#include <memory>
#include <variant>
#include <vector>

#include "holoq/epistemic.hpp"
#include "holoq/gates.hpp"
#include "holoq/syntree.hpp"

namespace holoq {

struct PseudoGateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PseudoGateComponent {
 public:
  explicit PseudoGateComponent(GateSpec gate)
      : op_(std::move(gate)) {}
  PseudoGateComponent(std::shared_ptr<const EpistemicOp> op, int arity)
      : op_(std::move(op)), ep_arity_(arity) {}

  bool is_gate() const noexcept { return std::holds_alternative<GateSpec>(op_); }
  const GateSpec& gate() const { return std::get<GateSpec>(op_); }
  const EpistemicOp& epistemic() const {
    return *std::get<std::shared_ptr<const EpistemicOp>>(op_);
  }

  int arity() const;
  // True unless the component is table-realized at its arity.
  bool has_kraus() const;
  std::vector<Matrix> kraus_elements() const;
  bool invertible() const;
  std::string describe() const;

 private:
  std::variant<GateSpec, std::shared_ptr<const EpistemicOp>> op_;
  int ep_arity_ = 0;
};

class PseudoGate {
 public:
  explicit PseudoGate(std::vector<PseudoGateComponent> components);

  int qubits() const noexcept { return qubits_; }
  std::size_t component_count() const noexcept { return components_.size(); }
  const PseudoGateComponent& component(std::size_t i) const { return components_.at(i); }

  // Channel application. Gate and Kraus components act factor-wise; a
  // table-realized component requires either a single component spanning
  // the level or an input that factorizes exactly across the component
  // blocks, and throws PseudoGateError otherwise.
  Qumix apply(const Qumix& rho) const;

  // True when every component is a unitary conjugation, so the level map
  // can be run backwards.
  bool invertible() const;
  Qumix apply_inverse(const Qumix& rho) const;

  std::string describe() const;

 private:
  Qumix apply_component(std::size_t i, const Qumix& block) const;

  std::vector<PseudoGateComponent> components_;
  int qubits_ = 0;
};

inline Qumix apply_pseudo_gate(const PseudoGate& pg, const Qumix& rho) {
  return pg.apply(rho);
}

// The pseudo-gate tree of a sentence: one pseudo-gate per level transition,
// listed from the top transition down, so the first entry maps the top
// level's meaning and the last entry produces the sentence's meaning.
// Length is height - 1.
std::vector<PseudoGate> pseudo_gate_tree(const SyntacticalTree& tree,
                                         const TruthPerspective& t,
                                         const QuasiModel& qm);
std::vector<PseudoGate> pseudo_gate_tree(const Sentence& s, const TruthPerspective& t,
                                         const QuasiModel& qm);

}  // namespace holoq

#endif  // HOLOQ_PSEUDOGATE_HPP
