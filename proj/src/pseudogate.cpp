#include "holoq/pseudogate.hpp"

#include <sstream>

namespace holoq {

int PseudoGateComponent::arity() const {
  return is_gate() ? gate().qubits() : ep_arity_;
}

bool PseudoGateComponent::has_kraus() const {
  if (is_gate()) return true;
  return !epistemic().is_table() && epistemic().supports_arity(ep_arity_);
}

std::vector<Matrix> PseudoGateComponent::kraus_elements() const {
  if (is_gate()) return {gate_unitary(gate())};
  return epistemic().kraus_elements(ep_arity_);
}

bool PseudoGateComponent::invertible() const {
  if (is_gate()) return true;
  return epistemic().is_unitary_channel(ep_arity_);
}

std::string PseudoGateComponent::describe() const {
  if (is_gate()) return gate().describe();
  std::ostringstream os;
  os << epistemic().label() << "(" << ep_arity_ << ")";
  return os.str();
}

PseudoGate::PseudoGate(std::vector<PseudoGateComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw PseudoGateError("pseudo-gate needs components");
  for (const auto& c : components_) qubits_ += c.arity();
  check_qubit_cap(qubits_);
}

namespace {

// I^(left) (x) K (x) I^(right)
Matrix lift(const Matrix& k, int left, int right) {
  const Eigen::Index dl = Eigen::Index{1} << left;
  const Eigen::Index dr = Eigen::Index{1} << right;
  const Eigen::Index dk = k.rows();
  Matrix out = Matrix::Zero(dl * dk * dr, dl * dk * dr);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (Eigen::Index i = 0; i < dk; ++i)
      for (Eigen::Index j = 0; j < dk; ++j) {
        if (k(i, j) == Complex{0.0, 0.0}) continue;
        for (Eigen::Index b = 0; b < dr; ++b)
          out((a * dk + i) * dr + b, (a * dk + j) * dr + b) = k(i, j);
      }
  return out;
}

}  // namespace

Qumix PseudoGate::apply(const Qumix& rho) const {
  if (rho.qubits() != qubits_)
    throw PseudoGateError("pseudo-gate arity does not match the state");

  bool any_table = false;
  for (const auto& c : components_)
    if (!c.has_kraus()) any_table = true;

  if (any_table && components_.size() > 1) {
    // Blockwise application on exactly factorized input: the state must be
    // the tensor of its own block reductions.
    std::vector<Qumix> blocks;
    int offset = 1;
    for (const auto& c : components_) {
      std::vector<int> keep(static_cast<std::size_t>(c.arity()));
      for (int q = 0; q < c.arity(); ++q) keep[static_cast<std::size_t>(q)] = offset + q;
      blocks.push_back(reduce(rho, keep));
      offset += c.arity();
    }
    Qumix rebuilt = blocks[0];
    for (std::size_t i = 1; i < blocks.size(); ++i) rebuilt = tensor(rebuilt, blocks[i]);
    if (!qumix_close(rebuilt, rho, 1e-9))
      throw PseudoGateError(
          "table-realized component: input does not factorize across the "
          "component blocks");
    Qumix out = apply_component(0, blocks[0]);
    for (std::size_t i = 1; i < components_.size(); ++i)
      out = tensor(out, apply_component(i, blocks[i]));
    return out;
  }

  if (any_table)  // single component spanning the level
    return apply_component(0, rho);

  // Factor-wise channel application; blocks are disjoint so the order is
  // irrelevant.
  Qumix state = rho;
  int offset = 0;
  for (const auto& c : components_) {
    const int left = offset;
    const int right = qubits_ - offset - c.arity();
    const auto kraus = c.kraus_elements();
    if (kraus.size() == 1) {
      const Matrix u = lift(kraus[0], left, right);
      state = Qumix(qubits_, u * state.matrix() * u.adjoint());
    } else {
      Matrix acc = Matrix::Zero(state.dim(), state.dim());
      for (const auto& k : kraus) {
        const Matrix lk = lift(k, left, right);
        acc += lk * state.matrix() * lk.adjoint();
      }
      state = Qumix(qubits_, std::move(acc));
    }
    offset += c.arity();
  }
  return state;
}

Qumix PseudoGate::apply_component(std::size_t i, const Qumix& block) const {
  const auto& c = components_[i];
  if (c.is_gate()) return apply_gate(c.gate(), block);
  return c.epistemic().apply(block);
}

bool PseudoGate::invertible() const {
  for (const auto& c : components_)
    if (!c.invertible()) return false;
  return true;
}

Qumix PseudoGate::apply_inverse(const Qumix& rho) const {
  if (!invertible())
    throw PseudoGateError("pseudo-gate is not invertible");
  if (rho.qubits() != qubits_)
    throw PseudoGateError("pseudo-gate arity does not match the state");
  Qumix state = rho;
  int offset = 0;
  for (const auto& c : components_) {
    const Matrix u = lift(c.kraus_elements()[0].adjoint(), offset,
                          qubits_ - offset - c.arity());
    state = Qumix(qubits_, u * state.matrix() * u.adjoint());
    offset += c.arity();
  }
  return state;
}

std::string PseudoGate::describe() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += " (x) ";
    out += components_[i].describe();
  }
  return out;
}

std::vector<PseudoGate> pseudo_gate_tree(const SyntacticalTree& tree,
                                         const TruthPerspective& t,
                                         const QuasiModel& qm) {
  std::vector<PseudoGate> gates;
  // The gate keyed on Level_i maps the meaning of Level_{i+1} to that of
  // Level_i; listing from the top transition down means level k-1 first.
  for (int level = tree.height() - 1; level >= 1; --level) {
    std::vector<PseudoGateComponent> comps;
    for (const auto& occ : tree.row(level)) {
      const Sentence& s = occ.sentence;
      switch (s.kind()) {
        case NodeKind::Atom:
        case NodeKind::TrueConst:
        case NodeKind::FalseConst:
          comps.emplace_back(GateSpec::identity(occ.qubit_count, t));
          break;
        case NodeKind::Not:
          comps.emplace_back(GateSpec::negation(occ.qubit_count, t));
          break;
        case NodeKind::SqrtId:
          comps.emplace_back(GateSpec::sqrt_id(occ.qubit_count, t));
          break;
        case NodeKind::Toffoli:
          comps.emplace_back(GateSpec::toffoli(atomic_complexity(s.child(0)),
                                               atomic_complexity(s.child(1)),
                                               atomic_complexity(s.child(2)), t));
          break;
        case NodeKind::Xor:
          comps.emplace_back(GateSpec::exclusive_or(atomic_complexity(s.child(0)),
                                                    atomic_complexity(s.child(1)), t));
          break;
        case NodeKind::Understands:
        case NodeKind::Knows: {
          const EpistemicSituation& sit = qm.resolve(s.agent(), s.time());
          const auto& op = s.kind() == NodeKind::Knows ? sit.knowledge()
                                                       : sit.understanding();
          const int arity = occ.qubit_count;
          if (!op->supports_arity(arity)) {
            std::ostringstream os;
            os << "epistemic op " << op->label() << " lacks arity " << arity;
            throw PseudoGateError(os.str());
          }
          comps.emplace_back(op, arity);
          break;
        }
      }
    }
    gates.emplace_back(std::move(comps));
  }
  return gates;
}

std::vector<PseudoGate> pseudo_gate_tree(const Sentence& s, const TruthPerspective& t,
                                         const QuasiModel& qm) {
  return pseudo_gate_tree(build_syntactical_tree(s), t, qm);
}

}  // namespace holoq
