#include "holoq/epistemic.hpp"

#include <algorithm>
#include <sstream>

#include "holoq/random.hpp"

namespace holoq {

double KrausChannel::completeness_defect() const {
  if (elements.empty()) return 1.0;
  Matrix sum = Matrix::Zero(elements[0].rows(), elements[0].cols());
  for (const auto& k : elements) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

EpistemicOp EpistemicOp::preset_identity(EpKind kind, std::string agent,
                                         std::string time) {
  return EpistemicOp(kind, std::move(agent), std::move(time),
                     RealizationKind::PresetIdentity);
}

EpistemicOp EpistemicOp::preset_flip(EpKind kind, std::string agent, std::string time,
                                     TruthPerspective basis) {
  EpistemicOp op(kind, std::move(agent), std::move(time), RealizationKind::PresetFlip);
  op.flip_basis_ = std::move(basis);
  return op;
}

EpistemicOp EpistemicOp::kraus(EpKind kind, std::string agent, std::string time,
                               std::map<int, KrausChannel> by_arity) {
  for (const auto& [arity, channel] : by_arity) {
    if (arity < 1 || arity > kMaxQubits)
      throw EpistemicError("epistemic op: arity out of range");
    const Eigen::Index dim = Eigen::Index{1} << arity;
    for (const auto& k : channel.elements)
      if (k.rows() != dim || k.cols() != dim)
        throw EpistemicError("epistemic op: Kraus matrix shape does not match arity");
    const double defect = channel.completeness_defect();
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "epistemic op: Kraus channel at arity " << arity
         << " is not trace-preserving (defect " << defect << ")";
      throw EpistemicError(os.str());
    }
  }
  EpistemicOp op(kind, std::move(agent), std::move(time), RealizationKind::Kraus);
  op.kraus_ = std::move(by_arity);
  return op;
}

EpistemicOp EpistemicOp::table(EpKind kind, std::string agent, std::string time,
                               std::map<int, TableChannel> by_arity) {
  for (const auto& [arity, channel] : by_arity) {
    if (arity < 1 || arity > kMaxQubits)
      throw EpistemicError("epistemic op: arity out of range");
    for (const auto& pair : channel.pairs) {
      if (pair.in.qubits() != arity || pair.out.qubits() != arity)
        throw EpistemicError("epistemic op: table state arity mismatch");
      if (!validate_qumix(pair.out).pass)
        throw EpistemicError("epistemic op: table output is not a valid qumix");
    }
  }
  EpistemicOp op(kind, std::move(agent), std::move(time), RealizationKind::Table);
  op.tables_ = std::move(by_arity);
  return op;
}

std::string EpistemicOp::label() const {
  return std::string(ep_kind_letter(kind_)) + "[" + agent_ + "@" + time_ + "]";
}

bool EpistemicOp::supports_arity(int n) const {
  if (n < 1 || n > kMaxQubits) return false;
  switch (realization_) {
    case RealizationKind::PresetIdentity:
    case RealizationKind::PresetFlip:
      return true;
    case RealizationKind::Kraus:
      return kraus_.count(n) > 0;
    case RealizationKind::Table:
      return tables_.count(n) > 0;
  }
  return false;
}

std::vector<Matrix> EpistemicOp::kraus_elements(int n) const {
  const Eigen::Index dim = Eigen::Index{1} << n;
  switch (realization_) {
    case RealizationKind::PresetIdentity:
      return {Matrix::Identity(dim, dim)};
    case RealizationKind::PresetFlip: {
      // NOT-in-basis on the last qubit: I^(n-1) (x) (B X B^dagger).
      Eigen::Matrix2cd x;
      x << 0, 1, 1, 0;
      const Eigen::Matrix2cd flip =
          flip_basis_.matrix() * x * flip_basis_.matrix().adjoint();
      Matrix u = Matrix::Zero(dim, dim);
      for (Eigen::Index a = 0; a < dim / 2; ++a)
        u.block(a * 2, a * 2, 2, 2) = flip;
      return {u};
    }
    case RealizationKind::Kraus: {
      auto it = kraus_.find(n);
      return it == kraus_.end() ? std::vector<Matrix>{} : it->second.elements;
    }
    case RealizationKind::Table:
      return {};
  }
  return {};
}

bool EpistemicOp::is_unitary_channel(int n) const {
  const auto ks = kraus_elements(n);
  if (ks.size() != 1) return false;
  const Matrix& k = ks[0];
  return (k.adjoint() * k - Matrix::Identity(k.rows(), k.cols()))
             .cwiseAbs()
             .maxCoeff() <= 1e-9;
}

Qumix EpistemicOp::apply(const Qumix& rho) const {
  const int n = rho.qubits();
  if (!supports_arity(n)) {
    std::ostringstream os;
    os << "epistemic op " << label() << " has no realization at arity " << n;
    throw EpistemicError(os.str());
  }
  if (realization_ == RealizationKind::Table) {
    const TableChannel& channel = tables_.at(n);
    for (const auto& pair : channel.pairs)
      if (qumix_close(pair.in, rho, 1e-9)) return pair.out;
    if (channel.fallback == TableFallback::Identity) return rho;
    std::ostringstream os;
    os << "epistemic op " << label() << ": no table entry matches the input state";
    throw EpistemicError(os.str());
  }
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : kraus_elements(n)) out += k * rho.matrix() * k.adjoint();
  return Qumix(n, std::move(out));
}

bool EpistemicDomain::contains(const Qumix& rho) const {
  if (all) return true;
  for (const auto& s : states)
    if (s.qubits() == rho.qubits() && qumix_close(s, rho, 1e-9)) return true;
  return false;
}

namespace {

std::vector<int> probe_arities(const EpistemicOp& op) {
  switch (op.realization()) {
    case RealizationKind::PresetIdentity:
    case RealizationKind::PresetFlip:
      return {1, 2, 3};
    case RealizationKind::Kraus: {
      std::vector<int> out;
      for (const auto& [arity, _] : op.kraus_map()) out.push_back(arity);
      return out;
    }
    case RealizationKind::Table: {
      std::vector<int> out;
      for (const auto& [arity, _] : op.table_map()) out.push_back(arity);
      return out;
    }
  }
  return {};
}

// Perspective basis products |b_1...b_n> in the T basis, as qumixes.
std::vector<Qumix> basis_probes(const TruthPerspective& t, int arity) {
  const auto [p0, p1] = truth_projectors(t);
  std::vector<Qumix> out;
  const unsigned long long patterns = 1ull << arity;
  for (unsigned long long bits = 0; bits < patterns; ++bits) {
    Qumix state = ((bits >> (arity - 1)) & 1) ? p1 : p0;
    for (int q = 1; q < arity; ++q)
      state = tensor(state, ((bits >> (arity - 1 - q)) & 1) ? p1 : p0);
    out.push_back(std::move(state));
  }
  return out;
}

bool check_sound(const EpistemicOp& k, const TruthPerspective& t) {
  if (!k.supports_arity(1)) return false;
  const auto [p0, p1] = truth_projectors(t);
  try {
    return qumix_close(k.apply(p0), p0, 1e-9) && qumix_close(k.apply(p1), p1, 1e-9);
  } catch (const EpistemicError&) {
    return false;
  }
}

bool check_sound_for_truth(const EpistemicOp& k, const TruthPerspective& t) {
  Rng rng(0x5eedbeefULL);
  for (int arity : probe_arities(k)) {
    if (arity > 6) continue;  // probing cost cap; larger arities stay unflagged
    std::vector<Qumix> probes = basis_probes(t, arity);
    for (int i = 0; i < 100; ++i) probes.push_back(random_mixed(arity, rng));
    for (int i = 0; i < 100; ++i) probes.push_back(pure_qumix(random_ket(arity, rng)));
    if (k.is_table())
      for (const auto& pair : k.table_map().at(arity).pairs) probes.push_back(pair.in);
    for (const auto& rho : probes) {
      try {
        const double p_out = probability(t, k.apply(rho));
        const double p_in = probability(t, rho);
        if (p_out >= 1.0 - 1e-9 && p_in < 1.0 - 1e-6) return false;
      } catch (const EpistemicError&) {
        // Table miss under the error fallback: nothing to conclude.
      }
    }
  }
  return true;
}

}  // namespace

EpistemicSituation::EpistemicSituation(std::string agent, std::string time,
                                       TruthPerspective persp, EpistemicDomain domain,
                                       EpistemicOp understanding, EpistemicOp knowledge)
    : agent_(std::move(agent)),
      time_(std::move(time)),
      perspective_(std::move(persp)),
      domain_(std::move(domain)),
      understanding_(std::make_shared<const EpistemicOp>(std::move(understanding))),
      knowledge_(std::make_shared<const EpistemicOp>(std::move(knowledge))) {
  if (understanding_->agent() != agent_ || knowledge_->agent() != agent_ ||
      understanding_->time() != time_ || knowledge_->time() != time_)
    throw EpistemicError("epistemic situation: operation labels do not match");
  if (understanding_->kind() != EpKind::Understanding ||
      knowledge_->kind() != EpKind::Knowledge)
    throw EpistemicError("epistemic situation: operation kinds are swapped");
  sound_ = check_sound(*knowledge_, perspective_);
  sound_for_truth_ = check_sound_for_truth(*knowledge_, perspective_);
}

void QuasiModel::add_time(std::string name) {
  if (std::find(times_.begin(), times_.end(), name) == times_.end())
    times_.push_back(std::move(name));
}

void QuasiModel::add_agent(std::string name) {
  if (std::find(agents_.begin(), agents_.end(), name) == agents_.end())
    agents_.push_back(std::move(name));
}

void QuasiModel::add_situation(EpistemicSituation sit) {
  add_agent(sit.agent());
  add_time(sit.time());
  epsit_.push_back(std::move(sit));
}

void QuasiModel::bind_name(std::string name, std::string denoted) {
  den_[std::move(name)] = std::move(denoted);
}

std::string QuasiModel::denote(const std::string& name) const {
  auto it = den_.find(name);
  return it == den_.end() ? name : it->second;
}

const EpistemicSituation& QuasiModel::resolve(const std::string& agent_name,
                                              const std::string& time_name) const {
  const std::string agent = denote(agent_name);
  const std::string time = denote(time_name);
  for (const auto& sit : epsit_)
    if (sit.agent() == agent && sit.time() == time) return sit;
  std::ostringstream os;
  os << "no epistemic situation for agent '" << agent_name << "' at time '"
     << time_name << "'";
  throw EpistemicError(os.str());
}

bool QuasiModel::is_harmonic() const {
  for (std::size_t i = 1; i < epsit_.size(); ++i)
    if (!epsit_[i].perspective().approx_equal(epsit_[0].perspective())) return false;
  return true;
}

bool QuasiModel::all_knowledge_sound() const {
  for (const auto& sit : epsit_)
    if (!sit.knowledge_sound()) return false;
  return true;
}

bool QuasiModel::all_knowledge_sound_for_truth() const {
  for (const auto& sit : epsit_)
    if (!sit.knowledge_sound_for_truth()) return false;
  return true;
}

std::optional<TruthPerspective> QuasiModel::shared_perspective() const {
  if (epsit_.empty() || !is_harmonic()) return std::nullopt;
  return epsit_[0].perspective();
}

}  // namespace holoq
