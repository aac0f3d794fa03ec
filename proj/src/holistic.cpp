#include "holoq/holistic.hpp"

#include <sstream>
#include <unordered_map>

namespace holoq {

namespace {

constexpr double kTol = 1e-9;

std::string path_str(OccurrencePath p) {
  std::ostringstream os;
  os << "(" << p.level << "," << p.pos << ")";
  return os.str();
}

std::vector<int> span_indices(const Occurrence& occ) {
  std::vector<int> keep(static_cast<std::size_t>(occ.qubit_count));
  for (int q = 0; q < occ.qubit_count; ++q)
    keep[static_cast<std::size_t>(q)] = occ.qubit_first + q;
  return keep;
}

}  // namespace

ConstraintViolation::ConstraintViolation(OccurrencePath path_, bool wants_truth_,
                                         double defect_)
    : EvaluationError([&] {
        std::ostringstream os;
        os << "constraint violation: occurrence of '"
           << (wants_truth_ ? "t" : "f") << "' at " << path_str(path_)
           << " is not the " << (wants_truth_ ? "truth" : "falsity")
           << " projector (defect " << defect_ << ")";
        return os.str();
      }()),
      path(path_),
      wants_truth(wants_truth_),
      defect(defect_) {}

const Qumix& HolisticEvaluation::level_meaning(int level) const {
  if (level < 1 || level > tree_.height())
    throw EvaluationError("level_meaning: level out of range");
  return meanings_[static_cast<std::size_t>(level - 1)];
}

double HolisticEvaluation::probability() const {
  return holoq::probability(perspective_, meaning());
}

Qumix HolisticEvaluation::contextual_meaning(OccurrencePath pos) const {
  if (!tree_.valid(pos))
    throw EvaluationError("contextual_meaning: invalid occurrence path " +
                          path_str(pos));
  const Occurrence& occ = tree_.at(pos);
  return reduce(level_meaning(pos.level), span_indices(occ));
}

HolisticEvaluation evaluate(const QuasiModel& qm, const TruthPerspective& t,
                            const Sentence& s, const Qumix& top) {
  HolisticEvaluation ev;
  ev.sentence_ = s;
  ev.perspective_ = t;
  ev.tree_ = build_syntactical_tree(s);

  if (top.qubits() != ev.tree_.qubit_count()) {
    std::ostringstream os;
    os << "top state has " << top.qubits() << " qubits but the semantic space of '"
       << print_sentence(s) << "' has " << ev.tree_.qubit_count();
    throw EvaluationError(os.str());
  }
  const ValidationReport v = validate_qumix(top);
  if (!v.pass) throw EvaluationError("top state is not a valid qumix: " + v.to_string());

  ev.gates_ = pseudo_gate_tree(ev.tree_, t, qm);

  const int k = ev.tree_.height();
  ev.meanings_.assign(static_cast<std::size_t>(k), Qumix{});
  ev.meanings_[static_cast<std::size_t>(k - 1)] = top;
  for (int level = k - 1; level >= 1; --level)
    ev.meanings_[static_cast<std::size_t>(level - 1)] =
        ev.gates_[static_cast<std::size_t>(k - 1 - level)].apply(
            ev.meanings_[static_cast<std::size_t>(level)]);

  // Truth/falsity constraint at every level where t/f occurs.
  const auto [falsity, truth] = truth_projectors(t);
  for (int level = 1; level <= k; ++level) {
    const auto& row = ev.tree_.row(level);
    for (int pos = 1; pos <= static_cast<int>(row.size()); ++pos) {
      const Sentence& occ = row[static_cast<std::size_t>(pos - 1)].sentence;
      if (occ.kind() != NodeKind::TrueConst && occ.kind() != NodeKind::FalseConst)
        continue;
      const bool wants_truth = occ.kind() == NodeKind::TrueConst;
      const Qumix red = reduce(ev.meanings_[static_cast<std::size_t>(level - 1)],
                               {row[static_cast<std::size_t>(pos - 1)].qubit_first});
      const double defect = qumix_distance(red, wants_truth ? truth : falsity);
      ev.constraint_.entries.push_back(
          ConstraintEntry{OccurrencePath{level, pos}, wants_truth, defect});
      ev.constraint_.max_defect = std::max(ev.constraint_.max_defect, defect);
      if (defect > kTol)
        throw ConstraintViolation(OccurrencePath{level, pos}, wants_truth, defect);
    }
  }
  ev.constraint_.pass = true;
  return ev;
}

NormalityReport check_normal(const HolisticEvaluation& ev) {
  NormalityReport rep;
  struct Group {
    OccurrencePath first;
    Qumix meaning;
  };
  std::unordered_map<Sentence, Group> groups;
  const auto& tree = ev.tree();
  for (int level = 1; level <= tree.height(); ++level) {
    for (int pos = 1; pos <= tree.width(level); ++pos) {
      const OccurrencePath path{level, pos};
      const Sentence& sub = tree.at(path).sentence;
      Qumix ctx = ev.contextual_meaning(path);
      auto it = groups.find(sub);
      if (it == groups.end()) {
        groups.emplace(sub, Group{path, std::move(ctx)});
        continue;
      }
      const double d = qumix_distance(it->second.meaning, ctx);
      if (d > kTol) {
        rep.normal = false;
        rep.violations.push_back(NormalityViolation{sub, it->second.first, path, d});
      }
    }
  }
  rep.groups = static_cast<int>(groups.size());
  return rep;
}

CommutationReport check_commutation(const HolisticEvaluation& ev) {
  CommutationReport rep;
  const auto& tree = ev.tree();
  const TruthPerspective& t = ev.perspective();

  for (int level = 1; level < tree.height(); ++level) {
    for (int pos = 1; pos <= tree.width(level); ++pos) {
      const Occurrence& occ = tree.at(level, pos);
      const Sentence& s = occ.sentence;
      if (s.is_atomic()) continue;

      CommutationEntry entry;
      entry.path = OccurrencePath{level, pos};

      const Qumix parent_ctx = ev.contextual_meaning(entry.path);
      const int child_level = level + 1;

      try {
        Qumix expected;
        switch (s.kind()) {
          case NodeKind::Not:
          case NodeKind::SqrtId: {
            entry.clause = s.kind() == NodeKind::Not ? 1 : 2;
            const Qumix child_ctx =
                ev.contextual_meaning(OccurrencePath{child_level, occ.child_first});
            const GateSpec g = s.kind() == NodeKind::Not
                                   ? GateSpec::negation(child_ctx.qubits(), t)
                                   : GateSpec::sqrt_id(child_ctx.qubits(), t);
            expected = apply_gate(g, child_ctx);
            break;
          }
          case NodeKind::Toffoli:
          case NodeKind::Xor: {
            entry.clause = s.kind() == NodeKind::Toffoli ? 3 : 4;
            // Joint reduction over the combined child span, which equals the
            // parent's span one level up.
            const Qumix joint = reduce(ev.level_meaning(child_level),
                                       span_indices(occ));
            const GateSpec g =
                s.kind() == NodeKind::Toffoli
                    ? GateSpec::toffoli(atomic_complexity(s.child(0)),
                                        atomic_complexity(s.child(1)),
                                        atomic_complexity(s.child(2)), t)
                    : GateSpec::exclusive_or(atomic_complexity(s.child(0)),
                                             atomic_complexity(s.child(1)), t);
            expected = apply_gate(g, joint);
            break;
          }
          case NodeKind::Understands:
          case NodeKind::Knows: {
            entry.clause = s.kind() == NodeKind::Understands ? 5 : 6;
            const Qumix child_ctx =
                ev.contextual_meaning(OccurrencePath{child_level, occ.child_first});
            // The op sits in the pseudo-gate keyed on this level.
            const PseudoGate& pg =
                ev.pseudo_gates()[static_cast<std::size_t>(tree.height() - 1 - level)];
            expected = pg.component(static_cast<std::size_t>(pos - 1))
                           .epistemic()
                           .apply(child_ctx);
            break;
          }
          default:
            continue;
        }
        entry.defect = qumix_distance(parent_ctx, expected);
        entry.pass = entry.defect <= kTol;
      } catch (const EpistemicError& e) {
        entry.pass = false;
        entry.defect = 1.0;
        entry.note = e.what();
      }
      rep.max_defect = std::max(rep.max_defect, entry.defect);
      if (!entry.pass) rep.pass = false;
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

void ModelAssignment::assign(const Sentence& s, const TruthPerspective& t, Qumix top) {
  map_[print_sentence(s)][t.key()] = std::move(top);
}

void ModelAssignment::assign_key(const std::string& sentence_text,
                                 const std::string& perspective_key, Qumix top) {
  map_[sentence_text][perspective_key] = std::move(top);
}

const Qumix* ModelAssignment::find(const Sentence& s, const TruthPerspective& t) const {
  auto it = map_.find(print_sentence(s));
  if (it == map_.end()) return nullptr;
  auto jt = it->second.find(t.key());
  return jt == it->second.end() ? nullptr : &jt->second;
}

}  // namespace holoq
