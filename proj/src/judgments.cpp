#include "holoq/judgments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

namespace holoq {

namespace {

constexpr double kTruthTol = 1e-9;

void digest_update(std::uint64_t& h, double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof bits);
  h ^= bits;
  h *= 1099511628211ull;
}

bool contains_truth_constant(const Sentence& s) {
  if (s.kind() == NodeKind::TrueConst || s.kind() == NodeKind::FalseConst) return true;
  for (std::size_t i = 0; i < s.child_count(); ++i)
    if (contains_truth_constant(s.child(i))) return true;
  return false;
}

double contextual_probability(const HolisticEvaluation& ev, const Sentence& sub) {
  const auto occs = occurrences_of(ev.tree(), sub);
  if (occs.empty())
    throw JudgmentError("sentence '" + print_sentence(sub) +
                        "' does not occur in the context");
  return probability(ev.perspective(), ev.contextual_meaning(occs.front()));
}

std::vector<TruthPerspective> perspectives_for(const QuasiModel& qm, const Claim& claim,
                                               std::uint64_t seed) {
  switch (claim.scope) {
    case PerspectiveScope::Fixed:
      break;
    case PerspectiveScope::PerAgent:
      return {qm.resolve(claim.agent, claim.time).perspective()};
    case PerspectiveScope::Sampled: {
      std::vector<TruthPerspective> out{TruthPerspective::identity(),
                                        TruthPerspective::hadamard()};
      Rng rng(seed ^ 0xfeedf00dULL);
      for (int i = 0; i < 3; ++i)
        out.emplace_back(Eigen::Matrix2cd(random_unitary(2, rng)));
      return out;
    }
  }
  if (claim.kind == ClaimKind::HarmonicConsequence) {
    if (auto shared = qm.shared_perspective()) return {*shared};
  }
  return {claim.fixed_perspective};
}

SamplerConfig sampler_config_for(const QuasiModel& qm, const SamplerConfig& cfg,
                                 std::uint64_t salt) {
  SamplerConfig out = cfg;
  out.seed = cfg.seed ^ salt;
  if (out.extra_bases.empty()) {
    out.extra_bases.push_back(TruthPerspective::identity());
    for (const auto& sit : qm.situations()) out.extra_bases.push_back(sit.perspective());
  }
  return out;
}

}  // namespace

std::string Claim::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ClaimKind::Truth:
      os << "truth of " << print_sentence(alpha);
      break;
    case ClaimKind::ContextualTruth:
      os << "contextual truth of " << print_sentence(alpha) << " in "
         << print_sentence(context);
      break;
    case ClaimKind::Consequence:
    case ClaimKind::HarmonicConsequence:
      os << print_sentence(alpha) << " |= " << print_sentence(beta) << " in context "
         << print_sentence(context);
      if (kind == ClaimKind::HarmonicConsequence) os << " (harmonic)";
      break;
  }
  switch (scope) {
    case PerspectiveScope::Fixed:    os << " at " << fixed_perspective.key(); break;
    case PerspectiveScope::PerAgent: os << " at perspective of " << agent << "@" << time; break;
    case PerspectiveScope::Sampled:  os << " over sampled perspectives"; break;
  }
  return os.str();
}

std::string Verdict::outcome_name() const {
  switch (outcome) {
    case Outcome::Holds:                  return "Holds";
    case Outcome::NoCounterexampleFound:  return "NoCounterexampleFound";
    case Outcome::CounterexampleFound:    return "CounterexampleFound";
    case Outcome::SamplerExhausted:       return "SamplerExhausted";
  }
  return "?";
}

bool is_true(const QuasiModel& qm, const TruthPerspective& t, const Sentence& s,
             const ModelAssignment& assignment) {
  const Qumix* top = assignment.find(s, t);
  if (!top)
    throw JudgmentError("no assignment for '" + print_sentence(s) +
                        "' at perspective " + t.key());
  const HolisticEvaluation ev = evaluate(qm, t, s, *top);
  if (!check_normal(ev).normal)
    throw JudgmentError("evaluation of '" + print_sentence(s) + "' is not normal");
  return ev.probability() >= 1.0 - kTruthTol;
}

bool is_true_contextual(const HolisticEvaluation& ev, OccurrencePath pos) {
  if (!ev.tree().valid(pos))
    throw JudgmentError("invalid occurrence path");
  if (!check_normal(ev).normal)
    throw JudgmentError("evaluation is not normal");
  return probability(ev.perspective(), ev.contextual_meaning(pos)) >= 1.0 - kTruthTol;
}

std::optional<Qumix> antecedent_targeted_top(const SyntacticalTree& tree,
                                             const std::vector<PseudoGate>& gates,
                                             const TruthPerspective& t,
                                             const Sentence& alpha, Rng& rng) {
  const int k = tree.height();
  auto occs = occurrences_of(tree, alpha);
  std::sort(occs.begin(), occs.end(),
            [](const OccurrencePath& a, const OccurrencePath& b) {
              return a.level > b.level;
            });
  const auto [falsity, truth] = truth_projectors(t);

  for (const auto& path : occs) {
    const int i = path.level;
    bool ok = true;
    for (int j = 0; j <= k - 1 - i && ok; ++j)
      if (!gates[static_cast<std::size_t>(j)].invertible()) ok = false;
    for (const auto& occ : tree.row(i)) {
      if (!occ.sentence.is_atomic() && contains_truth_constant(occ.sentence)) ok = false;
    }
    if (!ok) continue;

    std::map<std::string, Qumix> cache;
    const Occurrence& target = tree.at(path);
    if (target.sentence.kind() == NodeKind::Atom)
      cache.emplace(target.sentence.name(), truth);

    Qumix state;
    bool started = false;
    int pos = 0;
    for (const auto& occ : tree.row(i)) {
      ++pos;
      Qumix factor;
      if (pos == path.pos && !occ.sentence.is_atomic()) {
        // tau (x) truth: anything on the leading qubits, T-true at the end.
        factor = truth;
        for (int q = 1; q < occ.qubit_count; ++q)
          factor = tensor(random_mixed(1, rng), factor);
      } else {
        switch (occ.sentence.kind()) {
          case NodeKind::TrueConst:  factor = truth; break;
          case NodeKind::FalseConst: factor = falsity; break;
          case NodeKind::Atom: {
            auto it = cache.find(occ.sentence.name());
            if (it == cache.end())
              it = cache.emplace(occ.sentence.name(), random_mixed(1, rng)).first;
            factor = it->second;
            break;
          }
          default:
            factor = random_mixed(1, rng);
            for (int q = 1; q < occ.qubit_count; ++q)
              factor = tensor(factor, random_mixed(1, rng));
            break;
        }
      }
      state = started ? tensor(state, factor) : factor;
      started = true;
    }

    for (int j = k - 1 - i; j >= 0; --j)
      state = gates[static_cast<std::size_t>(j)].apply_inverse(state);
    return state;
  }
  return std::nullopt;
}

Verdict check_consequence(const QuasiModel& qm, const Claim& claim,
                          const SamplerConfig& cfg) {
  Verdict verdict;
  verdict.sample_digest = 1469598103934665603ull;

  const bool implication = claim.kind == ClaimKind::Consequence ||
                           claim.kind == ClaimKind::HarmonicConsequence;
  if (claim.kind == ClaimKind::HarmonicConsequence && !qm.is_harmonic())
    throw JudgmentError("harmonic claim over a non-harmonic quasi-model");

  Sentence context = claim.kind == ClaimKind::Truth ? claim.alpha : claim.context;
  if (implication) {
    bool extended = false;
    if (!context.contains(claim.alpha)) {
      context = Sentence::exclusive_or(context, claim.alpha);
      extended = true;
    }
    if (!context.contains(claim.beta)) {
      context = Sentence::exclusive_or(context, claim.beta);
      extended = true;
    }
    if (extended)
      verdict.note = "context extended to " + print_sentence(context) +
                     " so that both sentences occur in it";
  } else if (claim.kind == ClaimKind::ContextualTruth && !context.contains(claim.alpha)) {
    throw JudgmentError("'" + print_sentence(claim.alpha) +
                        "' is not a subformula of the context");
  }

  const SyntacticalTree tree = build_syntactical_tree(context);
  const auto perspectives = perspectives_for(qm, claim, cfg.seed);
  const int per_perspective =
      std::max(1, (cfg.count + static_cast<int>(perspectives.size()) - 1) /
                      static_cast<int>(perspectives.size()));

  for (std::size_t pi = 0; pi < perspectives.size(); ++pi) {
    const TruthPerspective& t = perspectives[pi];
    const auto gates = pseudo_gate_tree(tree, t, qm);
    TopStateSampler sampler(tree, t,
                            sampler_config_for(qm, cfg, 0x9e3779b9ull * (pi + 1)));

    for (int s = 0; s < per_perspective; ++s) {
      Qumix top;
      if (implication && s % 3 == 2) {
        auto targeted =
            antecedent_targeted_top(tree, gates, t, claim.alpha, sampler.rng());
        top = targeted ? std::move(*targeted) : sampler.next();
      } else {
        top = sampler.next();
      }

      ++verdict.samples;
      const int sample_index = verdict.samples - 1;

      std::optional<HolisticEvaluation> ev;
      try {
        ev.emplace(evaluate(qm, t, context, top));
      } catch (const ConstraintViolation&) {
        continue;  // back-solved candidate broke a t/f constraint; discard
      } catch (const PseudoGateError&) {
        ++verdict.skipped_unrealizable;
        continue;
      } catch (const EpistemicError&) {
        ++verdict.skipped_unrealizable;
        continue;
      }
      if (!check_normal(*ev).normal) {
        ++verdict.skipped_nonnormal;
        continue;
      }

      const double p_alpha = contextual_probability(*ev, claim.alpha);
      digest_update(verdict.sample_digest, p_alpha);

      if (!implication) {
        ++verdict.antecedent_hits;
        verdict.max_probability = std::max(verdict.max_probability, p_alpha);
        if (p_alpha < 1.0 - kTruthTol) {
          verdict.outcome = Verdict::Outcome::CounterexampleFound;
          verdict.counterexample = Counterexample{top, t, context, p_alpha,
                                                  std::nan(""), sample_index};
          return verdict;
        }
        continue;
      }

      if (p_alpha < 1.0 - kTruthTol) continue;
      ++verdict.antecedent_hits;
      const double p_beta = contextual_probability(*ev, claim.beta);
      digest_update(verdict.sample_digest, p_beta);
      verdict.max_probability = std::max(verdict.max_probability, p_beta);
      if (p_beta < 1.0 - kTruthTol) {
        verdict.outcome = Verdict::Outcome::CounterexampleFound;
        verdict.counterexample =
            Counterexample{top, t, context, p_alpha, p_beta, sample_index};
        return verdict;
      }
    }
  }

  if (verdict.antecedent_hits == 0) {
    verdict.outcome = Verdict::Outcome::SamplerExhausted;
    if (verdict.note.empty())
      verdict.note = "no sample satisfied the antecedent";
  } else {
    verdict.outcome = Verdict::Outcome::NoCounterexampleFound;
  }
  return verdict;
}

Verdict lemma_noncontradiction(const Sentence& alpha, const SamplerConfig& cfg,
                               const QuasiModel& qm) {
  // alpha /\ not alpha, desugared.
  const Sentence gamma =
      Sentence::conjunction(alpha, Sentence::negation(alpha));
  const SyntacticalTree tree = build_syntactical_tree(gamma);

  std::vector<TruthPerspective> perspectives{TruthPerspective::identity(),
                                             TruthPerspective::hadamard()};
  Rng prng(cfg.seed ^ 0x1e11a0ULL);
  for (int i = 0; i < 3; ++i)
    perspectives.emplace_back(Eigen::Matrix2cd(random_unitary(2, prng)));

  Verdict verdict;
  verdict.sample_digest = 1469598103934665603ull;
  const int per_perspective =
      std::max(1, (cfg.count + static_cast<int>(perspectives.size()) - 1) /
                      static_cast<int>(perspectives.size()));

  for (std::size_t pi = 0; pi < perspectives.size(); ++pi) {
    const TruthPerspective& t = perspectives[pi];
    TopStateSampler sampler(tree, t,
                            sampler_config_for(qm, cfg, 0xabcdefULL * (pi + 1)));
    for (int s = 0; s < per_perspective; ++s) {
      const Qumix top = sampler.next();
      ++verdict.samples;
      std::optional<HolisticEvaluation> ev;
      try {
        ev.emplace(evaluate(qm, t, gamma, top));
      } catch (const ConstraintViolation&) {
        continue;
      } catch (const PseudoGateError&) {
        ++verdict.skipped_unrealizable;
        continue;
      } catch (const EpistemicError&) {
        ++verdict.skipped_unrealizable;
        continue;
      }
      if (!check_normal(*ev).normal) {
        ++verdict.skipped_nonnormal;
        continue;
      }
      ++verdict.antecedent_hits;
      const double p = ev->probability();
      digest_update(verdict.sample_digest, p);
      verdict.max_probability = std::max(verdict.max_probability, p);
      if (p >= 1.0 - 1e-6) {
        verdict.outcome = Verdict::Outcome::CounterexampleFound;
        verdict.counterexample = Counterexample{top, t, gamma, p, std::nan(""),
                                                verdict.samples - 1};
        return verdict;
      }
    }
  }
  verdict.outcome = verdict.antecedent_hits > 0
                        ? Verdict::Outcome::NoCounterexampleFound
                        : Verdict::Outcome::SamplerExhausted;
  std::ostringstream os;
  os << "max p over " << verdict.antecedent_hits << " normal models: "
     << verdict.max_probability;
  verdict.note = os.str();
  return verdict;
}

Verdict refute_truth(const QuasiModel& qm, const TruthPerspective& t,
                     const Sentence& s, const SamplerConfig& cfg) {
  const SyntacticalTree tree = build_syntactical_tree(s);
  Verdict verdict;
  verdict.sample_digest = 1469598103934665603ull;
  TopStateSampler sampler(tree, t, sampler_config_for(qm, cfg, 0x8eedULL));
  for (int i = 0; i < cfg.count; ++i) {
    const Qumix top = sampler.next();
    ++verdict.samples;
    std::optional<HolisticEvaluation> ev;
    try {
      ev.emplace(evaluate(qm, t, s, top));
    } catch (const ConstraintViolation&) {
      continue;
    } catch (const PseudoGateError&) {
      ++verdict.skipped_unrealizable;
      continue;
    } catch (const EpistemicError&) {
      ++verdict.skipped_unrealizable;
      continue;
    }
    if (!check_normal(*ev).normal) {
      ++verdict.skipped_nonnormal;
      continue;
    }
    ++verdict.antecedent_hits;
    const double p = ev->probability();
    digest_update(verdict.sample_digest, p);
    verdict.max_probability = std::max(verdict.max_probability, p);
    if (p >= 1.0 - 1e-6) {
      verdict.outcome = Verdict::Outcome::CounterexampleFound;
      verdict.counterexample =
          Counterexample{top, t, s, p, std::nan(""), verdict.samples - 1};
      return verdict;
    }
  }
  verdict.outcome = verdict.antecedent_hits > 0
                        ? Verdict::Outcome::NoCounterexampleFound
                        : Verdict::Outcome::SamplerExhausted;
  return verdict;
}

std::pair<double, double> replay_counterexample(const QuasiModel& qm,
                                                const Claim& claim,
                                                const Counterexample& cx) {
  const HolisticEvaluation ev = evaluate(qm, cx.perspective, cx.context, cx.top);
  switch (claim.kind) {
    case ClaimKind::Truth:
      return {ev.probability(), std::nan("")};
    case ClaimKind::ContextualTruth:
      return {contextual_probability(ev, claim.alpha), std::nan("")};
    case ClaimKind::Consequence:
    case ClaimKind::HarmonicConsequence:
      return {contextual_probability(ev, claim.alpha),
              contextual_probability(ev, claim.beta)};
  }
  throw JudgmentError("unknown claim kind");
}

}  // namespace holoq
