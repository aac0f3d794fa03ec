#include "holoq/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace holoq {

namespace {

Sentence S(const std::string& text) { return parse_sentence(text); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

EpistemicSituation plain_situation(const std::string& agent, const std::string& time,
                                   const TruthPerspective& persp, EpistemicOp k_op) {
  return EpistemicSituation(
      agent, time, persp, EpistemicDomain{},
      EpistemicOp::preset_identity(EpKind::Understanding, agent, time),
      std::move(k_op));
}

// I^(n-1) (x) k, with k conjugated into the given basis.
Matrix lift_last_qubit(const Eigen::Matrix2cd& k, const TruthPerspective& basis,
                       int arity) {
  const Eigen::Matrix2cd rotated = basis.matrix() * k * basis.matrix().adjoint();
  const Eigen::Index dim = Eigen::Index{1} << arity;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim / 2; ++a)
    out.block(a * 2, a * 2, 2, 2) = rotated;
  return out;
}

EpistemicOp last_qubit_kraus(const std::string& agent, const std::string& time,
                             const std::vector<Eigen::Matrix2cd>& ks,
                             const TruthPerspective& basis,
                             const std::vector<int>& arities) {
  std::map<int, KrausChannel> by_arity;
  for (int n : arities) {
    KrausChannel channel;
    for (const auto& k : ks) channel.elements.push_back(lift_last_qubit(k, basis, n));
    by_arity.emplace(n, std::move(channel));
  }
  return EpistemicOp::kraus(EpKind::Knowledge, agent, time, std::move(by_arity));
}

struct ClaimRun {
  Claim claim;
  Verdict verdict;
};

ClaimRun run_claim(const QuasiModel& qm, Claim claim, const ScenarioOptions& opts,
                   std::uint64_t salt) {
  SamplerConfig cfg;
  cfg.seed = opts.seed ^ salt;
  cfg.count = opts.samples;
  Verdict v = check_consequence(qm, claim, cfg);
  return ClaimRun{std::move(claim), std::move(v)};
}

std::string verdict_details(const Verdict& v) {
  std::ostringstream os;
  os << v.outcome_name() << " (" << v.samples << " samples, " << v.antecedent_hits
     << " with true antecedent";
  if (v.skipped_nonnormal > 0) os << ", " << v.skipped_nonnormal << " non-normal";
  os << ")";
  if (v.counterexample) {
    os << "; p_alpha=" << fmt(v.counterexample->p_alpha);
    if (!std::isnan(v.counterexample->p_beta))
      os << ", p_beta=" << fmt(v.counterexample->p_beta);
  }
  if (!v.note.empty()) os << "; " << v.note;
  return os.str();
}

// A sampled implication that is expected to survive refutation.
ScenarioCheck expect_holds(const QuasiModel& qm, Claim claim, const ScenarioOptions& opts,
                           std::uint64_t salt, const std::string& name) {
  ClaimRun run = run_claim(qm, std::move(claim), opts, salt);
  ScenarioCheck check;
  check.name = name;
  check.pass = run.verdict.outcome == Verdict::Outcome::NoCounterexampleFound &&
               run.verdict.antecedent_hits > 0;
  check.details = verdict_details(run.verdict);
  return check;
}

// A claim expected to fail, with a replay-verified countermodel attached.
ScenarioCheck expect_countermodel(const QuasiModel& qm, Claim claim,
                                  const ScenarioOptions& opts, std::uint64_t salt,
                                  const std::string& name) {
  SamplerConfig cfg;
  cfg.seed = opts.seed ^ salt;
  cfg.count = opts.samples;
  Verdict v = check_consequence(qm, claim, cfg);
  ScenarioCheck check;
  check.name = name;
  check.details = verdict_details(v);
  if (v.outcome != Verdict::Outcome::CounterexampleFound) return check;
  Json file = counterexample_file(qm, claim, cfg, *v.counterexample);
  const ReplayResult rr = replay_counterexample_file(file);
  check.pass = rr.still_fails && rr.deviation <= 1e-12;
  check.details += "; replay deviation " + fmt(rr.deviation);
  check.countermodel = std::move(file);
  return check;
}

ScenarioReport s1(const ScenarioOptions& opts) {
  ScenarioReport rep{1, "knowledge implies truth in harmonic models", false, {}};
  const QuasiModel qm = harmonic_sound_model();
  if (!qm.all_knowledge_sound_for_truth())
    throw ScenarioError("situation 1 requires truth-sound knowledge operations");
  int salt = 0;
  for (const std::string alpha : {"q", "q (+) r", "not q"}) {
    Claim claim;
    claim.kind = ClaimKind::HarmonicConsequence;
    claim.alpha = Sentence::knows("a", "t", S(alpha));
    claim.beta = S(alpha);
    claim.context = claim.alpha;
    rep.checks.push_back(expect_holds(qm, claim, opts, 0x101 + salt++,
                                      "K[a@t] " + alpha + " entails " + alpha));
  }
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

ScenarioReport s2(const ScenarioOptions& opts) {
  ScenarioReport rep{2, "knowing of knowing implies knowing, not conversely", false, {}};
  const QuasiModel sound = harmonic_sound_model();
  {
    Claim claim;
    claim.kind = ClaimKind::HarmonicConsequence;
    claim.context = S("K[a@t] K[a@t] q");
    claim.alpha = claim.context;
    claim.beta = S("K[a@t] q");
    rep.checks.push_back(
        expect_holds(sound, claim, opts, 0x201, "K[a@t] K[a@t] q entails K[a@t] q"));
  }
  {
    const QuasiModel rotated = rotation_agent_model();
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.context = S("K[a@t] K[a@t] q");
    claim.alpha = S("K[a@t] q");
    claim.beta = S("K[a@t] K[a@t] q");
    rep.checks.push_back(expect_countermodel(
        rotated, claim, opts, 0x202, "converse fails: countermodel for K q |= K K q"));
  }
  rep.pass = rep.checks[0].pass && rep.checks[1].pass;
  return rep;
}

ScenarioReport s3(const ScenarioOptions& opts) {
  ScenarioReport rep{3, "agent-perspective entailments in non-harmonic models", false, {}};
  const QuasiModel qm = nonharmonic_model();
  if (qm.is_harmonic()) throw ScenarioError("situation 3 requires distinct perspectives");
  {
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.scope = PerspectiveScope::PerAgent;
    claim.agent = "a";
    claim.time = "t";
    claim.context = S("K[a@t] q");
    claim.alpha = claim.context;
    claim.beta = S("q");
    rep.checks.push_back(
        expect_holds(qm, claim, opts, 0x301, "3.1: K[a@t] q entails q at a's perspective"));
  }
  {
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.scope = PerspectiveScope::PerAgent;
    claim.agent = "a";
    claim.time = "t";
    claim.context = S("K[a@t] K[a@t] q");
    claim.alpha = claim.context;
    claim.beta = S("K[a@t] q");
    rep.checks.push_back(expect_holds(qm, claim, opts, 0x302,
                                      "3.2: K[a@t] K[a@t] q entails K[a@t] q at a's "
                                      "perspective"));
  }
  {
    // The unrestricted form fails across perspectives.
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.fixed_perspective = TruthPerspective::hadamard();
    claim.context = S("K[a@t] q");
    claim.alpha = claim.context;
    claim.beta = S("q");
    rep.checks.push_back(expect_countermodel(
        qm, claim, opts, 0x303,
        "cross-perspective countermodel for K[a@t] q |= q at H"));
  }
  rep.pass = rep.checks[0].pass && rep.checks[1].pass && rep.checks[2].pass;
  return rep;
}

ScenarioReport s4(const ScenarioOptions& opts) {
  ScenarioReport rep{4, "knowledge of another's knowledge: truth transfers, knowledge "
                        "does not", false, {}};
  {
    const QuasiModel sound = harmonic_sound_model();
    Claim claim;
    claim.kind = ClaimKind::HarmonicConsequence;
    claim.context = S("K[a@t] K[b@t] q");
    claim.alpha = claim.context;
    claim.beta = S("q");
    rep.checks.push_back(
        expect_holds(sound, claim, opts, 0x401, "K[a@t] K[b@t] q entails q"));
  }
  {
    const QuasiModel flip = flip_b_harmonic_model();
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.context = S("K[a@t] K[b@t] q");
    claim.alpha = claim.context;
    claim.beta = S("K[a@t] q");
    rep.checks.push_back(expect_countermodel(
        flip, claim, opts, 0x402,
        "countermodel: Alice knows that Bob knows q, without knowing q"));
  }
  rep.pass = rep.checks[0].pass && rep.checks[1].pass;
  return rep;
}

ScenarioReport s5(const ScenarioOptions& opts) {
  ScenarioReport rep{5, "sentences every agent knows in harmonic sound models", false, {}};
  for (const auto& persp : {TruthPerspective::identity(), TruthPerspective::hadamard()}) {
    const QuasiModel qm = harmonic_sound_model(persp);
    if (!qm.all_knowledge_sound())
      throw ScenarioError("situation 5 requires sound-capacity agents");
    int salt = 0;
    for (const std::string text : {"K[a@t] t", "K[a@t] not f"}) {
      Claim claim;
      claim.kind = ClaimKind::Truth;
      claim.alpha = S(text);
      claim.context = claim.alpha;
      claim.fixed_perspective = persp;
      rep.checks.push_back(expect_holds(
          qm, claim, opts, 0x501 + salt++ + (persp.key() == "H" ? 16 : 0),
          text + " true in every sampled model at " + persp.key()));
    }
  }
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

ScenarioReport s6(const ScenarioOptions& opts) {
  ScenarioReport rep{6, "knowing a conjunction without knowing its members", false, {}};
  const QuasiModel qm = conjunction_table_model();
  for (const std::string member : {"q", "r"}) {
    Claim claim;
    claim.kind = ClaimKind::Consequence;
    claim.context = S("K[a@t] T(q, r, f)");
    claim.alpha = claim.context;
    claim.beta = Sentence::knows("a", "t", S(member));
    rep.checks.push_back(expect_countermodel(
        qm, claim, opts, 0x601 + (member == "r" ? 1 : 0),
        "countermodel: knowing q /\\ r without knowing " + member));
  }
  rep.pass = rep.checks[0].pass && rep.checks[1].pass;
  return rep;
}

ScenarioReport s7(const ScenarioOptions& opts) {
  (void)opts;
  ScenarioReport rep{7, "knowledge is not closed under conjunction", false, {}};
  const QuasiModel qm = memberwise_table_model();
  const Sentence k_q = Sentence::knows("a", "t", S("q"));
  const Sentence k_r = Sentence::knows("a", "t", S("r"));
  const Sentence k_conj = Sentence::knows("a", "t", S("T(q, r, f)"));
  const Sentence gamma =
      Sentence::exclusive_or(Sentence::exclusive_or(k_q, k_r), k_conj);

  // Fixed witness model: all atoms true.
  const TruthPerspective persp;
  const auto [p0, p1] = truth_projectors(persp);
  const Qumix top =
      tensor(tensor(tensor(tensor(p1, p1), p1), p1), p0);  // leaves q,r,q,r,f
  const HolisticEvaluation ev = evaluate(qm, persp, gamma, top);
  if (!check_normal(ev).normal)
    throw ScenarioError("situation 7 witness model is not normal");

  const auto ctx_p = [&](const Sentence& sub) {
    return probability(persp, ev.contextual_meaning(occurrences_of(ev.tree(), sub).at(0)));
  };
  const double p_kq = ctx_p(k_q);
  const double p_kr = ctx_p(k_r);
  const double p_kconj = ctx_p(k_conj);

  ScenarioCheck check;
  check.name = "witness: K q and K r contextually true, K (q /\\ r) not";
  check.pass = p_kq >= 1.0 - 1e-9 && p_kr >= 1.0 - 1e-9 && p_kconj < 1.0 - 1e-9;
  check.details = "p(K q)=" + fmt(p_kq) + ", p(K r)=" + fmt(p_kr) +
                  ", p(K (q /\\ r))=" + fmt(p_kconj);

  Claim claim;
  claim.kind = ClaimKind::ContextualTruth;
  claim.context = gamma;
  claim.alpha = k_conj;
  SamplerConfig cfg;
  cfg.seed = opts.seed;
  cfg.count = opts.samples;
  Counterexample cx{top, persp, gamma, p_kconj, std::nan(""), 0};
  Json file = counterexample_file(qm, claim, cfg, cx);
  const ReplayResult rr = replay_counterexample_file(file);
  check.pass = check.pass && rr.still_fails && rr.deviation <= 1e-12;
  check.details += "; replay deviation " + fmt(rr.deviation);
  check.countermodel = std::move(file);

  rep.checks.push_back(std::move(check));
  rep.pass = rep.checks[0].pass;
  return rep;
}

ScenarioReport s8(const ScenarioOptions& opts) {
  ScenarioReport rep{8, "contradictions are never known", false, {}};

  std::vector<TruthPerspective> perspectives{TruthPerspective::identity(),
                                             TruthPerspective::hadamard()};
  Rng prng(opts.seed ^ 0x808ULL);
  for (int i = 0; i < 3; ++i)
    perspectives.emplace_back(Eigen::Matrix2cd(random_unitary(2, prng)));

  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd px, py, pz, damp0, damp1, proj0, proj1;
  px << 0, 1, 1, 0;
  py << Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0};
  pz << 1, 0, 0, -1;
  const double g = 0.3;
  damp0 << 1, 0, 0, std::sqrt(1.0 - g);
  damp1 << 0, std::sqrt(g), 0, 0;
  proj0 << 1, 0, 0, 0;
  proj1 << 0, 0, 0, 1;
  const double lam = 0.4;

  struct Preset {
    std::string name;
    std::vector<Eigen::Matrix2cd> kraus;
  };
  const std::vector<Preset> presets{
      {"identity", {id2}},
      {"dephasing", {proj0, proj1}},
      {"depolarizing",
       {std::sqrt(1.0 - 0.75 * lam) * id2, std::sqrt(lam / 4.0) * px,
        std::sqrt(lam / 4.0) * py, std::sqrt(lam / 4.0) * pz}},
      {"falsity-damping", {damp0, damp1}},
  };
  const std::vector<Sentence> alphas{S("q"), S("q (+) r")};

  const int combos = static_cast<int>(perspectives.size() * presets.size() *
                                      alphas.size());
  const int per_combo = std::max(1, (opts.contradiction_samples + combos - 1) / combos);

  int total = 0;
  double max_p = 0.0;
  bool found = false;
  std::string found_detail;
  std::uint64_t salt = 0;

  for (const auto& persp : perspectives) {
    for (const auto& preset : presets) {
      QuasiModel qm;
      qm.add_situation(plain_situation(
          "a", "t", persp,
          last_qubit_kraus("a", "t", preset.kraus, persp, {1, 3, 5})));
      if (!qm.situations()[0].knowledge_sound_for_truth())
        throw ScenarioError("situation 8 preset '" + preset.name +
                            "' fails the truth-soundness probe");
      for (const auto& alpha : alphas) {
        const Sentence sentence =
            Sentence::knows("a", "t",
                            Sentence::conjunction(alpha, Sentence::negation(alpha)));
        SamplerConfig cfg;
        cfg.seed = opts.seed ^ (0x800 + salt++);
        cfg.count = per_combo;
        const Verdict v = refute_truth(qm, persp, sentence, cfg);
        total += v.antecedent_hits;
        max_p = std::max(max_p, v.max_probability);
        if (v.outcome == Verdict::Outcome::CounterexampleFound) {
          found = true;
          found_detail = "violation with K preset '" + preset.name + "' at " +
                         persp.key() + ", p=" + fmt(v.counterexample->p_alpha);
        }
      }
    }
  }

  ScenarioCheck check;
  check.name = "no sampled model makes a known contradiction true";
  check.pass = !found && total >= opts.contradiction_samples;
  std::ostringstream os;
  os << total << " normal models across " << perspectives.size()
     << " perspectives and " << presets.size() << " knowledge presets; max p "
     << fmt(max_p);
  if (found) os << "; " << found_detail;
  check.details = os.str();
  rep.checks.push_back(std::move(check));
  rep.pass = rep.checks[0].pass;
  return rep;
}

ScenarioReport s9(const ScenarioOptions& opts) {
  (void)opts;
  ScenarioReport rep{9, "Alice knows that Bob is wrong", false, {}};
  const QuasiModel qm = situation9_model();
  const TruthPerspective ta;  // I
  const TruthPerspective tb = TruthPerspective::hadamard();
  const auto [a_falsity, a_truth] = truth_projectors(ta);

  {
    ScenarioCheck c;
    c.name = "epistemic distance between the perspectives is 1/2";
    const double d = epistemic_distance(ta, tb);
    const bool preorder = probability(tb, a_truth) <= probability(tb, a_falsity);
    c.pass = std::abs(d - 0.5) <= 1e-12 && preorder;
    c.details = "distance " + fmt(d) + "; p_b of a-truth " +
                fmt(probability(tb, a_truth)) + " <= p_b of a-falsity " +
                fmt(probability(tb, a_falsity));
    rep.checks.push_back(std::move(c));
  }
  {
    ScenarioCheck c;
    c.name = "Bob's knowledge maps Alice's falsity to Alice's truth";
    const auto& kb = qm.resolve("b", "t").knowledge();
    c.pass = qumix_close(kb->apply(a_falsity), a_truth, 1e-9);
    const auto& ka = qm.resolve("a", "t").knowledge();
    c.pass = c.pass && qumix_close(ka->apply(a_truth), a_truth, 1e-9);
    c.details = "K_b maps falsity to truth; K_a fixes truth";
    rep.checks.push_back(std::move(c));
  }
  {
    ScenarioCheck c;
    c.name = "K[a@t] K[b@t] f is true at Alice's perspective";
    const HolisticEvaluation ev = evaluate(qm, ta, S("K[a@t] K[b@t] f"), a_falsity);
    const double p = ev.probability();
    const double p_b_level2 = probability(tb, ev.level_meaning(2));
    c.pass = std::abs(p - 1.0) <= 1e-12 && p_b_level2 < 1.0 - 1e-6;
    c.details = "p at a's perspective " + fmt(p) +
                "; p at b's perspective of the K[b@t] f level " + fmt(p_b_level2);
    rep.checks.push_back(std::move(c));
  }
  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

}  // namespace

QuasiModel harmonic_sound_model(const TruthPerspective& shared) {
  QuasiModel qm;
  for (const std::string agent : {"a", "b"})
    qm.add_situation(plain_situation(
        agent, "t", shared,
        EpistemicOp::preset_identity(EpKind::Knowledge, agent, "t")));
  return qm;
}

QuasiModel nonharmonic_model() {
  QuasiModel qm;
  // Agent a sees one off-basis state as true-for-Bob: sound for truth at its
  // own perspective, but a source of cross-perspective countermodels.
  const auto [i0, i1] = truth_projectors(TruthPerspective::identity());
  const auto [h0, h1] = truth_projectors(TruthPerspective::hadamard());
  std::map<int, TableChannel> tables;
  tables.emplace(1, TableChannel{{TableEntry{i0, h1}}, TableFallback::Identity});
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      EpistemicOp::table(EpKind::Knowledge, "a", "t", std::move(tables))));
  qm.add_situation(plain_situation(
      "b", "t", TruthPerspective::hadamard(),
      EpistemicOp::preset_identity(EpKind::Knowledge, "b", "t")));
  return qm;
}

QuasiModel rotation_agent_model() {
  const double c = std::cos(M_PI / 4.0), s = std::sin(M_PI / 4.0);
  Eigen::Matrix2cd rot;
  rot << c, -s, s, c;
  QuasiModel qm;
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      last_qubit_kraus("a", "t", {rot}, TruthPerspective::identity(), {1})));
  return qm;
}

QuasiModel flip_b_harmonic_model() {
  QuasiModel qm;
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      EpistemicOp::preset_identity(EpKind::Knowledge, "a", "t")));
  qm.add_situation(plain_situation(
      "b", "t", TruthPerspective::identity(),
      EpistemicOp::preset_flip(EpKind::Knowledge, "b", "t",
                               TruthPerspective::identity())));
  return qm;
}

QuasiModel conjunction_table_model() {
  const auto [p0, p1] = truth_projectors(TruthPerspective::identity());
  const Qumix mixed(1, Matrix::Identity(2, 2) / 2.0);
  std::map<int, TableChannel> tables;
  // Arity 1: the agent garbles single atoms it is told are true.
  tables.emplace(1, TableChannel{{TableEntry{p1, mixed}}, TableFallback::Identity});
  // Arity 3: behaves as the identity (empty table, identity fallback).
  tables.emplace(3, TableChannel{{}, TableFallback::Identity});
  QuasiModel qm;
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      EpistemicOp::table(EpKind::Knowledge, "a", "t", std::move(tables))));
  return qm;
}

QuasiModel memberwise_table_model() {
  const auto [p0, p1] = truth_projectors(TruthPerspective::identity());
  // |110><110| -> (|110><110| + |111><111|)/2 : the agent holds the members
  // but garbles the assembled conjunction.
  const Qumix conj_in = tensor(tensor(p1, p1), p1);
  Matrix half = Matrix::Zero(8, 8);
  half(6, 6) = 0.5;
  half(7, 7) = 0.5;
  const Qumix conj_out(3, std::move(half));
  std::map<int, TableChannel> tables;
  tables.emplace(1, TableChannel{{}, TableFallback::Identity});
  tables.emplace(3, TableChannel{{TableEntry{conj_in, conj_out}}, TableFallback::Identity});
  QuasiModel qm;
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      EpistemicOp::table(EpKind::Knowledge, "a", "t", std::move(tables))));
  return qm;
}

QuasiModel situation9_model() {
  QuasiModel qm;
  qm.add_situation(plain_situation(
      "a", "t", TruthPerspective::identity(),
      EpistemicOp::preset_identity(EpKind::Knowledge, "a", "t")));
  qm.add_situation(plain_situation(
      "b", "t", TruthPerspective::hadamard(),
      EpistemicOp::preset_flip(EpKind::Knowledge, "b", "t",
                               TruthPerspective::identity())));
  return qm;
}

ScenarioReport run_situation(int k, const ScenarioOptions& opts) {
  switch (k) {
    case 1: return s1(opts);
    case 2: return s2(opts);
    case 3: return s3(opts);
    case 4: return s4(opts);
    case 5: return s5(opts);
    case 6: return s6(opts);
    case 7: return s7(opts);
    case 8: return s8(opts);
    case 9: return s9(opts);
    default:
      throw ScenarioError("situation number must be between 1 and 9");
  }
}

}  // namespace holoq
