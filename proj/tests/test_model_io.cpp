#include <doctest.h>

#include "helpers.hpp"

using namespace holoq;

TEST_CASE("state literals") {
  const Json ket = Json::parse(R"({"kind":"ket","amplitudes":[[1,0],[0,0]]})");
  CHECK(qumix_close(state_from_json(ket), testutil::proj0(), 1e-12));

  const Json mat = Json::parse(
      R"({"kind":"matrix","entries":[[0.5,0],[0,0],[0,0],[0.5,0]]})");
  CHECK(qumix_close(state_from_json(mat), testutil::maximally_mixed1(), 1e-12));

  // Round trip through the matrix form.
  Rng rng(6);
  const Qumix rho = random_mixed(2, rng);
  CHECK(qumix_close(state_from_json(state_to_json(rho)), rho, 0.0));

  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"blob"})")), ModelIoError);
  CHECK_THROWS_AS(
      state_from_json(Json::parse(R"({"kind":"ket","amplitudes":[[1,0],[0,0],[0,0]]})")),
      ModelIoError);
  // Non-normalized kets are rejected.
  CHECK_THROWS_AS(
      state_from_json(Json::parse(R"({"kind":"ket","amplitudes":[[0.5,0],[0,0]]})")),
      QumixError);
}

TEST_CASE("perspective literals") {
  CHECK(perspective_from_json(Json("I")).approx_equal(TruthPerspective::identity()));
  CHECK(perspective_from_json(Json("H")).approx_equal(TruthPerspective::hadamard()));
  const Json xj = Json::parse(R"([[0,0],[1,0],[1,0],[0,0]])");
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  CHECK(perspective_from_json(xj).approx_equal(TruthPerspective{x}));
  CHECK_THROWS_AS(perspective_from_json(Json("Q")), ModelIoError);

  // Round trip through JSON for named and matrix forms.
  for (const auto& t : {TruthPerspective::identity(), TruthPerspective::hadamard(),
                        TruthPerspective{x}})
    CHECK(perspective_from_json(perspective_to_json(t)).approx_equal(t));
}

TEST_CASE("epistemic op round trips") {
  Rng rng(15);
  std::vector<EpistemicOp> ops;
  ops.push_back(EpistemicOp::preset_identity(EpKind::Knowledge, "a", "t"));
  ops.push_back(EpistemicOp::preset_flip(EpKind::Knowledge, "a", "t",
                                         TruthPerspective::hadamard()));
  {
    std::map<int, KrausChannel> kraus;
    kraus.emplace(1, KrausChannel{{random_unitary(2, rng)}});
    ops.push_back(EpistemicOp::kraus(EpKind::Knowledge, "a", "t", std::move(kraus)));
  }
  {
    std::map<int, TableChannel> tables;
    tables.emplace(1, TableChannel{{TableEntry{testutil::proj1(),
                                               testutil::maximally_mixed1()}},
                                   TableFallback::Error});
    ops.push_back(EpistemicOp::table(EpKind::Knowledge, "a", "t", std::move(tables)));
  }
  for (const auto& op : ops) {
    const EpistemicOp back = op_from_json(op.kind(), "a", "t", op_to_json(op));
    CHECK(back.realization() == op.realization());
    if (op.supports_arity(1) && !op.is_table()) {
      const Qumix probe = random_mixed(1, rng);
      CHECK(qumix_close(op.apply(probe), back.apply(probe), 1e-12));
    }
  }

  // Kraus channels failing completeness are rejected on load.
  const Json bad = Json::parse(
      R"({"kind":"kraus","arities":{"1":[[[0.5,0],[0,0],[0,0],[0.5,0]]]}})");
  CHECK_THROWS_AS(op_from_json(EpKind::Knowledge, "a", "t", bad), EpistemicError);
}

TEST_CASE("model files round trip") {
  ModelFile mf;
  mf.quasi_model = situation9_model();
  mf.assignment.assign(parse_sentence("K[a@t] K[b@t] f"), TruthPerspective::identity(),
                       testutil::proj0());
  const Json j = model_file_to_json(mf);
  CHECK(j.at("version") == kModelSchemaVersion);

  const ModelFile back = model_file_from_json(j);
  CHECK(back.quasi_model.agents() == mf.quasi_model.agents());
  CHECK(!back.quasi_model.is_harmonic());
  const Qumix* top =
      back.assignment.find(parse_sentence("K[a@t] K[b@t] f"), TruthPerspective::identity());
  REQUIRE(top != nullptr);
  CHECK(qumix_close(*top, testutil::proj0(), 0.0));

  Json wrong_version = j;
  wrong_version["version"] = "holoq-model/2";
  CHECK_THROWS_AS(model_file_from_json(wrong_version), ModelIoError);

  Json bad_assignment = j;
  bad_assignment["assignments"]["K[a@t] K[b@t] f"]["I"] =
      Json::parse(R"({"kind":"ket","amplitudes":[[1,0],[0,0],[0,0],[0,0]]})");
  CHECK_THROWS_AS(model_file_from_json(bad_assignment), ModelIoError);
}

TEST_CASE("claim files") {
  const Json j = Json::parse(R"({
    "kind": "consequence",
    "context": "K[a@t] q",
    "alpha": "K[a@t] q",
    "beta": "q",
    "perspective": "per-agent:a@t",
    "quasi_model": "m.json",
    "sampler": {"seed": 17, "count": 64}
  })");
  const ClaimFile cf = claim_from_json(j);
  CHECK(cf.claim.kind == ClaimKind::Consequence);
  CHECK(cf.claim.scope == PerspectiveScope::PerAgent);
  CHECK(cf.claim.agent == "a");
  CHECK(cf.claim.time == "t");
  CHECK(cf.quasi_model_path == "m.json");
  CHECK(cf.sampler.seed == 17);
  CHECK(cf.sampler.count == 64);

  // Truth claims default the context to the sentence itself.
  const ClaimFile truth = claim_from_json(
      Json::parse(R"({"kind":"truth","alpha":"K[a@t] t","perspective":"I"})"));
  CHECK(truth.claim.kind == ClaimKind::Truth);
  CHECK(truth.claim.context == truth.claim.alpha);

  CHECK_THROWS_AS(claim_from_json(Json::parse(R"({"kind":"consequence","alpha":"q"})")),
                  ModelIoError);
  CHECK_THROWS_AS(claim_from_json(Json::parse(R"({"kind":"nope","alpha":"q"})")),
                  ModelIoError);

  // Round trip.
  SamplerConfig cfg;
  cfg.seed = 17;
  cfg.count = 64;
  const ClaimFile back = claim_from_json(claim_to_json(cf.claim, cfg));
  CHECK(back.claim.kind == cf.claim.kind);
  CHECK(back.claim.alpha == cf.claim.alpha);
  CHECK(back.claim.beta == cf.claim.beta);
  CHECK(back.claim.scope == cf.claim.scope);
}

TEST_CASE("counterexample files replay") {
  SamplerConfig cfg;
  cfg.seed = 13;
  cfg.count = 200;
  const QuasiModel qm = conjunction_table_model();
  Claim c;
  c.kind = ClaimKind::Consequence;
  c.context = parse_sentence("K[a@t] T(q, r, f)");
  c.alpha = c.context;
  c.beta = parse_sentence("K[a@t] q");
  const Verdict v = check_consequence(qm, c, cfg);
  REQUIRE(v.counterexample.has_value());

  const Json file = counterexample_file(qm, c, cfg, *v.counterexample);
  const ReplayResult rr = replay_counterexample_file(file);
  CHECK(rr.still_fails);
  CHECK(rr.deviation <= 1e-12);
  CHECK(rr.p_alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rr.p_beta == doctest::Approx(0.5).epsilon(1e-12));

  // Serialized and reloaded through text, probabilities survive bitwise.
  const Json reparsed = Json::parse(file.dump());
  const ReplayResult rr2 = replay_counterexample_file(reparsed);
  CHECK(rr2.deviation == 0.0);
  CHECK(rr2.p_alpha == rr.p_alpha);
  CHECK(rr2.p_beta == rr.p_beta);
}
