#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace holoq;
using testutil::ket_from;

namespace {

const TruthPerspective kId;

HolisticEvaluation eval_worked_example() {
  return evaluate(harmonic_sound_model(), kId,
                  parse_sentence("K[a@t] not T(q, not q, f)"),
                  testutil::worked_example_top());
}

HolisticEvaluation eval_counterexample() {
  return evaluate(harmonic_sound_model(), kId, parse_sentence("T(q, not q, f)"),
                  testutil::entangled_counterexample_top());
}

}  // namespace

TEST_CASE("the worked example chain ends at p = 3/4") {
  const HolisticEvaluation ev = eval_worked_example();
  CHECK(qumix_close(ev.meaning(), testutil::worked_example_output(), 1e-9));
  CHECK(ev.probability() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ev.constraint_report().pass);
  CHECK(ev.constraint_report().entries.size() == 2);  // f at levels 5 and 4
}

TEST_CASE("single-level evaluation of the falsity constant") {
  const HolisticEvaluation ev =
      evaluate(QuasiModel{}, kId, Sentence::false_const(), testutil::proj0());
  CHECK(ev.tree().height() == 1);
  CHECK(qumix_close(ev.meaning(), testutil::proj0(), 1e-12));
  CHECK(ev.probability() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the entangled counterexample evaluates to the corner state") {
  const HolisticEvaluation ev = eval_counterexample();
  CHECK(qumix_close(ev.meaning(), testutil::ghz_like_output(), 1e-9));
  CHECK(ev.probability() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constraint violations reject the evaluation and name the occurrence") {
  // Truth projector placed where f sits.
  const Qumix bad = tensor(tensor(testutil::maximally_mixed1(),
                                  testutil::maximally_mixed1()),
                           testutil::proj1());
  try {
    evaluate(QuasiModel{}, kId, parse_sentence("T(q, not q, f)"), bad);
    FAIL("expected a constraint violation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.path.level == 1 + 1);  // first failing level scanned bottom-up
    CHECK(e.wants_truth == false);
    CHECK(e.defect > 0.9);
  }

  // Wrong qubit count.
  CHECK_THROWS_AS(
      evaluate(QuasiModel{}, kId, parse_sentence("T(q, not q, f)"), testutil::proj0()),
      EvaluationError);

  // Invalid top state.
  CHECK_THROWS_AS(evaluate(QuasiModel{}, kId, Sentence::atom("q"),
                           Qumix(1, 2.0 * Matrix::Identity(2, 2))),
                  EvaluationError);
}

TEST_CASE("contextual meanings of the counterexample") {
  const HolisticEvaluation ev = eval_counterexample();

  // Both q occurrences and the negated one are proper mixtures.
  CHECK(qumix_close(ev.contextual_meaning({3, 1}), testutil::maximally_mixed1(), 1e-9));
  CHECK(qumix_close(ev.contextual_meaning({3, 2}), testutil::maximally_mixed1(), 1e-9));
  CHECK(qumix_close(ev.contextual_meaning({2, 2}), testutil::maximally_mixed1(), 1e-9));

  // The root's contextual meaning is the sentence's meaning.
  CHECK(qumix_close(ev.contextual_meaning({1, 1}), ev.meaning(), 1e-12));

  CHECK_THROWS_AS(ev.contextual_meaning({4, 1}), EvaluationError);
}

TEST_CASE("contextual meaning of a constant evaluation") {
  const HolisticEvaluation ev =
      evaluate(QuasiModel{}, kId, Sentence::false_const(), testutil::proj0());
  CHECK(qumix_close(ev.contextual_meaning({1, 1}), testutil::proj0(), 1e-12));
}

TEST_CASE("normality of the worked models") {
  CHECK(check_normal(eval_worked_example()).normal);
  CHECK(check_normal(eval_counterexample()).normal);

  // A top state giving the two q occurrences different meanings.
  const Qumix skew =
      tensor(tensor(testutil::proj1(), testutil::proj0()), testutil::proj0());
  const HolisticEvaluation ev =
      evaluate(QuasiModel{}, kId, parse_sentence("T(q, not q, f)"), skew);
  const NormalityReport rep = check_normal(ev);
  CHECK(!rep.normal);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].subformula == Sentence::atom("q"));
  CHECK(rep.violations[0].distance > 0.9);

  // Single-occurrence evaluations are trivially normal.
  CHECK(check_normal(evaluate(QuasiModel{}, kId, Sentence::atom("q"),
                              testutil::proj1()))
            .normal);
}

TEST_CASE("commutation clauses on the counterexample") {
  const HolisticEvaluation ev = eval_counterexample();
  const CommutationReport rep = check_commutation(ev);
  CHECK(rep.pass);
  CHECK(rep.max_defect <= 1e-9);

  // Clause 1 at the negation: NOT applied to the maximal mixture.
  bool found_not = false, found_toffoli = false;
  for (const auto& entry : rep.entries) {
    if (entry.clause == 1) {
      found_not = true;
      CHECK(entry.pass);
    }
    if (entry.clause == 3) {
      found_toffoli = true;
      CHECK(entry.pass);
    }
  }
  CHECK(found_not);
  CHECK(found_toffoli);

  // The joint reduction is essential: the gate applied to the product of the
  // separate contextual meanings lands at p = 1/4, not 1/2.
  const Qumix product = tensor(
      tensor(ev.contextual_meaning({2, 1}), ev.contextual_meaning({2, 2})),
      ev.contextual_meaning({2, 3}));
  const Qumix wrong = apply_gate(GateSpec::toffoli(1, 1, 1, kId), product);
  CHECK(probability(kId, wrong) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(!qumix_close(wrong, ev.meaning(), 1e-3));
}

TEST_CASE("commutation clause 6 with an identity knowledge operation") {
  const HolisticEvaluation ev = eval_worked_example();
  const CommutationReport rep = check_commutation(ev);
  CHECK(rep.pass);
  bool found_k = false;
  for (const auto& entry : rep.entries)
    if (entry.clause == 6) {
      found_k = true;
      CHECK(entry.pass);
      CHECK(entry.path == OccurrencePath{1, 1});
    }
  CHECK(found_k);
}

TEST_CASE("the level chain recomputes exactly") {
  const HolisticEvaluation ev = eval_worked_example();
  const auto& gates = ev.pseudo_gates();
  const int k = ev.tree().height();
  for (int level = k - 1; level >= 1; --level) {
    const Qumix recomputed = gates[static_cast<std::size_t>(k - 1 - level)].apply(
        ev.level_meaning(level + 1));
    CHECK(qumix_close(recomputed, ev.level_meaning(level), 1e-12));
  }
}

TEST_CASE("exact t/f factors at the top propagate the constraint everywhere") {
  Rng rng(31);
  const QuasiModel qm = harmonic_sound_model();
  for (int i = 0; i < 60; ++i) {
    const Sentence s = testutil::random_sentence(rng, 5, 4);
    const SyntacticalTree tree = build_syntactical_tree(s);
    TopStateSampler sampler(tree, kId, SamplerConfig{rng(), 1, 1, 1, 1, 1, {}});
    const Qumix top = sampler.next();
    CHECK(validate_qumix(top).pass);
    // No ConstraintViolation may escape: forced projector factors at the top
    // keep every lower-level marginal exact.
    CHECK_NOTHROW(evaluate(qm, kId, s, top));
  }
}

TEST_CASE("Theorem-style commutation on random normal evaluations") {
  Rng rng(2025);
  const QuasiModel qm = harmonic_sound_model();
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const Sentence s = testutil::random_sentence(rng, 5, 4);
    const SyntacticalTree tree = build_syntactical_tree(s);
    TopStateSampler sampler(tree, kId, SamplerConfig{rng(), 1, 0, 1, 1, 0, {}});
    const HolisticEvaluation ev = evaluate(qm, kId, s, sampler.next());
    if (!check_normal(ev).normal) continue;
    const CommutationReport rep = check_commutation(ev);
    CHECK(rep.pass);
    checked += static_cast<int>(rep.entries.size());
  }
  CHECK(checked > 50);
}

TEST_CASE("model assignments key by canonical text and perspective") {
  ModelAssignment assignment;
  const Sentence s = parse_sentence("q /\\ r");
  assignment.assign(s, kId, testutil::worked_example_top());
  // The sugar-free spelling reaches the same entry.
  CHECK(assignment.find(parse_sentence("T(q, r, f)"), kId) != nullptr);
  CHECK(assignment.find(s, TruthPerspective::hadamard()) == nullptr);
  CHECK(assignment.find(Sentence::atom("q"), kId) == nullptr);
}
