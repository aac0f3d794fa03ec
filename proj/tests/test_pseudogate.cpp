#include <doctest.h>

#include "helpers.hpp"

using namespace holoq;
using testutil::ket_from;

namespace {

QuasiModel identity_model() { return harmonic_sound_model(); }

}  // namespace

TEST_CASE("the worked pseudo-gate tree") {
  const auto gates = pseudo_gate_tree(parse_sentence("K[a@t] not T(q, not q, f)"),
                                      TruthPerspective::identity(), identity_model());
  REQUIRE(gates.size() == 4);
  CHECK(gates[0].describe() == "I(1) (x) NOT(1) (x) I(1)");
  CHECK(gates[1].describe() == "T(1,1,1)");
  CHECK(gates[2].describe() == "NOT(3)");
  CHECK(gates[3].describe() == "K[a@t](3)");
  for (const auto& g : gates) CHECK(g.qubits() == 3);
}

TEST_CASE("atomic sentences compile to an empty list") {
  CHECK(pseudo_gate_tree(Sentence::atom("q"), TruthPerspective::identity(),
                         identity_model())
            .empty());
}

TEST_CASE("exclusive disjunction compiles to one XOR transition") {
  const auto gates = pseudo_gate_tree(parse_sentence("q (+) r"),
                                      TruthPerspective::identity(), identity_model());
  REQUIRE(gates.size() == 1);
  CHECK(gates[0].describe() == "XOR(1,1)");
}

TEST_CASE("unresolved names and missing arities are errors") {
  CHECK_THROWS_AS(pseudo_gate_tree(parse_sentence("K[zz@t] q"),
                                   TruthPerspective::identity(), identity_model()),
                  EpistemicError);

  // An agent whose knowledge op only exists at arity 1 cannot wrap a
  // three-qubit child.
  CHECK_THROWS_AS(pseudo_gate_tree(parse_sentence("K[a@t] T(q, r, f)"),
                                   TruthPerspective::identity(),
                                   rotation_agent_model()),
                  PseudoGateError);
}

TEST_CASE("pseudo-gate application on the counterexample step") {
  const PseudoGate pg({PseudoGateComponent{GateSpec::identity(1)},
                       PseudoGateComponent{GateSpec::negation(1)},
                       PseudoGateComponent{GateSpec::identity(1)}});

  // X fixes the uniform superposition factor.
  const Qumix fixed = testutil::worked_example_top();
  CHECK(qumix_close(pg.apply(fixed), fixed, 1e-12));

  // The entangled level-3 state maps to (|000> + |110>)/sqrt(2).
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(qumix_close(pg.apply(testutil::entangled_counterexample_top()),
                    pure_qumix(ket_from({s, 0, 0, 0, 0, 0, s, 0})), 1e-12));

  // Arity bookkeeping.
  CHECK(pg.qubits() == 3);
  CHECK_THROWS_AS(pg.apply(testutil::proj0()), PseudoGateError);
}

TEST_CASE("identity epistemic component spans a whole level") {
  QuasiModel qm = identity_model();
  const auto& k_op = qm.resolve("a", "t").knowledge();
  const PseudoGate pg({PseudoGateComponent{k_op, 3}});
  Rng rng(12);
  const Qumix rho = random_mixed(3, rng);
  CHECK(qumix_close(pg.apply(rho), rho, 1e-12));
  CHECK(pg.invertible());
  CHECK(qumix_close(pg.apply_inverse(rho), rho, 1e-12));
}

TEST_CASE("Kraus components compose factor-wise with gates") {
  // flip (x) NOT both flip their qubit: |00> -> |11>.
  QuasiModel qm = flip_b_harmonic_model();
  const auto& flip = qm.resolve("b", "t").knowledge();
  const PseudoGate pg({PseudoGateComponent{flip, 1},
                       PseudoGateComponent{GateSpec::negation(1)}});
  const Qumix in = tensor(testutil::proj0(), testutil::proj0());
  const Qumix expect = tensor(testutil::proj1(), testutil::proj1());
  CHECK(qumix_close(pg.apply(in), expect, 1e-12));
}

TEST_CASE("table components need factorized input") {
  QuasiModel qm = conjunction_table_model();
  const auto& table_k = qm.resolve("a", "t").knowledge();

  const PseudoGate pg({PseudoGateComponent{table_k, 1},
                       PseudoGateComponent{GateSpec::identity(1)}});

  // Product input: blockwise application, the table garbles the first qubit.
  const Qumix prod = tensor(testutil::proj1(), testutil::proj0());
  const Qumix out = pg.apply(prod);
  CHECK(qumix_close(out, tensor(testutil::maximally_mixed1(), testutil::proj0()),
                    1e-12));

  // Entangled input cannot be split across the blocks.
  const double s = 1.0 / std::sqrt(2.0);
  const Qumix bell = pure_qumix(ket_from({s, 0, 0, s}));
  CHECK_THROWS_AS(pg.apply(bell), PseudoGateError);
  CHECK(!pg.invertible());
}

TEST_CASE("a whole-level table component needs no factorization") {
  const double s = 1.0 / std::sqrt(2.0);
  const Qumix bell = pure_qumix(ket_from({s, 0, 0, s}));
  std::map<int, TableChannel> tables;
  tables.emplace(2, TableChannel{{TableEntry{bell, tensor(testutil::proj0(),
                                                          testutil::proj0())}},
                                 TableFallback::Identity});
  const auto op = std::make_shared<const EpistemicOp>(
      EpistemicOp::table(EpKind::Knowledge, "a", "t", std::move(tables)));
  const PseudoGate pg({PseudoGateComponent{op, 2}});
  CHECK(qumix_close(pg.apply(bell), tensor(testutil::proj0(), testutil::proj0()),
                    1e-12));
}

TEST_CASE("inverse application inverts unitary chains") {
  Rng rng(77);
  const TruthPerspective t{Eigen::Matrix2cd(random_unitary(2, rng))};
  const PseudoGate pg({PseudoGateComponent{GateSpec::sqrt_id(1, t)},
                       PseudoGateComponent{GateSpec::exclusive_or(1, 1, t)}});
  for (int i = 0; i < 10; ++i) {
    const Qumix rho = random_mixed(3, rng);
    CHECK(qumix_close(pg.apply_inverse(pg.apply(rho)), rho, 1e-9));
    CHECK(qumix_close(pg.apply(pg.apply_inverse(rho)), rho, 1e-9));
  }
}
