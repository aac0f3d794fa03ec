#include <doctest.h>

#include "helpers.hpp"

using namespace holoq;

namespace {

EpistemicOp identity_k() {
  return EpistemicOp::preset_identity(EpKind::Knowledge, "a", "t");
}

EpistemicSituation make_sit(EpistemicOp k, TruthPerspective persp = {}) {
  return EpistemicSituation("a", "t", persp, EpistemicDomain{},
                            EpistemicOp::preset_identity(EpKind::Understanding, "a", "t"),
                            std::move(k));
}

}  // namespace

TEST_CASE("identity preset acts as the identity at any arity") {
  const EpistemicOp k = identity_k();
  Rng rng(1);
  for (int n = 1; n <= 4; ++n) {
    const Qumix rho = random_mixed(n, rng);
    CHECK(qumix_close(k.apply(rho), rho, 1e-12));
  }
  CHECK(k.supports_arity(7));
  CHECK(k.is_unitary_channel(3));
}

TEST_CASE("flip preset maps the basis falsity to the basis truth") {
  const EpistemicOp flip =
      EpistemicOp::preset_flip(EpKind::Knowledge, "b", "t", TruthPerspective::identity());
  const auto [p0, p1] = truth_projectors(TruthPerspective::identity());
  CHECK(qumix_close(flip.apply(p0), p1, 1e-12));
  CHECK(qumix_close(flip.apply(p1), p0, 1e-12));

  // Same in a rotated basis.
  const TruthPerspective h = TruthPerspective::hadamard();
  const EpistemicOp hflip = EpistemicOp::preset_flip(EpKind::Knowledge, "b", "t", h);
  const auto [h0, h1] = truth_projectors(h);
  CHECK(qumix_close(hflip.apply(h0), h1, 1e-12));

  // Lifted to three qubits it flips the last one.
  const Qumix in = pure_qumix(Ket::basis(3, 6));
  CHECK(qumix_close(flip.apply(in), pure_qumix(Ket::basis(3, 7)), 1e-12));
}

TEST_CASE("Kraus channels validate completeness") {
  Eigen::Matrix2cd half = 0.5 * Eigen::Matrix2cd::Identity();
  std::map<int, KrausChannel> bad;
  bad.emplace(1, KrausChannel{{Matrix(half)}});
  CHECK_THROWS_AS(EpistemicOp::kraus(EpKind::Knowledge, "a", "t", std::move(bad)),
                  EpistemicError);

  // Two-unitary mixture is a valid channel and preserves validity.
  Rng rng(9);
  std::map<int, KrausChannel> good;
  const double lambda = 0.3;
  good.emplace(2, KrausChannel{{std::sqrt(lambda) * random_unitary(4, rng),
                                std::sqrt(1 - lambda) * random_unitary(4, rng)}});
  const EpistemicOp op = EpistemicOp::kraus(EpKind::Knowledge, "a", "t", std::move(good));
  CHECK(op.supports_arity(2));
  CHECK(!op.supports_arity(1));
  CHECK(!op.is_unitary_channel(2));
  for (int i = 0; i < 20; ++i) {
    const Qumix rho = random_mixed(2, rng);
    const Qumix out = op.apply(rho);
    CHECK(std::abs(out.matrix().trace() - Complex{1, 0}) < 1e-9);
    CHECK(validate_qumix(out).pass);
  }
  CHECK_THROWS_AS(op.apply(random_mixed(1, rng)), EpistemicError);
}

TEST_CASE("table realizations look up within tolerance and fall back") {
  const auto [p0, p1] = truth_projectors(TruthPerspective::identity());
  std::map<int, TableChannel> tables;
  tables.emplace(1, TableChannel{{TableEntry{p1, p1}}, TableFallback::Identity});
  const EpistemicOp op = EpistemicOp::table(EpKind::Knowledge, "a", "t", tables);
  CHECK(qumix_close(op.apply(p1), p1, 1e-12));
  CHECK(qumix_close(op.apply(p0), p0, 1e-12));  // fallback identity
  CHECK(op.is_table());
  CHECK(op.kraus_elements(1).empty());

  std::map<int, TableChannel> strict;
  strict.emplace(1, TableChannel{{TableEntry{p1, p1}}, TableFallback::Error});
  const EpistemicOp op2 = EpistemicOp::table(EpKind::Knowledge, "a", "t", strict);
  CHECK_THROWS_AS(op2.apply(p0), EpistemicError);

  // Table outputs must be valid qumixes.
  Matrix junk = 2.0 * Matrix::Identity(2, 2);
  std::map<int, TableChannel> invalid;
  invalid.emplace(1, TableChannel{{TableEntry{p1, Qumix(1, junk)}}, TableFallback::Identity});
  CHECK_THROWS_AS(EpistemicOp::table(EpKind::Knowledge, "a", "t", invalid),
                  EpistemicError);
}

TEST_CASE("situation flags: soundness and truth-domination") {
  // Identity knowledge is sound and truth-sound.
  const EpistemicSituation id_sit = make_sit(identity_k());
  CHECK(id_sit.knowledge_sound());
  CHECK(id_sit.knowledge_sound_for_truth());

  // Flip knowledge is neither (it maps falsity to truth).
  const EpistemicSituation flip_sit = make_sit(EpistemicOp::preset_flip(
      EpKind::Knowledge, "a", "t", TruthPerspective::identity()));
  CHECK(!flip_sit.knowledge_sound());
  CHECK(!flip_sit.knowledge_sound_for_truth());

  // Dephasing in the own basis preserves probability: truth-sound and sound.
  const auto [p0, p1] = truth_projectors(TruthPerspective::identity());
  std::map<int, KrausChannel> deph;
  deph.emplace(1, KrausChannel{{p0.matrix(), p1.matrix()}});
  const EpistemicSituation deph_sit =
      make_sit(EpistemicOp::kraus(EpKind::Knowledge, "a", "t", std::move(deph)));
  CHECK(deph_sit.knowledge_sound());
  CHECK(deph_sit.knowledge_sound_for_truth());

  // Labels must match the situation.
  CHECK_THROWS_AS(EpistemicSituation(
                      "b", "t", TruthPerspective::identity(), EpistemicDomain{},
                      EpistemicOp::preset_identity(EpKind::Understanding, "a", "t"),
                      identity_k()),
                  EpistemicError);
}

TEST_CASE("epistemic domains") {
  EpistemicDomain all;
  Rng rng(4);
  CHECK(all.contains(random_mixed(2, rng)));

  EpistemicDomain listed;
  listed.all = false;
  listed.states.push_back(testutil::proj1());
  CHECK(listed.contains(testutil::proj1()));
  CHECK(!listed.contains(testutil::proj0()));
}

TEST_CASE("quasi-model resolution and denotation") {
  QuasiModel qm;
  qm.add_situation(make_sit(identity_k()));
  qm.bind_name("alice", "a");
  qm.bind_name("now", "t");

  CHECK(qm.resolve("a", "t").agent() == "a");
  CHECK(qm.resolve("alice", "now").agent() == "a");
  CHECK_THROWS_AS(qm.resolve("c", "t"), EpistemicError);
  CHECK_THROWS_AS(qm.resolve("a", "t9"), EpistemicError);

  CHECK(qm.is_harmonic());
  CHECK(qm.shared_perspective().has_value());

  qm.add_situation(EpistemicSituation(
      "b", "t", TruthPerspective::hadamard(), EpistemicDomain{},
      EpistemicOp::preset_identity(EpKind::Understanding, "b", "t"),
      EpistemicOp::preset_identity(EpKind::Knowledge, "b", "t")));
  CHECK(!qm.is_harmonic());
  CHECK(!qm.shared_perspective().has_value());
}
