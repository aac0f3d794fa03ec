#include <doctest.h>

#include "helpers.hpp"

using namespace holoq;

namespace {

std::string row_text(const SyntacticalTree& tree, int level) {
  std::string out;
  for (int pos = 1; pos <= tree.width(level); ++pos) {
    if (pos > 1) out += " | ";
    out += print_sentence(tree.at(level, pos).sentence);
  }
  return out;
}

}  // namespace

TEST_CASE("the worked five-level tree") {
  const SyntacticalTree tree =
      build_syntactical_tree(parse_sentence("K[a@t] not T(q, not q, f)"));
  REQUIRE(tree.height() == 5);
  CHECK(row_text(tree, 5) == "q | q | f");
  CHECK(row_text(tree, 4) == "q | not q | f");
  CHECK(row_text(tree, 3) == "T(q, not q, f)");
  CHECK(row_text(tree, 2) == "not T(q, not q, f)");
  CHECK(row_text(tree, 1) == "K[a@t] not T(q, not q, f)");

  // Child links and qubit spans.
  const Occurrence& root = tree.at(1, 1);
  CHECK(root.qubit_first == 1);
  CHECK(root.qubit_count == 3);
  CHECK(root.child_first == 1);
  CHECK(root.child_count == 1);
  const Occurrence& tof = tree.at(3, 1);
  CHECK(tof.child_count == 3);
  CHECK(tree.at(4, 2).qubit_first == 2);
  CHECK(tree.at(4, 2).qubit_count == 1);
}

TEST_CASE("atomic sentences have a one-level tree") {
  const SyntacticalTree tree = build_syntactical_tree(Sentence::atom("q"));
  CHECK(tree.height() == 1);
  CHECK(tree.qubit_count() == 1);
  CHECK(row_text(tree, 1) == "q");
}

TEST_CASE("the three-level conjunction tree") {
  const SyntacticalTree tree = build_syntactical_tree(parse_sentence("T(q, not q, f)"));
  REQUIRE(tree.height() == 3);
  CHECK(row_text(tree, 3) == "q | q | f");
  CHECK(row_text(tree, 2) == "q | not q | f");
  CHECK(row_text(tree, 1) == "T(q, not q, f)");
}

TEST_CASE("occurrence search") {
  const SyntacticalTree tree = build_syntactical_tree(parse_sentence("T(q, not q, f)"));
  const auto q_occs = occurrences_of(tree, Sentence::atom("q"));
  REQUIRE(q_occs.size() == 3);
  CHECK(q_occs[0] == OccurrencePath{2, 1});
  CHECK(q_occs[1] == OccurrencePath{3, 1});
  CHECK(q_occs[2] == OccurrencePath{3, 2});

  const auto f_occs = occurrences_of(tree, Sentence::false_const());
  REQUIRE(f_occs.size() == 2);
  CHECK(f_occs[0] == OccurrencePath{2, 3});
  CHECK(f_occs[1] == OccurrencePath{3, 3});

  CHECK(occurrences_of(build_syntactical_tree(Sentence::atom("q")),
                       Sentence::atom("r"))
            .empty());
}

TEST_CASE("path validity") {
  const SyntacticalTree tree = build_syntactical_tree(parse_sentence("q (+) r"));
  CHECK(tree.valid(OccurrencePath{1, 1}));
  CHECK(tree.valid(OccurrencePath{2, 2}));
  CHECK(!tree.valid(OccurrencePath{3, 1}));
  CHECK(!tree.valid(OccurrencePath{2, 3}));
  CHECK(!tree.valid(OccurrencePath{0, 1}));
  CHECK_THROWS_AS(tree.at(3, 1), std::out_of_range);
}

TEST_CASE("level invariants over random sentences") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const Sentence s = testutil::random_sentence(rng, 6, 5);
    const SyntacticalTree tree = build_syntactical_tree(s);
    CAPTURE(print_sentence(s));

    CHECK(tree.height() >= 1);
    CHECK((tree.height() == 1) == s.is_atomic());

    // The top level holds exactly the atomic occurrences.
    for (const auto& occ : tree.row(tree.height()))
      CHECK(occ.sentence.is_atomic());

    // Width-weighted atomic complexity is constant across levels, and the
    // atoms of each level, in order, spell the top level.
    std::vector<std::string> top_atoms;
    for (const auto& occ : tree.row(tree.height()))
      top_atoms.push_back(print_sentence(occ.sentence));
    for (int level = 1; level <= tree.height(); ++level) {
      int total = 0;
      int qubit = 1;
      std::vector<std::string> atoms;
      for (const auto& occ : tree.row(level)) {
        CHECK(occ.qubit_first == qubit);
        qubit += occ.qubit_count;
        total += occ.qubit_count;
        CHECK(occ.qubit_count == atomic_complexity(occ.sentence));
        testutil::collect_atoms(occ.sentence, atoms);
      }
      CHECK(total == tree.qubit_count());
      CHECK(atoms == top_atoms);
    }
  }
}
