// Syntactical trees: the leveled decomposition of a sentence, from the
// sentence itself (level 1) up to its atomic occurrences (level k).
//
// Level_{i+1} is obtained from Level_i by dropping the principal
// gate-connective of every molecular gate-sentence, dropping the epistemic
// connective of every epistemic sentence, and repeating every atomic
// sentence. Every occurrence carries its contiguous qubit span inside the
// semantic space, so reduced states can be taken per occurrence.

#ifndef HOLOQ_SYNTREE_HPP
#define HOLOQ_SYNTREE_HPP

#include <vector>

#include "holoq/ast.hpp"

namespace holoq {

// Position of one occurrence: level index i (1 = bottom, the sentence
// itself) and position j within that level. Both 1-based.
struct OccurrencePath {
  int level = 0;
  int pos = 0;
  bool operator==(const OccurrencePath& o) const noexcept {
    return level == o.level && pos == o.pos;
  }
};

struct Occurrence {
  Sentence sentence;
  int qubit_first = 0;   // 1-based first qubit of the span
  int qubit_count = 0;   // = atomic_complexity(sentence)
  int child_first = 0;   // 1-based position of the first child at level+1 (0 at top level)
  int child_count = 0;
};

class SyntacticalTree {
 public:
  int height() const noexcept { return static_cast<int>(levels_.size()); }
  int qubit_count() const noexcept { return qubits_; }
  const Sentence& root() const { return levels_.front().front().sentence; }

  int width(int level) const { return static_cast<int>(row(level).size()); }
  const std::vector<Occurrence>& row(int level) const;
  const Occurrence& at(int level, int pos) const;
  const Occurrence& at(OccurrencePath p) const { return at(p.level, p.pos); }
  bool valid(OccurrencePath p) const noexcept;

 private:
  friend SyntacticalTree build_syntactical_tree(const Sentence&);
  std::vector<std::vector<Occurrence>> levels_;  // levels_[0] = Level_1
  int qubits_ = 0;
};

SyntacticalTree build_syntactical_tree(const Sentence& s);

// All paths whose occupying sentence structurally equals `sub`, scanned
// level by level from the bottom, left to right within a level.
std::vector<OccurrencePath> occurrences_of(const SyntacticalTree& tree,
                                           const Sentence& sub);

}  // namespace holoq

#endif  // HOLOQ_SYNTREE_HPP
