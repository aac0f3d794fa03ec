#include "holoq/syntree.hpp"

#include <stdexcept>

namespace holoq {

const std::vector<Occurrence>& SyntacticalTree::row(int level) const {
  if (level < 1 || level > height())
    throw std::out_of_range("syntactical tree: level out of range");
  return levels_[static_cast<std::size_t>(level - 1)];
}

const Occurrence& SyntacticalTree::at(int level, int pos) const {
  const auto& r = row(level);
  if (pos < 1 || pos > static_cast<int>(r.size()))
    throw std::out_of_range("syntactical tree: position out of range");
  return r[static_cast<std::size_t>(pos - 1)];
}

bool SyntacticalTree::valid(OccurrencePath p) const noexcept {
  return p.level >= 1 && p.level <= height() && p.pos >= 1 &&
         p.pos <= static_cast<int>(levels_[static_cast<std::size_t>(p.level - 1)].size());
}

namespace {

// Children of one occurrence after dropping its principal connective.
std::vector<Sentence> expand(const Sentence& s) {
  switch (s.kind()) {
    case NodeKind::Atom:
    case NodeKind::TrueConst:
    case NodeKind::FalseConst:
      return {s};
    case NodeKind::Not:
    case NodeKind::SqrtId:
    case NodeKind::Understands:
    case NodeKind::Knows:
      return {s.child(0)};
    case NodeKind::Toffoli:
      return {s.child(0), s.child(1), s.child(2)};
    case NodeKind::Xor:
      return {s.child(0), s.child(1)};
  }
  throw std::logic_error("expand: unknown node kind");
}

bool all_atomic(const std::vector<Occurrence>& row) {
  for (const auto& occ : row)
    if (!occ.sentence.is_atomic()) return false;
  return true;
}

}  // namespace

SyntacticalTree build_syntactical_tree(const Sentence& s) {
  SyntacticalTree tree;
  tree.qubits_ = atomic_complexity(s);

  std::vector<Occurrence> row{Occurrence{s, 1, tree.qubits_, 0, 0}};
  tree.levels_.push_back(row);
  while (!all_atomic(tree.levels_.back())) {
    auto& prev = tree.levels_.back();
    std::vector<Occurrence> next;
    int qubit = 1;
    for (auto& occ : prev) {
      occ.child_first = static_cast<int>(next.size()) + 1;
      const auto children = expand(occ.sentence);
      occ.child_count = static_cast<int>(children.size());
      for (const auto& c : children) {
        const int span = atomic_complexity(c);
        next.push_back(Occurrence{c, qubit, span, 0, 0});
        qubit += span;
      }
    }
    tree.levels_.push_back(std::move(next));
  }
  return tree;
}

std::vector<OccurrencePath> occurrences_of(const SyntacticalTree& tree,
                                           const Sentence& sub) {
  std::vector<OccurrencePath> hits;
  for (int level = 1; level <= tree.height(); ++level) {
    const auto& r = tree.row(level);
    for (int pos = 1; pos <= static_cast<int>(r.size()); ++pos)
      if (r[static_cast<std::size_t>(pos - 1)].sentence == sub)
        hits.push_back(OccurrencePath{level, pos});
  }
  return hits;
}

}  // namespace holoq
