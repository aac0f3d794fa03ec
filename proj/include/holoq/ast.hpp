// Sentence AST for the epistemic quantum computational language, with
// parser, canonical printer and atomic complexity.
//
// Grammar (ASCII, one-token lookahead):
//
//   sentence    := knows | understands | xor
//   knows       := "K[" ident "@" ident "]" sentence
//   understands := "U[" ident "@" ident "]" sentence
//   xor         := conj { "(+)" conj }            (left-assoc)
//   conj        := unary { "/\" unary }           (left-assoc, desugars)
//   unary       := "not" unary | "sqrtid" unary
//                | "T(" sentence "," sentence "," sentence ")"
//                | "t" | "f" | ident | "(" sentence ")"
//
// "a /\ b" is pure sugar: the AST stores Toffoli(a, b, f) and no
// conjunction node ever exists.

#ifndef HOLOQ_AST_HPP
#define HOLOQ_AST_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace holoq {

enum class NodeKind {
  Atom,
  TrueConst,
  FalseConst,
  Not,
  SqrtId,
  Toffoli,
  Xor,
  Understands,
  Knows,
};

const char* node_kind_name(NodeKind k) noexcept;

// Immutable sentence tree with value semantics; copies share nodes.
class Sentence {
 public:
  Sentence() : Sentence(false_const()) {}

  static Sentence atom(std::string name);
  static Sentence true_const();
  static Sentence false_const();
  static Sentence negation(Sentence child);
  static Sentence sqrt_id(Sentence child);
  static Sentence toffoli(Sentence a, Sentence b, Sentence c);
  static Sentence exclusive_or(Sentence a, Sentence b);
  // alpha /\ beta  :=  T(alpha, beta, f)
  static Sentence conjunction(Sentence a, Sentence b);
  static Sentence understands(std::string agent, std::string time, Sentence child);
  static Sentence knows(std::string agent, std::string time, Sentence child);

  NodeKind kind() const noexcept { return node_->kind; }
  bool is_atomic() const noexcept {
    return kind() == NodeKind::Atom || kind() == NodeKind::TrueConst ||
           kind() == NodeKind::FalseConst;
  }
  bool is_epistemic() const noexcept {
    return kind() == NodeKind::Understands || kind() == NodeKind::Knows;
  }

  // Atom name (Atom nodes only).
  const std::string& name() const;
  // Agent / time names (Understands/Knows nodes only).
  const std::string& agent() const;
  const std::string& time() const;

  std::size_t child_count() const noexcept { return node_->children.size(); }
  const Sentence& child(std::size_t i) const { return node_->children.at(i); }

  bool operator==(const Sentence& other) const noexcept;
  bool operator!=(const Sentence& other) const noexcept { return !(*this == other); }

  // FNV-style structural hash, consistent with operator==.
  std::size_t hash() const noexcept;

  // True if any Understands/Knows connective occurs in the tree.
  bool contains_epistemic() const noexcept;

  // Structural subformula test (true also when sub == *this).
  bool contains(const Sentence& sub) const noexcept;

 private:
  struct Node {
    NodeKind kind;
    std::string name;   // Atom
    std::string agent;  // Understands/Knows
    std::string time;   // Understands/Knows
    std::vector<Sentence> children;
  };
  explicit Sentence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Sentence make(Node n);

  std::shared_ptr<const Node> node_;
};

// Number of occurrences of atomic sentences (atoms, t and f all count).
// Equals the qubit count of the sentence's semantic space.
int atomic_complexity(const Sentence& s);

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t offset, std::string found,
             std::vector<std::string> expected);
  std::size_t offset;                 // byte offset into the input
  std::string found;                  // offending token text ("" at end of input)
  std::vector<std::string> expected;  // expected-token set at that point
};

Sentence parse_sentence(std::string_view text);

// Canonical rendering; parse_sentence(print_sentence(s)) == s.
std::string print_sentence(const Sentence& s);

}  // namespace holoq

template <>
struct std::hash<holoq::Sentence> {
  std::size_t operator()(const holoq::Sentence& s) const noexcept { return s.hash(); }
};

#endif  // HOLOQ_AST_HPP
