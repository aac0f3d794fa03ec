#include "holoq/ast.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace holoq {

const char* node_kind_name(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Atom:        return "atom";
    case NodeKind::TrueConst:   return "true";
    case NodeKind::FalseConst:  return "false";
    case NodeKind::Not:         return "not";
    case NodeKind::SqrtId:      return "sqrtid";
    case NodeKind::Toffoli:     return "toffoli";
    case NodeKind::Xor:         return "xor";
    case NodeKind::Understands: return "understands";
    case NodeKind::Knows:       return "knows";
  }
  return "?";
}

Sentence Sentence::make(Node n) {
  return Sentence(std::make_shared<const Node>(std::move(n)));
}

Sentence Sentence::atom(std::string name) {
  return make(Node{NodeKind::Atom, std::move(name), "", "", {}});
}
Sentence Sentence::true_const() {
  static const Sentence t = make(Node{NodeKind::TrueConst, "", "", "", {}});
  return t;
}
Sentence Sentence::false_const() {
  static const Sentence f = make(Node{NodeKind::FalseConst, "", "", "", {}});
  return f;
}
Sentence Sentence::negation(Sentence child) {
  return make(Node{NodeKind::Not, "", "", "", {std::move(child)}});
}
Sentence Sentence::sqrt_id(Sentence child) {
  return make(Node{NodeKind::SqrtId, "", "", "", {std::move(child)}});
}
Sentence Sentence::toffoli(Sentence a, Sentence b, Sentence c) {
  return make(Node{NodeKind::Toffoli, "", "", "",
                   {std::move(a), std::move(b), std::move(c)}});
}
Sentence Sentence::exclusive_or(Sentence a, Sentence b) {
  return make(Node{NodeKind::Xor, "", "", "", {std::move(a), std::move(b)}});
}
Sentence Sentence::conjunction(Sentence a, Sentence b) {
  return toffoli(std::move(a), std::move(b), false_const());
}
Sentence Sentence::understands(std::string agent, std::string time, Sentence child) {
  return make(Node{NodeKind::Understands, "", std::move(agent), std::move(time),
                   {std::move(child)}});
}
Sentence Sentence::knows(std::string agent, std::string time, Sentence child) {
  return make(Node{NodeKind::Knows, "", std::move(agent), std::move(time),
                   {std::move(child)}});
}

const std::string& Sentence::name() const {
  if (kind() != NodeKind::Atom) throw std::logic_error("name(): not an atom");
  return node_->name;
}
const std::string& Sentence::agent() const {
  if (!is_epistemic()) throw std::logic_error("agent(): not an epistemic node");
  return node_->agent;
}
const std::string& Sentence::time() const {
  if (!is_epistemic()) throw std::logic_error("time(): not an epistemic node");
  return node_->time;
}

bool Sentence::operator==(const Sentence& other) const noexcept {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->name != other.node_->name) return false;
  if (node_->agent != other.node_->agent) return false;
  if (node_->time != other.node_->time) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == other.node_->children[i])) return false;
  return true;
}

std::size_t Sentence::hash() const noexcept {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(node_->kind) + 1;
  h = mix(h, std::hash<std::string>{}(node_->name));
  h = mix(h, std::hash<std::string>{}(node_->agent));
  h = mix(h, std::hash<std::string>{}(node_->time));
  for (const auto& c : node_->children) h = mix(h, c.hash());
  return h;
}

bool Sentence::contains_epistemic() const noexcept {
  if (is_epistemic()) return true;
  for (const auto& c : node_->children)
    if (c.contains_epistemic()) return true;
  return false;
}

bool Sentence::contains(const Sentence& sub) const noexcept {
  if (*this == sub) return true;
  for (const auto& c : node_->children)
    if (c.contains(sub)) return true;
  return false;
}

int atomic_complexity(const Sentence& s) {
  if (s.is_atomic()) return 1;
  int n = 0;
  for (std::size_t i = 0; i < s.child_count(); ++i)
    n += atomic_complexity(s.child(i));
  return n;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  End,
  Ident,      // atom name
  KwTrue,     // t
  KwFalse,    // f
  KwNot,      // not
  KwSqrtId,   // sqrtid
  KwToffoli,  // T
  KwKnows,    // K
  KwUnder,    // U
  LParen,
  RParen,
  LBracket,
  RBracket,
  At,
  Comma,
  OpXor,   // (+)
  OpConj,  // conjunction sugar
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End:       return "end of input";
    case Tok::Ident:     return "identifier";
    case Tok::KwTrue:    return "'t'";
    case Tok::KwFalse:   return "'f'";
    case Tok::KwNot:     return "'not'";
    case Tok::KwSqrtId:  return "'sqrtid'";
    case Tok::KwToffoli: return "'T'";
    case Tok::KwKnows:   return "'K'";
    case Tok::KwUnder:   return "'U'";
    case Tok::LParen:    return "'('";
    case Tok::RParen:    return "')'";
    case Tok::LBracket:  return "'['";
    case Tok::RBracket:  return "']'";
    case Tok::At:        return "'@'";
    case Tok::Comma:     return "','";
    case Tok::OpXor:     return "'(+)'";
    case Tok::OpConj:    return "'/\\'";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "", start};
      return;
    }
    const char c = src_[pos_];
    if (c == '(') {
      if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '+' && src_[pos_ + 2] == ')') {
        pos_ += 3;
        tok_ = {Tok::OpXor, "(+)", start};
      } else {
        ++pos_;
        tok_ = {Tok::LParen, "(", start};
      }
      return;
    }
    if (c == '/') {
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\\') {
        pos_ += 2;
        tok_ = {Tok::OpConj, "/\\", start};
        return;
      }
      throw ParseError("stray '/'", start, std::string(1, c), {"'/\\'"});
    }
    switch (c) {
      case ')': ++pos_; tok_ = {Tok::RParen, ")", start}; return;
      case '[': ++pos_; tok_ = {Tok::LBracket, "[", start}; return;
      case ']': ++pos_; tok_ = {Tok::RBracket, "]", start}; return;
      case '@': ++pos_; tok_ = {Tok::At, "@", start}; return;
      case ',': ++pos_; tok_ = {Tok::Comma, ",", start}; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "t")      tok_ = {Tok::KwTrue, word, start};
      else if (word == "f") tok_ = {Tok::KwFalse, word, start};
      else if (word == "not")    tok_ = {Tok::KwNot, word, start};
      else if (word == "sqrtid") tok_ = {Tok::KwSqrtId, word, start};
      else if (word == "T") tok_ = {Tok::KwToffoli, word, start};
      else if (word == "K") tok_ = {Tok::KwKnows, word, start};
      else if (word == "U") tok_ = {Tok::KwUnder, word, start};
      else tok_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError("unexpected character", start, std::string(1, c),
                     {"identifier", "'('", "'t'", "'f'", "'not'", "'sqrtid'", "'T'",
                      "'K'", "'U'"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, "", 0};
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : lx_(src) {}

  Sentence parse() {
    Sentence s = sentence();
    if (lx_.peek().kind != Tok::End)
      fail({"end of input", "'(+)'", "'/\\'"});
    return s;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lx_.peek();
    throw ParseError("syntax error", t.offset, t.text, std::move(expected));
  }

  Token expect(Tok kind) {
    if (lx_.peek().kind != kind) fail({tok_name(kind)});
    return lx_.take();
  }

  // Agent/time name position: keywords are ordinary identifiers here, so
  // time names like "t" work inside K[a@t].
  std::string ident() {
    switch (lx_.peek().kind) {
      case Tok::Ident:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::KwNot:
      case Tok::KwSqrtId:
      case Tok::KwToffoli:
      case Tok::KwKnows:
      case Tok::KwUnder:
        return lx_.take().text;
      default:
        fail({"identifier"});
    }
  }

  Sentence sentence() {
    const Tok k = lx_.peek().kind;
    if (k == Tok::KwKnows || k == Tok::KwUnder) {
      Token op = lx_.take();
      // "K q" without the [agent@time] tag is the classic slip; flag it as
      // an unknown-operator shape rather than a generic syntax error.
      if (lx_.peek().kind != Tok::LBracket)
        throw ParseError("epistemic operator needs '[agent@time]'", op.offset,
                         op.text, {"'['"});
      lx_.take();
      std::string agent = ident();
      expect(Tok::At);
      std::string time = ident();
      expect(Tok::RBracket);
      Sentence body = sentence();
      return k == Tok::KwKnows ? Sentence::knows(std::move(agent), std::move(time), body)
                               : Sentence::understands(std::move(agent), std::move(time), body);
    }
    return xor_chain();
  }

  Sentence xor_chain() {
    Sentence left = conj_chain();
    while (lx_.peek().kind == Tok::OpXor) {
      lx_.take();
      left = Sentence::exclusive_or(std::move(left), conj_chain());
    }
    return left;
  }

  Sentence conj_chain() {
    Sentence left = unary();
    while (lx_.peek().kind == Tok::OpConj) {
      lx_.take();
      left = Sentence::conjunction(std::move(left), unary());
    }
    return left;
  }

  Sentence unary() {
    switch (lx_.peek().kind) {
      case Tok::KwNot:
        lx_.take();
        return Sentence::negation(unary());
      case Tok::KwSqrtId:
        lx_.take();
        return Sentence::sqrt_id(unary());
      case Tok::KwToffoli: {
        lx_.take();
        expect(Tok::LParen);
        Sentence a = sentence();
        expect(Tok::Comma);
        Sentence b = sentence();
        expect(Tok::Comma);
        Sentence c = sentence();
        expect(Tok::RParen);
        return Sentence::toffoli(std::move(a), std::move(b), std::move(c));
      }
      case Tok::KwTrue:
        lx_.take();
        return Sentence::true_const();
      case Tok::KwFalse:
        lx_.take();
        return Sentence::false_const();
      case Tok::Ident: {
        Token id = lx_.take();
        if (lx_.peek().kind == Tok::LBracket)
          throw ParseError("unknown operator name", id.offset, id.text,
                           {"'K'", "'U'"});
        return Sentence::atom(id.text);
      }
      case Tok::LParen: {
        lx_.take();
        Sentence s = sentence();
        expect(Tok::RParen);
        return s;
      }
      default:
        fail({"'not'", "'sqrtid'", "'T'", "'t'", "'f'", "identifier", "'('",
              "'K'", "'U'"});
    }
  }

  Lexer lx_;
};

// Printer precedence levels: 0 = sentence (K/U allowed bare),
// 1 = xor operand position on the left, 3 = unary position.
void print_rec(const Sentence& s, int min_level, std::string& out) {
  const auto paren = [&](int natural, auto&& body) {
    const bool need = natural < min_level;
    if (need) out += '(';
    body();
    if (need) out += ')';
  };
  switch (s.kind()) {
    case NodeKind::Atom:
      out += s.name();
      break;
    case NodeKind::TrueConst:
      out += 't';
      break;
    case NodeKind::FalseConst:
      out += 'f';
      break;
    case NodeKind::Not:
      paren(3, [&] {
        out += "not ";
        print_rec(s.child(0), 3, out);
      });
      break;
    case NodeKind::SqrtId:
      paren(3, [&] {
        out += "sqrtid ";
        print_rec(s.child(0), 3, out);
      });
      break;
    case NodeKind::Toffoli:
      out += "T(";
      print_rec(s.child(0), 0, out);
      out += ", ";
      print_rec(s.child(1), 0, out);
      out += ", ";
      print_rec(s.child(2), 0, out);
      out += ')';
      break;
    case NodeKind::Xor:
      paren(1, [&] {
        print_rec(s.child(0), 1, out);
        out += " (+) ";
        print_rec(s.child(1), 3, out);
      });
      break;
    case NodeKind::Understands:
    case NodeKind::Knows:
      paren(0, [&] {
        out += (s.kind() == NodeKind::Knows) ? "K[" : "U[";
        out += s.agent();
        out += '@';
        out += s.time();
        out += "] ";
        print_rec(s.child(0), 0, out);
      });
      break;
  }
}

}  // namespace

ParseError::ParseError(std::string msg, std::size_t offset_, std::string found_,
                       std::vector<std::string> expected_)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << msg << " at byte " << offset_;
        if (!found_.empty()) os << " (found '" << found_ << "')";
        if (!expected_.empty()) {
          os << "; expected ";
          for (std::size_t i = 0; i < expected_.size(); ++i)
            os << (i ? ", " : "") << expected_[i];
        }
        return os.str();
      }()),
      offset(offset_),
      found(std::move(found_)),
      expected(std::move(expected_)) {}

Sentence parse_sentence(std::string_view text) { return Parser(text).parse(); }

std::string print_sentence(const Sentence& s) {
  std::string out;
  print_rec(s, 0, out);
  return out;
}

}  // namespace holoq
