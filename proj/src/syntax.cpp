#include "alba/syntax.hpp"

#include <cctype>
#include <sstream>

namespace alba {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " +
                         join_expected(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  End,
  Ident,
  Nominal,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Box,
  Dia,
  InvBox,
  InvDia,
  At,
  LParen,
  RParen,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, pos_, "end of input"});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  Token fixed(Tok kind, std::string_view s) {
    Token t{kind, pos_, std::string(s)};
    pos_ += s.size();
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (starts_with("<->")) return fixed(Tok::Iff, "<->");
    if (starts_with("<^>")) return fixed(Tok::InvDia, "<^>");
    if (starts_with("<>")) return fixed(Tok::Dia, "<>");
    if (starts_with("[^]")) return fixed(Tok::InvBox, "[^]");
    if (starts_with("[]")) return fixed(Tok::Box, "[]");
    if (starts_with("->")) return fixed(Tok::Implies, "->");
    switch (c) {
      case '~': return fixed(Tok::Not, "~");
      case '&': return fixed(Tok::And, "&");
      case '|': return fixed(Tok::Or, "|");
      case '@': return fixed(Tok::At, "@");
      case '(': return fixed(Tok::LParen, "(");
      case ')': return fixed(Tok::RParen, ")");
      default: break;
    }
    if (c == '\'') {
      ++pos_;
      if (pos_ >= src_.size() || !(std::isalpha(static_cast<unsigned char>(src_[pos_])) ||
                                   src_[pos_] == '_')) {
        throw ParseError(pos_, {"nominal name"}, describe_char());
      }
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      return {Tok::Nominal, start, std::string(src_.substr(start + 1, pos_ - start - 1))};
    }
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      std::string word(src_.substr(start, pos_ - start));
      if (word == "true") return {Tok::True, start, word};
      if (word == "false") return {Tok::False, start, word};
      return {Tok::Ident, start, word};
    }
    throw ParseError(pos_, {"formula", "connective"}, describe_char());
  }

  std::string describe_char() const {
    if (pos_ >= src_.size()) return "end of input";
    return std::string("'") + src_[pos_] + "'";
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  if (t.kind == Tok::Nominal) return "'" + t.text;
  return "\"" + t.text + "\"";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  Formula run() {
    Formula f = iff();
    if (peek().kind != Tok::End) {
      throw ParseError(peek().offset, {"\"&\"", "\"|\"", "\"->\"", "\"<->\"", "end of input"},
                       describe(peek()));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  Formula iff() {
    Formula lhs = implication();
    if (peek().kind == Tok::Iff) {
      advance();
      Formula rhs = iff();
      return Formula::conj(Formula::implies(lhs, rhs), Formula::implies(rhs, lhs));
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      advance();
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or) {
      advance();
      acc = Formula::disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      advance();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  std::string nominal_name(const Token& t) {
    if (!opts_.allow_reserved_nominals && is_reserved_nominal(t.text)) {
      throw ParseError(t.offset, {"nominal outside the reserved 'n<digits> namespace"},
                       describe(t));
    }
    return t.text;
  }

  Formula unary() {
    const Token& t = advance();
    switch (t.kind) {
      case Tok::Not: return Formula::neg(unary());
      case Tok::Box: return Formula::box(unary());
      case Tok::Dia: return Formula::dia(unary());
      case Tok::InvBox: return Formula::inv_box(unary());
      case Tok::InvDia: return Formula::inv_dia(unary());
      case Tok::At: {
        const Token& n = advance();
        if (n.kind != Tok::Nominal) throw ParseError(n.offset, {"nominal"}, describe(n));
        std::string name = nominal_name(n);
        return Formula::at(std::move(name), unary());
      }
      case Tok::Ident: return Formula::var(t.text);
      case Tok::Nominal: return Formula::nom(nominal_name(t));
      case Tok::True: return Formula::top();
      case Tok::False: return Formula::bottom();
      case Tok::LParen: {
        Formula inner = iff();
        const Token& close = advance();
        if (close.kind != Tok::RParen) {
          throw ParseError(close.offset, {"\")\"", "\"&\"", "\"|\"", "\"->\"", "\"<->\""},
                           describe(close));
        }
        return inner;
      }
      default:
        throw ParseError(t.offset,
                         {"variable", "nominal", "\"true\"", "\"false\"", "\"~\"", "\"[]\"",
                          "\"<>\"", "\"[^]\"", "\"<^>\"", "\"@\"", "\"(\""},
                         describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
};

// Binding strength, loosest first.
enum Level { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

void print_rec(const Formula& f, int ctx, std::string& out);

void print_binary(const Formula& f, int level, int left_ctx, int right_ctx, const char* sym,
                  int ctx, std::string& out) {
  const bool wrap = ctx > level;
  if (wrap) out += '(';
  print_rec(f.child(0), left_ctx, out);
  out += ' ';
  out += sym;
  out += ' ';
  print_rec(f.child(1), right_ctx, out);
  if (wrap) out += ')';
}

void print_prefix(const Formula& f, const std::string& prefix, std::string& out) {
  out += prefix;
  print_rec(f.child(0), kUnary, out);
}

void print_rec(const Formula& f, int ctx, std::string& out) {
  switch (f.op()) {
    case Op::Var: out += f.name(); return;
    case Op::Nom: out += '\''; out += f.name(); return;
    case Op::Top: out += "true"; return;
    case Op::Bottom: out += "false"; return;
    case Op::Not: print_prefix(f, "~", out); return;
    case Op::Box: print_prefix(f, "[]", out); return;
    case Op::Dia: print_prefix(f, "<>", out); return;
    case Op::InvBox: print_prefix(f, "[^]", out); return;
    case Op::InvDia: print_prefix(f, "<^>", out); return;
    case Op::At:
      out += "@'";
      out += f.name();
      out += ' ';
      print_rec(f.child(0), kUnary, out);
      return;
    case Op::And: print_binary(f, kAnd, kAnd, kUnary, "&", ctx, out); return;
    case Op::Or: print_binary(f, kOr, kOr, kAnd, "|", ctx, out); return;
    case Op::Implies: print_binary(f, kImplies, kOr, kImplies, "->", ctx, out); return;
  }
}

}  // namespace

Formula parse(std::string_view text, const ParseOptions& opts) {
  Lexer lexer(text);
  Parser parser(lexer.run(), opts);
  return parser.run();
}

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

}  // namespace alba
