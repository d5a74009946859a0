#include "fmlab/parser.hpp"

#include <cctype>
#include <istream>

#include "fmlab/errors.hpp"

namespace fmlab {

namespace {

enum class Tok {
  LParen,
  RParen,
  Comma,
  Equal,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Variable,
  Symbol,   // uppercase identifier, including the bare P
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& current() const { return current_; }

  void advance() {
    while (i_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[i_]))) {
      ++i_;
    }
    std::size_t start = i_;
    if (i_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = text_[i_];
    switch (c) {
      case '(': current_ = {Tok::LParen, "(", start}; ++i_; return;
      case ')': current_ = {Tok::RParen, ")", start}; ++i_; return;
      case ',': current_ = {Tok::Comma, ",", start}; ++i_; return;
      case '=': current_ = {Tok::Equal, "=", start}; ++i_; return;
      case '!': current_ = {Tok::Not, "!", start}; ++i_; return;
      case '&': current_ = {Tok::And, "&", start}; ++i_; return;
      case '|': current_ = {Tok::Or, "|", start}; ++i_; return;
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          current_ = {Tok::Implies, "->", start};
          i_ += 2;
          return;
        }
        throw ParseError("expected '->'", start);
      case '<':
        if (i_ + 2 < text_.size() && text_[i_ + 1] == '-' &&
            text_[i_ + 2] == '>') {
          current_ = {Tok::Iff, "<->", start};
          i_ += 3;
          return;
        }
        throw ParseError("expected '<->'", start);
      default:
        break;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[j])) ||
              std::isdigit(static_cast<unsigned char>(text_[j])) ||
              text_[j] == '_')) {
        ++j;
      }
      std::string word = text_.substr(i_, j - i_);
      i_ = j;
      if (word == "forall") {
        current_ = {Tok::Forall, word, start};
      } else if (word == "exists") {
        current_ = {Tok::Exists, word, start};
      } else {
        current_ = {Tok::Variable, word, start};
      }
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) ||
              text_[j] == '_')) {
        ++j;
      }
      current_ = {Tok::Symbol, text_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  const std::string& text_;
  std::size_t i_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig)
      : lexer_(text), sig_(sig) {}

  FormulaRef parse() {
    FormulaRef f = parse_iff();
    if (lexer_.current().kind != Tok::End) {
      throw ParseError("trailing input after formula", lexer_.current().pos);
    }
    return f;
  }

 private:
  Lexer lexer_;
  const Signature& sig_;

  bool accept(Tok kind) {
    if (lexer_.current().kind == kind) {
      lexer_.advance();
      return true;
    }
    return false;
  }

  Token expect(Tok kind, const char* what) {
    Token t = lexer_.current();
    if (t.kind != kind) throw ParseError(std::string("expected ") + what, t.pos);
    lexer_.advance();
    return t;
  }

  FormulaRef parse_iff() {
    FormulaRef lhs = parse_implies();
    if (accept(Tok::Iff)) {
      return Formula::equivalence(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  FormulaRef parse_implies() {
    FormulaRef lhs = parse_or();
    if (accept(Tok::Implies)) {
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaRef parse_or() {
    FormulaRef lhs = parse_and();
    while (accept(Tok::Or)) {
      lhs = Formula::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaRef parse_and() {
    FormulaRef lhs = parse_unary();
    while (accept(Tok::And)) {
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  FormulaRef parse_unary() {
    if (accept(Tok::Not)) {
      return Formula::negation(parse_unary());
    }
    if (lexer_.current().kind == Tok::Forall ||
        lexer_.current().kind == Tok::Exists) {
      bool universal = lexer_.current().kind == Tok::Forall;
      lexer_.advance();
      Token var = expect(Tok::Variable, "variable after quantifier");
      FormulaRef body = parse_unary();
      return universal ? Formula::forall(var.text, std::move(body))
                       : Formula::exists(var.text, std::move(body));
    }
    return parse_primary();
  }

  FormulaRef parse_primary() {
    Token t = lexer_.current();
    switch (t.kind) {
      case Tok::LParen: {
        lexer_.advance();
        FormulaRef inner = parse_iff();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Symbol: {
        lexer_.advance();
        if (lexer_.current().kind != Tok::LParen) {
          if (t.text == "P") return Formula::p_atom();
          throw ParseError("relation symbol " + t.text + " needs arguments",
                           t.pos);
        }
        return parse_atom_args(t);
      }
      case Tok::Variable: {
        lexer_.advance();
        expect(Tok::Equal, "'=' after variable");
        Token rhs = expect(Tok::Variable, "variable after '='");
        return Formula::equal(t.text, rhs.text);
      }
      default:
        throw ParseError("expected formula", t.pos);
    }
  }

  FormulaRef parse_atom_args(const Token& symbol) {
    if (!sig_.has(symbol.text)) {
      throw ParseError("unknown relation symbol " + symbol.text, symbol.pos);
    }
    expect(Tok::LParen, "'('");
    std::vector<std::string> args;
    args.push_back(expect(Tok::Variable, "variable").text);
    while (accept(Tok::Comma)) {
      args.push_back(expect(Tok::Variable, "variable").text);
    }
    expect(Tok::RParen, "')'");
    int arity = sig_.arity(symbol.text);
    if (static_cast<int>(args.size()) != arity) {
      throw ParseError("arity mismatch: " + symbol.text + " takes " +
                           std::to_string(arity) + " arguments, got " +
                           std::to_string(args.size()),
                       symbol.pos);
    }
    return Formula::atom(symbol.text, std::move(args));
  }
};

}  // namespace

FormulaRef parse_formula(const std::string& text, const Signature& sig) {
  return Parser(text, sig).parse();
}

std::vector<FormulaRef> parse_formula_lines(std::istream& in,
                                            const Signature& sig) {
  std::vector<FormulaRef> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    out.push_back(parse_formula(line, sig));
  }
  return out;
}

}  // namespace fmlab
