#include "primwit/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace primwit {

namespace {

enum class Tok {
  End, LParen, RParen, Plus, Star, Caret,
  Equal, NotEqual, Le, Lt, Ge, Gt,
  Tilde, AndOp, OrOp, Arrow,
  Forall, Exists, SuccSym,
  Number, Ident,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;  // for Ident
  Nat number;        // for Number
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) : in_(input) { tokenize(); }
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    std::size_t i = 0;
    while (i < in_.size()) {
      char c = in_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      auto push = [&](Tok k, std::size_t len) {
        tokens_.push_back({k, start, {}, 0});
        i += len;
      };
      if (c == '(') { push(Tok::LParen, 1); continue; }
      if (c == ')') { push(Tok::RParen, 1); continue; }
      if (c == '+') { push(Tok::Plus, 1); continue; }
      if (c == '*') { push(Tok::Star, 1); continue; }
      if (c == '^') { push(Tok::Caret, 1); continue; }
      if (c == '=') { push(Tok::Equal, 1); continue; }
      if (c == '~') { push(Tok::Tilde, 1); continue; }
      if (c == '!' && next_is(i, '=')) { push(Tok::NotEqual, 2); continue; }
      if (c == '<') {
        if (next_is(i, '=')) push(Tok::Le, 2); else push(Tok::Lt, 1);
        continue;
      }
      if (c == '>') {
        if (next_is(i, '=')) push(Tok::Ge, 2); else push(Tok::Gt, 1);
        continue;
      }
      if (c == '/' && next_is(i, '\\')) { push(Tok::AndOp, 2); continue; }
      if (c == '\\' && next_is(i, '/')) { push(Tok::OrOp, 2); continue; }
      if (c == '-' && next_is(i, '>')) { push(Tok::Arrow, 2); continue; }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < in_.size() && std::isdigit(static_cast<unsigned char>(in_[j])))
          ++j;
        Token t{Tok::Number, start, in_.substr(i, j - i), 0};
        t.number = nat_from_decimal(t.text);
        tokens_.push_back(std::move(t));
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < in_.size() &&
               (std::isalnum(static_cast<unsigned char>(in_[j])) || in_[j] == '_'))
          ++j;
        std::string word = in_.substr(i, j - i);
        Tok k = Tok::Ident;
        if (word == "forall") k = Tok::Forall;
        else if (word == "exists") k = Tok::Exists;
        else if (word == "S") k = Tok::SuccSym;
        tokens_.push_back({k, start, std::move(word), 0});
        i = j;
        continue;
      }
      throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    tokens_.push_back({Tok::End, in_.size(), {}, 0});
  }

  bool next_is(std::size_t i, char c) const {
    return i + 1 < in_.size() && in_[i + 1] == c;
  }

  const std::string& in_;
  std::vector<Token> tokens_;
};

class Parser {
 public:
  explicit Parser(const std::string& input)
      : lexer_(input), toks_(lexer_.tokens()) {}

  Sentence parse_sentence() {
    Sentence s = parse_implies();
    expect(Tok::End, "end of input");
    return s;
  }

  Term parse_term_only() {
    Term t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool check(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (check(k)) { ++pos_; return true; }
    return false;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k))
      throw ParseError(peek().pos, "expected " + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().pos, msg);
  }

  // ---- formulas -----------------------------------------------------------

  Sentence parse_implies() {
    Sentence lhs = parse_or();
    if (accept(Tok::Arrow)) {
      Sentence rhs = parse_implies();  // right associative
      return Sentence::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Sentence parse_or() {
    Sentence lhs = parse_and();
    while (accept(Tok::OrOp)) {
      Sentence rhs = parse_and();
      lhs = Sentence::disj(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Sentence parse_and() {
    Sentence lhs = parse_unary();
    while (accept(Tok::AndOp)) {
      Sentence rhs = parse_unary();
      lhs = Sentence::conj(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Sentence parse_unary() {
    if (accept(Tok::Tilde)) return Sentence::negate(parse_unary());
    if (check(Tok::Forall) || check(Tok::Exists)) {
      bool universal = advance().kind == Tok::Forall;
      const Token& v = peek();
      if (v.kind != Tok::Ident)
        fail("expected a variable name after the quantifier");
      if (is_constant_name(v.text))
        fail("cannot bind the constant symbol " + v.text);
      std::string name = v.text;
      ++pos_;
      Sentence body = parse_implies();  // maximal scope
      return universal ? Sentence::forall(std::move(name), std::move(body))
                       : Sentence::exists(std::move(name), std::move(body));
    }
    return parse_atom();
  }

  Sentence parse_atom() {
    std::size_t save = pos_;
    std::optional<ParseError> term_error;
    try {
      Term lhs = parse_term();
      switch (peek().kind) {
        case Tok::Equal:
          ++pos_;
          return Sentence::eq(std::move(lhs), parse_term());
        case Tok::NotEqual:
          ++pos_;
          return Sentence::negate(Sentence::eq(std::move(lhs), parse_term()));
        case Tok::Le:
          ++pos_;
          return desugar_le(lhs, parse_term());
        case Tok::Lt:
          ++pos_;
          return desugar_lt(lhs, parse_term());
        case Tok::Ge:
          ++pos_;
          return desugar_ge(lhs, parse_term());
        case Tok::Gt:
          ++pos_;
          return desugar_gt(lhs, parse_term());
        default:
          throw ParseError(peek().pos, "expected a relational operator");
      }
    } catch (const ParseError& e) {
      term_error = e;
    }
    pos_ = save;
    if (check(Tok::LParen)) {
      ++pos_;
      Sentence inner = parse_implies();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw *term_error;
  }

  // ---- terms --------------------------------------------------------------

  Term parse_term() {
    Term lhs = parse_mul();
    while (accept(Tok::Plus)) {
      Term rhs = parse_mul();
      lhs = Term::add(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term parse_mul() {
    Term lhs = parse_primary();
    while (accept(Tok::Star)) {
      Term rhs = parse_primary();
      lhs = Term::mul(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // Successor applications over a numeral core fold into compact numerals.
  Term succ_folded(Term t) {
    if (const auto* n = std::get_if<Numeral>(&t.node()))
      return Term::numeral(n->value + 1);
    return Term::succ(std::move(t));
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        if (t.number != 0)
          throw ParseError(t.pos,
                           "bare decimal literals are not terms; write 0, "
                           "S(...), or S^n(0)");
        ++pos_;
        return Term::numeral(0);
      }
      case Tok::SuccSym: {
        ++pos_;
        if (accept(Tok::Caret)) {
          const Token& n = peek();
          if (n.kind != Tok::Number)
            fail("expected a decimal exponent after S^");
          Nat reps = n.number;
          ++pos_;
          expect(Tok::LParen, "'('");
          const Token& zero = peek();
          if (zero.kind != Tok::Number || zero.number != 0)
            fail("S^n(...) applies to 0 only");
          ++pos_;
          expect(Tok::RParen, "')'");
          return Term::numeral(std::move(reps));
        }
        expect(Tok::LParen, "'(' after S");
        Term inner = parse_term();
        expect(Tok::RParen, "')'");
        return succ_folded(std::move(inner));
      }
      case Tok::Ident: {
        if (is_constant_name(t.text)) {
          ++pos_;
          return Term::constant(constant_index(t.text, t.pos));
        }
        std::string name = t.text;
        ++pos_;
        return Term::var(std::move(name));
      }
      case Tok::LParen: {
        ++pos_;
        Term inner = parse_term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a term");
    }
  }

  static bool is_constant_name(const std::string& word) {
    if (word.size() < 2 || word[0] != 'c') return false;
    for (std::size_t i = 1; i < word.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(word[i]))) return false;
    return true;
  }

  static int constant_index(const std::string& word, std::size_t pos) {
    std::string digits = word.substr(1);
    if (digits[0] == '0')
      throw ParseError(pos, "constant symbols are c1, c2, ... (no leading "
                            "zeros, indices start at 1)");
    try {
      std::size_t used = 0;
      int idx = std::stoi(digits, &used);
      if (used != digits.size() || idx < 1) throw std::out_of_range("idx");
      return idx;
    } catch (const std::exception&) {
      throw ParseError(pos, "constant index out of range: " + word);
    }
  }

  Lexer lexer_;
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Sentence parse(const std::string& text) {
  return Parser(text).parse_sentence();
}

Term parse_term_text(const std::string& text) {
  return Parser(text).parse_term_only();
}

}  // namespace primwit
