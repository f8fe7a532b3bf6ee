#include "spectralrec/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

#include "spectralrec/errors.hpp"

namespace spectralrec {
namespace {

struct Token {
  enum Kind { kInt, kIdent, kSym, kEnd } kind;
  size_t pos;
  std::string text;  // digits for kInt, name for kIdent, one char for kSym
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
        ++i;
      out.push_back({Token::kInt, start, src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < src.size() &&
             std::isalnum(static_cast<unsigned char>(src[i])))
        ++i;
      out.push_back({Token::kIdent, start, src.substr(start, i - start)});
      continue;
    }
    if (std::string("+-*/^()=;").find(c) != std::string::npos) {
      out.push_back({Token::kSym, i, std::string(1, c)});
      ++i;
      continue;
    }
    throw ParseError(i, "unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back({Token::kEnd, src.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  QRatFunc parse_full_expr() {
    QRatFunc e = expr();
    expect_end();
    return e;
  }

  ParsedCurve parse_statements() {
    QRatFunc vals[2];
    bool seen[2] = {false, false};
    while (toks_[i_].kind != Token::kEnd) {
      const Token& name = toks_[i_];
      if (name.kind != Token::kIdent ||
          (name.text != "x" && name.text != "y"))
        throw ParseError(name.pos, "expected 'x' or 'y'");
      int slot = name.text == "x" ? 0 : 1;
      if (seen[slot])
        throw ParseError(name.pos, "duplicate definition of " + name.text);
      ++i_;
      expect_sym('=');
      vals[slot] = expr();
      expect_sym(';');
      seen[slot] = true;
    }
    if (!seen[0] || !seen[1])
      throw ParseError(toks_[i_].pos,
                       std::string("missing definition of ") +
                           (seen[0] ? "y" : "x"));
    return {vals[0], vals[1]};
  }

 private:
  // expr := term (('+'|'-') term)*
  QRatFunc expr() {
    QRatFunc e = term();
    while (is_sym('+') || is_sym('-')) {
      char op = toks_[i_++].text[0];
      QRatFunc rhs = term();
      e = op == '+' ? e + rhs : e - rhs;
    }
    return e;
  }

  // term := unary (('*'|'/') unary)*
  QRatFunc term() {
    QRatFunc e = unary();
    while (is_sym('*') || is_sym('/')) {
      char op = toks_[i_++].text[0];
      QRatFunc rhs = unary();
      if (op == '/' && rhs.is_zero())
        throw ParseError(toks_[i_ - 1].pos, "division by zero");
      e = op == '*' ? e * rhs : e / rhs;
    }
    return e;
  }

  QRatFunc unary() {
    if (is_sym('-')) {
      ++i_;
      return -unary();
    }
    return power();
  }

  // power := atom ('^' integer)?
  QRatFunc power() {
    QRatFunc base = atom();
    if (!is_sym('^')) return base;
    ++i_;
    bool neg = false;
    if (is_sym('-')) {
      neg = true;
      ++i_;
    }
    const Token& t = toks_[i_];
    if (t.kind != Token::kInt)
      throw ParseError(t.pos, "expected integer exponent after '^'");
    long e = std::strtol(t.text.c_str(), nullptr, 10);
    if (t.text.size() > 6)
      throw ParseError(t.pos, "exponent too large");
    ++i_;
    if (neg && base.is_zero())
      throw ParseError(t.pos, "zero to a negative power");
    return base.pow(static_cast<int>(neg ? -e : e));
  }

  QRatFunc atom() {
    const Token& t = toks_[i_];
    switch (t.kind) {
      case Token::kInt:
        ++i_;
        return QRatFunc(Rational::parse(t.text));
      case Token::kIdent:
        if (t.text == "z") {
          ++i_;
          return QRatFunc::x();
        }
        throw ParseError(t.pos, "unknown identifier '" + t.text + "'");
      case Token::kSym:
        if (t.text[0] == '(') {
          ++i_;
          QRatFunc e = expr();
          expect_sym(')');
          return e;
        }
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
      default:
        throw ParseError(t.pos, "unexpected end of input");
    }
  }

  bool is_sym(char c) const {
    return toks_[i_].kind == Token::kSym && toks_[i_].text[0] == c;
  }
  void expect_sym(char c) {
    if (!is_sym(c))
      throw ParseError(toks_[i_].pos,
                       "expected '" + std::string(1, c) + "'");
    ++i_;
  }
  void expect_end() {
    if (toks_[i_].kind != Token::kEnd)
      throw ParseError(toks_[i_].pos, "trailing input");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

ParsedCurve parse_curve_source(const std::string& text) {
  return Parser(text).parse_statements();
}

QRatFunc parse_expr_source(const std::string& text) {
  return Parser(text).parse_full_expr();
}

}  // namespace spectralrec
