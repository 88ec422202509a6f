#include "partreg/parser.hpp"

#include <algorithm>
#include <cctype>

#include "partreg/error.hpp"

namespace partreg {
namespace {

constexpr unsigned kMaxExponent = 4096;

enum class Tok { kInt, kIdent, kPlus, kMinus, kStar, kCaret, kLParen, kRParen, kEquals, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd: return "end of input";
    case Tok::kInt:
    case Tok::kIdent: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    column += static_cast<int>(n);
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t{Tok::kEnd, "", line, column};
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::kInt;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(src.substr(i, j - i));
      out.push_back(t);
      advance(j - i);
      continue;
    }
    // U+2212 MINUS SIGN, as produced by typeset formulas.
    if (src.substr(i, 3) == "\xE2\x88\x92") {
      t.kind = Tok::kMinus;
      t.text = "-";
      out.push_back(t);
      i += 3;
      ++column;
      continue;
    }
    switch (c) {
      case '+': t.kind = Tok::kPlus; break;
      case '-': t.kind = Tok::kMinus; break;
      case '*': t.kind = Tok::kStar; break;
      case '^': t.kind = Tok::kCaret; break;
      case '(': t.kind = Tok::kLParen; break;
      case ')': t.kind = Tok::kRParen; break;
      case '=': t.kind = Tok::kEquals; break;
      default:
        throw Error(ErrorCode::kSyntax, "unexpected character '" + std::string(1, static_cast<char>(c)) +
                                            "' at line " + std::to_string(line) + ", column " +
                                            std::to_string(column));
    }
    t.text = std::string(1, static_cast<char>(c));
    out.push_back(t);
    advance(1);
  }
  out.push_back(Token{Tok::kEnd, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Polynomial poly() {
    Polynomial acc;
    bool negate = false;
    if (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      negate = next().kind == Tok::kMinus;
    }
    acc = term();
    if (negate) acc = -acc;
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      bool minus = next().kind == Tok::kMinus;
      Polynomial t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    next();
  }

  const Token& peek() const { return tokens_[pos_]; }

 private:
  Polynomial term() {
    bool implicit_ok = false;
    Polynomial acc = factor(implicit_ok);
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::kStar) {
        next();
        acc = acc * factor(implicit_ok);
      } else if (k == Tok::kLParen || (implicit_ok && (k == Tok::kIdent || k == Tok::kInt))) {
        acc = acc * factor(implicit_ok);
      } else {
        break;
      }
    }
    return acc;
  }

  // implicit_ok reports whether a following factor may be juxtaposed ("2x", "(x)(y)").
  Polynomial factor(bool& implicit_ok) {
    const Token& t = peek();
    Polynomial base;
    switch (t.kind) {
      case Tok::kInt:
        next();
        base = Polynomial::constant(Integer(t.text));
        implicit_ok = true;
        break;
      case Tok::kIdent:
        next();
        base = Polynomial::variable(t.text);
        implicit_ok = false;
        break;
      case Tok::kLParen:
        next();
        base = poly();
        expect(Tok::kRParen, "')'");
        implicit_ok = true;
        break;
      default:
        fail(t, "expected a number, variable or '('");
    }
    if (peek().kind == Tok::kCaret) {
      next();
      const Token& e = peek();
      if (e.kind == Tok::kMinus) {
        throw Error(ErrorCode::kBadExponent, "negative exponent at " + where(e));
      }
      if (e.kind != Tok::kInt) fail(e, "expected an exponent");
      next();
      if (e.text.size() > 6 || std::stoul(e.text) > kMaxExponent) {
        throw Error(ErrorCode::kBadExponent, "exponent " + e.text + " too large at " + where(e));
      }
      unsigned long n = std::stoul(e.text);
      if (n == 0) throw Error(ErrorCode::kBadExponent, "zero exponent at " + where(e));
      base = base.pow(static_cast<unsigned>(n));
    }
    return base;
  }

  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  static std::string where(const Token& t) {
    return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column);
  }

 public:
  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw Error(ErrorCode::kSyntax, what + ", found " + describe(t) + " at " + where(t));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text) {
  Parser parser(tokenize(text));
  if (parser.peek().kind == Tok::kEnd) Parser::fail(parser.peek(), "empty polynomial");
  Polynomial p = parser.poly();
  if (parser.peek().kind != Tok::kEnd) Parser::fail(parser.peek(), "expected '+', '-' or end of input");
  return p;
}

std::string print_poly(const Polynomial& p) { return p.to_string(); }

Equation parse_equation(std::string_view text) {
  auto tokens = tokenize(text);
  auto eqs = std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == Tok::kEquals; });
  if (eqs != 1) {
    throw Error(ErrorCode::kSyntax, "an equation needs exactly one '=', found " + std::to_string(eqs));
  }
  Parser parser(std::move(tokens));
  Polynomial lhs = parser.poly();
  parser.expect(Tok::kEquals, "'='");
  Polynomial rhs = parser.poly();
  if (parser.peek().kind != Tok::kEnd) Parser::fail(parser.peek(), "expected end of input");
  return Equation{lhs - rhs};
}

Equation parse_equation_or_poly(std::string_view text) {
  if (text.find('=') != std::string_view::npos) return parse_equation(text);
  return Equation{parse_poly(text)};
}

std::string_view status_name(ExpectedStatus s) {
  switch (s) {
    case ExpectedStatus::kPr: return "PR";
    case ExpectedStatus::kNotPr: return "NOT_PR";
    case ExpectedStatus::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

ExpectedStatus parse_status(std::string_view s) {
  if (s == "PR") return ExpectedStatus::kPr;
  if (s == "NOT_PR") return ExpectedStatus::kNotPr;
  if (s == "UNKNOWN") return ExpectedStatus::kUnknown;
  throw Error(ErrorCode::kSyntax, "unknown status '" + std::string(s) + "'");
}

}  // namespace partreg
