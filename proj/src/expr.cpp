#include "nk1/expr.hpp"

#include <cctype>
#include <string>

namespace nk1 {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "'" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_keyword_mod() {
    skip();
    return s_.substr(pos_, 3) == "mod" &&
           (pos_ + 3 == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 3])));
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  static Expr binary(Expr::Kind k, Expr a, Expr b) {
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = binary(Expr::Kind::Add, std::move(lhs), term());
      } else if (eat('-')) {
        lhs = binary(Expr::Kind::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  bool starts_atom() {
    char c = peek();
    if (c == '(' || c == '[') return true;
    return std::isalpha(static_cast<unsigned char>(c)) && !at_keyword_mod();
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = binary(Expr::Kind::Mul, std::move(lhs), unary());
      } else if (eat('/')) {
        lhs = binary(Expr::Kind::Div, std::move(lhs), unary());
      } else if (starts_atom()) {
        lhs = binary(Expr::Kind::Mul, std::move(lhs), power());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (eat('-')) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool negative = eat('-');
    mpz_class n = integer();
    if (paren) expect(')');
    if (!n.fits_slong_p()) fail("exponent too large");
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.exponent = n.get_si();
    if (negative) e.exponent = -e.exponent;
    e.args.push_back(std::move(base));
    return e;
  }

  Expr atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Expr e;
      e.number = integer();
      if (at_keyword_mod()) {
        pos_ += 3;
        e.kind = Expr::Kind::ModNumber;
        e.modulus = integer();
      }
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      if (peek() == '[') return matrix();
      Expr e = expr();
      expect(']');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) && !at_keyword_mod()) {
      Expr e;
      e.kind = Expr::Kind::Symbol;
      e.symbol = c;
      ++pos_;
      return e;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Called after the outer '['.
  Expr matrix() {
    Expr m;
    m.kind = Expr::Kind::Matrix;
    do {
      expect('[');
      std::size_t cols = 0;
      do {
        m.args.push_back(expr());
        ++cols;
      } while (eat(','));
      expect(']');
      if (m.rows == 0) {
        m.cols = cols;
      } else if (cols != m.cols) {
        fail("ragged matrix rows");
      }
      ++m.rows;
    } while (eat(','));
    expect(']');
    return m;
  }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

RingElem eval_scalar(const Expr& e, const Ring& ring) {
  switch (e.kind) {
    case Expr::Kind::Number: return ring.from_integer(e.number);
    case Expr::Kind::ModNumber: {
      Ring sr = ring.base();
      if (sr.kind() != RingKind::Modular || sr.modulus() != e.modulus)
        throw Error(ErrorKind::MixedRings, "literal mod " + e.modulus.get_str() + " in " + ring.to_string());
      return ring.from_integer(e.number);
    }
    case Expr::Kind::Symbol: {
      std::string name(1, e.symbol);
      if (!ring.variable_index(name)) throw Error(ErrorKind::ParseError, "unknown symbol " + name + " in " + ring.to_string());
      return ring.variable(name);
    }
    case Expr::Kind::Add: return eval_scalar(e.args[0], ring) + eval_scalar(e.args[1], ring);
    case Expr::Kind::Sub: return eval_scalar(e.args[0], ring) - eval_scalar(e.args[1], ring);
    case Expr::Kind::Mul: return eval_scalar(e.args[0], ring) * eval_scalar(e.args[1], ring);
    case Expr::Kind::Div: return eval_scalar(e.args[0], ring) * ring_inv(eval_scalar(e.args[1], ring));
    case Expr::Kind::Neg: return -eval_scalar(e.args[0], ring);
    case Expr::Kind::Pow: return pow(eval_scalar(e.args[0], ring), e.exponent);
    case Expr::Kind::Matrix: throw Error(ErrorKind::ParseError, "matrix literal where a ring element was expected");
  }
  throw Error(ErrorKind::InternalError, "bad expression node");
}

RingElem parse_element(const Ring& ring, std::string_view text) { return eval_scalar(parse_expr(text), ring); }

}  // namespace nk1
