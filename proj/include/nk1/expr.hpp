#pragma once

#include <gmpxx.h>

#include <string_view>
#include <vector>

#include "nk1/ring.hpp"

namespace nk1 {

/// Syntax tree for the shared text grammar.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
///   unary  := '-' unary | power
///   power  := atom ('^' ['('] ['-'] integer [')'])?
///   atom   := integer ['mod' integer] | letter | '(' expr ')'
///           | '[' expr ']'                            class bracket, grouping only
///           | '[[' expr, ... '],' ... ']'             row-major matrix
///
/// Letters are single characters, so "NX" reads as N*X.
struct Expr {
  enum class Kind { Number, ModNumber, Symbol, Add, Sub, Mul, Div, Neg, Pow, Matrix };

  Kind kind = Kind::Number;
  mpz_class number;
  mpz_class modulus;
  char symbol = 0;
  long long exponent = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Expr> args;
};

Expr parse_expr(std::string_view text);

/// Evaluates in `ring`; letters must name ring variables.
RingElem eval_scalar(const Expr& e, const Ring& ring);

RingElem parse_element(const Ring& ring, std::string_view text);

}  // namespace nk1
