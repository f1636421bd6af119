#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lcint::family {

// Monomial pi^pi * x^x * s^s.
struct ParamMonomial {
  std::vector<int> x;
  std::vector<int> s;
  int pi = 0;
  friend auto operator<=>(const ParamMonomial&, const ParamMonomial&) = default;
};

// Integer polynomial in x_1..x_d, pi and the parameters s_1..s_k.
struct ParamPolynomial {
  int d = 0;
  int k = 0;
  std::map<ParamMonomial, std::int64_t> terms;  // no zero coefficients

  bool depends_on_parameters() const;
  ParamPolynomial operator+(const ParamPolynomial& o) const;
  ParamPolynomial operator-(const ParamPolynomial& o) const;
  ParamPolynomial operator*(const ParamPolynomial& o) const;
  friend bool operator==(const ParamPolynomial&, const ParamPolynomial&) = default;
};

// Grammar: sums and differences of products of powers of integers, x (d = 1)
// or x1..xd, pi, s (k = 1) or s1..sk, and parenthesised subexpressions.
// "^" takes a nonnegative integer exponent.
ParamPolynomial parse_expression(const std::string& text, int d, int k);

// Inverse of parse_expression: "x^2 - 5*s + pi".
std::string to_string(const ParamPolynomial& f);

std::string parameter_name(int k, int j);

}  // namespace lcint::family
