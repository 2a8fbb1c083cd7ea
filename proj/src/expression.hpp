#pragma once

// Recursive-descent parser for the arithmetic chart expressions accepted in
// config files: variables u, v; +, -, *, /, ^; sin cos tan exp log sqrt abs
// sinh cosh tanh atan; constants pi and e; numeric literals.

#include <memory>
#include <string>

namespace sctk::geom {

class Expression {
 public:
  virtual ~Expression() = default;
  virtual double eval(double u, double v) const = 0;
};

// Throws std::invalid_argument with a position diagnostic on parse failure.
std::unique_ptr<Expression> parse_expression(const std::string& text);

}  // namespace sctk::geom
