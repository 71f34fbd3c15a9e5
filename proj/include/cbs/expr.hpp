#pragma once

// Prefix expression trees for exact parameters and expected closed forms.
//
//   atom  := integer | p/q | decimal | alpha | beta | delta | pi
//   expr  := atom | "(" op expr... ")"
//   op    := + - * / neg sqrt pow ln exp arctan artanh arccot arccoth sin cos tan
//
// Decimals are read exactly as rationals. pow needs an exponent that folds to a
// rational. to_string prints a canonical form that parses back to the same tree.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbs/exact.hpp"
#include "cbs/mp.hpp"

namespace cbs {

class Expr {
 public:
  enum class Kind { Number, Symbol, Call };

  static Expr parse(std::string_view text);
  static Expr number(const Rational& q);
  static Expr symbol(std::string name);
  static Expr call(std::string op, std::vector<Expr> args);

  Kind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const std::vector<Expr>& args() const { return node_->args; }

  std::string to_string() const;
  Real eval(const PrecisionContext& ctx) const;
  /// Exact value when the tree uses only rationals and + - * / neg with integer pow.
  std::optional<Rational> as_rational() const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.to_string() == b.to_string(); }

 private:
  struct Node {
    Kind kind = Kind::Number;
    Rational value;
    std::string name;
    std::vector<Expr> args;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Accepts "p/q", an integer, a decimal, "pi/K", "-pi/K", "pi" or a prefix expression.
Expr parse_value(std::string_view text);

}  // namespace cbs
