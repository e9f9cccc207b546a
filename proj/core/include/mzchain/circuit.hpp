#ifndef MZCHAIN_CIRCUIT_HPP_
#define MZCHAIN_CIRCUIT_HPP_

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzchain/elements.hpp"
#include "mzchain/field_algebra.hpp"

namespace mzchain {

// Textual circuit description language (.mzc files).
//
//   program   := { statement ";" }
//   statement := "bs"
//              | "phase" "(" arm "," expr ")"
//              | "mzi" "(" expr ")"
//              | "chain" "(" integer "," expr "," expr ")"
//   arm       := "upper" | "lower"
//   expr      := arithmetic over literals, "pi", identifiers
//                with unary minus, + - * / and usual precedence
//
// Statements are listed in physical order: the first statement acts
// first on the input field.  "#" starts a comment running to end of
// line.  All angles are radians.  Identifiers are free parameters bound
// at compile time, never defined in the language itself.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    literal,
    pi,
    identifier,
    negate,
    add,
    subtract,
    multiply,
    divide
  };
  Kind kind = Kind::literal;
  double value = 0.0;  // literal: always non-negative (minus is a node)
  std::string name;    // identifier
  ExprPtr lhs;         // negate stores its operand here
  ExprPtr rhs;
};

ExprPtr make_literal(double value);
ExprPtr make_pi();
ExprPtr make_identifier(std::string name);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs);

struct Statement {
  enum class Kind { bs, phase, mzi, chain };
  Kind kind = Kind::bs;
  Arm arm = Arm::upper;  // phase only
  ExprPtr phi;           // phase angle, mzi phase, or chain phi
  ExprPtr psi;           // chain coupling phase
  int count = 0;         // chain length
};

struct CircuitAst {
  std::vector<Statement> statements;
};

// Parameter values, radians.
using Bindings = std::map<std::string, double>;

// Reported with 1-based line and column of the first offending token.
// what() is formatted "line:column: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message,
             std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

class CompileError : public std::runtime_error {
 public:
  enum class Kind { unbound_identifier, division_by_zero, nonfinite_phase };

  CompileError(Kind kind, const std::string& message,
               std::string identifier = "");

  Kind kind() const { return kind_; }
  const std::string& identifier() const { return identifier_; }

 private:
  Kind kind_;
  std::string identifier_;
};

// Throws ParseError at the first offending token; no error recovery.
CircuitAst parse(const std::string& source);

// Canonical text form, one statement per line.  Guaranteed to re-parse
// to a structurally identical AST.
std::string pretty_print(const CircuitAst& ast);
std::string pretty_print(const Expr& expr);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const CircuitAst& a, const CircuitAst& b);

// Throws CompileError for unbound identifiers and division by zero.
double eval_expr(const Expr& expr, const Bindings& bindings);

// Composes the statements into one transfer matrix; the first statement
// is the rightmost matrix factor.
TransferMatrix2 compile(const CircuitAst& ast, const Bindings& bindings);

}  // namespace mzchain

#endif  // MZCHAIN_CIRCUIT_HPP_
