#include "mzchain/circuit.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace mzchain {

namespace {

std::string format_parse_message(int line, int column,
                                 const std::string& message) {
  std::ostringstream os;
  os << line << ":" << column << ": " << message;
  return os.str();
}

enum class TokType {
  identifier,
  number,
  lparen,
  rparen,
  comma,
  semicolon,
  plus,
  minus,
  star,
  slash,
  end
};

struct Token {
  TokType type = TokType::end;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blanks_and_comments();
      if (pos_ >= src_.size()) {
        out.push_back(Token{TokType::end, "", 0.0, line_, column_});
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  void advance_one() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blanks_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance_one();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance_one();
      } else {
        return;
      }
    }
  }

  Token next_token() {
    const int line = line_;
    const int column = column_;
    const char c = src_[pos_];
    switch (c) {
      case '(':
        advance_one();
        return {TokType::lparen, "(", 0.0, line, column};
      case ')':
        advance_one();
        return {TokType::rparen, ")", 0.0, line, column};
      case ',':
        advance_one();
        return {TokType::comma, ",", 0.0, line, column};
      case ';':
        advance_one();
        return {TokType::semicolon, ";", 0.0, line, column};
      case '+':
        advance_one();
        return {TokType::plus, "+", 0.0, line, column};
      case '-':
        advance_one();
        return {TokType::minus, "-", 0.0, line, column};
      case '*':
        advance_one();
        return {TokType::star, "*", 0.0, line, column};
      case '/':
        advance_one();
        return {TokType::slash, "/", 0.0, line, column};
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return lex_number(line, column);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return lex_identifier(line, column);
    }
    throw ParseError(line, column,
                     std::string("unexpected character '") + c + "'");
  }

  Token lex_number(int line, int column) {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      advance_one();
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance_one();
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance_one();
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance_one();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        advance_one();
      }
      if (pos_ >= src_.size() ||
          !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        throw ParseError(line_, column_, "malformed number: missing exponent");
      }
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance_one();
      }
    }
    const std::string text = src_.substr(start, pos_ - start);
    return {TokType::number, text, std::strtod(text.c_str(), nullptr), line,
            column};
  }

  Token lex_identifier(int line, int column) {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      advance_one();
    }
    return {TokType::identifier, src_.substr(start, pos_ - start), 0.0, line,
            column};
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_reserved(const std::string& word) {
  return word == "bs" || word == "phase" || word == "mzi" ||
         word == "chain" || word == "upper" || word == "lower";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  CircuitAst run() {
    CircuitAst ast;
    while (peek().type != TokType::end) {
      ast.statements.push_back(parse_statement());
      if (peek().type != TokType::semicolon) {
        fail(peek(), "expected ';'", {";"});
      }
      advance();
    }
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  const Token& advance() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& at, const std::string& message,
                         std::vector<std::string> expected = {}) {
    throw ParseError(at.line, at.column, message, std::move(expected));
  }

  void expect(TokType type, const char* description) {
    if (peek().type != type) {
      fail(peek(), std::string("expected ") + description, {description});
    }
    advance();
  }

  Statement parse_statement() {
    const Token& head = peek();
    if (head.type != TokType::identifier) {
      fail(head, "expected statement", {"bs", "phase", "mzi", "chain"});
    }
    if (head.text == "bs") {
      advance();
      Statement s;
      s.kind = Statement::Kind::bs;
      return s;
    }
    if (head.text == "phase") {
      advance();
      expect(TokType::lparen, "'('");
      Statement s;
      s.kind = Statement::Kind::phase;
      s.arm = parse_arm();
      expect(TokType::comma, "','");
      s.phi = parse_expr();
      expect(TokType::rparen, "')'");
      return s;
    }
    if (head.text == "mzi") {
      advance();
      expect(TokType::lparen, "'('");
      Statement s;
      s.kind = Statement::Kind::mzi;
      s.phi = parse_expr();
      expect(TokType::rparen, "')'");
      return s;
    }
    if (head.text == "chain") {
      advance();
      expect(TokType::lparen, "'('");
      Statement s;
      s.kind = Statement::Kind::chain;
      s.count = parse_chain_count();
      expect(TokType::comma, "','");
      s.phi = parse_expr();
      expect(TokType::comma, "','");
      s.psi = parse_expr();
      expect(TokType::rparen, "')'");
      return s;
    }
    fail(head, "unknown keyword '" + head.text + "'",
         {"bs", "phase", "mzi", "chain"});
  }

  Arm parse_arm() {
    const Token& tok = peek();
    if (tok.type == TokType::identifier) {
      if (tok.text == "upper") {
        advance();
        return Arm::upper;
      }
      if (tok.text == "lower") {
        advance();
        return Arm::lower;
      }
    }
    fail(tok, "expected arm", {"upper", "lower"});
  }

  int parse_chain_count() {
    const Token& tok = peek();
    if (tok.type != TokType::number) {
      fail(tok, "expected integer chain length", {"integer"});
    }
    double integral = 0.0;
    if (std::modf(tok.number, &integral) != 0.0) {
      fail(tok, "expected integer chain length", {"integer"});
    }
    if (integral < 1.0) {
      fail(tok, "chain length must be at least 1");
    }
    if (integral > static_cast<double>(std::numeric_limits<int>::max())) {
      fail(tok, "chain length out of range");
    }
    advance();
    return static_cast<int>(integral);
  }

  ExprPtr parse_expr() {
    ExprPtr node = parse_term();
    while (peek().type == TokType::plus || peek().type == TokType::minus) {
      const Expr::Kind kind = (advance().type == TokType::plus)
                                  ? Expr::Kind::add
                                  : Expr::Kind::subtract;
      node = make_binary(kind, std::move(node), parse_term());
    }
    return node;
  }

  ExprPtr parse_term() {
    ExprPtr node = parse_unary();
    while (peek().type == TokType::star || peek().type == TokType::slash) {
      const Expr::Kind kind = (advance().type == TokType::star)
                                  ? Expr::Kind::multiply
                                  : Expr::Kind::divide;
      node = make_binary(kind, std::move(node), parse_unary());
    }
    return node;
  }

  ExprPtr parse_unary() {
    if (peek().type == TokType::minus) {
      advance();
      return make_negate(parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& tok = peek();
    switch (tok.type) {
      case TokType::number:
        advance();
        return make_literal(tok.number);
      case TokType::identifier:
        if (tok.text == "pi") {
          advance();
          return make_pi();
        }
        if (is_reserved(tok.text)) {
          break;  // keywords are not usable as parameters
        }
        advance();
        return make_identifier(tok.text);
      case TokType::lparen: {
        advance();
        ExprPtr inner = parse_expr();
        expect(TokType::rparen, "')'");
        return inner;
      }
      default:
        break;
    }
    fail(tok, "expected expression", {"number", "pi", "identifier", "("});
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Shortest decimal form that scans back to the same double.
std::string format_literal(double value) {
  assert(value >= 0.0 && std::isfinite(value));
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) {
      break;
    }
  }
  return buf;
}

int precedence(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::add:
    case Expr::Kind::subtract:
      return 1;
    case Expr::Kind::multiply:
    case Expr::Kind::divide:
      return 2;
    case Expr::Kind::negate:
      return 3;
    default:
      return 4;
  }
}

const char* binary_symbol(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::add:
      return " + ";
    case Expr::Kind::subtract:
      return " - ";
    case Expr::Kind::multiply:
      return " * ";
    default:
      return " / ";
  }
}

void print_expr(std::ostream& os, const Expr& e);

void print_child(std::ostream& os, const Expr& child, bool needs_parens) {
  if (needs_parens) {
    os << "(";
    print_expr(os, child);
    os << ")";
  } else {
    print_expr(os, child);
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal:
      os << format_literal(e.value);
      return;
    case Expr::Kind::pi:
      os << "pi";
      return;
    case Expr::Kind::identifier:
      os << e.name;
      return;
    case Expr::Kind::negate:
      os << "-";
      print_child(os, *e.lhs, precedence(e.lhs->kind) < precedence(e.kind));
      return;
    default: {
      // Binary operators associate left, so a same-precedence subtree on
      // the right only survives a round trip inside parentheses.
      const int prec = precedence(e.kind);
      print_child(os, *e.lhs, precedence(e.lhs->kind) < prec);
      os << binary_symbol(e.kind);
      print_child(os, *e.rhs, precedence(e.rhs->kind) <= prec);
      return;
    }
  }
}

void print_statement(std::ostream& os, const Statement& s) {
  switch (s.kind) {
    case Statement::Kind::bs:
      os << "bs;";
      return;
    case Statement::Kind::phase:
      os << "phase(" << (s.arm == Arm::upper ? "upper" : "lower") << ", ";
      print_expr(os, *s.phi);
      os << ");";
      return;
    case Statement::Kind::mzi:
      os << "mzi(";
      print_expr(os, *s.phi);
      os << ");";
      return;
    case Statement::Kind::chain:
      os << "chain(" << s.count << ", ";
      print_expr(os, *s.phi);
      os << ", ";
      print_expr(os, *s.psi);
      os << ");";
      return;
  }
}

double checked_eval(const ExprPtr& expr, const Bindings& bindings) {
  const double value = eval_expr(*expr, bindings);
  if (!std::isfinite(value)) {
    throw CompileError(CompileError::Kind::nonfinite_phase,
                       "phase expression does not evaluate to a finite value");
  }
  return value;
}

TransferMatrix2 statement_matrix(const Statement& s, const Bindings& bindings) {
  switch (s.kind) {
    case Statement::Kind::bs:
      return beam_splitter();
    case Statement::Kind::phase:
      return phase_shifter(s.arm, checked_eval(s.phi, bindings));
    case Statement::Kind::mzi:
      return mzi(checked_eval(s.phi, bindings));
    default: {
      ChainSpec spec;
      spec.n = s.count;
      spec.phi = checked_eval(s.phi, bindings);
      spec.psi = checked_eval(s.psi, bindings);
      return coupled_chain(spec);
    }
  }
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message,
                       std::vector<std::string> expected)
    : std::runtime_error(format_parse_message(line, column, message)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

CompileError::CompileError(Kind kind, const std::string& message,
                           std::string identifier)
    : std::runtime_error(message),
      kind_(kind),
      identifier_(std::move(identifier)) {}

ExprPtr make_literal(double value) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::literal;
  e->value = value;
  return e;
}

ExprPtr make_pi() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::pi;
  return e;
}

ExprPtr make_identifier(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::identifier;
  e->name = std::move(name);
  return e;
}

ExprPtr make_negate(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::negate;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr make_binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

CircuitAst parse(const std::string& source) {
  return Parser(Lexer(source).run()).run();
}

std::string pretty_print(const CircuitAst& ast) {
  std::ostringstream os;
  for (const Statement& s : ast.statements) {
    print_statement(os, s);
    os << "\n";
  }
  return os.str();
}

std::string pretty_print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr);
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Expr::Kind::literal:
      return a.value == b.value;
    case Expr::Kind::pi:
      return true;
    case Expr::Kind::identifier:
      return a.name == b.name;
    case Expr::Kind::negate:
      return structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
  }
}

bool structurally_equal(const CircuitAst& a, const CircuitAst& b) {
  if (a.statements.size() != b.statements.size()) {
    return false;
  }
  for (size_t i = 0; i < a.statements.size(); ++i) {
    const Statement& sa = a.statements[i];
    const Statement& sb = b.statements[i];
    if (sa.kind != sb.kind) {
      return false;
    }
    switch (sa.kind) {
      case Statement::Kind::bs:
        break;
      case Statement::Kind::phase:
        if (sa.arm != sb.arm || !structurally_equal(*sa.phi, *sb.phi)) {
          return false;
        }
        break;
      case Statement::Kind::mzi:
        if (!structurally_equal(*sa.phi, *sb.phi)) {
          return false;
        }
        break;
      case Statement::Kind::chain:
        if (sa.count != sb.count || !structurally_equal(*sa.phi, *sb.phi) ||
            !structurally_equal(*sa.psi, *sb.psi)) {
          return false;
        }
        break;
    }
  }
  return true;
}

double eval_expr(const Expr& expr, const Bindings& bindings) {
  switch (expr.kind) {
    case Expr::Kind::literal:
      return expr.value;
    case Expr::Kind::pi:
      return std::numbers::pi;
    case Expr::Kind::identifier: {
      const auto it = bindings.find(expr.name);
      if (it == bindings.end()) {
        throw CompileError(CompileError::Kind::unbound_identifier,
                           "unbound parameter '" + expr.name + "'", expr.name);
      }
      return it->second;
    }
    case Expr::Kind::negate:
      return -eval_expr(*expr.lhs, bindings);
    case Expr::Kind::add:
      return eval_expr(*expr.lhs, bindings) + eval_expr(*expr.rhs, bindings);
    case Expr::Kind::subtract:
      return eval_expr(*expr.lhs, bindings) - eval_expr(*expr.rhs, bindings);
    case Expr::Kind::multiply:
      return eval_expr(*expr.lhs, bindings) * eval_expr(*expr.rhs, bindings);
    default: {
      const double denominator = eval_expr(*expr.rhs, bindings);
      if (denominator == 0.0) {
        throw CompileError(CompileError::Kind::division_by_zero,
                           "division by zero in phase expression");
      }
      return eval_expr(*expr.lhs, bindings) / denominator;
    }
  }
}

TransferMatrix2 compile(const CircuitAst& ast, const Bindings& bindings) {
  TransferMatrix2 acc = identity();
  for (const Statement& s : ast.statements) {
    acc = compose(statement_matrix(s, bindings), acc);
  }
  return acc;
}

}  // namespace mzchain
