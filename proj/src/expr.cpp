#include "cstar/expr.hpp"

#include <cctype>
#include <charconv>
#include <variant>

namespace cstar::expr {

ExprPtr Expr::make_name(std::string n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Name;
  e->name = std::move(n);
  return e;
}

ExprPtr Expr::make_scalar(Complex c) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::ScalarLit;
  e->scalar = c;
  return e;
}

ExprPtr Expr::make_identity() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Identity;
  return e;
}

namespace {

ExprPtr make_binary(Expr::Kind kind, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

bool is_lit(const ExprPtr& e) { return e->kind == Expr::Kind::ScalarLit; }

}  // namespace

// Constant folding keeps literals in the normal form the printer emits:
// "1+2i" is one ScalarLit, and a literal times anything is a Scale node.
ExprPtr Expr::make_add(ExprPtr l, ExprPtr r) {
  if (is_lit(l) && is_lit(r)) return make_scalar(l->scalar + r->scalar);
  return make_binary(Kind::Add, std::move(l), std::move(r));
}

ExprPtr Expr::make_sub(ExprPtr l, ExprPtr r) {
  if (is_lit(l) && is_lit(r)) return make_scalar(l->scalar - r->scalar);
  return make_binary(Kind::Sub, std::move(l), std::move(r));
}

ExprPtr Expr::make_scale(Complex c, ExprPtr e) {
  if (is_lit(e)) return make_scalar(c * e->scalar);
  auto node = std::make_shared<Expr>();
  node->kind = Kind::Scale;
  node->scalar = c;
  node->lhs = std::move(e);
  return node;
}

ExprPtr Expr::make_mul(ExprPtr l, ExprPtr r) {
  if (is_lit(l)) return make_scale(l->scalar, std::move(r));
  if (is_lit(r)) return make_scale(r->scalar, std::move(l));
  return make_binary(Kind::Mul, std::move(l), std::move(r));
}

ExprPtr Expr::make_adjoint(ExprPtr e) {
  if (is_lit(e)) return make_scalar(std::conj(e->scalar));
  auto node = std::make_shared<Expr>();
  node->kind = Kind::Adjoint;
  node->lhs = std::move(e);
  return node;
}

namespace {

struct Token {
  enum class Type { Number, Ident, IdentityKw, Plus, Minus, Star, Prime,
                    LParen, RParen, End };
  Type type;
  size_t offset;
  std::string text;    // Ident
  Complex value;       // Number
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    size_t pos = 0;
    while (pos < src_.size()) {
      char c = src_[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        tokens.push_back(lex_number(pos));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos;
        while (pos < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos])) ||
                src_[pos] == '_'))
          ++pos;
        std::string word(src_.substr(start, pos - start));
        if (word == "I")
          tokens.push_back({Token::Type::IdentityKw, start, word, 0.0});
        else
          tokens.push_back({Token::Type::Ident, start, std::move(word), 0.0});
        continue;
      }
      Token::Type type;
      switch (c) {
        case '+': type = Token::Type::Plus; break;
        case '-': type = Token::Type::Minus; break;
        case '*': type = Token::Type::Star; break;
        case '\'': type = Token::Type::Prime; break;
        case '(': type = Token::Type::LParen; break;
        case ')': type = Token::Type::RParen; break;
        default:
          throw SyntaxError("unexpected character '" + std::string(1, c) +
                                "' at offset " + std::to_string(pos),
                            pos, {"number", "identifier", "operator"});
      }
      tokens.push_back({type, pos, std::string(1, c), 0.0});
      ++pos;
    }
    tokens.push_back({Token::Type::End, src_.size(), "", 0.0});
    return tokens;
  }

 private:
  Token lex_number(size_t& pos) {
    size_t start = pos;
    while (pos < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos])))
      ++pos;
    if (pos < src_.size() && src_[pos] == '.') {
      ++pos;
      if (pos >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos])))
        throw SyntaxError("malformed number at offset " + std::to_string(start),
                          start, {"digit"});
      while (pos < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos])))
        ++pos;
    }
    double magnitude = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos, magnitude);
    if (res.ec != std::errc())
      throw SyntaxError("malformed number at offset " + std::to_string(start),
                        start, {"number"});
    bool imaginary = false;
    if (pos < src_.size() && src_[pos] == 'i') {
      imaginary = true;
      ++pos;
    }
    return {Token::Type::Number, start, "",
            imaginary ? Complex(0.0, magnitude) : Complex(magnitude, 0.0)};
  }

  std::string_view src_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (peek().type != Token::Type::End)
      throw SyntaxError("trailing input at offset " +
                            std::to_string(peek().offset),
                        peek().offset, {"'+'", "'-'", "'*'", "'''", "end"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }

  ExprPtr parse_expr() {
    ExprPtr left = parse_term();
    while (peek().type == Token::Type::Plus ||
           peek().type == Token::Type::Minus) {
      Token::Type op = advance().type;
      ExprPtr right = parse_term();
      left = op == Token::Type::Plus
                 ? Expr::make_add(std::move(left), std::move(right))
                 : Expr::make_sub(std::move(left), std::move(right));
    }
    return left;
  }

  ExprPtr parse_term() {
    ExprPtr left = parse_factor();
    while (peek().type == Token::Type::Star) {
      advance();
      ExprPtr right = parse_factor();
      left = Expr::make_mul(std::move(left), std::move(right));
    }
    return left;
  }

  ExprPtr parse_factor() {
    if (peek().type == Token::Type::Minus) {
      advance();
      ExprPtr inner = parse_factor();
      return Expr::make_scale(Complex(-1.0, 0.0), std::move(inner));
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (peek().type == Token::Type::Prime) {
      advance();
      e = Expr::make_adjoint(std::move(e));
    }
    return e;
  }

  ExprPtr parse_primary() {
    const Token& tok = peek();
    switch (tok.type) {
      case Token::Type::Number:
        advance();
        return Expr::make_scalar(tok.value);
      case Token::Type::Ident:
        advance();
        return Expr::make_name(tok.text);
      case Token::Type::IdentityKw:
        advance();
        return Expr::make_identity();
      case Token::Type::LParen: {
        advance();
        ExprPtr inner = parse_expr();
        if (peek().type != Token::Type::RParen)
          throw SyntaxError("expected ')' at offset " +
                                std::to_string(peek().offset),
                            peek().offset, {"')'"});
        advance();
        return inner;
      }
      default:
        throw SyntaxError("expected an operand at offset " +
                              std::to_string(tok.offset),
                          tok.offset,
                          {"number", "identifier", "'I'", "'('", "'-'"});
    }
  }

  std::vector<Token> tokens_;
  size_t index_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view src) {
  return Parser(Lexer(src).run()).run();
}

namespace {

std::string format_real(double v) {
  // Fixed notation only: the literal grammar has no exponent form.
  char buffer[400];
  auto res = std::to_chars(buffer, buffer + sizeof(buffer), v,
                           std::chars_format::fixed);
  return std::string(buffer, res.ptr);
}

// Renders a scalar as a literal. Two-part values need parentheses in every
// operand position ("x + (1+2i)"), bare forms never do.
std::string format_scalar(Complex c, bool parenthesize_pairs) {
  double re = c.real(), im = c.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  std::string body = format_real(re) +
                     (im < 0.0 ? " - " + format_real(-im) : " + " + format_real(im)) +
                     "i";
  return parenthesize_pairs ? "(" + body + ")" : body;
}

// Precedence levels: Add/Sub 1, Mul/Scale 2, Adjoint 3, atoms 4. A node is
// parenthesized when its level is below what the position requires.
int level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Scale: return 2;
    case Expr::Kind::Adjoint: return 3;
    default: return 4;
  }
}

std::string render(const Expr& e, int min_level) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::Name: out = e.name; break;
    case Expr::Kind::Identity: out = "I"; break;
    case Expr::Kind::ScalarLit:
      return format_scalar(e.scalar, min_level > 1);
    case Expr::Kind::Add:
      out = render(*e.lhs, 1) + " + " + render(*e.rhs, 2);
      break;
    case Expr::Kind::Sub:
      out = render(*e.lhs, 1) + " - " + render(*e.rhs, 2);
      break;
    case Expr::Kind::Mul:
      out = render(*e.lhs, 2) + "*" + render(*e.rhs, 3);
      break;
    case Expr::Kind::Scale:
      out = format_scalar(e.scalar, true) + "*" + render(*e.lhs, 3);
      break;
    case Expr::Kind::Adjoint:
      out = render(*e.lhs, 3) + "'";
      break;
  }
  if (level_of(e) < min_level) out = "(" + out + ")";
  return out;
}

}  // namespace

std::string to_string(const Expr& e) { return render(e, 1); }

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Name: return a.name == b.name;
    case Expr::Kind::Identity: return true;
    case Expr::Kind::ScalarLit: return a.scalar == b.scalar;
    case Expr::Kind::Scale:
      return a.scalar == b.scalar && equal(*a.lhs, *b.lhs);
    case Expr::Kind::Adjoint: return equal(*a.lhs, *b.lhs);
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
      return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

using Value = std::variant<Complex, AlgebraElement>;

AlgebraElement to_element(const Value& v, const Environment& env) {
  if (std::holds_alternative<AlgebraElement>(v))
    return std::get<AlgebraElement>(v);
  return scalar_mul(std::get<Complex>(v),
                    AlgebraElement::identity(env.shape));
}

Value eval(const Expr& e, const Environment& env) {
  switch (e.kind) {
    case Expr::Kind::ScalarLit:
      return e.scalar;
    case Expr::Kind::Identity:
      return AlgebraElement::identity(env.shape);
    case Expr::Kind::Name: {
      auto it = env.bindings.find(e.name);
      if (it == env.bindings.end())
        throw UnboundName("no binding for '" + e.name + "'");
      require_same_shape(env.shape, it->second.shape(), "evaluate_expr");
      return it->second;
    }
    case Expr::Kind::Add: {
      Value l = eval(*e.lhs, env), r = eval(*e.rhs, env);
      if (std::holds_alternative<Complex>(l) &&
          std::holds_alternative<Complex>(r))
        return std::get<Complex>(l) + std::get<Complex>(r);
      return add(to_element(l, env), to_element(r, env));
    }
    case Expr::Kind::Sub: {
      Value l = eval(*e.lhs, env), r = eval(*e.rhs, env);
      if (std::holds_alternative<Complex>(l) &&
          std::holds_alternative<Complex>(r))
        return std::get<Complex>(l) - std::get<Complex>(r);
      return sub(to_element(l, env), to_element(r, env));
    }
    case Expr::Kind::Mul: {
      Value l = eval(*e.lhs, env), r = eval(*e.rhs, env);
      if (std::holds_alternative<Complex>(l) &&
          std::holds_alternative<Complex>(r))
        return std::get<Complex>(l) * std::get<Complex>(r);
      if (std::holds_alternative<Complex>(l))
        return scalar_mul(std::get<Complex>(l), std::get<AlgebraElement>(r));
      if (std::holds_alternative<Complex>(r))
        return scalar_mul(std::get<Complex>(r), std::get<AlgebraElement>(l));
      return mul(std::get<AlgebraElement>(l), std::get<AlgebraElement>(r));
    }
    case Expr::Kind::Scale: {
      Value inner = eval(*e.lhs, env);
      if (std::holds_alternative<Complex>(inner))
        return e.scalar * std::get<Complex>(inner);
      return scalar_mul(e.scalar, std::get<AlgebraElement>(inner));
    }
    case Expr::Kind::Adjoint: {
      Value inner = eval(*e.lhs, env);
      if (std::holds_alternative<Complex>(inner))
        return std::conj(std::get<Complex>(inner));
      return adjoint(std::get<AlgebraElement>(inner));
    }
  }
  throw Error("evaluate_expr: unreachable node kind");
}

}  // namespace

AlgebraElement evaluate_expr(const Expr& e, const Environment& env) {
  return to_element(eval(e, env), env);
}

}  // namespace cstar::expr
