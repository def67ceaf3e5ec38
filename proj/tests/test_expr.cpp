#include "cstar/expr.hpp"

#include <doctest.h>

#include "cstar/random.hpp"
#include "oracles.hpp"

using namespace cstar;
using namespace cstar::expr;

namespace {

const AlgebraShape kM2({2});

Environment small_env() {
  Environment env;
  env.shape = kM2;
  Rng rng(61);
  env.bindings.emplace("x", random_element(kM2, rng));
  env.bindings.emplace("y", random_element(kM2, rng));
  return env;
}

}  // namespace

TEST_CASE("parse fixtures") {
  ExprPtr e = parse("x' * x");
  REQUIRE(e->kind == Expr::Kind::Mul);
  CHECK(e->lhs->kind == Expr::Kind::Adjoint);
  CHECK(e->lhs->lhs->kind == Expr::Kind::Name);
  CHECK(e->lhs->lhs->name == "x");
  CHECK(e->rhs->kind == Expr::Kind::Name);

  // Precedence: * over +, postfix ' over *.
  e = parse("a+b*c");
  REQUIRE(e->kind == Expr::Kind::Add);
  CHECK(e->lhs->name == "a");
  CHECK(e->rhs->kind == Expr::Kind::Mul);

  e = parse("a*b'");
  REQUIRE(e->kind == Expr::Kind::Mul);
  CHECK(e->lhs->name == "a");
  CHECK(e->rhs->kind == Expr::Kind::Adjoint);

  // Left associativity.
  e = parse("a - b - c");
  REQUIRE(e->kind == Expr::Kind::Sub);
  CHECK(e->lhs->kind == Expr::Kind::Sub);
  CHECK(e->rhs->name == "c");

  // Scalar literals fold; scalar-element products become Scale.
  e = parse("(x - 2)*(x - 2)'");
  REQUIRE(e->kind == Expr::Kind::Mul);
  REQUIRE(e->lhs->kind == Expr::Kind::Sub);
  CHECK(e->lhs->rhs->kind == Expr::Kind::ScalarLit);
  CHECK(e->lhs->rhs->scalar == Complex(2.0, 0.0));
  CHECK(e->rhs->kind == Expr::Kind::Adjoint);
  CHECK(equal(*e->lhs, *e->rhs->lhs));

  e = parse("1+2i");
  REQUIRE(e->kind == Expr::Kind::ScalarLit);
  CHECK(e->scalar == Complex(1.0, 2.0));

  e = parse("3 - 0.5i");
  REQUIRE(e->kind == Expr::Kind::ScalarLit);
  CHECK(e->scalar == Complex(3.0, -0.5));

  e = parse("2*x");
  REQUIRE(e->kind == Expr::Kind::Scale);
  CHECK(e->scalar == Complex(2.0, 0.0));

  e = parse("-x'");
  REQUIRE(e->kind == Expr::Kind::Scale);
  CHECK(e->scalar == Complex(-1.0, 0.0));
  CHECK(e->lhs->kind == Expr::Kind::Adjoint);

  CHECK(parse("I")->kind == Expr::Kind::Identity);
}

TEST_CASE("syntax errors carry offsets and expectations") {
  try {
    parse("x + ");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& err) {
    CHECK(err.offset() == 4);
    CHECK(!err.expected().empty());
  }

  try {
    parse("(x");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& err) {
    CHECK(err.offset() == 2);
    REQUIRE(err.expected().size() == 1);
    CHECK(err.expected()[0] == "')'");
  }

  // Juxtaposition is not multiplication.
  try {
    parse("2 x");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& err) {
    CHECK(err.offset() == 2);
  }

  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("x $ y"), SyntaxError);
  CHECK_THROWS_AS(parse("1."), SyntaxError);
}

TEST_CASE("print and reparse the documented example") {
  ExprPtr e = parse("x - (1+2i)*I");
  std::string printed = to_string(*e);
  ExprPtr back = parse(printed);
  CHECK(equal(*e, *back));

  // And a few more shapes of tree.
  for (const char* src :
       {"x' * x", "(x - 2)*(x - 2)'", "a + b*c - d'", "-x + 2i*y",
        "2*(3*x)", "x + (1 + 2i)", "x''", "(a+b)'*c", "1.5*I - x"}) {
    ExprPtr tree = parse(src);
    CHECK(equal(*tree, *parse(to_string(*tree))));
  }
}

namespace {

// Random trees in parser normal form: literals never sit where the parser
// would have folded them.
ExprPtr random_tree(Rng& rng, int depth, bool allow_scalar) {
  double roll = rng.uniform();
  if (depth == 0 || roll < 0.25) {
    double pick = rng.uniform();
    if (allow_scalar && pick < 0.25) {
      double re = std::floor(rng.uniform() * 17.0 - 8.0) / 8.0;
      double im = std::floor(rng.uniform() * 17.0 - 8.0) / 8.0;
      if (re == 0.0 && im == 0.0) re = 0.5;
      return Expr::make_scalar(Complex(re, im));
    }
    if (pick < 0.5) return Expr::make_identity();
    return Expr::make_name(pick < 0.75 ? "x" : "y");
  }
  if (roll < 0.40) {
    ExprPtr l = random_tree(rng, depth - 1, true);
    ExprPtr r = random_tree(rng, depth - 1, l->kind != Expr::Kind::ScalarLit);
    return rng.uniform() < 0.5 ? Expr::make_add(l, r) : Expr::make_sub(l, r);
  }
  if (roll < 0.60)
    return Expr::make_mul(random_tree(rng, depth - 1, false),
                          random_tree(rng, depth - 1, false));
  if (roll < 0.80) {
    double re = std::floor(rng.uniform() * 17.0 - 8.0) / 8.0;
    if (re == 0.0) re = 2.0;
    return Expr::make_scale(Complex(re, 0.0),
                            random_tree(rng, depth - 1, false));
  }
  return Expr::make_adjoint(random_tree(rng, depth - 1, false));
}

// Independent evaluator: walks the tree with loop-based matrix arithmetic.
struct OracleValue {
  bool is_scalar;
  Complex scalar;
  std::vector<oracle::Mat> blocks;
};

OracleValue oracle_eval(const Expr& e, const Environment& env) {
  auto to_blocks = [&](const OracleValue& v) {
    if (!v.is_scalar) return v.blocks;
    std::vector<oracle::Mat> blocks;
    for (int k = 0; k < env.shape.block_count(); ++k)
      blocks.push_back(v.scalar *
                       oracle::Mat::Identity(env.shape.block_dim(k),
                                             env.shape.block_dim(k)));
    return blocks;
  };
  switch (e.kind) {
    case Expr::Kind::ScalarLit:
      return {true, e.scalar, {}};
    case Expr::Kind::Identity: {
      OracleValue one{true, 1.0, {}};
      return {false, 0.0, to_blocks(one)};
    }
    case Expr::Kind::Name: {
      const AlgebraElement& x = env.bindings.at(e.name);
      std::vector<oracle::Mat> blocks;
      for (int k = 0; k < x.block_count(); ++k) blocks.push_back(x.block(k));
      return {false, 0.0, blocks};
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      OracleValue l = oracle_eval(*e.lhs, env);
      OracleValue r = oracle_eval(*e.rhs, env);
      if (l.is_scalar && r.is_scalar)
        return {true,
                e.kind == Expr::Kind::Add ? l.scalar + r.scalar
                                          : l.scalar - r.scalar,
                {}};
      auto lb = to_blocks(l), rb = to_blocks(r);
      std::vector<oracle::Mat> blocks;
      for (size_t k = 0; k < lb.size(); ++k) {
        oracle::Mat sum =
            e.kind == Expr::Kind::Add ? (lb[k] + rb[k]).eval() : (lb[k] - rb[k]).eval();
        blocks.push_back(std::move(sum));
      }
      return {false, 0.0, blocks};
    }
    case Expr::Kind::Mul: {
      OracleValue l = oracle_eval(*e.lhs, env);
      OracleValue r = oracle_eval(*e.rhs, env);
      if (l.is_scalar && r.is_scalar) return {true, l.scalar * r.scalar, {}};
      if (l.is_scalar || r.is_scalar) {
        Complex c = l.is_scalar ? l.scalar : r.scalar;
        auto blocks = to_blocks(l.is_scalar ? r : l);
        for (auto& b : blocks) b *= c;
        return {false, 0.0, blocks};
      }
      std::vector<oracle::Mat> blocks;
      for (size_t k = 0; k < l.blocks.size(); ++k)
        blocks.push_back(oracle::naive_mul(l.blocks[k], r.blocks[k]));
      return {false, 0.0, blocks};
    }
    case Expr::Kind::Scale: {
      OracleValue inner = oracle_eval(*e.lhs, env);
      if (inner.is_scalar) return {true, e.scalar * inner.scalar, {}};
      for (auto& b : inner.blocks) b *= e.scalar;
      return inner;
    }
    case Expr::Kind::Adjoint: {
      OracleValue inner = oracle_eval(*e.lhs, env);
      if (inner.is_scalar) return {true, std::conj(inner.scalar), {}};
      for (auto& b : inner.blocks) b = oracle::naive_adjoint(b);
      return inner;
    }
  }
  return {true, 0.0, {}};
}

}  // namespace

TEST_CASE("round-trip on generated trees") {
  Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    ExprPtr tree = random_tree(rng, 4, false);
    ExprPtr back = parse(to_string(*tree));
    CHECK(equal(*tree, *back));
  }
}

TEST_CASE("adjoint distributes through evaluation") {
  Environment env = small_env();
  Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    ExprPtr tree = random_tree(rng, 4, false);
    AlgebraElement direct = evaluate_expr(*Expr::make_adjoint(tree), env);
    AlgebraElement outside = adjoint(evaluate_expr(*tree, env));
    for (int k = 0; k < direct.block_count(); ++k)
      CHECK((direct.block(k) - outside.block(k)).norm() <= 1e-12 *
                std::max(1.0, outside.block(k).norm()));
  }
}

TEST_CASE("evaluation fixtures") {
  Environment env;
  env.shape = kM2;
  AlgebraElement n = AlgebraElement::zero(kM2);
  n.block(0)(0, 1) = 1.0;
  env.bindings.emplace("x", n);

  AlgebraElement id = evaluate_expr(*parse("I"), env);
  CHECK(id.block(0).isIdentity(0.0));

  // x'*x with x the upper shift: diag(0, 1).
  AlgebraElement xx = evaluate_expr(*parse("x'*x"), env);
  CHECK(xx.block(0)(0, 0) == Complex(0.0));
  CHECK(xx.block(0)(1, 1) == Complex(1.0));
  CHECK(std::abs(xx.block(0)(0, 1)) == 0.0);

  // Scalar coercion: x - 2 means x - 2I, and a scalar expression alone
  // scales the identity.
  AlgebraElement shifted = evaluate_expr(*parse("x - 2"), env);
  CHECK(shifted.block(0)(0, 0) == Complex(-2.0));
  CHECK(shifted.block(0)(0, 1) == Complex(1.0));

  AlgebraElement five = evaluate_expr(*parse("2+3"), env);
  CHECK(five.block(0)(0, 0) == Complex(5.0));
  CHECK(five.block(0)(1, 1) == Complex(5.0));

  CHECK_THROWS_AS(evaluate_expr(*parse("z + x"), env), UnboundName);
}

TEST_CASE("random expressions agree with the loop-based evaluator") {
  Environment env;
  env.shape = AlgebraShape({2, 2});
  Rng setup(64);
  env.bindings.emplace("x", random_element(env.shape, setup));
  env.bindings.emplace("y", random_element(env.shape, setup));

  Rng rng(65);
  for (int t = 0; t < 100; ++t) {
    ExprPtr tree = random_tree(rng, 6, false);
    AlgebraElement got = evaluate_expr(*tree, env);
    OracleValue expected = oracle_eval(*tree, env);
    REQUIRE(!expected.is_scalar);
    for (int k = 0; k < got.block_count(); ++k) {
      double scale = std::max(1.0, expected.blocks[static_cast<size_t>(k)].norm());
      CHECK((got.block(k) - expected.blocks[static_cast<size_t>(k)]).norm() <=
            1e-12 * scale);
    }
  }
}
