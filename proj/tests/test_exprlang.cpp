#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "levichk/expr.hpp"

using namespace levichk;

namespace {

Complex at(const std::string& src, double t, std::vector<double> x = {}, const ParamTable* p = nullptr) {
  return eval(parse(src), Bindings{t, std::move(x), p});
}

// Random parser-shaped trees whose values stay finite for t in [0.2, 1.5].
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Expr operator()(int depth) {
    if (depth <= 0 || pick(4) == 0) return leaf();
    Expr a = (*this)(depth - 1);
    switch (pick(9)) {
      case 0: return Expr::raw_binary(NodeKind::Add, a, (*this)(depth - 1));
      case 1: return Expr::raw_binary(NodeKind::Sub, a, (*this)(depth - 1));
      case 2: return Expr::raw_binary(NodeKind::Mul, a, (*this)(depth - 1));
      case 3: {
        Expr den = Expr::raw_binary(NodeKind::Add, Expr::constant(2.0), Expr::raw_call(Func::Cos, (*this)(depth - 1)));
        return Expr::raw_binary(NodeKind::Div, a, den);
      }
      case 4: return Expr::raw_unary(NodeKind::Neg, Expr::raw_call(Func::Sin, a));
      case 5: return Expr::raw_call(Func::Cos, a);
      case 6: return Expr::raw_call(Func::Exp, Expr::raw_call(Func::Sin, a));
      case 7: {
        Expr inner = Expr::raw_binary(NodeKind::Add, Expr::constant(1.5),
                                      Expr::raw_binary(NodeKind::Pow, Expr::raw_call(Func::Sin, a), Expr::constant(2.0)));
        return pick(2) ? Expr::raw_call(Func::Sqrt, inner) : Expr::raw_call(Func::Log, inner);
      }
      default: return Expr::raw_binary(NodeKind::Pow, Expr::raw_call(Func::Cos, a), Expr::constant(3.0));
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  Expr leaf() {
    switch (pick(5)) {
      case 0: return Expr::time();
      case 1: return Expr::space(1);
      case 2: return Expr::param("a0");
      case 3: return Expr::constant(std::round(std::uniform_real_distribution<double>(0.5, 2.0)(rng_) * 8) / 8);
      default: return Expr::raw_binary(NodeKind::Mul, Expr::constant(0.75), Expr::time());
    }
  }
  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("grammar cases") {
  Expr e = parse("t^2");
  CHECK(e.kind() == NodeKind::Pow);
  CHECK(e.lhs().kind() == NodeKind::Time);
  CHECK(e.rhs().value() == Complex(2.0));

  Expr f = parse("cos(t)*x1 + i*0.5");
  REQUIRE(f.kind() == NodeKind::Add);
  CHECK(f.lhs().kind() == NodeKind::Mul);
  CHECK(f.lhs().lhs().kind() == NodeKind::Call);
  CHECK(f.lhs().lhs().func() == Func::Cos);
  CHECK(f.lhs().rhs().space_index() == 1);
  CHECK(f.rhs().kind() == NodeKind::Mul);
  CHECK(f.rhs().lhs().kind() == NodeKind::Imag);
}

TEST_CASE("precedence and associativity") {
  CHECK(at("2^3^2", 0).real() == doctest::Approx(512));
  CHECK(at("-2^2", 0).real() == doctest::Approx(-4));
  CHECK(at("2^-1", 0).real() == doctest::Approx(0.5));
  CHECK(at("1 - 2 - 3", 0).real() == doctest::Approx(-4));
  CHECK(at("8/2/2", 0).real() == doctest::Approx(2));
  CHECK(at("1 + 2*3", 0).real() == doctest::Approx(7));
  CHECK(at(" ( 1+2 ) * 3 ", 0).real() == doctest::Approx(9));
  CHECK(at("1.5e1", 0).real() == doctest::Approx(15));
}

TEST_CASE("syntax errors carry offset and expected tokens") {
  try {
    parse("sqrt(t");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 6);
    REQUIRE(err.expected().size() == 1);
    CHECK(err.expected().front() == ")");
  }
  CHECK_THROWS_AS(parse("2t"), ParseError);
  CHECK_THROWS_AS(parse("foo(t)"), ParseError);
  CHECK_THROWS_AS(parse("1 +"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("evaluation") {
  CHECK(at("t^2", 2).real() == doctest::Approx(4));
  CHECK(at("cos(t)", 0).real() == doctest::Approx(1));
  CHECK(at("sqrt(t)", 0.25).real() == doctest::Approx(0.5));
  CHECK(at("i*i", 0).real() == doctest::Approx(-1));
  CHECK(at("x2 - x1", 0, {1.0, 3.0}).real() == doctest::Approx(2));
  ParamTable p{{"alpha", 0.5}};
  CHECK(at("t^alpha", 4, {}, &p).real() == doctest::Approx(2));
  CHECK(std::abs(at("sqrt(-4)", 0) - Complex(0, 2)) < 1e-15);
  CHECK_THROWS_AS(at("1/(t - 1)", 1), EvalError);
  CHECK_THROWS_AS(at("beta", 0), EvalError);
  CHECK_THROWS_AS(at("x3", 0, {1.0}), EvalError);
}

TEST_CASE("derivatives") {
  CHECK(print(d_dt(parse("cos(t)"))) == "-sin(t)");
  ParamTable p{{"a0", 0.0}};
  CHECK(eval(d_dt(parse("sqrt(a0 + t)")), Bindings{1.0, {}, &p}).real() == doctest::Approx(0.5));
  CHECK(eval(d_dt(parse("t")), Bindings{0.7, {}, nullptr}).real() == doctest::Approx(1.0));
  CHECK(d_dt(parse("x1*3 + cos(x1)")).is_zero_literal());
  CHECK(d_dt(parse("abs(x1)")).is_zero_literal());
  CHECK_THROWS_AS(d_dt(parse("abs(t)")), DiffError);
  CHECK_THROWS_AS(d_dt(parse("2^t")), DiffError);
  CHECK_THROWS_AS(eval(d_dt(parse("sqrt(t)")), Bindings{0.0, {}, nullptr}), EvalError);
}

TEST_CASE("derivative agrees with centered differences on random expressions") {
  Generator gen(7);
  ParamTable p{{"a0", 0.3}};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.2, 1.5), ux(-3.0, 3.0);
  const double h = 1e-5;
  for (int n = 0; n < 200; ++n) {
    Expr e = gen(6);
    Expr de = d_dt(e);
    double t = ut(rng);
    std::vector<double> x{ux(rng)};
    Complex exact = eval(de, Bindings{t, x, &p});
    Complex fd = (eval(e, Bindings{t + h, x, &p}) - eval(e, Bindings{t - h, x, &p})) / (2 * h);
    INFO(print(e));
    CHECK(std::abs(exact - fd) <= 1e-5 * (1 + std::abs(exact)));
  }
}

TEST_CASE("print and parse round trip") {
  Generator gen(23);
  for (int n = 0; n < 200; ++n) {
    Expr e = gen(6);
    std::string text = print(e);
    INFO(text);
    CHECK(parse(text) == e);
  }
  for (const char* src : {"-(-x1)", "2^-3", "a*-b", "(1 + 2)^t", "-t^2", "t - (x1 - 1)", "1/(2/t)", "1.25e-7*t"}) {
    Expr e = parse(src);
    CHECK(parse(print(e)) == e);
  }
}

TEST_CASE("evaluation is deterministic") {
  Generator gen(5);
  ParamTable p{{"a0", 0.9}};
  for (int n = 0; n < 50; ++n) {
    Expr e = gen(5);
    Bindings b{0.77, {0.31}, &p};
    Complex a = eval(e, b), c = eval(e, b);
    CHECK(std::memcmp(&a, &c, sizeof a) == 0);
    CachedEvaluator ev(b);
    Complex d = ev(e);
    CHECK(std::memcmp(&a, &d, sizeof a) == 0);
  }
}

TEST_CASE("queries and substitution") {
  Expr e = parse("a*cos(t) + x2*b");
  CHECK(e.depends_on_time());
  CHECK(e.depends_on_space());
  CHECK(e.max_space_index() == 2);
  std::set<std::string> names;
  e.collect_params(names);
  CHECK(names == std::set<std::string>{"a", "b"});
  Expr s = substitute_params(e, {{"a", 2.0}, {"b", 0.0}});
  CHECK(eval(s, Bindings{0.0, {0.0, 5.0}, nullptr}).real() == doctest::Approx(2.0));
}
