#include "levichk/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace levichk {

struct ExprNode {
  NodeKind kind = NodeKind::Const;
  Complex value{};
  int index = 0;
  std::string name;
  Func func = Func::Sin;
  Expr a{nullptr};
  Expr b{nullptr};
  bool dep_t = false;
  bool dep_x = false;
  bool dep_param = false;
  int max_x = 0;
  std::size_t size = 1;

  static Expr make(ExprNode n) {
    if (n.a.node_) {
      n.dep_t |= n.a.node_->dep_t;
      n.dep_x |= n.a.node_->dep_x;
      n.dep_param |= n.a.node_->dep_param;
      n.max_x = std::max(n.max_x, n.a.node_->max_x);
      n.size += n.a.node_->size;
    }
    if (n.b.node_) {
      n.dep_t |= n.b.node_->dep_t;
      n.dep_x |= n.b.node_->dep_x;
      n.dep_param |= n.b.node_->dep_param;
      n.max_x = std::max(n.max_x, n.b.node_->max_x);
      n.size += n.b.node_->size;
    }
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }
};

namespace {

// Treats `i` as the numeric constant it denotes.
bool numeric_value(const Expr& e, Complex& out) {
  if (e.kind() == NodeKind::Const) {
    out = e.value();
    return true;
  }
  if (e.kind() == NodeKind::Imag) {
    out = Complex(0.0, 1.0);
    return true;
  }
  return false;
}

Complex complex_pow(Complex base, Complex exponent) {
  if (exponent.imag() == 0.0) {
    double r = exponent.real();
    if (std::nearbyint(r) == r && std::abs(r) <= 64.0) {
      long n = static_cast<long>(r);
      bool invert = n < 0;
      unsigned long k = static_cast<unsigned long>(invert ? -n : n);
      Complex acc(1.0, 0.0);
      Complex sq = base;
      while (k) {
        if (k & 1UL) acc *= sq;
        sq *= sq;
        k >>= 1UL;
      }
      if (invert) {
        if (acc == Complex(0.0, 0.0)) throw EvalError("division by zero in negative power");
        return Complex(1.0, 0.0) / acc;
      }
      return acc;
    }
    if (base.imag() == 0.0 && base.real() >= 0.0) {
      if (base.real() == 0.0 && r < 0.0) throw EvalError("division by zero in negative power");
      return Complex(std::pow(base.real(), r), 0.0);
    }
  }
  if (base == Complex(0.0, 0.0)) {
    if (exponent.real() > 0.0) return Complex(0.0, 0.0);
    throw EvalError("zero base with non-positive exponent");
  }
  return std::pow(base, exponent);
}

Complex apply_func(Func f, Complex v) {
  switch (f) {
    case Func::Sin:
      return v.imag() == 0.0 ? Complex(std::sin(v.real()), 0.0) : std::sin(v);
    case Func::Cos:
      return v.imag() == 0.0 ? Complex(std::cos(v.real()), 0.0) : std::cos(v);
    case Func::Exp:
      return v.imag() == 0.0 ? Complex(std::exp(v.real()), 0.0) : std::exp(v);
    case Func::Sqrt:
      // Adding +0 clears a negative-zero imaginary part so negative reals map to +i.
      return std::sqrt(v + Complex(0.0, 0.0));
    case Func::Abs:
      return Complex(std::abs(v), 0.0);
    case Func::Log:
      if (v == Complex(0.0, 0.0)) throw EvalError("log of zero");
      return std::log(v + Complex(0.0, 0.0));
  }
  return {};
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
    case Func::Log: return "log";
  }
  return "?";
}

Expr::Expr() : Expr(constant(Complex(0.0, 0.0))) {}

Expr Expr::constant(Complex value) {
  ExprNode n;
  n.kind = NodeKind::Const;
  n.value = value;
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::imag_unit() {
  ExprNode n;
  n.kind = NodeKind::Imag;
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::time() {
  ExprNode n;
  n.kind = NodeKind::Time;
  n.dep_t = true;
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::space(int index) {
  ExprNode n;
  n.kind = NodeKind::Space;
  n.index = index;
  n.dep_x = true;
  n.max_x = index;
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::param(std::string name) {
  ExprNode n;
  n.kind = NodeKind::Param;
  n.name = std::move(name);
  n.dep_param = true;
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr Expr::call(Func f, Expr arg) {
  Complex v;
  if (f != Func::Log && numeric_value(arg, v)) {
    try {
      return constant(apply_func(f, v));
    } catch (const EvalError&) {
    }
  }
  return raw_call(f, std::move(arg));
}

Expr Expr::raw_call(Func f, Expr arg) {
  ExprNode n;
  n.kind = NodeKind::Call;
  n.func = f;
  n.a = std::move(arg);
  return ExprNode::make(std::move(n));
}

Expr Expr::raw_unary(NodeKind kind, Expr operand) {
  ExprNode n;
  n.kind = kind;
  n.a = std::move(operand);
  return ExprNode::make(std::move(n));
}

Expr Expr::raw_binary(NodeKind kind, Expr lhs, Expr rhs) {
  ExprNode n;
  n.kind = kind;
  n.a = std::move(lhs);
  n.b = std::move(rhs);
  return ExprNode::make(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }
Complex Expr::value() const { return node_->value; }
int Expr::space_index() const { return node_->index; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
bool Expr::depends_on_time() const { return node_->dep_t; }
bool Expr::depends_on_space() const { return node_->dep_x; }
bool Expr::is_numeric() const { return !node_->dep_t && !node_->dep_x && !node_->dep_param; }
int Expr::max_space_index() const { return node_->max_x; }
std::size_t Expr::node_count() const { return node_->size; }

bool Expr::is_zero_literal() const {
  return node_->kind == NodeKind::Const && node_->value == Complex(0.0, 0.0);
}

bool Expr::is_one_literal() const {
  return node_->kind == NodeKind::Const && node_->value == Complex(1.0, 0.0);
}

void Expr::collect_params(std::set<std::string>& out) const {
  if (!node_->dep_param) return;
  if (node_->kind == NodeKind::Param) {
    out.insert(node_->name);
    return;
  }
  if (node_->a.node_) node_->a.collect_params(out);
  if (node_->b.node_) node_->b.collect_params(out);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const ExprNode& x = *a.node_;
  const ExprNode& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case NodeKind::Const: return x.value == y.value;
    case NodeKind::Imag:
    case NodeKind::Time: return true;
    case NodeKind::Space: return x.index == y.index;
    case NodeKind::Param: return x.name == y.name;
    case NodeKind::Neg: return x.a == y.a;
    case NodeKind::Call: return x.func == y.func && x.a == y.a;
    default: return x.a == y.a && x.b == y.b;
  }
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero_literal()) return b;
  if (b.is_zero_literal()) return a;
  Complex u, v;
  if (numeric_value(a, u) && numeric_value(b, v)) return Expr::constant(u + v);
  if (b.kind() == NodeKind::Neg) {
    if (a == b.lhs()) return Expr();
    return Expr::raw_binary(NodeKind::Sub, a, b.lhs());
  }
  if (a.kind() == NodeKind::Neg && a.lhs() == b) return Expr();
  return Expr::raw_binary(NodeKind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero_literal()) return a;
  if (a.is_zero_literal()) return -b;
  Complex u, v;
  if (numeric_value(a, u) && numeric_value(b, v)) return Expr::constant(u - v);
  if (a == b) return Expr();
  if (b.kind() == NodeKind::Neg) return Expr::raw_binary(NodeKind::Add, a, b.lhs());
  return Expr::raw_binary(NodeKind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero_literal() || b.is_zero_literal()) return Expr();
  if (a.is_one_literal()) return b;
  if (b.is_one_literal()) return a;
  Complex u, v;
  bool na = numeric_value(a, u);
  bool nb = numeric_value(b, v);
  if (na && nb) return Expr::constant(u * v);
  if (na && u == Complex(-1.0, 0.0)) return -b;
  if (nb && v == Complex(-1.0, 0.0)) return -a;
  if (a.kind() == NodeKind::Neg && b.kind() == NodeKind::Neg) return a.lhs() * b.lhs();
  if (a.kind() == NodeKind::Neg) return -(a.lhs() * b);
  if (b.kind() == NodeKind::Neg) return -(a * b.lhs());
  return Expr::raw_binary(NodeKind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one_literal()) return a;
  Complex u, v;
  bool nb = numeric_value(b, v);
  if (a.is_zero_literal() && !(nb && v == Complex(0.0, 0.0))) return Expr();
  if (numeric_value(a, u) && nb && v != Complex(0.0, 0.0)) return Expr::constant(u / v);
  return Expr::raw_binary(NodeKind::Div, a, b);
}

Expr operator-(const Expr& a) {
  Complex u;
  if (numeric_value(a, u)) return Expr::constant(-u);
  if (a.kind() == NodeKind::Neg) return a.lhs();
  return Expr::raw_unary(NodeKind::Neg, a);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero_literal()) return Expr::constant(1.0);
  if (exponent.is_one_literal()) return base;
  Complex u, v;
  if (numeric_value(base, u) && numeric_value(exponent, v)) {
    try {
      return Expr::constant(complex_pow(u, v));
    } catch (const EvalError&) {
    }
  }
  return Expr::raw_binary(NodeKind::Pow, base, exponent);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, pos_, ""});
        return out;
      }
      char c = src_[pos_];
      std::size_t start = pos_;
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        out.push_back(number());
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          ++pos_;
        out.push_back({Tok::Ident, start, std::string(src_.substr(start, pos_ - start))});
        continue;
      }
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
          throw ParseError(start, {}, "unexpected character '" + std::string(1, c) + "' at offset " +
                                          std::to_string(start));
      }
      ++pos_;
      out.push_back({k, start, std::string(1, c)});
    }
  }

 private:
  Token number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t whole = digits();
    std::size_t frac = 0;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      frac = digits();
    }
    if (whole + frac == 0) throw ParseError(start, {"number"}, "malformed number at offset " + std::to_string(start));
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    std::string text(src_.substr(start, pos_ - start));
    Token t{Tok::Number, start, text};
    auto res = std::from_chars(text.data(), text.data() + text.size(), t.number);
    if (res.ec != std::errc()) throw ParseError(start, {"number"}, "number out of range at offset " + std::to_string(start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

bool lookup_func(const std::string& name, Func& out) {
  static const std::pair<const char*, Func> table[] = {
      {"sin", Func::Sin}, {"cos", Func::Cos},   {"exp", Func::Exp},
      {"sqrt", Func::Sqrt}, {"abs", Func::Abs}, {"log", Func::Log},
  };
  for (const auto& [n, f] : table) {
    if (name == n) {
      out = f;
      return true;
    }
  }
  return false;
}

bool space_variable(const std::string& s, int& index) {
  if (s.size() < 2 || s[0] != 'x') return false;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  auto res = std::from_chars(s.data() + 1, s.data() + s.size(), index);
  return res.ec == std::errc();
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expr run() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::ostringstream msg;
    msg << "syntax error at offset " << t.offset << ": found " << (t.kind == Tok::End ? "end of input" : "'" + t.text + "'")
        << ", expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) msg << (k ? " or " : "") << '"' << expected[k] << '"';
    throw ParseError(t.offset, std::move(expected), msg.str());
  }

  Expr expr() {
    Expr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      NodeKind k = take().kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      lhs = Expr::raw_binary(k, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      NodeKind k = take().kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      lhs = Expr::raw_binary(k, lhs, factor());
    }
    return lhs;
  }

  Expr factor() {
    if (peek().kind == Tok::Minus) {
      take();
      return Expr::raw_unary(NodeKind::Neg, power());
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (peek().kind == Tok::Caret) {
      take();
      return Expr::raw_binary(NodeKind::Pow, base, factor());
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        return Expr::constant(take().number);
      case Tok::LParen: {
        take();
        Expr inner = expr();
        if (peek().kind != Tok::RParen) fail({")"});
        take();
        return inner;
      }
      case Tok::Ident: {
        Token id = take();
        if (peek().kind == Tok::LParen) {
          Func f;
          if (!lookup_func(id.text, f))
            throw ParseError(id.offset, {"sin", "cos", "exp", "sqrt", "abs", "log"},
                             "unknown function '" + id.text + "' at offset " + std::to_string(id.offset));
          take();
          Expr arg = expr();
          if (peek().kind != Tok::RParen) fail({")"});
          take();
          return Expr::raw_call(f, arg);
        }
        if (id.text == "i") return Expr::imag_unit();
        if (id.text == "t") return Expr::time();
        int index = 0;
        if (space_variable(id.text, index)) return Expr::space(index);
        return Expr::param(id.text);
      }
      default:
        fail({"number", "i", "t", "x<k>", "identifier", "("});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source) {
  Lexer lex(source);
  Parser p(lex.run());
  return p.run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int level(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Const: {
      Complex v = e.value();
      if (v.imag() != 0.0) return v.real() == 0.0 ? 2 : 1;
      return (std::signbit(v.real()) || !std::isfinite(v.real())) ? 3 : 5;
    }
    default: return 5;
  }
}

void put_real(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void emit(const Expr& e, int min_level, std::string& out);

void emit_const(Complex v, std::string& out) {
  if (v.imag() == 0.0) {
    if (std::signbit(v.real())) {
      out += '-';
      put_real(out, -v.real());
    } else {
      put_real(out, v.real());
    }
    return;
  }
  if (v.real() != 0.0) {
    put_real(out, v.real());
    out += v.imag() < 0 ? '-' : '+';
  } else if (v.imag() < 0) {
    out += '-';
  }
  double im = std::abs(v.imag());
  if (im != 1.0) {
    put_real(out, im);
    out += '*';
  }
  out += 'i';
}

void emit(const Expr& e, int min_level, std::string& out) {
  bool paren = level(e) < min_level;
  if (paren) out += '(';
  switch (e.kind()) {
    case NodeKind::Const: emit_const(e.value(), out); break;
    case NodeKind::Imag: out += 'i'; break;
    case NodeKind::Time: out += 't'; break;
    case NodeKind::Space: out += 'x' + std::to_string(e.space_index()); break;
    case NodeKind::Param: out += e.name(); break;
    case NodeKind::Neg:
      out += '-';
      emit(e.lhs(), 4, out);
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
      emit(e.lhs(), 1, out);
      out += e.kind() == NodeKind::Add ? " + " : " - ";
      emit(e.rhs(), 2, out);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      emit(e.lhs(), 2, out);
      out += e.kind() == NodeKind::Mul ? '*' : '/';
      emit(e.rhs(), 3, out);
      break;
    case NodeKind::Pow:
      emit(e.lhs(), 5, out);
      out += '^';
      emit(e.rhs(), 3, out);
      break;
    case NodeKind::Call:
      out += func_name(e.func());
      out += '(';
      emit(e.lhs(), 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  emit(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <class Recurse>
Complex eval_node(const Expr& e, const Bindings& b, Recurse&& rec) {
  switch (e.kind()) {
    case NodeKind::Const: return e.value();
    case NodeKind::Imag: return Complex(0.0, 1.0);
    case NodeKind::Time: return Complex(b.t, 0.0);
    case NodeKind::Space: {
      int k = e.space_index();
      if (k < 1 || static_cast<std::size_t>(k) > b.x.size())
        throw EvalError("unbound variable x" + std::to_string(k));
      return Complex(b.x[static_cast<std::size_t>(k - 1)], 0.0);
    }
    case NodeKind::Param: {
      if (b.params) {
        auto it = b.params->find(e.name());
        if (it != b.params->end()) return Complex(it->second, 0.0);
      }
      throw EvalError("unbound parameter '" + e.name() + "'");
    }
    case NodeKind::Neg: return -rec(e.lhs());
    case NodeKind::Add: return rec(e.lhs()) + rec(e.rhs());
    case NodeKind::Sub: return rec(e.lhs()) - rec(e.rhs());
    case NodeKind::Mul: return rec(e.lhs()) * rec(e.rhs());
    case NodeKind::Div: {
      Complex num = rec(e.lhs());
      Complex den = rec(e.rhs());
      if (den == Complex(0.0, 0.0)) throw EvalError("division by zero");
      return num / den;
    }
    case NodeKind::Pow: return complex_pow(rec(e.lhs()), rec(e.rhs()));
    case NodeKind::Call: return apply_func(e.func(), rec(e.lhs()));
  }
  return {};
}

}  // namespace

Complex eval(const Expr& e, const Bindings& b) {
  return eval_node(e, b, [&](const Expr& c) { return eval(c, b); });
}

Complex CachedEvaluator::operator()(const Expr& e) {
  if (e.node_count() <= 3) return eval(e, bindings_);
  auto it = cache_.find(e.id());
  if (it != cache_.end()) return it->second;
  Complex v = eval_node(e, bindings_, [&](const Expr& c) { return (*this)(c); });
  cache_.emplace(e.id(), v);
  return v;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  Expr operator()(const Expr& e) {
    if (!e.depends_on_time()) return Expr();
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    Expr d = rule(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr rule(const Expr& e) {
    const Expr& u = e.lhs();
    const Expr& v = e.rhs();
    switch (e.kind()) {
      case NodeKind::Time: return Expr::constant(1.0);
      case NodeKind::Neg: return -(*this)(u);
      case NodeKind::Add: return (*this)(u) + (*this)(v);
      case NodeKind::Sub: return (*this)(u) - (*this)(v);
      case NodeKind::Mul: return (*this)(u) * v + u * (*this)(v);
      case NodeKind::Div: {
        Expr du = (*this)(u);
        if (!v.depends_on_time()) return du / v;
        return (du * v - u * (*this)(v)) / pow(v, Expr::constant(2.0));
      }
      case NodeKind::Pow: {
        if (v.depends_on_time())
          throw DiffError("d/dt of a power with a t-dependent exponent is not supported: " + print(e));
        Expr lowered = v.kind() == NodeKind::Const ? Expr::constant(v.value() - 1.0) : v - Expr::constant(1.0);
        return v * pow(u, lowered) * (*this)(u);
      }
      case NodeKind::Call: {
        Expr du = (*this)(u);
        switch (e.func()) {
          case Func::Sin: return Expr::call(Func::Cos, u) * du;
          case Func::Cos: return -(Expr::call(Func::Sin, u) * du);
          case Func::Exp: return e * du;
          case Func::Sqrt: return du / (Expr::constant(2.0) * e);
          case Func::Log: return du / u;
          case Func::Abs:
            throw DiffError("abs is not differentiable: " + print(e));
        }
        break;
      }
      default: break;
    }
    return Expr();
  }

  std::unordered_map<const ExprNode*, Expr> memo_;
};

}  // namespace

Expr d_dt(const Expr& e) {
  Differentiator d;
  return d(e);
}

Expr substitute_params(const Expr& e, const ParamTable& params) {
  std::set<std::string> used;
  e.collect_params(used);
  if (used.empty()) return e;
  switch (e.kind()) {
    case NodeKind::Param: {
      auto it = params.find(e.name());
      if (it == params.end()) return e;
      return Expr::constant(it->second);
    }
    case NodeKind::Neg: return -substitute_params(e.lhs(), params);
    case NodeKind::Add: return substitute_params(e.lhs(), params) + substitute_params(e.rhs(), params);
    case NodeKind::Sub: return substitute_params(e.lhs(), params) - substitute_params(e.rhs(), params);
    case NodeKind::Mul: return substitute_params(e.lhs(), params) * substitute_params(e.rhs(), params);
    case NodeKind::Div: return substitute_params(e.lhs(), params) / substitute_params(e.rhs(), params);
    case NodeKind::Pow: return pow(substitute_params(e.lhs(), params), substitute_params(e.rhs(), params));
    case NodeKind::Call: return Expr::call(e.func(), substitute_params(e.lhs(), params));
    default: return e;
  }
}

}  // namespace levichk
