#include "nkcp3/ratfun.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include "nkcp3/error.hpp"

namespace nkcp3 {

struct RatExpr::Node {
  Kind kind = Kind::kConst;
  Complex value{};
  int exponent = 0;
  std::optional<RatExpr> lhs_expr;
  std::optional<RatExpr> rhs_expr;
  int depth = 1;
};

namespace {

bool is_zero(const RatExpr& e) { return e.is_constant() && e.value() == Complex{}; }
bool is_one(const RatExpr& e) { return e.is_constant() && e.value() == Complex{1.0}; }

Complex const_pow(Complex base, int n) {
  Complex r{1.0};
  for (int k = 0; k < std::abs(n); ++k) r *= base;
  return n < 0 ? Complex{1.0} / r : r;
}

}  // namespace

RatExpr::RatExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RatExpr::RatExpr() : RatExpr(constant(0.0)) {}

RatExpr RatExpr::constant(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  // Normalize negative zeros so printing is canonical.
  n->value = Complex(value.real() + 0.0, value.imag() + 0.0);
  return RatExpr(std::move(n));
}

RatExpr RatExpr::z() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kZ;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::zb() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kZb;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::binary(Kind kind, const RatExpr& l, const RatExpr& r) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs_expr = l;
  n->rhs_expr = r;
  n->depth = 1 + std::max(l.depth(), r.depth());
  if (n->depth > kMaxDepth) throw Error(ErrorKind::kInvalidArgument, "expression deeper than 128 levels");
  return RatExpr(std::move(n));
}

RatExpr RatExpr::powi(const RatExpr& base, int n) {
  if (std::abs(n) > kMaxExponent) throw Error(ErrorKind::kInvalidArgument, "exponent magnitude exceeds 64");
  if (n == 0) return constant(1.0);
  if (n == 1) return base;
  if (base.is_constant() && !(n < 0 && base.value() == Complex{})) return constant(const_pow(base.value(), n));
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPowi;
  node->exponent = n;
  node->lhs_expr = base;
  node->depth = 1 + base.depth();
  if (node->depth > kMaxDepth) throw Error(ErrorKind::kInvalidArgument, "expression deeper than 128 levels");
  return RatExpr(std::move(node));
}

RatExpr operator+(const RatExpr& l, const RatExpr& r) {
  if (l.is_constant() && r.is_constant()) return RatExpr::constant(l.value() + r.value());
  if (is_zero(l)) return r;
  if (is_zero(r)) return l;
  return RatExpr::binary(RatExpr::Kind::kAdd, l, r);
}

RatExpr operator-(const RatExpr& l, const RatExpr& r) {
  if (l.is_constant() && r.is_constant()) return RatExpr::constant(l.value() - r.value());
  if (is_zero(r)) return l;
  return RatExpr::binary(RatExpr::Kind::kSub, l, r);
}

RatExpr operator*(const RatExpr& l, const RatExpr& r) {
  if (l.is_constant() && r.is_constant()) return RatExpr::constant(l.value() * r.value());
  if (is_zero(l) || is_zero(r)) return RatExpr::constant(0.0);
  if (is_one(l)) return r;
  if (is_one(r)) return l;
  return RatExpr::binary(RatExpr::Kind::kMul, l, r);
}

RatExpr operator/(const RatExpr& l, const RatExpr& r) {
  if (l.is_constant() && r.is_constant() && r.value() != Complex{}) {
    return RatExpr::constant(l.value() / r.value());
  }
  if (is_one(r)) return l;
  return RatExpr::binary(RatExpr::Kind::kDiv, l, r);
}

bool operator==(const RatExpr& l, const RatExpr& r) {
  if (l.node_ == r.node_) return true;
  if (l.kind() != r.kind()) return false;
  switch (l.kind()) {
    case RatExpr::Kind::kConst: return l.value() == r.value();
    case RatExpr::Kind::kZ:
    case RatExpr::Kind::kZb: return true;
    case RatExpr::Kind::kPowi: return l.exponent() == r.exponent() && l.lhs() == r.lhs();
    default: return l.lhs() == r.lhs() && l.rhs() == r.rhs();
  }
}

RatExpr::Kind RatExpr::kind() const { return node_->kind; }
Complex RatExpr::value() const { return node_->value; }
int RatExpr::exponent() const { return node_->exponent; }
const RatExpr& RatExpr::lhs() const { return *node_->lhs_expr; }
const RatExpr& RatExpr::rhs() const { return *node_->rhs_expr; }
int RatExpr::depth() const { return node_->depth; }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  // Wraps builder errors (depth limit) into a positioned parse error.
  template <typename F>
  RatExpr build(F&& f) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  RatExpr expr() {
    if (++nesting_ > RatExpr::kMaxDepth) fail("shallower nesting (depth limit 128)");
    RatExpr e = term();
    for (;;) {
      if (accept('+')) {
        RatExpr r = term();
        e = build([&] { return e + r; });
      } else if (accept('-')) {
        RatExpr r = term();
        e = build([&] { return e - r; });
      } else {
        break;
      }
    }
    --nesting_;
    return e;
  }

  RatExpr term() {
    RatExpr e = factor();
    for (;;) {
      if (accept('*')) {
        RatExpr r = factor();
        e = build([&] { return e * r; });
      } else if (accept('/')) {
        RatExpr r = factor();
        e = build([&] { return e / r; });
      } else {
        break;
      }
    }
    return e;
  }

  RatExpr factor() {
    RatExpr base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("integer exponent");
    }
    long long n = 0;
    for (std::size_t k = digits; k < pos_; ++k) {
      n = n * 10 + (text_[k] - '0');
      if (n > RatExpr::kMaxExponent) {
        pos_ = start;
        fail("exponent with magnitude <= 64 (exponent overflow)");
      }
    }
    const int exponent = static_cast<int>(negative ? -n : n);
    return build([&] { return RatExpr::powi(base, exponent); });
  }

  RatExpr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, 'i', 'z', 'zb', 'conj', '(' or '-'");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      RatExpr f = factor();
      if (f.is_constant()) return RatExpr::constant(-f.value());
      return build([&] { return RatExpr::constant(0.0) - f; });
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "z") return RatExpr::z();
      if (word == "zb") return RatExpr::zb();
      if (word == "i") return RatExpr::constant({0.0, 1.0});
      if (word == "conj") {
        expect('(');
        RatExpr e = expr();
        expect(')');
        return conj(e);
      }
      pos_ = start;
      fail("'i', 'z', 'zb' or 'conj'");
    }
    fail("number, 'i', 'z', 'zb', 'conj', '(' or '-'");
  }

  RatExpr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail("digits");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;  // not an exponent; leave 'e' for the caller
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{}) {
      pos_ = start;
      fail("a representable number");
    }
    // A trailing 'i' makes the literal imaginary, unless it starts a longer word.
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        !(pos_ + 1 < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return RatExpr::constant({0.0, v});
    }
    return RatExpr::constant(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_const(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) return re < 0 ? "(" + format_real(re) + ")" : format_real(re);
  const std::string imag = format_real(std::abs(im)) + "i";
  if (re == 0.0) return im < 0 ? "(-" + imag + ")" : imag;
  return "(" + format_real(re) + (im < 0 ? "-" : "+") + imag + ")";
}

bool is_atomic(const RatExpr& e) {
  return e.kind() == RatExpr::Kind::kZ || e.kind() == RatExpr::Kind::kZb ||
         (e.kind() == RatExpr::Kind::kConst && e.value().real() >= 0 && e.value().imag() == 0.0);
}

void print(const RatExpr& e, std::string& out) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst: out += format_const(e.value()); return;
    case K::kZ: out += "z"; return;
    case K::kZb: out += "zb"; return;
    case K::kPowi:
      if (is_atomic(e.lhs())) {
        print(e.lhs(), out);
      } else {
        out += '(';
        print(e.lhs(), out);
        out += ')';
      }
      out += '^';
      out += std::to_string(e.exponent());
      return;
    default: break;
  }
  const char op = e.kind() == K::kAdd ? '+' : e.kind() == K::kSub ? '-' : e.kind() == K::kMul ? '*' : '/';
  out += '(';
  print(e.lhs(), out);
  out += op;
  print(e.rhs(), out);
  out += ')';
}

}  // namespace

RatExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const RatExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation and transforms

WJet eval_expr(const RatExpr& e, const WJet& z, const WJet& zb) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst: return WJet::constant(e.value(), z.order());
    case K::kZ: return z;
    case K::kZb: return zb;
    case K::kAdd: return eval_expr(e.lhs(), z, zb) + eval_expr(e.rhs(), z, zb);
    case K::kSub: return eval_expr(e.lhs(), z, zb) - eval_expr(e.rhs(), z, zb);
    case K::kMul: return eval_expr(e.lhs(), z, zb) * eval_expr(e.rhs(), z, zb);
    case K::kDiv: return eval_expr(e.lhs(), z, zb) / eval_expr(e.rhs(), z, zb);
    case K::kPowi: return powi(eval_expr(e.lhs(), z, zb), e.exponent());
  }
  return WJet(z.order());
}

WJet eval_expr(const RatExpr& e, const SeedJets& seeds) { return eval_expr(e, seeds.z, seeds.zb); }

Complex evaluate(const RatExpr& e, Complex z) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst: return e.value();
    case K::kZ: return z;
    case K::kZb: return std::conj(z);
    case K::kAdd: return evaluate(e.lhs(), z) + evaluate(e.rhs(), z);
    case K::kSub: return evaluate(e.lhs(), z) - evaluate(e.rhs(), z);
    case K::kMul: return evaluate(e.lhs(), z) * evaluate(e.rhs(), z);
    case K::kDiv: {
      const Complex den = evaluate(e.rhs(), z);
      if (std::abs(den) <= kPoleEps) throw Error(ErrorKind::kPoleAtPoint, "division by ~0 in expression");
      return evaluate(e.lhs(), z) / den;
    }
    case K::kPowi: {
      const Complex base = evaluate(e.lhs(), z);
      if (e.exponent() < 0 && std::abs(base) <= kPoleEps) {
        throw Error(ErrorKind::kPoleAtPoint, "negative power of ~0 in expression");
      }
      return const_pow(base, e.exponent());
    }
  }
  return {};
}

RatExpr conj(const RatExpr& e) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst: return RatExpr::constant(std::conj(e.value()));
    case K::kZ: return RatExpr::zb();
    case K::kZb: return RatExpr::z();
    case K::kAdd: return conj(e.lhs()) + conj(e.rhs());
    case K::kSub: return conj(e.lhs()) - conj(e.rhs());
    case K::kMul: return conj(e.lhs()) * conj(e.rhs());
    case K::kDiv: return conj(e.lhs()) / conj(e.rhs());
    case K::kPowi: return RatExpr::powi(conj(e.lhs()), e.exponent());
  }
  return e;
}

RatExpr diff_z(const RatExpr& e) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst:
    case K::kZb: return RatExpr::constant(0.0);
    case K::kZ: return RatExpr::constant(1.0);
    case K::kAdd: return diff_z(e.lhs()) + diff_z(e.rhs());
    case K::kSub: return diff_z(e.lhs()) - diff_z(e.rhs());
    case K::kMul: return diff_z(e.lhs()) * e.rhs() + e.lhs() * diff_z(e.rhs());
    case K::kDiv:
      return (diff_z(e.lhs()) * e.rhs() - e.lhs() * diff_z(e.rhs())) / RatExpr::powi(e.rhs(), 2);
    case K::kPowi: {
      const int n = e.exponent();
      return RatExpr::constant(static_cast<double>(n)) * RatExpr::powi(e.lhs(), n - 1) * diff_z(e.lhs());
    }
  }
  return RatExpr::constant(0.0);
}

bool is_holomorphic(const RatExpr& e) {
  using K = RatExpr::Kind;
  switch (e.kind()) {
    case K::kConst:
    case K::kZ: return true;
    case K::kZb: return false;
    case K::kPowi: return is_holomorphic(e.lhs());
    default: return is_holomorphic(e.lhs()) && is_holomorphic(e.rhs());
  }
}

Real fd_crosscheck(const RatExpr& e, Complex z0, Real h) {
  return fd_crosscheck([&e](const WJet& z, const WJet& zb) { return eval_expr(e, z, zb); }, z0, h);
}

}  // namespace nkcp3
