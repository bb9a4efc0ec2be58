#ifndef PRODLAB_CONST_EXPR_HPP
#define PRODLAB_CONST_EXPR_HPP

#include <memory>
#include <string>
#include <utility>

#include "big_float.hpp"
#include "constants.hpp"
#include "rational.hpp"
#include "sin_pi.hpp"

namespace prodlab {

/// Immutable symbolic closed form over pi, e, integers and rationals.
///
/// Nodes: + - * /, sqrt, rational powers, and sin(pi*q) for sine values
/// that have no radical form here. There is deliberately no simplifier:
/// two expressions are compared by evaluating them.
class ConstExpr {
 public:
  enum class Kind { Pi, E, Integer, Rational, SinPi, Add, Sub, Mul, Div, Sqrt, Pow };

  static ConstExpr pi() { return ConstExpr(make(Kind::Pi)); }
  static ConstExpr e() { return ConstExpr(make(Kind::E)); }
  static ConstExpr integer(long v) { return integer(mpz_class(v)); }
  static ConstExpr integer(const mpz_class& v) {
    auto n = make(Kind::Integer);
    n->number = prodlab::Rational(v);
    return ConstExpr(std::move(n));
  }
  static ConstExpr rational(const prodlab::Rational& q) {
    auto n = make(Kind::Rational);
    n->number = q;
    return ConstExpr(std::move(n));
  }
  /// sin(pi * q), kept symbolic.
  static ConstExpr sin_pi(const prodlab::Rational& q) {
    auto n = make(Kind::SinPi);
    n->number = q;
    return ConstExpr(std::move(n));
  }

  friend ConstExpr operator+(const ConstExpr& a, const ConstExpr& b) { return binary(Kind::Add, a, b); }
  friend ConstExpr operator-(const ConstExpr& a, const ConstExpr& b) { return binary(Kind::Sub, a, b); }
  friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b) { return binary(Kind::Mul, a, b); }
  friend ConstExpr operator/(const ConstExpr& a, const ConstExpr& b) { return binary(Kind::Div, a, b); }
  friend ConstExpr sqrt(const ConstExpr& a) {
    auto n = make(Kind::Sqrt);
    n->lhs = a.node_;
    return ConstExpr(std::move(n));
  }
  friend ConstExpr pow(const ConstExpr& base, const prodlab::Rational& exponent) {
    auto n = make(Kind::Pow);
    n->lhs = base.node_;
    n->number = exponent;
    return ConstExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }

  /// Infix rendering: `pi`, `e`, `sqrt(x)`, `x^(p/q)`, minimal parentheses.
  std::string render() const { return render_node(*node_); }

  /// Evaluates at `w` working bits; throws DivisionByZero / NegativeSqrt.
  BigFloat evaluate(mpfr_prec_t w) const { return eval_node(*node_, w); }

 private:
  struct Node {
    Kind kind;
    prodlab::Rational number;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit ConstExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }

  static ConstExpr binary(Kind k, const ConstExpr& a, const ConstExpr& b) {
    auto n = make(k);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return ConstExpr(std::move(n));
  }

  // 1: + -, 2: * /, 3: ^, 4: atom
  static int precedence(const Node& n) {
    switch (n.kind) {
      case Kind::Add:
      case Kind::Sub:
        return 1;
      case Kind::Mul:
      case Kind::Div:
        return 2;
      case Kind::Pow:
        return 3;
      case Kind::Integer:
        return n.number.sign() < 0 ? 1 : 4;
      case Kind::Rational:
        if (n.number.sign() < 0) return 1;
        return n.number.is_integer() ? 4 : 2;
      default:
        return 4;
    }
  }

  static std::string paren(const std::string& s) { return "(" + s + ")"; }

  static std::string render_node(const Node& n) {
    switch (n.kind) {
      case Kind::Pi: return "pi";
      case Kind::E: return "e";
      case Kind::Integer:
      case Kind::Rational: return n.number.to_string();
      case Kind::SinPi: {
        const auto& q = n.number;
        if (q == prodlab::Rational(1)) return "sin(pi)";
        std::string s = "sin(";
        if (q.numerator() != 1) s += q.numerator().get_str() + "*";
        s += "pi";
        if (q.denominator() != 1) s += "/" + q.denominator().get_str();
        return s + ")";
      }
      case Kind::Sqrt: return "sqrt(" + render_node(*n.lhs) + ")";
      case Kind::Pow: {
        std::string base = render_node(*n.lhs);
        if (precedence(*n.lhs) < 4) base = paren(base);
        const auto& q = n.number;
        if (q.is_integer() && q.sign() >= 0) return base + "^" + q.to_string();
        return base + "^(" + q.to_string() + ")";
      }
      default: break;
    }
    const int p = precedence(n);
    const char* op = n.kind == Kind::Add ? "+" : n.kind == Kind::Sub ? "-" : n.kind == Kind::Mul ? "*" : "/";
    std::string l = render_node(*n.lhs);
    std::string r = render_node(*n.rhs);
    if (precedence(*n.lhs) < p) l = paren(l);
    const int rp = precedence(*n.rhs);
    const bool non_assoc = n.kind == Kind::Sub || n.kind == Kind::Div;
    if (rp < p || (rp == p && non_assoc)) r = paren(r);
    return l + op + r;
  }

  static BigFloat eval_node(const Node& n, mpfr_prec_t w) {
    switch (n.kind) {
      case Kind::Pi: return pi_constant(w);
      case Kind::E: return e_constant(w);
      case Kind::Integer:
      case Kind::Rational: return BigFloat(n.number, w);
      case Kind::SinPi: return prodlab::sin_pi(n.number, static_cast<int>(w)).value();
      case Kind::Add: return eval_node(*n.lhs, w) + eval_node(*n.rhs, w);
      case Kind::Sub: return eval_node(*n.lhs, w) - eval_node(*n.rhs, w);
      case Kind::Mul: return eval_node(*n.lhs, w) * eval_node(*n.rhs, w);
      case Kind::Div: {
        const BigFloat den = eval_node(*n.rhs, w);
        if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in " + render_node(n));
        return eval_node(*n.lhs, w) / den;
      }
      case Kind::Sqrt: {
        const BigFloat arg = eval_node(*n.lhs, w);
        if (arg.sign() < 0) throw Error(ErrorKind::NegativeSqrt, "sqrt of negative value in " + render_node(n));
        return prodlab::sqrt(arg);
      }
      case Kind::Pow: {
        const BigFloat base = eval_node(*n.lhs, w);
        const auto& q = n.number;
        if (q.is_integer()) {
          if (base.is_zero() && q.sign() < 0)
            throw Error(ErrorKind::DivisionByZero, "zero to a negative power in " + render_node(n));
          BigFloat r(w);
          mpfr_pow_z(r.get(), base.get(), q.numerator().get_mpz_t(), MPFR_RNDN);
          return r;
        }
        if (base.sign() < 0)
          throw Error(ErrorKind::NegativeSqrt, "fractional power of negative value in " + render_node(n));
        if (base.is_zero()) {
          if (q.sign() < 0) throw Error(ErrorKind::DivisionByZero, "zero to a negative power in " + render_node(n));
          return BigFloat(0, w);
        }
        return prodlab::exp(mul_rational(prodlab::log(base), q));
      }
    }
    return BigFloat(w);
  }

  std::shared_ptr<const Node> node_;
};

/// Evaluates a closed form to the PrecisionReal contract at p bits.
inline PrecisionReal const_eval(const ConstExpr& expr, int p) {
  if (p < 8) throw Error(ErrorKind::InvalidArgument, "precision must be at least 8 bits");
  return PrecisionReal(expr.evaluate(p + kGuardBits), p);
}

}  // namespace prodlab

#endif  // PRODLAB_CONST_EXPR_HPP
