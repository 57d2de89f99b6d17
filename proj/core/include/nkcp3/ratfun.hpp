#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nkcp3/wjet.hpp"

namespace nkcp3 {

/// Immutable rational expression in z and conj(z).
///
/// Grammar accepted by parse_expr:
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := atom ('^' int)?
///   atom   := number | 'i' | 'z' | 'zb' | 'conj' '(' expr ')' | '(' expr ')' | '-' factor
///
/// Numbers are decimals with an optional exponent and an optional trailing
/// 'i'. Implicit multiplication is rejected. Constant subtrees are folded as
/// the tree is built, so printing and reparsing reproduces the same tree.
class RatExpr {
 public:
  enum class Kind { kConst, kZ, kZb, kAdd, kSub, kMul, kDiv, kPowi };

  static constexpr int kMaxExponent = 64;
  static constexpr int kMaxDepth = 128;

  RatExpr();  // the constant 0
  static RatExpr constant(Complex value);
  static RatExpr z();
  static RatExpr zb();
  static RatExpr powi(const RatExpr& base, int n);

  friend RatExpr operator+(const RatExpr& l, const RatExpr& r);
  friend RatExpr operator-(const RatExpr& l, const RatExpr& r);
  friend RatExpr operator*(const RatExpr& l, const RatExpr& r);
  friend RatExpr operator/(const RatExpr& l, const RatExpr& r);
  /// Structural equality.
  friend bool operator==(const RatExpr& l, const RatExpr& r);

  Kind kind() const;
  Complex value() const;  // kConst only
  int exponent() const;   // kPowi only
  const RatExpr& lhs() const;
  const RatExpr& rhs() const;  // binary nodes only
  int depth() const;
  bool is_constant() const { return kind() == Kind::kConst; }

 private:
  struct Node;
  explicit RatExpr(std::shared_ptr<const Node> node);
  static RatExpr binary(Kind kind, const RatExpr& l, const RatExpr& r);

  std::shared_ptr<const Node> node_;
};

RatExpr parse_expr(std::string_view text);
std::string to_string(const RatExpr& e);

/// Jet of the expression from seed jets taken at a common point.
WJet eval_expr(const RatExpr& e, const WJet& z, const WJet& zb);
WJet eval_expr(const RatExpr& e, const SeedJets& seeds);

/// Plain complex evaluation; throws PoleAtPoint on division by ~0.
Complex evaluate(const RatExpr& e, Complex z);

/// Structural conjugation: z <-> zb, constants conjugated.
RatExpr conj(const RatExpr& e);

/// Wirtinger derivative d/dz, treating zb as independent.
RatExpr diff_z(const RatExpr& e);

/// True when the tree has no zb nodes.
bool is_holomorphic(const RatExpr& e);

Real fd_crosscheck(const RatExpr& e, Complex z0, Real h);

/// Complex polynomial, coefficients in ascending degree, trailing zeros stripped.
class CPoly {
 public:
  CPoly() = default;
  explicit CPoly(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex operator()(Complex z) const;
  CPoly derivative() const;
  /// sum |a_k| |z|^k, the natural scale for residuals at z.
  Real scale_at(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
};

struct PolyRoot {
  Complex root;
  int multiplicity = 1;
};

/// All roots of p with multiplicities. Aberth-Ehrlich iteration from a
/// perturbed circle, falling back to companion-matrix eigenvalues when the
/// iteration stalls. Roots closer than 1e-6 are merged.
std::vector<PolyRoot> poly_roots(const CPoly& p);

}  // namespace nkcp3
