#pragma once

#include <array>
#include <functional>

#include "nkcp3/quat.hpp"

namespace nkcp3 {

/// Truncated Wirtinger jet of a complex function of one complex variable.
///
/// Stores d(a,b) = (d/dz)^a (d/dzbar)^b f at a base point for a + b <= order.
/// Arithmetic is exact up to the stored order; binary operations truncate to
/// the smaller order of their operands.
class WJet {
 public:
  static constexpr int kMaxOrder = 3;

  explicit WJet(int order = 0);
  static WJet constant(Complex value, int order);

  int order() const noexcept { return order_; }
  Complex value() const noexcept { return d_[0][0]; }

  /// Coefficient d(a,b); zero when a + b exceeds the order.
  Complex d(int a, int b) const;
  void set(int a, int b, Complex v);

  /// d/dz and d/dzbar of the jet, one order lower.
  WJet dz() const;
  WJet dzb() const;
  WJet truncated(int order) const;

  WJet& operator+=(const WJet& rhs);
  WJet& operator-=(const WJet& rhs);
  WJet& operator*=(Complex s);

  friend WJet operator+(WJet lhs, const WJet& rhs) { return lhs += rhs; }
  friend WJet operator-(WJet lhs, const WJet& rhs) { return lhs -= rhs; }
  friend WJet operator-(const WJet& j);
  friend WJet operator*(const WJet& lhs, const WJet& rhs);
  friend WJet operator*(WJet lhs, Complex s) { return lhs *= s; }
  friend WJet operator*(Complex s, WJet rhs) { return rhs *= s; }
  /// Throws PoleAtPoint when |rhs.value()| <= kPoleEps.
  friend WJet operator/(const WJet& lhs, const WJet& rhs);
  friend bool operator==(const WJet&, const WJet&) = default;

 private:
  int order_ = 0;
  std::array<std::array<Complex, kMaxOrder + 1>, kMaxOrder + 1> d_{};
};

/// conj(J).d(a,b) = conj(J.d(b,a)).
WJet conj(const WJet& j);
WJet powi(const WJet& j, int n);

struct SeedJets {
  WJet z;
  WJet zb;
};

/// Jets of the coordinate functions z and conj(z) at z0.
SeedJets seed_jets(Complex z0, int order);

/// A map evaluated on jets, e.g. a parsed expression.
using JetFunction = std::function<WJet(const WJet& z, const WJet& zb)>;

/// Compares the first and second derivative slots of `f` at z0 with central
/// differences of step h (values for first slots, first-derivative jets for
/// second slots). Returns max |jet - fd| / max(1, |jet|).
Real fd_crosscheck(const JetFunction& f, Complex z0, Real h);

/// Jet of an H^2-valued map, one WJet per complex coordinate.
struct HJet {
  std::array<WJet, 4> c;

  int order() const;
  HVec value() const;
  /// Vector of first derivatives d/dz and d/dzbar at the base point.
  HVec dz_value() const;
  HVec dzb_value() const;
  HJet dz() const;
  HJet dzb() const;
  HJet truncated(int order) const;
  static HJet constant(const HVec& v, int order);

  friend HJet operator+(const HJet& u, const HJet& v);
  friend HJet operator-(const HJet& u, const HJet& v);
  /// Componentwise product with a scalar jet (right complex action).
  friend HJet operator*(const HJet& u, const WJet& s);
};

WJet herm(const HJet& v, const HJet& w);
WJet sympl(const HJet& v, const HJet& w);
HJet right_j(const HJet& v);

/// Hermitian projection of x onto the complement of span{u, u*j}.
HJet horizontal_project(const HJet& u, const HJet& x);

}  // namespace nkcp3
