#pragma once

#include <array>
#include <complex>
#include <iosfwd>

#include "nkcp3/config.hpp"

namespace nkcp3 {

using Complex = std::complex<Real>;

/// Quaternion q = a + j*b with a, b complex, j^2 = -1 and z*j = j*conj(z).
struct Quaternion {
  Complex a{};
  Complex b{};

  static Quaternion j() { return {Complex{0.0}, Complex{1.0}}; }

  Real norm2() const { return std::norm(a) + std::norm(b); }
  Real abs() const;
  /// Real part of the quaternion (the coefficient of 1).
  Real real() const { return a.real(); }

  friend Quaternion operator+(const Quaternion& q, const Quaternion& p) { return {q.a + p.a, q.b + p.b}; }
  friend Quaternion operator-(const Quaternion& q, const Quaternion& p) { return {q.a - p.a, q.b - p.b}; }
  friend Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b}; }
  friend Quaternion operator*(const Quaternion& q, const Quaternion& p);
  friend Quaternion operator*(const Quaternion& q, Real s) { return {q.a * s, q.b * s}; }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

Quaternion conj(const Quaternion& q);

/// Componentwise comparison with a single absolute tolerance.
bool approx_equal(const Quaternion& q, const Quaternion& p, Real eps = kEqualityEps);

/// A vector of C^4 = H^2 under (c1,c2,c3,c4) ~ (c1 + j*c2, c3 + j*c4).
/// Complex scalars act on the right, which here is componentwise.
struct HVec {
  std::array<Complex, 4> c{};

  HVec() = default;
  HVec(Complex c1, Complex c2, Complex c3, Complex c4) : c{c1, c2, c3, c4} {}

  Complex& operator[](std::size_t k) { return c[k]; }
  const Complex& operator[](std::size_t k) const { return c[k]; }

  Quaternion q1() const { return {c[0], c[1]}; }
  Quaternion q2() const { return {c[2], c[3]}; }
  static HVec from_pair(const Quaternion& q1, const Quaternion& q2) { return {q1.a, q1.b, q2.a, q2.b}; }

  Real norm2() const;
  Real norm() const;
  HVec normalized() const;

  friend HVec operator+(const HVec& v, const HVec& w);
  friend HVec operator-(const HVec& v, const HVec& w);
  friend HVec operator-(const HVec& v);
  /// Right scalar action v*z.
  friend HVec operator*(const HVec& v, Complex z);
  friend HVec operator/(const HVec& v, Complex z);
  friend bool operator==(const HVec&, const HVec&) = default;
};

bool approx_equal(const HVec& v, const HVec& w, Real eps = kEqualityEps);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const HVec& v);

/// Right quaternionic action (q1, q2)*q = (q1*q, q2*q).
HVec right_mul(const HVec& v, const Quaternion& q);

/// v*j, i.e. (c1,c2,c3,c4) -> (-conj c2, conj c1, -conj c4, conj c3).
HVec right_j(const HVec& v);

/// Hermitian pairing sum conj(v_k) w_k, conjugate-linear in v.
Complex herm(const HVec& v, const HVec& w);

/// Complex symplectic pairing v1 w2 - v2 w1 + v3 w4 - v4 w3.
Complex sympl(const HVec& v, const HVec& w);

/// Quaternionic inner product conj(q1) p1 + conj(q2) p2.
Quaternion quat_pair(const HVec& v, const HVec& w);

struct PairingTriple {
  Complex herm;
  Complex sympl;
  Quaternion quat;
};

PairingTriple pairings(const HVec& v, const HVec& w);

}  // namespace nkcp3
