#include "nkcp3/quat.hpp"

#include <cmath>
#include <ostream>

namespace nkcp3 {

Real Quaternion::abs() const { return std::sqrt(norm2()); }

// (a + j b)(c + j d) = (a c - conj(b) d) + j (conj(a) d + b c)
Quaternion operator*(const Quaternion& q, const Quaternion& p) {
  return {q.a * p.a - std::conj(q.b) * p.b, std::conj(q.a) * p.b + q.b * p.a};
}

Quaternion conj(const Quaternion& q) { return {std::conj(q.a), -q.b}; }

bool approx_equal(const Quaternion& q, const Quaternion& p, Real eps) {
  return std::abs(q.a - p.a) <= eps && std::abs(q.b - p.b) <= eps;
}

Real HVec::norm2() const {
  Real s = 0.0;
  for (const auto& z : c) s += std::norm(z);
  return s;
}

Real HVec::norm() const { return std::sqrt(norm2()); }

HVec HVec::normalized() const { return *this / Complex{norm()}; }

HVec operator+(const HVec& v, const HVec& w) {
  return {v[0] + w[0], v[1] + w[1], v[2] + w[2], v[3] + w[3]};
}

HVec operator-(const HVec& v, const HVec& w) {
  return {v[0] - w[0], v[1] - w[1], v[2] - w[2], v[3] - w[3]};
}

HVec operator-(const HVec& v) { return {-v[0], -v[1], -v[2], -v[3]}; }

HVec operator*(const HVec& v, Complex z) { return {v[0] * z, v[1] * z, v[2] * z, v[3] * z}; }

HVec operator/(const HVec& v, Complex z) { return {v[0] / z, v[1] / z, v[2] / z, v[3] / z}; }

bool approx_equal(const HVec& v, const HVec& w, Real eps) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(v[k] - w[k]) > eps) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << q.a << " + j*" << q.b;
}

std::ostream& operator<<(std::ostream& os, const HVec& v) {
  return os << '[' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ']';
}

HVec right_mul(const HVec& v, const Quaternion& q) { return HVec::from_pair(v.q1() * q, v.q2() * q); }

HVec right_j(const HVec& v) {
  return {-std::conj(v[1]), std::conj(v[0]), -std::conj(v[3]), std::conj(v[2])};
}

Complex herm(const HVec& v, const HVec& w) {
  Complex s{};
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(v[k]) * w[k];
  return s;
}

Complex sympl(const HVec& v, const HVec& w) {
  return v[0] * w[1] - v[1] * w[0] + v[2] * w[3] - v[3] * w[2];
}

Quaternion quat_pair(const HVec& v, const HVec& w) {
  return conj(v.q1()) * w.q1() + conj(v.q2()) * w.q2();
}

PairingTriple pairings(const HVec& v, const HVec& w) {
  return {herm(v, w), sympl(v, w), quat_pair(v, w)};
}

}  // namespace nkcp3
