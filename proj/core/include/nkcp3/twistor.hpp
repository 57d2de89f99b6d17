#pragma once

#include <array>
#include <functional>

#include "nkcp3/quat.hpp"

namespace nkcp3 {

/// A point of CP^3, stored as a unit representative.
class ProjPoint {
 public:
  /// Throws InvalidArgument for a vanishing representative.
  explicit ProjPoint(const HVec& rep);
  const HVec& rep() const { return rep_; }

 private:
  HVec rep_;
};

/// sqrt(1 - |<p,q>|^2) for unit representatives; 0 iff the lines agree.
Real projective_distance(const ProjPoint& p, const ProjPoint& q);

/// A quaternionic line vH in H^2, i.e. a point of HP^1.
class HLine {
 public:
  explicit HLine(const HVec& rep);
  const HVec& rep() const { return rep_; }

 private:
  HVec rep_;
};

/// Sine of the largest principal angle between span{v, vj} and span{w, wj}.
Real line_distance(const HLine& l, const HLine& m);

struct S4Point {
  std::array<Real, 5> x{};
  Real norm() const;
};

/// The fibre map [v] -> vH.
HLine twistor_project(const ProjPoint& p);

/// Chart HP^1 -> S^4 in R x H:
/// ((|q1|^2 - |q2|^2), 2 q2 conj(q1)) / (|q1|^2 + |q2|^2), with the
/// quaternion a + j b laid out as (Re a, Im a, Re b, Im b).
S4Point s4_coords(const HLine& l);

/// x minus its Hermitian components along u and u*j.
HVec horizontal_project(const HVec& u, const HVec& x);

/// Holomorphic contact pairing w1 t2 - w2 t1 + w3 t4 - w4 t3 (equal to sympl).
Complex contact_pair(const HVec& w, const HVec& t);

/// Pair of complex lines with quaternionically orthogonal representatives.
class Flag {
 public:
  /// Throws NotAFlag when |quat(p, q)| exceeds tol for unit representatives.
  Flag(const ProjPoint& p, const ProjPoint& q, Real tol = 1e-8);
  const ProjPoint& p() const { return p_; }
  const ProjPoint& q() const { return q_; }

 private:
  ProjPoint p_;
  ProjPoint q_;
};

/// Quaternion-unitary frame: quat(e1,e1) = quat(e2,e2) = 1, quat(e1,e2) = 0.
struct Sp2Frame {
  HVec e1;
  HVec e2;

  const HVec& operator[](int a) const { return a == 0 ? e1 : e2; }
  /// Largest deviation of the three defining pairings from their values.
  Real orthonormality_defect() const;
};

/// Frame adapted to the flag. e2 has its quaternionic component along e1
/// removed; each vector is rotated by a unit complex scalar so that its first
/// component of modulus > 0.1 is positive real.
Sp2Frame frame_from_flag(const Flag& flag);

/// A 1-form a dz + b dzbar sampled at a point.
struct OneForm {
  Complex dz{};
  Complex dzb{};

  static OneForm from_xy(Complex along_x, Complex along_y);
  OneForm conj() const { return {std::conj(dzb), std::conj(dz)}; }
  friend OneForm operator+(const OneForm& a, const OneForm& b) { return {a.dz + b.dz, a.dzb + b.dzb}; }
  friend OneForm operator-(const OneForm& a, const OneForm& b) { return {a.dz - b.dz, a.dzb - b.dzb}; }
  friend OneForm operator*(Complex s, const OneForm& a) { return {s * a.dz, s * a.dzb}; }
};

/// A quaternion-valued 1-form by its values on d/dx and d/dy.
struct QuatForm {
  Quaternion dx;
  Quaternion dy;
};

/// Maurer-Cartan form phi^b_a = quat(e_b, de_a) of a frame field at a point,
/// with its block decomposition
///
///   phi^1_1 = i rho1 + j conj(omega3)      phi^1_2 = (-conj(omega1) + j omega2)/sqrt2
///   phi^2_1 = (omega1 + j omega2)/sqrt2    phi^2_2 = i rho2 + j tau
///
/// Which of omega1/omega3 carries the fibre direction is read off the frame;
/// no bundle identification is asserted here.
struct MCBlocks {
  std::array<std::array<QuatForm, 2>, 2> phi;  // phi[b][a] = phi^b_a
  OneForm rho1, rho2, omega1, omega2, omega3, tau;
  /// max |phi^a_b + conj(phi^b_a)| over blocks and directions.
  Real skew_residual = 0.0;

  OneForm kappa_11() const;  // i(rho2 - rho1)
  OneForm kappa_12() const;  // -conj(tau)
  OneForm kappa_21() const;  // tau
  OneForm kappa_22() const;  // -i(rho1 + rho2)
  OneForm kappa_33() const;  // 2 i rho1
};

using FrameField = std::function<Sp2Frame(Complex)>;

inline constexpr Real kMinFdStep = 1e-6;
inline constexpr Real kMaxFdStep = 1e-2;
inline constexpr Real kFrameDriftTol = 1e-6;

/// Central-difference Maurer-Cartan form of F at z with step h in [1e-6, 1e-2].
MCBlocks maurer_cartan(const FrameField& frame, Complex z, Real h);

struct StructureResidual {
  /// |d phi^a_b + phi^a_c ^ phi^c_b| on dx^dy, per block.
  std::array<std::array<Real, 2>, 2> block{};
  Real max() const;
};

/// Residual of d phi + phi ^ phi = 0 on an h-square centred at z.
StructureResidual structure_residual(const FrameField& frame, Complex z, Real h);

}  // namespace nkcp3
