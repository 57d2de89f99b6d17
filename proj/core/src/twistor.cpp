#include "nkcp3/twistor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nkcp3/error.hpp"

namespace nkcp3 {
namespace {

HVec unit(const HVec& v) {
  const Real n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::kInvalidArgument, "vanishing or non-finite representative");
  return v / Complex{n};
}

HVec fix_phase(const HVec& v) {
  for (std::size_t k = 0; k < 4; ++k) {
    const Real m = std::abs(v[k]);
    if (m > 0.1) return v * (std::conj(v[k]) / m);
  }
  return v;
}

}  // namespace

ProjPoint::ProjPoint(const HVec& rep) : rep_(unit(rep)) {}

Real projective_distance(const ProjPoint& p, const ProjPoint& q) {
  // Norm of the part of q orthogonal to p; unlike sqrt(1 - |<p,q>|^2) this
  // keeps full relative precision for nearby points.
  return (q.rep() - p.rep() * herm(p.rep(), q.rep())).norm();
}

HLine::HLine(const HVec& rep) : rep_(unit(rep)) {}

Real line_distance(const HLine& l, const HLine& m) {
  // {a, a j} is orthonormal, so the residuals of b and b j after projecting
  // onto it give the principal sines as singular values.
  const HVec a0 = l.rep(), a1 = right_j(l.rep());
  HVec r[2] = {m.rep(), right_j(m.rep())};
  for (HVec& v : r) v = v - a0 * herm(a0, v) - a1 * herm(a1, v);
  const Real g00 = r[0].norm2(), g11 = r[1].norm2();
  const Complex g01 = herm(r[0], r[1]);
  const Real tr = g00 + g11;
  const Real det = g00 * g11 - std::norm(g01);
  const Real smax2 = (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det))) / 2.0;
  return std::sqrt(std::max(0.0, smax2));
}

Real S4Point::norm() const {
  Real s = 0.0;
  for (Real v : x) s += v * v;
  return std::sqrt(s);
}

HLine twistor_project(const ProjPoint& p) { return HLine(p.rep()); }

S4Point s4_coords(const HLine& l) {
  const Quaternion q1 = l.rep().q1();
  const Quaternion q2 = l.rep().q2();
  const Real n1 = q1.norm2();
  const Real n2 = q2.norm2();
  const Real total = n1 + n2;
  const Quaternion p = q2 * conj(q1);
  return {{(n1 - n2) / total, 2.0 * p.a.real() / total, 2.0 * p.a.imag() / total, 2.0 * p.b.real() / total,
           2.0 * p.b.imag() / total}};
}

HVec horizontal_project(const HVec& u, const HVec& x) {
  const Real n = u.norm2();
  const HVec uj = right_j(u);
  return x - u * (herm(u, x) / n) - uj * (herm(uj, x) / n);
}

Complex contact_pair(const HVec& w, const HVec& t) { return sympl(w, t); }

Flag::Flag(const ProjPoint& p, const ProjPoint& q, Real tol) : p_(p), q_(q) {
  const Real defect = quat_pair(p.rep(), q.rep()).abs();
  if (defect > tol) {
    throw Error(ErrorKind::kNotAFlag, "lines are not quaternionically orthogonal (|quat| = " +
                                          std::to_string(defect) + ")");
  }
}

Real Sp2Frame::orthonormality_defect() const {
  const Quaternion one{Complex{1.0}, Complex{}};
  return std::max({(quat_pair(e1, e1) - one).abs(), (quat_pair(e2, e2) - one).abs(), quat_pair(e1, e2).abs()});
}

Sp2Frame frame_from_flag(const Flag& flag) {
  const HVec e1 = fix_phase(flag.p().rep());
  const HVec q = flag.q().rep();
  const HVec e2 = fix_phase(unit(q - right_mul(e1, quat_pair(e1, q))));
  return {e1, e2};
}

OneForm OneForm::from_xy(Complex along_x, Complex along_y) {
  const Complex i{0.0, 1.0};
  return {(along_x - i * along_y) / 2.0, (along_x + i * along_y) / 2.0};
}

OneForm MCBlocks::kappa_11() const { return Complex{0.0, 1.0} * (rho2 - rho1); }
OneForm MCBlocks::kappa_12() const { return Complex{-1.0} * tau.conj(); }
OneForm MCBlocks::kappa_21() const { return tau; }
OneForm MCBlocks::kappa_22() const { return Complex{0.0, -1.0} * (rho1 + rho2); }
OneForm MCBlocks::kappa_33() const { return Complex{0.0, 2.0} * rho1; }

namespace {

void check_step(Real h) {
  if (h < kMinFdStep) throw Error(ErrorKind::kStepTooSmall, "finite-difference step below 1e-6");
  if (h > kMaxFdStep) throw Error(ErrorKind::kStepTooLarge, "finite-difference step above 1e-2");
}

Sp2Frame checked(const FrameField& frame, Complex z) {
  Sp2Frame f = frame(z);
  if (!(f.orthonormality_defect() <= kFrameDriftTol)) {
    throw Error(ErrorKind::kFrameNotOrthonormal, "frame field leaves Sp(2) by more than 1e-6");
  }
  return f;
}

using PhiMatrix = std::array<std::array<QuatForm, 2>, 2>;

PhiMatrix raw_phi(const FrameField& frame, Complex z, Real h) {
  const Sp2Frame c = checked(frame, z);
  const Sp2Frame xp = checked(frame, z + Complex(h, 0.0));
  const Sp2Frame xm = checked(frame, z - Complex(h, 0.0));
  const Sp2Frame yp = checked(frame, z + Complex(0.0, h));
  const Sp2Frame ym = checked(frame, z - Complex(0.0, h));
  PhiMatrix phi;
  for (int a = 0; a < 2; ++a) {
    const HVec dx = (xp[a] - xm[a]) / Complex{2.0 * h};
    const HVec dy = (yp[a] - ym[a]) / Complex{2.0 * h};
    for (int b = 0; b < 2; ++b) phi[b][a] = {quat_pair(c[b], dx), quat_pair(c[b], dy)};
  }
  return phi;
}

}  // namespace

MCBlocks maurer_cartan(const FrameField& frame, Complex z, Real h) {
  check_step(h);
  MCBlocks m;
  m.phi = raw_phi(frame, z, h);
  const Complex minus_i{0.0, -1.0};
  const Real root2 = std::numbers::sqrt2;
  const auto& p = m.phi;
  m.rho1 = OneForm::from_xy(minus_i * p[0][0].dx.a, minus_i * p[0][0].dy.a);
  m.omega3 = OneForm::from_xy(std::conj(p[0][0].dx.b), std::conj(p[0][0].dy.b));
  m.omega1 = OneForm::from_xy(root2 * p[1][0].dx.a, root2 * p[1][0].dy.a);
  m.omega2 = OneForm::from_xy(root2 * p[1][0].dx.b, root2 * p[1][0].dy.b);
  m.rho2 = OneForm::from_xy(minus_i * p[1][1].dx.a, minus_i * p[1][1].dy.a);
  m.tau = OneForm::from_xy(p[1][1].dx.b, p[1][1].dy.b);
  Real skew = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      skew = std::max(skew, (p[a][b].dx + conj(p[b][a].dx)).abs());
      skew = std::max(skew, (p[a][b].dy + conj(p[b][a].dy)).abs());
    }
  }
  m.skew_residual = skew;
  return m;
}

Real StructureResidual::max() const {
  return std::max({block[0][0], block[0][1], block[1][0], block[1][1]});
}

StructureResidual structure_residual(const FrameField& frame, Complex z, Real h) {
  check_step(h);
  const PhiMatrix c = raw_phi(frame, z, h);
  const PhiMatrix xp = raw_phi(frame, z + Complex(h, 0.0), h);
  const PhiMatrix xm = raw_phi(frame, z - Complex(h, 0.0), h);
  const PhiMatrix yp = raw_phi(frame, z + Complex(0.0, h), h);
  const PhiMatrix ym = raw_phi(frame, z - Complex(0.0, h), h);
  StructureResidual r;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // d(P dx + Q dy) = (Q_x - P_y) dx^dy
      Quaternion curl = (xp[a][b].dy - xm[a][b].dy) * (1.0 / (2.0 * h)) -
                        (yp[a][b].dx - ym[a][b].dx) * (1.0 / (2.0 * h));
      for (int k = 0; k < 2; ++k) curl = curl + c[a][k].dx * c[k][b].dy - c[a][k].dy * c[k][b].dx;
      r.block[a][b] = curl.abs();
    }
  }
  return r;
}

}  // namespace nkcp3
