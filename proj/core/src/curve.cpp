#include "nkcp3/curve.hpp"

#include <cmath>
#include <string>

#include "nkcp3/error.hpp"

namespace nkcp3 {

struct CurveExpr::Data {
  Kind kind = Kind::kExplicit;
  std::array<RatExpr, 4> components;
  RatExpr f;
  RatExpr g;
  HVec base;
  std::optional<CurveExpr> inner;
  int depth = 0;
};

CurveExpr::CurveExpr(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

CurveExpr CurveExpr::explicit_curve(std::array<RatExpr, 4> components) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::kExplicit;
  d->components = std::move(components);
  return CurveExpr(std::move(d));
}

namespace {

// g' vanishing at every probe means g' is the zero function: a nonzero
// rational function has finitely many zeros and these points are generic.
bool vanishes_identically(const RatExpr& e) {
  if (e.is_constant()) return std::abs(e.value()) <= kDegenerateEps;
  static const Complex probes[] = {{0.31, 0.17}, {-0.73, 0.41}, {1.37, -0.59}, {-0.23, -1.11}, {2.03, 0.89}};
  for (Complex p : probes) {
    try {
      if (std::abs(evaluate(e, p)) > kDegenerateEps) return false;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kPoleAtPoint) throw;
      return false;
    }
  }
  return true;
}

}  // namespace

CurveExpr CurveExpr::weierstrass(RatExpr f, RatExpr g) {
  if (!is_holomorphic(f) || !is_holomorphic(g)) {
    throw Error(ErrorKind::kInvalidArgument, "Weierstrass data must not involve zb or conj");
  }
  const RatExpr dg = diff_z(g);
  if (vanishes_identically(dg)) throw Error(ErrorKind::kDegenerateWeierstrass, "g' vanishes identically");
  const RatExpr c = diff_z(f) / (RatExpr::constant(2.0) * dg);
  auto d = std::make_shared<Data>();
  d->kind = Kind::kWeierstrass;
  d->components = {RatExpr::constant(1.0), f - g * c, g, c};
  d->f = std::move(f);
  d->g = std::move(g);
  return CurveExpr(std::move(d));
}

CurveExpr CurveExpr::fiber(const HVec& base) {
  if (base.norm() <= kPoleEps) throw Error(ErrorKind::kInvalidArgument, "fiber base vector vanishes");
  auto d = std::make_shared<Data>();
  d->kind = Kind::kFiber;
  d->base = base;
  return CurveExpr(std::move(d));
}

CurveExpr CurveExpr::partner(const CurveExpr& inner) {
  if (inner.partner_depth() >= kMaxPartnerDepth) {
    throw Error(ErrorKind::kOrderExhausted, "partner nesting deeper than " + std::to_string(kMaxPartnerDepth));
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::kPartner;
  d->inner = inner;
  d->depth = inner.partner_depth() + 1;
  return CurveExpr(std::move(d));
}

CurveExpr::Kind CurveExpr::kind() const { return data_->kind; }
const std::array<RatExpr, 4>& CurveExpr::components() const { return data_->components; }
const RatExpr& CurveExpr::f() const { return data_->f; }
const RatExpr& CurveExpr::g() const { return data_->g; }
const HVec& CurveExpr::base() const { return data_->base; }
int CurveExpr::partner_depth() const { return data_->depth; }

const CurveExpr& CurveExpr::inner() const {
  if (!data_->inner) throw Error(ErrorKind::kInvalidArgument, "curve has no inner curve");
  return *data_->inner;
}

namespace {

SeedJets chart_seeds(Complex z, int order, Chart chart) {
  SeedJets s = seed_jets(z, order);
  if (chart == Chart::kZero) return s;
  WJet zi = WJet::constant(1.0, order) / s.z;
  return {zi, conj(zi)};
}

// Divides the lift by its dominant component. Every normalized quantity is
// invariant under u -> u * phi for nonvanishing phi, and with the dominant
// direction frozen the projections below no longer cancel large terms, which
// matters near poles and in the chart at infinity.
HJet gauge_normalized(const HJet& u, Complex* scale = nullptr) {
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(u.c[i].value()) > std::abs(u.c[k].value())) k = i;
  const Real big = std::abs(u.c[k].value());
  if (!(big > kPoleEps) || !std::isfinite(big)) throw Error(ErrorKind::kPoleAtPoint, "lift vanishes or diverges at point");
  if (scale) *scale = u.c[k].value();
  HJet out = u * (WJet::constant(1.0, u.order()) / u.c[k]);
  out.c[k] = WJet::constant(1.0, u.order());
  return out;
}

HJet eval_rec(const CurveExpr& c, Complex z, int order, Chart chart) {
  switch (c.kind()) {
    case CurveExpr::Kind::kExplicit:
    case CurveExpr::Kind::kWeierstrass: {
      const SeedJets s = chart_seeds(z, order, chart);
      HJet u;
      for (int k = 0; k < 4; ++k) u.c[k] = eval_expr(c.components()[k], s);
      return u;
    }
    case CurveExpr::Kind::kFiber: {
      const SeedJets s = chart_seeds(z, order, chart);
      return HJet::constant(c.base(), order) + HJet::constant(right_j(c.base()), order) * s.zb;
    }
    case CurveExpr::Kind::kPartner: {
      const HJet u = gauge_normalized(eval_rec(c.inner(), z, order + 1, chart));
      return right_j(horizontal_project(u, u.dz()));
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown curve kind");
}

// First-order data of the lift with the |u| guard shared by all residuals.
// u is the raw lift divided by `scale`.
struct Local {
  HVec u, du, dub;
  Real norm = 0.0;
  Complex scale{1.0};
};

Local local_data(const CurveExpr& c, Complex z, Chart chart) {
  Complex scale;
  const HJet j = gauge_normalized(eval_jet(c, z, 1, chart), &scale);
  Local l{j.value(), j.dz_value(), j.dzb_value(), 0.0, scale};
  l.norm = l.u.norm();
  return l;
}

// conj(herm(u j, x)) / |u|^2, the vertical (0,1) coefficient.
Complex vertical_coefficient(const HVec& u, const HVec& x) { return std::conj(herm(right_j(u), x)) / u.norm2(); }

InvariantSample invariants_of(const Local& l) {
  InvariantSample s;
  s.i1_vector = horizontal_project(l.u, l.du);
  s.i1_density = s.i1_vector.norm() / l.norm;
  s.i2_scalar = vertical_coefficient(l.u, l.dub);
  s.i2_density = std::abs(s.i2_scalar);
  return s;
}

PHResidual residual_of(const Local& l, const InvariantSample& inv) {
  const Real s = std::max(inv.i1_density + inv.i2_density, kDensityFloor);
  PHResidual r;
  r.r_horizontal = horizontal_project(l.u, l.dub).norm() / (l.norm * s);
  r.r_vertical = std::abs(herm(right_j(l.u), l.du)) / (l.u.norm2() * s);
  r.combined = r.r_horizontal + r.r_vertical;
  return r;
}

void require_horizontal_tangent(const CurveExpr& c, Complex z, Chart chart) {
  const Local l = local_data(c, z, chart);
  if (horizontal_project(l.u, l.du).norm() / l.norm < kDegenerateEps) {
    throw Error(ErrorKind::kNoHorizontalTangent, "horizontal tangent vanishes at point");
  }
}

// First-order jet of the partner lift; needs second-order jets of c.
HJet partner_jet(const CurveExpr& c, Complex z, Chart chart) {
  if (c.partner_depth() + 2 > WJet::kMaxOrder) {
    throw Error(ErrorKind::kOrderExhausted, "not enough jet orders left for the partner derivative");
  }
  require_horizontal_tangent(c, z, chart);
  const HJet u = gauge_normalized(eval_rec(c, z, 2, chart));
  const HJet w = right_j(horizontal_project(u, u.dz()));
  if (!(w.value().norm() > kPoleEps)) throw Error(ErrorKind::kNoHorizontalTangent, "partner lift vanishes at point");
  return gauge_normalized(w);
}

HVec project_off(const HVec& w, const HVec& x) { return x - w * (herm(w, x) / w.norm2()); }

Complex phase(Complex v) {
  const Real a = std::abs(v);
  return a > 0.0 ? v / a : Complex{1.0};
}

}  // namespace

HJet eval_jet(const CurveExpr& c, Complex z, int order, Chart chart) {
  if (order < 0 || order > WJet::kMaxOrder) {
    throw Error(ErrorKind::kOrderOutOfRange, "jet order " + std::to_string(order) + " outside [0, 3]");
  }
  if (order + c.partner_depth() > WJet::kMaxOrder) {
    throw Error(ErrorKind::kOrderExhausted, "jet order " + std::to_string(order) + " unavailable at partner depth " +
                                                std::to_string(c.partner_depth()));
  }
  return eval_rec(c, z, order, chart);
}

PHResidual ph_residual(const CurveExpr& c, Complex z, Chart chart) {
  const Local l = local_data(c, z, chart);
  return residual_of(l, invariants_of(l));
}

// Reported in the gauge of the raw lift; the densities do not depend on it.
InvariantSample invariants(const CurveExpr& c, Complex z, Chart chart) {
  const Local l = local_data(c, z, chart);
  InvariantSample s = invariants_of(l);
  s.i1_vector = s.i1_vector * l.scale;
  s.i2_scalar *= std::conj(l.scale) / l.scale;
  return s;
}

Real contact_residual(const CurveExpr& c, Complex z, Chart chart) {
  const Local l = local_data(c, z, chart);
  return std::abs(contact_pair(l.u, l.du)) / l.u.norm2();
}

ProjPoint partner_point(const CurveExpr& c, Complex z, Chart chart) {
  const Local l = local_data(c, z, chart);
  const HVec h = horizontal_project(l.u, l.du);
  if (h.norm() / l.norm < kDegenerateEps) throw Error(ErrorKind::kNoHorizontalTangent, "horizontal tangent vanishes at point");
  return ProjPoint(right_j(h));
}

Real torsion_residual(const CurveExpr& c, Complex z, Chart chart) {
  const HJet wj = partner_jet(c, z, chart);
  const HVec w = wj.value();
  const Real wn = w.norm();
  if (!(wn > kPoleEps)) throw Error(ErrorKind::kNoHorizontalTangent, "partner lift vanishes at point");
  const HVec pdz = project_off(w, wj.dz_value());
  const HVec pdzb = project_off(w, wj.dzb_value());
  const Real s = std::max((pdz.norm() + pdzb.norm()) / wn, kDensityFloor);
  return pdzb.norm() / (wn * s) + std::abs(contact_pair(w, wj.dz_value())) / (w.norm2() * s);
}

FrameField flag_frame_field(const CurveExpr& c, Chart chart) {
  return [c, chart](Complex z) {
    const ProjPoint p(eval_jet(c, z, 0, chart).value());
    return frame_from_flag(Flag(p, partner_point(c, z, chart), 1e-10));
  };
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kVertical: return "vertical";
    case Verdict::kHorizontal: return "horizontal";
    case Verdict::kNullTorsion: return "null_torsion";
    case Verdict::kGeneric: return "generic";
    case Verdict::kNotPseudoholomorphic: return "not_pseudoholomorphic";
  }
  return "unknown";
}

std::string_view to_string(Invariant inv) {
  switch (inv) {
    case Invariant::kI1: return "I1";
    case Invariant::kI2: return "I2";
    case Invariant::kII: return "II";
  }
  return "unknown";
}

namespace {

struct PointStats {
  bool ok = false;
  Real ph = 0.0;
  Real i1 = 0.0;
  Real i2 = 0.0;
};

bool finite_all(std::initializer_list<Real> xs) {
  for (Real x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Points where the lift is singular are skipped rather than reported.
bool skippable(const Error& e) {
  return e.kind() == ErrorKind::kPoleAtPoint || e.kind() == ErrorKind::kNoHorizontalTangent;
}

}  // namespace

Classification classify(const CurveExpr& c, const GridSpec& grid, Real tol, int jobs) {
  grid.validate();
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "tolerance must be positive");
  const std::vector<GridPoint> pts = grid.points();
  const auto stats = parallel_map<PointStats>(pts.size(), jobs, [&](std::size_t i) {
    PointStats s;
    try {
      const Local l = local_data(c, pts[i].z, pts[i].chart);
      const InvariantSample inv = invariants_of(l);
      const PHResidual r = residual_of(l, inv);
      if (!finite_all({r.combined, inv.i1_density, inv.i2_density})) return s;
      s = {true, r.combined, inv.i1_density, inv.i2_density};
    } catch (const Error& e) {
      if (!skippable(e)) throw;
    }
    return s;
  });

  Classification out;
  out.tol = tol;
  for (const PointStats& s : stats) {
    if (!s.ok) {
      ++out.skipped;
      continue;
    }
    ++out.evaluated;
    out.max_ph_residual = std::max(out.max_ph_residual, s.ph);
    out.max_i1 = std::max(out.max_i1, s.i1);
    out.max_i2 = std::max(out.max_i2, s.i2);
  }
  if (out.evaluated == 0) throw Error(ErrorKind::kEmptyGrid, "no grid point could be evaluated");

  if (out.max_ph_residual > tol) {
    out.verdict = Verdict::kNotPseudoholomorphic;
  } else if (out.max_i1 < tol) {
    out.verdict = Verdict::kVertical;
  } else if (out.max_i2 < tol) {
    out.verdict = Verdict::kHorizontal;
  } else {
    const auto torsion = parallel_map<Real>(pts.size(), jobs, [&](std::size_t i) {
      try {
        const Real t = torsion_residual(c, pts[i].z, pts[i].chart);
        return std::isfinite(t) ? t : -1.0;
      } catch (const Error& e) {
        if (!skippable(e)) throw;
      }
      return -1.0;
    });
    Real m = 0.0;
    for (Real t : torsion) m = std::max(m, t);
    out.max_torsion = m;
    out.verdict = m < tol ? Verdict::kNullTorsion : Verdict::kGeneric;
  }
  return out;
}

Real invariant_density(const CurveExpr& c, Invariant inv, Complex z, Chart chart) {
  switch (inv) {
    case Invariant::kI1: return invariants(c, z, chart).i1_density;
    case Invariant::kI2: return invariants(c, z, chart).i2_density;
    case Invariant::kII: {
      const HJet w = partner_jet(c, z, chart);
      const HVec wv = w.value();
      if (!(wv.norm() > kPoleEps)) throw Error(ErrorKind::kNoHorizontalTangent, "partner lift vanishes at point");
      return std::abs(vertical_coefficient(wv, w.dzb_value()));
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown invariant");
}

std::function<Complex(Complex)> section_probe(const CurveExpr& c, Invariant inv, Chart chart, Complex anchor) {
  // The reference point sits just off the anchor so that it also works when
  // the anchor is a pole of the lift or a zero of the section.
  const Complex ref_at = anchor + Complex{1e-3, 7e-4};
  switch (inv) {
    case Invariant::kI1: {
      const Local l = local_data(c, ref_at, chart);
      const HVec ref = l.u;
      const HVec dref = horizontal_project(l.u, l.du);
      return [c, chart, ref, dref](Complex z) {
        const Local p = local_data(c, z, chart);
        const HVec h = horizontal_project(p.u, p.du);
        return herm(dref, h) / p.norm * std::conj(phase(herm(ref, p.u)));
      };
    }
    case Invariant::kI2: {
      const HVec ref = local_data(c, ref_at, chart).u;
      return [c, chart, ref](Complex z) {
        const Local p = local_data(c, z, chart);
        const Complex ph = phase(herm(ref, p.u));
        return vertical_coefficient(p.u, p.dub) * ph * ph;
      };
    }
    case Invariant::kII: {
      const HVec wref = partner_jet(c, ref_at, chart).value();
      return [c, chart, wref](Complex z) {
        const HJet w = partner_jet(c, z, chart);
        const HVec wv = w.value();
        if (!(wv.norm() > kPoleEps)) throw Error(ErrorKind::kNoHorizontalTangent, "partner lift vanishes at point");
        const Complex ph = phase(herm(wref, wv));
        return vertical_coefficient(wv, w.dzb_value()) * ph * ph;
      };
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown invariant");
}

}  // namespace nkcp3
