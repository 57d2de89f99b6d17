#include "nkcp3/s4.hpp"

#include <cmath>
#include <cstdio>

#include "nkcp3/error.hpp"

namespace nkcp3 {

namespace {

// Fourth-order central difference along `dir`.
R5 central_diff(const CurveExpr& c, Complex z, Complex dir, Real h, Chart chart) {
  const S4Point p1 = surface_value(c, z + h * dir, chart), m1 = surface_value(c, z - h * dir, chart);
  const S4Point p2 = surface_value(c, z + 2.0 * h * dir, chart), m2 = surface_value(c, z - 2.0 * h * dir, chart);
  R5 r;
  for (int k = 0; k < 5; ++k) r[k] = (8.0 * (p1.x[k] - m1.x[k]) - (p2.x[k] - m2.x[k])) / (12.0 * h);
  return r;
}

Real dot(const R5& a, const R5& b) {
  Real s = 0.0;
  for (int k = 0; k < 5; ++k) s += a[k] * b[k];
  return s;
}

void check_step(Real h) {
  if (!(h >= 1e-6)) throw Error(ErrorKind::kStepTooSmall, "finite-difference step below 1e-6");
  if (h > 1e-1) throw Error(ErrorKind::kStepTooLarge, "finite-difference step above 0.1");
}

}  // namespace

S4Point surface_value(const CurveExpr& c, Complex z, Chart chart) {
  const HVec u = eval_jet(c, z, 0, chart).value();
  if (!(u.norm() > kPoleEps) || !std::isfinite(u.norm())) throw Error(ErrorKind::kPoleAtPoint, "lift vanishes or diverges at point");
  return s4_coords(twistor_project(ProjPoint(u)));
}

SurfaceSample surface_point(const CurveExpr& c, Complex z, Real h, Chart chart) {
  check_step(h);
  SurfaceSample s;
  s.z = z;
  s.point = surface_value(c, z, chart);
  s.dx = central_diff(c, z, 1.0, h, chart);
  s.dy = central_diff(c, z, Complex{0.0, 1.0}, h, chart);
  s.E = dot(s.dx, s.dx);
  s.F = dot(s.dx, s.dy);
  s.G = dot(s.dy, s.dy);
  return s;
}

Real conformal_residual(const SurfaceSample& s) {
  const Real tr = s.E + s.G;
  if (!(tr >= kMetricFloor)) throw Error(ErrorKind::kDegeneratePoint, "surface is stationary at point");
  return (std::abs(s.E - s.G) + 2.0 * std::abs(s.F)) / tr;
}

Real harmonic_residual(const CurveExpr& c, Complex z, Real h, Chart chart, bool require_conformal) {
  const SurfaceSample s = surface_point(c, z, h, chart);
  const Real conf = conformal_residual(s);
  if (require_conformal && conf > kConformalGate) {
    throw Error(ErrorKind::kNotConformal, "conformal residual " + std::to_string(conf) + " above gate");
  }
  const S4Point e = surface_value(c, z + h, chart), w = surface_value(c, z - h, chart);
  const S4Point n = surface_value(c, z + Complex{0, h}, chart), so = surface_value(c, z - Complex{0, h}, chart);
  const Real tr = s.E + s.G;
  Real acc = 0.0;
  for (int k = 0; k < 5; ++k) {
    const Real lap = (e.x[k] + w.x[k] + n.x[k] + so.x[k] - 4.0 * s.point.x[k]) / (h * h);
    const Real r = lap + tr * s.point.x[k];
    acc += r * r;
  }
  return std::sqrt(acc) / tr;
}

Real antipodal_check(const CurveExpr& c, Complex z, Chart chart) {
  const ProjPoint w = partner_point(c, z, chart);
  const S4Point a = surface_value(c, z, chart);
  const S4Point b = s4_coords(twistor_project(w));
  Real acc = 0.0;
  for (int k = 0; k < 5; ++k) acc += (a.x[k] + b.x[k]) * (a.x[k] + b.x[k]);
  return std::sqrt(acc);
}

std::vector<SurfaceRow> sample_surface(const CurveExpr& c, const GridSpec& grid, Real h, int jobs) {
  check_step(h);
  const std::vector<GridPoint> pts = grid.points();
  const auto rows = parallel_map<std::optional<SurfaceRow>>(pts.size(), jobs, [&](std::size_t i) -> std::optional<SurfaceRow> {
    SurfaceRow row;
    row.chart = pts[i].chart;
    try {
      row.sample = surface_point(c, pts[i].z, h, pts[i].chart);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kPoleAtPoint) throw;
      return std::nullopt;
    }
    try {
      row.conformal = conformal_residual(row.sample);
      row.harmonic = harmonic_residual(c, pts[i].z, h, pts[i].chart, false);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegeneratePoint) throw;
    }
    return row;
  });
  std::vector<SurfaceRow> out;
  for (const auto& r : rows)
    if (r) out.push_back(*r);
  return out;
}

std::string surface_csv(const std::vector<SurfaceRow>& rows) {
  std::string out = "z_re,z_im,s0,s1,s2,s3,s4,E,F,G,conformal_residual,harmonic_residual,chart\n";
  char buf[64];
  auto put = [&](Real v) {
    std::snprintf(buf, sizeof buf, "%.17g,", v);
    out += buf;
  };
  for (const SurfaceRow& r : rows) {
    put(r.sample.z.real());
    put(r.sample.z.imag());
    for (Real x : r.sample.point.x) put(x);
    put(r.sample.E);
    put(r.sample.F);
    put(r.sample.G);
    if (r.conformal) put(*r.conformal); else out += "nan,";
    if (r.harmonic) put(*r.harmonic); else out += "nan,";
    out += to_string(r.chart);
    out += '\n';
  }
  return out;
}

}  // namespace nkcp3
