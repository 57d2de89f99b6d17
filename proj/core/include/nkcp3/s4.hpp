#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nkcp3/curve.hpp"
#include "nkcp3/grid.hpp"
#include "nkcp3/twistor.hpp"

namespace nkcp3 {

inline constexpr Real kDefaultFdStep = 1e-3;
/// E + G below this means the projection is stationary at the point.
inline constexpr Real kMetricFloor = 1e-12;
/// Harmonicity characterizes minimality only for conformal maps.
inline constexpr Real kConformalGate = 1e-3;

using R5 = std::array<Real, 5>;

/// The curve pushed to S^4 by the twistor map, with tangents from fourth-order
/// central differences and the first fundamental form.
struct SurfaceSample {
  Complex z;
  S4Point point;
  R5 dx{};
  R5 dy{};
  Real E = 0.0;
  Real F = 0.0;
  Real G = 0.0;
};

S4Point surface_value(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);
SurfaceSample surface_point(const CurveExpr& c, Complex z, Real h = kDefaultFdStep, Chart chart = Chart::kZero);

/// (|E - G| + 2|F|) / (E + G). Throws DegeneratePoint when E + G < kMetricFloor.
Real conformal_residual(const SurfaceSample& s);

/// |Lap s + (|s_x|^2 + |s_y|^2) s| / (|s_x|^2 + |s_y|^2) with the five-point
/// Laplacian. Throws NotConformal above kConformalGate unless
/// require_conformal is false.
Real harmonic_residual(const CurveExpr& c, Complex z, Real h = kDefaultFdStep, Chart chart = Chart::kZero,
                       bool require_conformal = true);

/// |T(X(z)) + T(partner(X)(z))| in S^4; zero when the two are antipodal.
Real antipodal_check(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

struct SurfaceRow {
  Chart chart = Chart::kZero;
  SurfaceSample sample;
  std::optional<Real> conformal;  // empty at stationary points
  std::optional<Real> harmonic;
};

/// Samples every grid node; poles of the lift are skipped.
std::vector<SurfaceRow> sample_surface(const CurveExpr& c, const GridSpec& grid, Real h = kDefaultFdStep, int jobs = 1);

/// CSV with header z_re,z_im,s0,s1,s2,s3,s4,E,F,G,conformal_residual,harmonic_residual,chart.
/// Undefined residuals are written as nan.
std::string surface_csv(const std::vector<SurfaceRow>& rows);

}  // namespace nkcp3
