#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nkcp3/curve.hpp"
#include "nkcp3/grid.hpp"

namespace nkcp3 {

using ChartFunction = std::function<Complex(Complex)>;
/// A complex function on each chart of the sphere.
using SphereFunction = std::function<Complex(Chart, Complex)>;

struct ZeroRecord {
  Complex location;
  Chart chart = Chart::kZero;
  int order = 0;
  Real residual = 0.0;
  Real radius = 0.0;  // contour radius used for the order
};

inline constexpr int kMinWindingSamples = 64;
inline constexpr int kMaxWindingSamples = 65536;
inline constexpr Real kContourFloor = 1e-9;
inline constexpr Real kZeroMergeDistance = 1e-4;
inline constexpr Real kMaxWindingRadius = 0.25;

/// Winding number of fn around the circle |z - center| = radius. The circle is
/// refined until every phase increment is below pi/2.
/// Throws ZeroOnContour if |fn| <= 1e-9 on a sample and InsufficientSamples
/// if an increment still reaches pi at the maximum refinement.
int winding_order(const ChartFunction& fn, Complex center, Real radius, int n = 256);

/// Zeros of fn on the grid charts. Interior local minima of |fn| are refined
/// by damped Newton and kept when the refined |fn| is below tol. With both
/// charts present, chart 0 owns |z| <= 1 and chart infinity owns |w| < 1.
std::vector<ZeroRecord> locate_zeros(const SphereFunction& fn, const GridSpec& grid, Real tol, int jobs = 1);

struct DivisorReport {
  std::optional<Invariant> invariant;
  std::vector<ZeroRecord> zeros;
  int total_order = 0;
  bool identically_zero = false;
};

/// Divisor of an invariant section of a curve. Zeros are located on the
/// invariant density and counted on a gauge-fixed local section, so poles of
/// the lift do not disturb the orders.
DivisorReport invariant_divisor(const CurveExpr& c, Invariant inv, const GridSpec& grid, Real tol, int jobs = 1);

DivisorReport function_divisor(const SphereFunction& fn, const GridSpec& grid, Real tol, int jobs = 1);

nlohmann::json to_json(const DivisorReport& r);

struct ChernDegree {
  int degree = 0;
  Real raw = 0.0;
  Real drift = 0.0;
};

/// Degree of the pullback of the dual tautological bundle,
/// (1/pi) * integral of d/dz d/dzbar log |u|^2, with each chart integrating its
/// unit disk. Throws QuadratureDrift when the raw value is more than 0.1 away
/// from an integer.
ChernDegree chern_degree(const CurveExpr& c, const GridSpec& grid);

}  // namespace nkcp3
