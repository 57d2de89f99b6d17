#include "nkcp3/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nkcp3/error.hpp"

namespace nkcp3 {

namespace {

constexpr Real kPi = std::numbers::pi;
constexpr Real kInf = std::numeric_limits<Real>::infinity();

// Lift poles are removable for every normalized quantity, so a point that hits
// one exactly is evaluated a hair away instead.
const Complex kNudge = std::polar(1e-11, kPi / 5.0);

template <typename F>
auto eval_near(const F& f, Complex z) -> decltype(f(z)) {
  try {
    return f(z);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kPoleAtPoint) throw;
  }
  return f(z + kNudge);
}

bool tolerable(const Error& e) {
  return e.kind() == ErrorKind::kPoleAtPoint || e.kind() == ErrorKind::kNoHorizontalTangent;
}

Real phase_step(Complex from, Complex to) { return std::arg(to / from); }

}  // namespace

int winding_order(const ChartFunction& fn, Complex center, Real radius, int n) {
  if (n < kMinWindingSamples) throw Error(ErrorKind::kInsufficientSamples, "winding needs at least 64 samples");
  if (!(radius > 0.0)) throw Error(ErrorKind::kInvalidArgument, "winding radius must be positive");
  for (;; n *= 2) {
    std::vector<Complex> v(n);
    for (int k = 0; k < n; ++k) {
      v[k] = fn(center + std::polar(radius, 2.0 * kPi * k / n));
      if (!(std::abs(v[k]) > kContourFloor)) {
        throw Error(ErrorKind::kZeroOnContour, "function vanishes on the winding contour");
      }
    }
    Real total = 0.0;
    Real worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const Real d = phase_step(v[k], v[(k + 1) % n]);
      total += d;
      worst = std::max(worst, std::abs(d));
    }
    if (worst < kPi / 2.0) return static_cast<int>(std::lround(total / (2.0 * kPi)));
    if (n * 2 > kMaxWindingSamples) {
      if (worst < kPi) return static_cast<int>(std::lround(total / (2.0 * kPi)));
      throw Error(ErrorKind::kInsufficientSamples, "phase jumps persist at maximum contour refinement");
    }
  }
}

namespace {

using ScanFn = std::function<Real(Chart, Complex)>;
using LocalFactory = std::function<ChartFunction(Chart, Complex)>;

struct Refined {
  Complex z;
  Real value = kInf;
};

// Damped Newton on (Re f, Im f) with a central-difference Jacobian, confined
// to a few grid steps around the start.
Refined newton(const ChartFunction& f, Complex z0, Real step, Real tol) {
  Complex z = z0;
  Complex fz = eval_near(f, z);
  for (int it = 0; it < 80 && std::abs(fz) > tol * 1e-4; ++it) {
    const Real h = 1e-7 * (1.0 + std::abs(z));
    const Complex fx = (eval_near(f, z + h) - eval_near(f, z - h)) / (2.0 * h);
    const Complex fy = (eval_near(f, z + Complex{0, h}) - eval_near(f, z - Complex{0, h})) / (2.0 * h);
    const Real det = fx.real() * fy.imag() - fy.real() * fx.imag();
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    const Real dx = -(fy.imag() * fz.real() - fy.real() * fz.imag()) / det;
    const Real dy = -(-fx.imag() * fz.real() + fx.real() * fz.imag()) / det;
    bool moved = false;
    for (Real lambda = 1.0; lambda > 1e-6; lambda /= 2.0) {
      const Complex zn = z + lambda * Complex{dx, dy};
      if (std::abs(zn - z0) > 3.0 * step) continue;
      const Complex fn = eval_near(f, zn);
      if (std::abs(fn) < std::abs(fz)) {
        z = zn;
        fz = fn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {z, std::abs(fz)};
}

struct Candidate {
  Chart chart;
  Complex z;
  Real residual;
};

std::vector<ZeroRecord> locate_impl(const ScanFn& scan, const LocalFactory& local, const GridSpec& grid, Real tol, int jobs,
                                    bool* identically_zero) {
  grid.validate();
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "tolerance must be positive");
  const int n = grid.samples;
  const Real step = 2.0 * grid.half_width / (n - 1);
  const bool both = grid.has_chart(Chart::kZero) && grid.has_chart(Chart::kInfinity);

  Real max_scan = 0.0;
  bool any = false;
  std::vector<Candidate> found;
  for (Chart chart : grid.charts) {
    const auto values = parallel_map<Real>(static_cast<std::size_t>(n) * n, jobs, [&](std::size_t i) {
      try {
        const Real v = eval_near([&](Complex z) { return scan(chart, z); }, grid.node(static_cast<int>(i % n), static_cast<int>(i / n)));
        return std::isfinite(v) ? v : kInf;
      } catch (const Error& e) {
        if (!tolerable(e)) throw;
      }
      return kInf;
    });
    for (Real v : values) {
      if (v < kInf) {
        any = true;
        max_scan = std::max(max_scan, v);
      }
    }
    std::vector<Complex> starts;
    for (int iy = 1; iy + 1 < n; ++iy) {
      for (int ix = 1; ix + 1 < n; ++ix) {
        const Real v = values[iy * n + ix];
        if (!(v < kInf)) continue;
        bool minimum = true;
        for (int dy = -1; dy <= 1 && minimum; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            if ((dx || dy) && values[(iy + dy) * n + ix + dx] < v) {
              minimum = false;
              break;
            }
        if (minimum) starts.push_back(grid.node(ix, iy));
      }
    }
    const auto refined = parallel_map<Candidate>(starts.size(), jobs, [&](std::size_t i) {
      Candidate c{chart, starts[i], kInf};
      try {
        const Refined r = newton(local(chart, starts[i]), starts[i], step, tol);
        c.z = r.z;
        c.residual = eval_near([&](Complex z) { return scan(chart, z); }, r.z);
      } catch (const Error& e) {
        if (!tolerable(e)) throw;
      }
      return c;
    });
    for (const Candidate& c : refined)
      if (c.residual < tol) found.push_back(c);
  }
  if (!any) throw Error(ErrorKind::kEmptyGrid, "no grid point could be evaluated");
  if (identically_zero) *identically_zero = max_scan < tol;
  if (max_scan < tol) return {};

  // Merge Newton duplicates, keeping the best residual.
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
  std::vector<Candidate> zeros;
  for (const Candidate& c : found) {
    const bool dup = std::any_of(zeros.begin(), zeros.end(), [&](const Candidate& o) {
      return o.chart == c.chart && std::abs(o.z - c.z) < kZeroMergeDistance;
    });
    if (!dup) zeros.push_back(c);
  }

  std::vector<ZeroRecord> out;
  for (const Candidate& c : zeros) {
    if (both && ((c.chart == Chart::kZero && std::abs(c.z) > 1.0) || (c.chart == Chart::kInfinity && std::abs(c.z) >= 1.0))) continue;
    Real nearest = kInf;
    for (const Candidate& o : zeros)
      if (&o != &c && o.chart == c.chart) nearest = std::min(nearest, std::abs(o.z - c.z));
    Real radius = std::min(kMaxWindingRadius, nearest / 2.0);
    const ChartFunction f = local(c.chart, c.z);
    for (int attempt = 0;; ++attempt) {
      try {
        const int order = winding_order(f, c.z, radius);
        out.push_back({c.z, c.chart, order, c.residual, radius});
        break;
      } catch (const Error& e) {
        if (attempt >= 4 || (e.kind() != ErrorKind::kZeroOnContour && !tolerable(e))) throw;
        radius *= 0.6;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

DivisorReport make_report(std::vector<ZeroRecord> zeros, bool identically_zero) {
  DivisorReport r;
  r.zeros = std::move(zeros);
  r.identically_zero = identically_zero;
  for (const ZeroRecord& z : r.zeros) r.total_order += z.order;
  return r;
}

}  // namespace

std::vector<ZeroRecord> locate_zeros(const SphereFunction& fn, const GridSpec& grid, Real tol, int jobs) {
  return locate_impl([&](Chart c, Complex z) { return std::abs(fn(c, z)); },
                     [&](Chart c, Complex) -> ChartFunction { return [fn, c](Complex z) { return fn(c, z); }; }, grid, tol, jobs,
                     nullptr);
}

DivisorReport function_divisor(const SphereFunction& fn, const GridSpec& grid, Real tol, int jobs) {
  bool flat = false;
  auto zeros = locate_impl([&](Chart c, Complex z) { return std::abs(fn(c, z)); },
                           [&](Chart c, Complex) -> ChartFunction { return [fn, c](Complex z) { return fn(c, z); }; }, grid, tol,
                           jobs, &flat);
  return make_report(std::move(zeros), flat);
}

DivisorReport invariant_divisor(const CurveExpr& c, Invariant inv, const GridSpec& grid, Real tol, int jobs) {
  bool flat = false;
  auto zeros = locate_impl([&](Chart ch, Complex z) { return invariant_density(c, inv, z, ch); },
                           [&](Chart ch, Complex anchor) { return section_probe(c, inv, ch, anchor); }, grid, tol, jobs, &flat);
  DivisorReport r = make_report(std::move(zeros), flat);
  r.invariant = inv;
  return r;
}

nlohmann::json to_json(const DivisorReport& r) {
  nlohmann::json zeros = nlohmann::json::array();
  for (const ZeroRecord& z : r.zeros) {
    zeros.push_back({{"chart", std::string(to_string(z.chart))},
                     {"z", {z.location.real(), z.location.imag()}},
                     {"order", z.order},
                     {"residual", z.residual}});
  }
  nlohmann::json out;
  out["invariant"] = r.invariant ? nlohmann::json(std::string(to_string(*r.invariant))) : nlohmann::json(nullptr);
  out["zeros"] = zeros;
  out["total_order"] = r.total_order;
  out["identically_zero"] = r.identically_zero;
  return out;
}

namespace {

// d/dz d/dzbar log |u|^2 at a point, from second-order jets.
Real log_norm_laplacian(const CurveExpr& c, Complex z, Chart chart) {
  HJet u = eval_jet(c, z, 2, chart);
  const Real scale = u.value().norm();
  if (!(scale > kPoleEps)) throw Error(ErrorKind::kPoleAtPoint, "lift vanishes at point");
  const WJet inv = WJet::constant(1.0 / scale, 2);
  WJet norm(2);
  for (WJet& k : u.c) {
    k = k * inv;
    norm += k * conj(k);
  }
  const Complex n = norm.value();
  const Complex a = norm.d(1, 0) / n;
  const Complex b = norm.d(0, 1) / n;
  return (norm.d(1, 1) / n - a * b).real();
}

}  // namespace

ChernDegree chern_degree(const CurveExpr& c, const GridSpec& grid) {
  grid.validate();
  const int n_theta = std::max(64, 4 * grid.samples);
  Real total = 0.0;
  for (Chart chart : grid.charts) {
    auto ring = [&](Real r) {
      Real s = 0.0;
      for (int k = 0; k < n_theta; ++k) {
        const Complex z = std::polar(r, 2.0 * kPi * (k + 0.5) / n_theta);
        s += eval_near([&](Complex p) { return log_norm_laplacian(c, p, chart); }, z);
      }
      return r * s * (2.0 * kPi / n_theta);
    };
    total += boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(ring, 0.0, 1.0, 12, 1e-10);
  }
  ChernDegree d;
  d.raw = total / kPi;
  d.degree = static_cast<int>(std::lround(d.raw));
  d.drift = std::abs(d.raw - d.degree);
  if (d.drift > 0.1) {
    throw Error(ErrorKind::kQuadratureDrift, "curvature integral " + std::to_string(d.raw) + " is not near an integer");
  }
  return d;
}

}  // namespace nkcp3
