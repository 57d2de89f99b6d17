#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nkcp3/divisor.hpp"
#include "nkcp3/error.hpp"
#include "support/fixtures.hpp"

using namespace nkcp3;
using namespace nkcp3::testing;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIo;
}

CurveExpr explicit4(const char* a, const char* b, const char* c, const char* d) {
  return CurveExpr::explicit_curve({parse_expr(a), parse_expr(b), parse_expr(c), parse_expr(d)});
}

GridSpec chart_zero_grid(int samples) {
  GridSpec g;
  g.samples = samples;
  g.charts = {Chart::kZero};
  return g;
}

}  // namespace

TEST_CASE("winding examples") {
  CHECK(winding_order([](Complex z) { return z * z; }, 0.0, 0.5) == 2);
  CHECK(winding_order([](Complex z) { return std::conj(z); }, 0.0, 0.5) == -1);
  CHECK(winding_order([](Complex z) { return z - 3.0; }, 0.0, 0.5) == 0);
  CHECK(winding_order([](Complex z) { return std::pow(z - 0.1, 7); }, 0.1, 0.3, 64) == 7);
  CHECK(kind_of([] { winding_order([](Complex z) { return z - 0.5; }, 0.0, 0.5); }) == ErrorKind::kZeroOnContour);
  CHECK(kind_of([] { winding_order([](Complex z) { return z; }, 0.0, 0.5, 16); }) == ErrorKind::kInsufficientSamples);
}

TEST_CASE("winding is stable under radius changes") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const Complex a = random_complex(rng), b = a + Complex{0.8, 0.0};
    const auto fn = [&](Complex z) { return (z - a) * (z - a) * (z - b); };
    const int base = winding_order(fn, a, 0.3);
    CHECK(base == 2);
    CHECK(winding_order(fn, a, 0.24) == base);
    CHECK(winding_order(fn, a, 0.36) == base);
  }
}

TEST_CASE("zeros of a quadratic") {
  const SphereFunction fn = [](Chart c, Complex z) {
    return c == Chart::kZero ? z * z - 0.25 : 1.0 - 0.25 * z * z;
  };
  GridSpec grid;
  const DivisorReport r = function_divisor(fn, grid, 1e-7);
  REQUIRE(r.zeros.size() == 2);
  CHECK(r.total_order == 2);
  CHECK_FALSE(r.identically_zero);
  std::vector<Real> xs;
  for (const ZeroRecord& z : r.zeros) {
    CHECK(z.order == 1);
    CHECK(z.chart == Chart::kZero);
    CHECK(std::abs(z.location.imag()) < 1e-8);
    xs.push_back(z.location.real());
  }
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(xs[1] == doctest::Approx(0.5).epsilon(1e-8));
  const nlohmann::json j = to_json(r);
  CHECK(j["total_order"] == 2);
  CHECK(j["zeros"][0]["chart"] == "0");
}

TEST_CASE("argument principle on random polynomials") {
  Rng rng(62);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> roots;
    const int d = deg(rng);
    while (static_cast<int>(roots.size()) < d) {
      const Complex r = random_complex(rng, 1.1);
      if (std::all_of(roots.begin(), roots.end(), [&](Complex s) { return std::abs(r - s) > 0.2; })) roots.push_back(r);
    }
    const SphereFunction fn = [&](Chart, Complex z) {
      Complex p{1.0};
      for (const Complex r : roots) p *= z - r;
      return p;
    };
    const DivisorReport rep = function_divisor(fn, chart_zero_grid(61), 1e-7);
    CAPTURE(d);
    CHECK(rep.total_order == d);
    CHECK(static_cast<int>(rep.zeros.size()) == d);
    for (const ZeroRecord& z : rep.zeros) {
      const Real nearest = std::abs(*std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex b) {
        return std::abs(a - z.location) < std::abs(b - z.location);
      }) - z.location);
      CHECK(nearest < 1e-6);
    }
  }
}

TEST_CASE("invariant divisors") {
  GridSpec grid;
  const DivisorReport v = invariant_divisor(explicit4("1", "zb^2", "0", "0"), Invariant::kI2, grid, 1e-7);
  CHECK(v.total_order == 2);
  REQUIRE(v.zeros.size() == 2);
  CHECK(v.zeros[0].chart != v.zeros[1].chart);
  for (const ZeroRecord& z : v.zeros) CHECK(std::abs(z.location) < 1e-6);

  const CurveExpr fib = CurveExpr::fiber(HVec{1, 0, 0, 0});
  const DivisorReport f2 = invariant_divisor(fib, Invariant::kI2, grid, 1e-7);
  CHECK(f2.zeros.empty());
  CHECK(f2.total_order == 0);
  CHECK(invariant_divisor(fib, Invariant::kI1, grid, 1e-7).identically_zero);

  const CurveExpr w = CurveExpr::weierstrass(parse_expr("z^3"), parse_expr("z"));
  CHECK(invariant_divisor(w, Invariant::kI2, grid, 1e-7).identically_zero);
  CHECK(to_json(invariant_divisor(w, Invariant::kI2, grid, 1e-7))["invariant"] == "I2");
}

TEST_CASE("Chern degree examples") {
  GridSpec grid;
  const struct {
    const char* comps[4];
    int degree;
  } cases[] = {
      {{"1", "z", "0", "0"}, 1},
      {{"1", "zb^2", "0", "0"}, 2},
      {{"1", "2", "0", "3"}, 0},
      {{"1", "z", "z^2", "z^3"}, 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.comps[1]);
    const ChernDegree cd = chern_degree(explicit4(c.comps[0], c.comps[1], c.comps[2], c.comps[3]), grid);
    CHECK(cd.degree == c.degree);
    CHECK(cd.drift < 0.02);
  }
  CHECK(chern_degree(CurveExpr::fiber(HVec{1, 0, 0, 0}), grid).degree == 1);
}
