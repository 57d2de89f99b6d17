#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nkcp3/curve.hpp"
#include "nkcp3/quat.hpp"
#include "nkcp3/ratfun.hpp"

namespace nkcp3::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng, Real radius = 1.0) {
  std::uniform_real_distribution<Real> u(-radius, radius);
  return {u(rng), u(rng)};
}

inline HVec random_hvec(Rng& rng) {
  return {random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng)};
}

inline Quaternion random_quat(Rng& rng) { return {random_complex(rng), random_complex(rng)}; }

/// sum_k a_k z^k with random coefficients and a leading coefficient bounded away from 0.
inline RatExpr random_poly(Rng& rng, int degree) {
  RatExpr p = RatExpr::constant(random_complex(rng));
  for (int k = 1; k <= degree; ++k) {
    Complex a = random_complex(rng);
    if (k == degree) a += Complex{a.real() < 0 ? -0.5 : 0.5, 0.0};
    p = p + RatExpr::constant(a) * RatExpr::powi(RatExpr::z(), k);
  }
  return p;
}

/// Weierstrass data with 2 <= deg f <= 4 and 1 <= deg g <= 4, reproducible
/// per seed. When f' is a constant multiple of g' the curve lies in a plane
/// and is both horizontal and null-torsion; deg f >= 2 with random
/// coefficients keeps the family away from that case.
inline std::vector<CurveExpr> weierstrass_family(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> df(2, 4), dg(1, 4);
  std::vector<CurveExpr> out;
  for (int i = 0; i < n; ++i) {
    RatExpr f = random_poly(rng, df(rng));
    RatExpr g = random_poly(rng, dg(rng));
    out.push_back(CurveExpr::weierstrass(f, g));
  }
  return out;
}

inline std::vector<CurveExpr> fiber_family(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CurveExpr> out;
  for (int i = 0; i < n; ++i) out.push_back(CurveExpr::fiber(random_hvec(rng) + HVec{0.5, 0, 0, 0}));
  return out;
}

/// u = v + (v j) zb^d as an explicit curve.
inline CurveExpr vertical_family(const HVec& v, int d) {
  const HVec vj = right_j(v);
  std::array<RatExpr, 4> c;
  for (int k = 0; k < 4; ++k) {
    c[k] = RatExpr::constant(v.c[k]) + RatExpr::constant(vj.c[k]) * RatExpr::powi(RatExpr::zb(), d);
  }
  return CurveExpr::explicit_curve(c);
}

}  // namespace nkcp3::testing

namespace nkcp3::testing {

/// Random expression tree over z and zb with depth at most `depth`.
inline RatExpr random_expr(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 2 : 7);
  switch (pick(rng)) {
    case 0: return RatExpr::z();
    case 1: return RatExpr::zb();
    case 2: return RatExpr::constant(random_complex(rng, 2.0));
    case 3: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) / (RatExpr::constant(3.0) + random_expr(rng, depth - 1));
    default: return RatExpr::powi(random_expr(rng, depth - 1), std::uniform_int_distribution<int>(-2, 3)(rng));
  }
}

}  // namespace nkcp3::testing
