// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nkcp3/curve.hpp"
#include "nkcp3/divisor.hpp"
#include "nkcp3/error.hpp"
#include "nkcp3/s4.hpp"
#include "nkcp3/twistor.hpp"
#include "support/fixtures.hpp"

using namespace nkcp3;
using namespace nkcp3::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <typename... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

bool skippable(const Error& e) {
  return e.kind() == ErrorKind::kPoleAtPoint || e.kind() == ErrorKind::kNoHorizontalTangent;
}

// Grid sweep that ignores singular points of the lift.
void sweep(const GridSpec& g, const std::function<void(const GridPoint&)>& fn) {
  for (const GridPoint& p : g.points()) {
    try {
      fn(p);
    } catch (const Error& e) {
      if (!skippable(e)) throw;
    }
  }
}

const GridSpec kStandard{};

Outcome algebraic_identities() {
  Rng rng(11);
  Real worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const HVec v = random_hvec(rng), w = random_hvec(rng);
    const Quaternion q = random_quat(rng);
    const Quaternion hq = quat_pair(v, w);
    const Quaternion dec = Quaternion{herm(v, w), 0} + Quaternion::j() * Quaternion{sympl(v, w), 0};
    worst = std::max(worst, (hq - dec).abs());
    worst = std::max(worst, std::abs(sympl(v, w) - herm(right_j(v), w)));
    worst = std::max(worst, (quat_pair(v, right_mul(w, q)) - hq * q).abs());
  }
  return {worst < 1e-12, fmt("max identity defect %.2e over 1000 pairs", worst)};
}

Outcome structure_equations() {
  std::vector<std::pair<std::string, FrameField>> fields;
  fields.emplace_back("fiber", [](Complex z) {
    return Sp2Frame{HVec{1, std::conj(z), 0, 0}.normalized(), HVec{0, 0, 1, 0}};
  });
  int k = 0;
  for (const CurveExpr& c : weierstrass_family(3, 202)) fields.emplace_back("weierstrass#" + std::to_string(k++), flag_frame_field(c));
  const Complex z0{0.3, 0.2};
  const Real hs[] = {1e-2, 5e-3, 2.5e-3};
  Outcome o;
  Real min_ratio = 1e300;
  for (auto& [name, f] : fields) {
    Real skew[3], st[3];
    for (int i = 0; i < 3; ++i) {
      skew[i] = maurer_cartan(f, z0, hs[i]).skew_residual;
      st[i] = structure_residual(f, z0, hs[i]).max();
    }
    for (int i = 0; i < 2; ++i) {
      min_ratio = std::min({min_ratio, skew[i] / skew[i + 1], st[i] / st[i + 1]});
    }
  }
  o.pass = min_ratio >= 2.0;
  o.detail = fmt("%zu frame fields, smallest halving ratio %.3f", fields.size(), min_ratio);
  return o;
}

Outcome contact_integrality() {
  Real worst = 0.0;
  int n = 0;
  for (const CurveExpr& c : weierstrass_family(10, 303)) {
    sweep(kStandard, [&](const GridPoint& p) {
      worst = std::max(worst, contact_residual(c, p.z, p.chart));
      ++n;
    });
  }
  return {worst < 1e-10, fmt("max |sigma(u,u')|/|u|^2 = %.2e at %d points", worst, n)};
}

Outcome partner_forward() {
  Real ph = 0.0, tor = 0.0;
  int n = 0;
  for (const CurveExpr& w : weierstrass_family(10, 303)) {
    const CurveExpr p = CurveExpr::partner(w);
    sweep(kStandard, [&](const GridPoint& g) {
      const Real r = ph_residual(p, g.z, g.chart).combined;
      const Real t = torsion_residual(p, g.z, g.chart);
      ph = std::max(ph, r);
      tor = std::max(tor, t);
      ++n;
    });
  }
  return {ph < 1e-8 && tor < 1e-8, fmt("max ph %.2e, max torsion %.2e at %d points", ph, tor, n)};
}

Outcome partner_roundtrip() {
  Rng rng(505);
  const auto family = weierstrass_family(20, 505);
  Real worst = 0.0;
  int n = 0;
  while (n < 100) {
    const CurveExpr& w = family[n % family.size()];
    const Complex z = random_complex(rng, 1.5);
    try {
      const CurveExpr pp = CurveExpr::partner(CurveExpr::partner(w));
      const Real d = projective_distance(ProjPoint(eval_jet(pp, z, 0).value()), ProjPoint(eval_jet(w, z, 0).value()));
      worst = std::max(worst, d);
      ++n;
    } catch (const Error& e) {
      if (!skippable(e)) throw;
    }
  }
  return {worst < 1e-8, fmt("max projective distance %.2e over %d samples", worst, n)};
}

Outcome trichotomy() {
  int counts[5] = {};
  bool ok = true;
  auto run = [&](const CurveExpr& c, Verdict expect) {
    const Verdict v = classify(c, kStandard, 1e-7, 4).verdict;
    ++counts[static_cast<int>(v)];
    ok = ok && v == expect;
  };
  for (const CurveExpr& c : fiber_family(5, 606)) run(c, Verdict::kVertical);
  for (const CurveExpr& c : weierstrass_family(10, 303)) {
    run(c, Verdict::kHorizontal);
    run(CurveExpr::partner(c), Verdict::kNullTorsion);
  }
  ok = ok && counts[static_cast<int>(Verdict::kGeneric)] == 0;
  return {ok, fmt("vertical %d, horizontal %d, null_torsion %d, generic %d, not_pseudoholomorphic %d", counts[0], counts[1],
                  counts[2], counts[3], counts[4])};
}

Outcome divisor_bookkeeping() {
  Rng rng(707);
  const HVec v = random_hvec(rng) + HVec{0.5, 0, 0, 0};
  Outcome o;
  for (int d = 1; d <= 2; ++d) {
    const CurveExpr c = vertical_family(v, d);
    const DivisorReport r = invariant_divisor(c, Invariant::kI2, kStandard, 1e-8, 4);
    const ChernDegree ch = chern_degree(c, kStandard);
    const bool ok = r.total_order == 2 * (d - 1) && 2 * ch.degree == 2 + r.total_order && ch.drift < 0.05;
    o.pass = o.pass && ok;
    o.detail += fmt("d=%d: I2 order %d, degree %d (drift %.1e); ", d, r.total_order, ch.degree, ch.drift);
  }
  return o;
}

Outcome minimality() {
  Real conf = 0.0, harm = 0.0;
  for (const CurveExpr& c : weierstrass_family(5, 808)) {
    for (const SurfaceRow& row : sample_surface(c, kStandard, kDefaultFdStep, 4)) {
      Real i1 = 0.0;
      try {
        i1 = invariant_density(c, Invariant::kI1, row.sample.z, row.chart);
      } catch (const Error& e) {
        if (!skippable(e)) throw;
        continue;
      }
      if (i1 < 1e-3 || !row.conformal) continue;
      conf = std::max(conf, *row.conformal);
      harm = std::max(harm, *row.harmonic);
    }
  }
  Real gconf = 0.0, gharm = 0.0;
  const CurveExpr geodesic = CurveExpr::weierstrass(RatExpr::constant(0.0), RatExpr::z());
  for (const SurfaceRow& row : sample_surface(geodesic, kStandard, kDefaultFdStep, 4)) {
    gconf = std::max(gconf, row.conformal.value_or(1.0));
    gharm = std::max(gharm, row.harmonic.value_or(1.0));
  }
  const bool ok = conf < 1e-5 && harm < 1e-3 && gconf < 1e-4 && gharm < 1e-4;
  return {ok, fmt("weierstrass conformal %.2e harmonic %.2e; geodesic conformal %.2e harmonic %.2e", conf, harm, gconf, gharm)};
}

Outcome antipodality() {
  Rng rng(909);
  const auto family = weierstrass_family(20, 909);
  Real worst = 0.0;
  int n = 0;
  while (n < 100) {
    const CurveExpr& c = family[n % family.size()];
    try {
      worst = std::max(worst, antipodal_check(c, random_complex(rng, 1.5)));
      ++n;
    } catch (const Error& e) {
      if (!skippable(e)) throw;
    }
  }
  return {worst < 1e-8, fmt("max |s(X) + s(partner X)| = %.2e over %d samples", worst, n)};
}

Outcome invariant_holomorphy() {
  const CurveExpr c = vertical_family(HVec{1, 0, 0, 0}, 2);
  const auto probe = section_probe(c, Invariant::kI2, Chart::kZero, 0.0);
  Outcome o;
  for (Real r : {0.2, 0.3, 0.4}) {
    const int w = winding_order(probe, 0.0, r);
    o.pass = o.pass && w == 1;
    o.detail += fmt("r=%.1f: %d; ", r, w);
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"algebraic identities", algebraic_identities},
      {"structure equations", structure_equations},
      {"contact integrality", contact_integrality},
      {"partner is null-torsion pseudoholomorphic", partner_forward},
      {"partner roundtrip", partner_roundtrip},
      {"trichotomy witness", trichotomy},
      {"divisor and degree bookkeeping", divisor_bookkeeping},
      {"minimality in S4", minimality},
      {"antipodality", antipodality},
      {"holomorphy of invariants", invariant_holomorphy},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %2d  %-42s %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
