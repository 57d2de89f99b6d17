#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "nkcp3/grid.hpp"
#include "nkcp3/ratfun.hpp"
#include "nkcp3/twistor.hpp"
#include "nkcp3/wjet.hpp"

namespace nkcp3 {

/// A parametrized curve in CP^3, given by a local lift u(z) into C^4.
///
///  - Explicit:    four rational expressions in z, zb.
///  - Weierstrass: holomorphic contact integral from data (f, g),
///                 u = (1, f - g c, g, c) with c = f'/(2 g').
///  - Fiber:       the twistor fibre through [v], u = v + (v j) zb.
///  - Partner:     w = (horizontal part of du/dz) * j, for the inner curve.
///
/// Values are immutable and cheap to copy.
class CurveExpr {
 public:
  enum class Kind { kExplicit, kWeierstrass, kFiber, kPartner };

  static constexpr int kMaxPartnerDepth = 2;

  static CurveExpr explicit_curve(std::array<RatExpr, 4> components);
  /// Throws InvalidArgument if f or g involve zb, DegenerateWeierstrass if g' vanishes identically.
  static CurveExpr weierstrass(RatExpr f, RatExpr g);
  static CurveExpr fiber(const HVec& base);
  /// Throws OrderExhausted past kMaxPartnerDepth nested partners.
  static CurveExpr partner(const CurveExpr& inner);

  Kind kind() const;
  /// Lift components (explicit curves and the derived Weierstrass lift).
  const std::array<RatExpr, 4>& components() const;
  const RatExpr& f() const;
  const RatExpr& g() const;
  const HVec& base() const;
  const CurveExpr& inner() const;
  /// Number of nested partner constructions.
  int partner_depth() const;

 private:
  struct Data;
  explicit CurveExpr(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// Jet of the lift in the given chart (z, or w = 1/z). Requested order plus
/// partner depth may not exceed 3.
HJet eval_jet(const CurveExpr& c, Complex z, int order, Chart chart = Chart::kZero);

/// Pseudoholomorphicity defect at a point. For the nearly Kahler structure the
/// horizontal part of du/dzbar and the vertical part of du/dz must vanish;
/// both are divided by |u| and the local derivative scale.
struct PHResidual {
  Real r_horizontal = 0.0;
  Real r_vertical = 0.0;
  Real combined = 0.0;
};

PHResidual ph_residual(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

struct InvariantSample {
  HVec i1_vector;      // horizontal part of du/dz
  Real i1_density = 0;  // |i1_vector| / |u|
  Complex i2_scalar;    // conj(herm(u j, du/dzbar)) / |u|^2
  Real i2_density = 0;  // |i2_scalar|
};

InvariantSample invariants(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

/// |contact_pair(u, du/dz)| / |u|^2; vanishes along contact integrals.
Real contact_residual(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

/// [w] for w = right_j(horizontal_project(u, du/dz)). Throws
/// NoHorizontalTangent where the I1 density is below kDegenerateEps.
ProjPoint partner_point(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

/// Failure of the partner map to be a holomorphic contact integral:
/// |P(dw/dzbar)| / (|w| s) + |contact_pair(w, dw/dz)| / (|w|^2 s), with P the
/// Hermitian projection off w and s the derivative scale of w. Vanishes
/// exactly where the second fundamental invariant does.
Real torsion_residual(const CurveExpr& c, Complex z, Chart chart = Chart::kZero);

/// Frame field adapted to the flag ([u], [partner]) along a non-vertical curve.
FrameField flag_frame_field(const CurveExpr& c, Chart chart = Chart::kZero);

enum class Verdict { kVertical, kHorizontal, kNullTorsion, kGeneric, kNotPseudoholomorphic };

std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::kGeneric;
  Real tol = 0.0;
  Real max_ph_residual = 0.0;
  Real max_i1 = 0.0;
  Real max_i2 = 0.0;
  std::optional<Real> max_torsion;  // only computed when the curve is neither vertical nor horizontal
  int evaluated = 0;
  int skipped = 0;
};

/// Grid classification; "vanishes identically" means the grid maximum of the
/// normalized density is below tol. Throws EmptyGrid if every point is skipped.
Classification classify(const CurveExpr& c, const GridSpec& grid, Real tol, int jobs = 1);

enum class Invariant { kI1, kI2, kII };

std::string_view to_string(Invariant inv);  // "I1", "I2", "II"

/// Gauge-independent modulus of an invariant at a point. For II this is the
/// vertical (0,1) coefficient of the partner lift; vertical points throw
/// NoHorizontalTangent.
Real invariant_density(const CurveExpr& c, Invariant inv, Complex z, Chart chart = Chart::kZero);

/// The invariant as a complex function near `anchor`, written in a gauge pinned
/// by reference vectors taken next to the anchor. The pinned gauge is smooth
/// through poles of the lift, so winding numbers around the anchor are the
/// orders of zero of the underlying holomorphic section.
std::function<Complex(Complex)> section_probe(const CurveExpr& c, Invariant inv, Chart chart, Complex anchor);

}  // namespace nkcp3
