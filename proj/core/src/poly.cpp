#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "nkcp3/error.hpp"
#include "nkcp3/ratfun.hpp"

namespace nkcp3 {

CPoly::CPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex CPoly::operator()(Complex z) const {
  Complex r{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * z + *it;
  return r;
}

CPoly CPoly::derivative() const {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<Real>(k));
  return CPoly(std::move(d));
}

Real CPoly::scale_at(Complex z) const {
  Real s = 0.0;
  const Real r = std::abs(z);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

namespace {

constexpr int kMaxSweeps = 200;
constexpr Real kMergeDistance = 1e-6;

// Returns false if the sweeps stall before every correction is negligible.
bool aberth(const CPoly& p, std::vector<Complex>& z) {
  const CPoly dp = p.derivative();
  const int n = p.degree();
  const auto& a = p.coeffs();
  // Start on a circle about the centroid of the roots, radius from the
  // geometric mean of the root moduli about that centroid.
  const Complex center = -a[n - 1] / (static_cast<Real>(n) * a[n]);
  Real radius = std::pow(std::abs(p(center) / a[n]), 1.0 / n);
  if (!(radius > 1e-8)) radius = 1.0;
  z.resize(n);
  for (int k = 0; k < n; ++k) {
    const Real angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = center + radius * std::polar(1.0, angle);
  }
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool done = true;
    for (int k = 0; k < n; ++k) {
      const Complex pv = p(z[k]);
      if (std::abs(pv) <= 4.0 * std::numeric_limits<Real>::epsilon() * p.scale_at(z[k])) continue;
      const Complex ratio = pv / dp(z[k]);
      Complex sum{};
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = Complex{1e-3, 1e-3};
      z[k] -= step;
      if (std::abs(step) > 1e-14 * std::max(1.0, std::abs(z[k]))) done = false;
    }
    if (done) return true;
  }
  return false;
}

std::vector<Complex> companion_roots(const CPoly& p) {
  const int n = p.degree();
  const auto& a = p.coeffs();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) m(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) m(k, n - 1) = -a[k] / a[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return out;
}

}  // namespace

std::vector<PolyRoot> poly_roots(const CPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "zero polynomial has no finite root set");
  if (p.degree() == 0) return {};
  std::vector<Complex> z;
  if (!aberth(p, z)) z = companion_roots(p);

  // Single-linkage clustering of nearby approximations.
  std::vector<int> cluster(z.size(), -1);
  int clusters = 0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (cluster[k] >= 0) continue;
    cluster[k] = clusters;
    std::vector<std::size_t> stack{k};
    while (!stack.empty()) {
      const std::size_t s = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (cluster[j] < 0 && std::abs(z[j] - z[s]) <= kMergeDistance) {
          cluster[j] = clusters;
          stack.push_back(j);
        }
      }
    }
    ++clusters;
  }
  std::vector<PolyRoot> roots(clusters, PolyRoot{Complex{}, 0});
  for (std::size_t k = 0; k < z.size(); ++k) {
    roots[cluster[k]].root += z[k];
    roots[cluster[k]].multiplicity += 1;
  }
  for (auto& r : roots) r.root /= static_cast<Real>(r.multiplicity);
  std::sort(roots.begin(), roots.end(), [](const PolyRoot& l, const PolyRoot& r) {
    if (l.root.real() != r.root.real()) return l.root.real() < r.root.real();
    return l.root.imag() < r.root.imag();
  });
  return roots;
}

}  // namespace nkcp3
