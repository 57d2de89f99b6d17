#include "nkcp3/wjet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nkcp3/error.hpp"

namespace nkcp3 {
namespace {

constexpr Real kBinomial[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

void check_order(int order) {
  if (order < 0 || order > WJet::kMaxOrder) {
    throw Error(ErrorKind::kOrderOutOfRange, "jet order " + std::to_string(order) + " not in [0, 3]");
  }
}

}  // namespace

WJet::WJet(int order) : order_(order) { check_order(order); }

WJet WJet::constant(Complex value, int order) {
  WJet j(order);
  j.d_[0][0] = value;
  return j;
}

Complex WJet::d(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) return {};
  return d_[a][b];
}

void WJet::set(int a, int b, Complex v) {
  if (a < 0 || b < 0 || a + b > order_) {
    throw Error(ErrorKind::kOrderOutOfRange, "jet slot beyond stored order");
  }
  d_[a][b] = v;
}

WJet WJet::dz() const {
  if (order_ == 0) throw Error(ErrorKind::kOrderExhausted, "cannot differentiate an order-0 jet");
  WJet r(order_ - 1);
  for (int a = 0; a + 1 <= order_; ++a)
    for (int b = 0; a + 1 + b <= order_; ++b) r.d_[a][b] = d_[a + 1][b];
  return r;
}

WJet WJet::dzb() const {
  if (order_ == 0) throw Error(ErrorKind::kOrderExhausted, "cannot differentiate an order-0 jet");
  WJet r(order_ - 1);
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b + 1 <= order_; ++b) r.d_[a][b] = d_[a][b + 1];
  return r;
}

WJet WJet::truncated(int order) const {
  check_order(order);
  WJet r(std::min(order, order_));
  for (int a = 0; a <= r.order_; ++a)
    for (int b = 0; a + b <= r.order_; ++b) r.d_[a][b] = d_[a][b];
  return r;
}

WJet& WJet::operator+=(const WJet& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b <= order_; ++b) d_[a][b] += rhs.d_[a][b];
  return *this;
}

WJet& WJet::operator-=(const WJet& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b <= order_; ++b) d_[a][b] -= rhs.d_[a][b];
  return *this;
}

WJet& WJet::operator*=(Complex s) {
  for (int a = 0; a <= order_; ++a)
    for (int b = 0; a + b <= order_; ++b) d_[a][b] *= s;
  return *this;
}

WJet operator-(const WJet& j) {
  WJet r = j;
  r *= Complex{-1.0};
  return r;
}

WJet operator*(const WJet& lhs, const WJet& rhs) {
  const int n = std::min(lhs.order_, rhs.order_);
  WJet r(n);
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      Complex s{};
      for (int i = 0; i <= a; ++i)
        for (int k = 0; k <= b; ++k)
          s += kBinomial[a][i] * kBinomial[b][k] * lhs.d_[i][k] * rhs.d_[a - i][b - k];
      r.d_[a][b] = s;
    }
  }
  return r;
}

WJet operator/(const WJet& lhs, const WJet& rhs) {
  const Complex g0 = rhs.d_[0][0];
  if (std::abs(g0) <= kPoleEps) throw Error(ErrorKind::kPoleAtPoint, "division by a vanishing jet");
  const int n = std::min(lhs.order_, rhs.order_);
  WJet q(n);
  // Solve f = g q slot by slot in increasing total degree.
  for (int total = 0; total <= n; ++total) {
    for (int a = 0; a <= total; ++a) {
      const int b = total - a;
      Complex s = lhs.d_[a][b];
      for (int i = 0; i <= a; ++i)
        for (int k = 0; k <= b; ++k) {
          if (i == 0 && k == 0) continue;
          s -= kBinomial[a][i] * kBinomial[b][k] * rhs.d_[i][k] * q.d_[a - i][b - k];
        }
      q.d_[a][b] = s / g0;
    }
  }
  return q;
}

WJet conj(const WJet& j) {
  WJet r(j.order());
  for (int a = 0; a <= j.order(); ++a)
    for (int b = 0; a + b <= j.order(); ++b) r.set(a, b, std::conj(j.d(b, a)));
  return r;
}

WJet powi(const WJet& j, int n) {
  if (n < 0) return WJet::constant(1.0, j.order()) / powi(j, -n);
  WJet result = WJet::constant(1.0, j.order());
  WJet base = j;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

SeedJets seed_jets(Complex z0, int order) {
  SeedJets s{WJet::constant(z0, order), WJet::constant(std::conj(z0), order)};
  if (order >= 1) {
    s.z.set(1, 0, 1.0);
    s.zb.set(0, 1, 1.0);
  }
  return s;
}

Real fd_crosscheck(const JetFunction& f, Complex z0, Real h) {
  auto at = [&](Complex z, int order) {
    const SeedJets s = seed_jets(z, order);
    return f(s.z, s.zb);
  };
  const WJet center = at(z0, 2);
  // Every point of the 3x3 stencil must be regular.
  WJet px, mx, py, my;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      WJet j = at(z0 + Complex(dx * h, dy * h), 1);
      if (dy == 0) (dx > 0 ? px : mx) = j;
      if (dx == 0) (dy > 0 ? py : my) = j;
    }
  }
  auto wirtinger = [&](auto slot) {
    const Complex fx = (slot(px) - slot(mx)) / (2.0 * h);
    const Complex fy = (slot(py) - slot(my)) / (2.0 * h);
    const Complex i{0.0, 1.0};
    return std::pair{(fx - i * fy) / 2.0, (fx + i * fy) / 2.0};
  };
  auto gap = [](Complex jet, Complex fd) { return std::abs(jet - fd) / std::max(1.0, std::abs(jet)); };

  const auto [fz, fzb] = wirtinger([](const WJet& j) { return j.value(); });
  const auto [fzz, fzzb] = wirtinger([](const WJet& j) { return j.d(1, 0); });
  const auto [fzbz, fzbzb] = wirtinger([](const WJet& j) { return j.d(0, 1); });
  return std::max({gap(center.d(1, 0), fz), gap(center.d(0, 1), fzb), gap(center.d(2, 0), fzz),
                   gap(center.d(1, 1), fzzb), gap(center.d(1, 1), fzbz), gap(center.d(0, 2), fzbzb)});
}

int HJet::order() const { return c[0].order(); }

HVec HJet::value() const { return {c[0].value(), c[1].value(), c[2].value(), c[3].value()}; }

HVec HJet::dz_value() const { return {c[0].d(1, 0), c[1].d(1, 0), c[2].d(1, 0), c[3].d(1, 0)}; }

HVec HJet::dzb_value() const { return {c[0].d(0, 1), c[1].d(0, 1), c[2].d(0, 1), c[3].d(0, 1)}; }

HJet HJet::dz() const { return {{c[0].dz(), c[1].dz(), c[2].dz(), c[3].dz()}}; }

HJet HJet::dzb() const { return {{c[0].dzb(), c[1].dzb(), c[2].dzb(), c[3].dzb()}}; }

HJet HJet::truncated(int order) const {
  return {{c[0].truncated(order), c[1].truncated(order), c[2].truncated(order), c[3].truncated(order)}};
}

HJet HJet::constant(const HVec& v, int order) {
  return {{WJet::constant(v[0], order), WJet::constant(v[1], order), WJet::constant(v[2], order),
           WJet::constant(v[3], order)}};
}

HJet operator+(const HJet& u, const HJet& v) {
  return {{u.c[0] + v.c[0], u.c[1] + v.c[1], u.c[2] + v.c[2], u.c[3] + v.c[3]}};
}

HJet operator-(const HJet& u, const HJet& v) {
  return {{u.c[0] - v.c[0], u.c[1] - v.c[1], u.c[2] - v.c[2], u.c[3] - v.c[3]}};
}

HJet operator*(const HJet& u, const WJet& s) { return {{u.c[0] * s, u.c[1] * s, u.c[2] * s, u.c[3] * s}}; }

WJet herm(const HJet& v, const HJet& w) {
  WJet s = conj(v.c[0]) * w.c[0];
  for (std::size_t k = 1; k < 4; ++k) s += conj(v.c[k]) * w.c[k];
  return s;
}

WJet sympl(const HJet& v, const HJet& w) {
  return v.c[0] * w.c[1] - v.c[1] * w.c[0] + v.c[2] * w.c[3] - v.c[3] * w.c[2];
}

HJet right_j(const HJet& v) {
  return {{-conj(v.c[1]), conj(v.c[0]), -conj(v.c[3]), conj(v.c[2])}};
}

HJet horizontal_project(const HJet& u, const HJet& x) {
  const WJet n = herm(u, u);
  const HJet uj = right_j(u);
  return x - u * (herm(u, x) / n) - uj * (herm(uj, x) / n);
}

}  // namespace nkcp3
