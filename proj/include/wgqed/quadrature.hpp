#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "wgqed/errors.hpp"

namespace wgqed {

using cplx = std::complex<double>;

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  // Maximum number of bisections applied to any starting panel.
  int max_depth = 60;
  int max_intervals = 50000;
  // Relative rounding noise in evaluations of f. Integrands with poles at
  // distance eta from the real axis lose about eps * scale / eta; errors below
  // noise * integral |f| are treated as converged. Never below 50 eps.
  double noise = 0.0;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double abs_value;  // integral of |f|, sets the rounding floor
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b, int depth, double noise) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<T, 15> fv;
  fv[14] = f(c);
  T kronrod = fv[14] * kWgk[7];
  T gauss = fv[14] * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[2 * j] = f(c - dx);
    fv[2 * j + 1] = f(c + dx);
    kronrod += (fv[2 * j] + fv[2 * j + 1]) * kWgk[j];
    if (j % 2 == 1) gauss += (fv[2 * j] + fv[2 * j + 1]) * kWg[j / 2];
  }
  // QUADPACK error scaling: |K - G| is rescaled by the spread of f about its
  // mean so that smooth panels are not over-refined.
  const T mean = kronrod * 0.5;
  double asc = std::abs(fv[14] - mean) * kWgk[7];
  for (int j = 0; j < 7; ++j)
    asc += (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean)) * kWgk[j];
  asc *= std::abs(h);
  kronrod *= h;
  gauss *= h;
  double abs_value = std::abs(fv[14]) * kWgk[7];
  for (int j = 0; j < 14; ++j) abs_value += std::abs(fv[j]) * kWgk[j / 2];
  abs_value *= std::abs(h);
  double err = std::abs(kronrod - gauss);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  err = std::max(err, noise * abs_value);
  return {a, b, kronrod, err, abs_value, depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over the panels
// [points[0], points[1]], [points[1], points[2]], ... Known singular or
// nearly-singular locations of the integrand belong in `points` so that
// subdivision concentrates around them. Throws QuadratureError with the worst
// subinterval when the tolerance cannot be met within the budget.
template <class F>
auto integrate(F&& f, std::span<const double> points, const QuadratureOptions& opt = {})
    -> QuadResult<decltype(f(0.0))> {
  using T = decltype(f(0.0));
  QuadResult<T> out;
  if (points.size() < 2) return out;
  std::priority_queue<detail::Panel<T>> heap;
  const double noise = std::max(opt.noise, detail::kRoundoff);
  T total{};
  double total_err = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto p = detail::gk15<T>(f, points[i], points[i + 1], 0, noise);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    total_abs += p.abs_value;
    heap.push(p);
  }
  std::vector<detail::Panel<T>> frozen;
  bool converged = false;
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    // Cancelling contributions (e.g. a pole pair) can put the requested
    // relative accuracy below rounding; accept the rounding floor then.
    const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(total),
                                    1.01 * noise * total_abs});
    if (total_err <= target) {
      converged = true;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    if (worst.depth >= opt.max_depth || intervals >= opt.max_intervals) {
      frozen.push_back(worst);
      if (intervals >= opt.max_intervals) break;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15<T>(f, worst.a, mid, worst.depth + 1, noise);
    auto right = detail::gk15<T>(f, mid, worst.b, worst.depth + 1, noise);
    out.evaluations += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the panels to avoid drift from the running updates.
  T sum{};
  double err = 0.0;
  const detail::Panel<T>* worst_panel = nullptr;
  auto visit = [&](const detail::Panel<T>& p) {
    sum += p.value;
    err += p.error;
    if (!worst_panel || p.error > worst_panel->error) worst_panel = &p;
  };
  std::vector<detail::Panel<T>> rest;
  while (!heap.empty()) {
    rest.push_back(heap.top());
    heap.pop();
  }
  for (const auto& p : rest) visit(p);
  for (const auto& p : frozen) visit(p);
  out.value = sum;
  out.error = err;
  double abs_sum = 0.0;
  for (const auto& p : rest) abs_sum += p.abs_value;
  for (const auto& p : frozen) abs_sum += p.abs_value;
  const double target = std::max({opt.abs_tol, opt.rel_tol * std::abs(sum),
                                  1.01 * noise * abs_sum});
  // The running sums can drift by rounding; trust the loop's decision then.
  if (!converged && err > target) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge: error " << err << " > target " << target
       << ", worst panel [" << worst_panel->a << ", " << worst_panel->b << "]";
    throw QuadratureError(os.str(), worst_panel->a, worst_panel->b, worst_panel->error);
  }
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  const std::array<double, 2> pts{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(pts), opt);
}

// Sorted, de-duplicated breakpoints: the endpoints plus every interior point.
std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Nodes/weights of an n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// Principal value of the integral of g(x) / (x - x0) over [a, b]. The part of
// the interval symmetric about x0 is evaluated with node pairs equidistant from
// the singularity, i.e. as the integral of (g(x0 + t) - g(x0 - t)) / t.
template <class G>
auto principal_value(G&& g, double a, double b, double x0, const QuadratureOptions& opt = {})
    -> QuadResult<decltype(g(0.0))> {
  using T = decltype(g(0.0));
  auto plain = [&](double x) -> T { return g(x) / (x - x0); };
  if (x0 <= a || x0 >= b) {
    if (x0 == a || x0 == b) throw DomainError("principal_value: pole on an endpoint");
    return integrate(plain, a, b, opt);
  }
  const double h = std::min(x0 - a, b - x0);
  auto symmetric = [&](double t) -> T { return (g(x0 + t) - g(x0 - t)) / t; };
  QuadResult<T> out = integrate(symmetric, 0.0, h, opt);
  if (x0 - h > a) {
    auto r = integrate(plain, a, x0 - h, opt);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  } else if (x0 + h < b) {
    auto r = integrate(plain, x0 + h, b, opt);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  }
  return out;
}

}  // namespace wgqed
