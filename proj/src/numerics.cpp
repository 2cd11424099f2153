#include "critdamp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace critdamp {
namespace numerics {

namespace {

// Kronrod abscissae (positive half) and weights; odd entries are the
// 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.error < rhs.error;
  }
};

Panel gauss_kronrod_15(const ScalarFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    kronrod += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  return Panel{a, b, kronrod * half, err};
}

}  // namespace

QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureOptions& opts) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), opts);
}

QuadratureResult integrate(const ScalarFunction& f,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& opts) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate: need at least two breakpoints");
  }
  QuadratureResult out;
  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i] == breakpoints[i + 1]) continue;
    Panel p = gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }
  std::size_t subdivisions = panels.size();
  auto tolerance = [&] {
    return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };
  while (!panels.empty() && total_err > tolerance() &&
         subdivisions < opts.max_subdivisions) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Cannot bisect further at machine resolution.
      panels.push(Panel{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    const Panel left = gauss_kronrod_15(f, worst.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }
  // Re-sum from the panels so the value does not carry the drift of the
  // running updates.
  double sum = 0.0;
  double err = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : all) {
    sum += p.value;
    err += p.error;
  }
  out.value = sum;
  out.error = err;
  out.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(sum));
  return out;
}

std::vector<double> geometric_breakpoints(double t) {
  std::vector<double> pts{0.0};
  double edge = 1.0;
  while (edge < t) {
    pts.push_back(edge);
    edge = 2.0 * edge + 1.0;
  }
  if (t > 0.0) pts.push_back(t);
  return pts;
}

GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double find_root(const ScalarFunction& f, double a, double b, double xtol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::domain_error("find_root: endpoints do not bracket a root");
  }
  for (int it = 0; it < 400 && std::abs(b - a) > xtol; ++it) {
    const double mid = 0.5 * (a + b);
    double x = b - fb * (b - a) / (fb - fa);
    // Accept the secant point only when it lands well inside the bracket.
    const double margin = 0.25 * std::abs(b - a);
    if (!(x > std::min(a, b) + margin * 0.1 && x < std::max(a, b) - margin * 0.1) ||
        it % 3 == 2) {
      x = mid;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return 0.5 * (a + b);
}

double find_root_newton(const ScalarFunction& f, const ScalarFunction& df,
                        double a, double b, double xtol, double rtol) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::domain_error("find_root_newton: endpoints do not bracket a root");
  }
  double x = 0.5 * (a + b);
  for (int it = 0; it < 500; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double slope = df(x);
    double next = (slope != 0.0) ? x - fx / slope : 0.5 * (a + b);
    if (!(next > std::min(a, b) && next < std::max(a, b))) {
      next = 0.5 * (a + b);
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= xtol + rtol * std::abs(x) || std::abs(b - a) <= xtol) break;
  }
  return x;
}

double golden_section_max(const ScalarFunction& f, double a, double b,
                          double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c == d) break;
  }
  return 0.5 * (a + b);
}

}  // namespace numerics
}  // namespace critdamp
