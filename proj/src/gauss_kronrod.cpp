#include "flsi/gauss_kronrod.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace flsi {

namespace {

// Kronrod abscissae on [0,1) in decreasing order; odd indices are the Gauss points.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525214392, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double err;
  bool splittable;
};

struct ByError {
  const std::vector<Panel>* panels;
  bool operator()(std::size_t i, std::size_t j) const {
    return (*panels)[i].err < (*panels)[j].err;
  }
};

Panel evaluate_panel(const BatchIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, kGkNodes> x{};
  std::array<double, kGkNodes> fx{};
  std::array<double, kGkNodes> ex{};
  // Layout: x[0..9] = c - h*xgk[k], x[10] = c, x[11..20] = c + h*xgk[k].
  for (std::size_t k = 0; k < 10; ++k) {
    x[k] = c - h * kXgk[k];
    x[20 - k] = c + h * kXgk[k];
  }
  x[10] = c;
  f(x, fx, ex);

  double resk = kWgk[10] * fx[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  double inner = kWgk[10] * ex[10];
  for (std::size_t k = 0; k < 10; ++k) {
    const double pair = fx[k] + fx[20 - k];
    resk += kWgk[k] * pair;
    resabs += kWgk[k] * (std::abs(fx[k]) + std::abs(fx[20 - k]));
    inner += kWgk[k] * (ex[k] + ex[20 - k]);
    if (k % 2 == 1) resg += kWg[k / 2] * pair;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fx[10] - reskh);
  for (std::size_t k = 0; k < 10; ++k)
    resasc += kWgk[k] * (std::abs(fx[k] - reskh) + std::abs(fx[20 - k] - reskh));

  const double ah = std::abs(h);
  const double result = resk * h;
  resabs *= ah;
  resasc *= ah;
  double abserr = std::abs((resk - resg) * h);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    abserr = std::max(50.0 * eps * resabs, abserr);

  Panel p{a, b, result, abserr + ah * inner, true};
  if (!std::isfinite(p.value) || !std::isfinite(p.err)) p.err = std::numeric_limits<double>::infinity();
  // Stop splitting once the panel is a few ulps wide.
  const double scale = std::max(std::abs(a), std::abs(b));
  p.splittable = (b - a) > 1000.0 * eps * scale && (b - a) > 0.0;
  return p;
}

} // namespace

QuadResult gk21_panel(const BatchIntegrand& f, double a, double b) {
  const Panel p = evaluate_panel(f, a, b);
  return {p.value, p.err, static_cast<long>(kGkNodes), std::isfinite(p.err)};
}

QuadResult integrate(const BatchIntegrand& f, std::span<const double> breaks,
                     const QuadOptions& opt) {
  QuadResult out;
  if (breaks.size() < 2) return out;

  std::vector<Panel> panels;
  panels.reserve(breaks.size() + 16);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    panels.push_back(evaluate_panel(f, breaks[i], breaks[i + 1]));
    out.evals += kGkNodes;
  }
  if (panels.empty()) return out;

  ByError cmp{&panels};
  std::priority_queue<std::size_t, std::vector<std::size_t>, ByError> heap(cmp);
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    total += panels[i].value;
    total_err += panels[i].err;
    if (panels[i].splittable) heap.push(i);
  }

  auto within_tol = [&] {
    return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  };

  int iterations = 0;
  while (!within_tol() && !heap.empty()) {
    if (static_cast<int>(panels.size()) >= opt.max_panels) break;
    const std::size_t worst = heap.top();
    heap.pop();
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    Panel left = evaluate_panel(f, old.a, mid);
    Panel right = evaluate_panel(f, mid, old.b);
    out.evals += 2 * kGkNodes;
    total += left.value + right.value - old.value;
    total_err += left.err + right.err - old.err;
    panels[worst] = left;
    panels.push_back(right);
    if (left.splittable) heap.push(worst);
    if (right.splittable) heap.push(panels.size() - 1);
    // Resum periodically so incremental updates do not drift.
    if (++iterations % 64 == 0) {
      total = 0.0;
      total_err = 0.0;
      for (const auto& p : panels) {
        total += p.value;
        total_err += p.err;
      }
    }
  }

  // Final sum in left-to-right order so the result does not depend on heap history.
  std::vector<std::size_t> order(panels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return panels[i].a < panels[j].a; });
  total = 0.0;
  total_err = 0.0;
  for (std::size_t i : order) {
    total += panels[i].value;
    total_err += panels[i].err;
  }
  out.value = total;
  out.err = total_err;
  out.converged = std::isfinite(total) && within_tol();
  return out;
}

QuadResult integrate(const BatchIntegrand& f, double a, double b, const QuadOptions& opt) {
  const std::array<double, 2> br{a, b};
  return integrate(f, br, opt);
}

QuadResult integrate_scalar(const std::function<double(double)>& f, double a, double b,
                            const QuadOptions& opt) {
  BatchIntegrand batch = [&f](std::span<const double> x, std::span<double> fx,
                              std::span<double>) {
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
  };
  return integrate(batch, a, b, opt);
}

} // namespace flsi
