#pragma once

// Internal quadrature helpers shared by the exact-curve evaluators.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cauchydos::detail {

/// Globally adaptive Gauss-Kronrod (31 point) over the given initial
/// segments: the segment with the largest error estimate is bisected until
/// the summed estimate drops below max(abs_tol, rel_tol * |integral|).
/// Boost supplies the fixed rule; its own recursive driver compares an
/// unscaled error against a scaled estimate and over-refines short intervals.
template <typename F>
auto integrate_segments(F&& f, const std::vector<double>& points, double rel_tol, double abs_tol,
                        std::size_t max_segments = 5000) {
  using Result = decltype(f(points.front()));
  using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Segment {
    double a;
    double b;
    Result value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
  };
  auto eval = [&f](double a, double b) {
    double err = 0.0;
    const Result v = Gk::integrate(f, a, b, 0, 0.0, &err);
    return Segment{a, b, v, err * 0.5 * (b - a)};
  };
  std::priority_queue<Segment> heap;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] > points[i]) heap.push(eval(points[i], points[i + 1]));
  }
  auto totals = [&heap] {
    // copy keeps the heap intact; sums in a fixed (heap) order
    auto h = heap;
    Result sum{};
    double err = 0.0;
    while (!h.empty()) {
      sum += h.top().value;
      err += h.top().error;
      h.pop();
    }
    return std::pair<Result, double>{sum, err};
  };
  auto [sum, err] = totals();
  std::size_t since_total = 0;
  while (!heap.empty() && heap.size() < max_segments) {
    if (since_total == 0) {
      std::tie(sum, err) = totals();
      if (err <= std::max(abs_tol, rel_tol * std::abs(sum))) break;
      since_total = std::max<std::size_t>(1, heap.size() / 4);
    }
    const Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      heap.push(Segment{s.a, s.b, s.value, 0.0});
      continue;
    }
    heap.push(eval(s.a, mid));
    heap.push(eval(mid, s.b));
    --since_total;
  }
  return totals().first;
}

/// Panels of width <= panel_width on [a, b], then globally adaptive GK31.
template <typename F>
auto integrate_panels(F&& f, double a, double b, double panel_width, double rel_tol = 1e-13,
                      double abs_tol = 1e-14) {
  const auto panels =
      static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / panel_width)));
  const double w = (b - a) / static_cast<double>(panels);
  std::vector<double> pts(panels + 1);
  for (std::size_t i = 0; i < panels; ++i) pts[i] = a + static_cast<double>(i) * w;
  pts[panels] = b;
  return integrate_segments(f, pts, rel_tol, abs_tol);
}

/// Integrate over consecutive breakpoints (sorted, deduplicated by caller).
template <typename F>
double integrate_breakpoints(F&& f, const std::vector<double>& points, double rel_tol = 1e-13,
                             double abs_tol = 1e-14) {
  return integrate_segments(f, points, rel_tol, abs_tol);
}

/// 20-point Gauss-Legendre nodes and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 10> kGl20Nodes{
    0.0765265211334973337546404, 0.2277858511416450780804962, 0.3737060887154195606725482,
    0.5108670019508270980043641, 0.6360536807265150254528367, 0.7463319064601507926143051,
    0.8391169718222188233945291, 0.9122344282513259058677524, 0.9639719272779137912676661,
    0.9931285991850949247861224};
inline constexpr std::array<double, 10> kGl20Weights{
    0.1527533871307258506980843, 0.1491729864726037467878287, 0.1420961093183820513292983,
    0.1316886384491766268984945, 0.1181945319615184173123774, 0.1019301198172404350367501,
    0.0832767415767047487247581, 0.0626720483341090635695065, 0.0406014298003869413310400,
    0.0176140071391521183118620};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite 20-point Gauss-Legendre rule on [a, b] with panels of width <= panel_width.
inline QuadratureRule composite_gauss_legendre(double a, double b, double panel_width) {
  const auto panels =
      static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / panel_width)));
  const double w = (b - a) / static_cast<double>(panels);
  QuadratureRule rule;
  rule.nodes.reserve(panels * 20);
  rule.weights.reserve(panels * 20);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * w;
    const double half = 0.5 * w;
    for (std::size_t i = 0; i < kGl20Nodes.size(); ++i) {
      for (double s : {-1.0, 1.0}) {
        rule.nodes.push_back(mid + s * half * kGl20Nodes[i]);
        rule.weights.push_back(half * kGl20Weights[i]);
      }
    }
  }
  return rule;
}

}  // namespace cauchydos::detail
