#include "cauchydos/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "cauchydos/errors.hpp"
#include "cauchydos/free_models.hpp"
#include "cauchydos/monte_carlo.hpp"

namespace cauchydos {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish(CheckReport& r, const CheckControl& c, Clock::time_point start) {
  if (c.force_threshold) {
    for (auto& m : r.metrics) {
      if (m.gated) m.threshold = *c.force_threshold;
    }
  }
  r.seed = c.seed;
  r.runtime_seconds = seconds_since(start);
  r.finalize();
}

void add_grid(CheckReport& r, const std::string& prefix, const EnergyGrid& g) {
  r.parameters.emplace_back(prefix + "_min", g.e_min);
  r.parameters.emplace_back(prefix + "_max", g.e_max);
  r.parameters.emplace_back(prefix + "_step", g.step);
}

struct Deviation {
  double sup = 0.0;
  double max_z = 0.0;
  double z_p95 = 0.0;
  double mean_se = 0.0;
};

Deviation compare(const McEstimate& est, const std::vector<double>& exact) {
  Deviation d;
  std::vector<double> z;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double dev = std::abs(est.mean[k] - exact[k]);
    d.sup = std::max(d.sup, dev);
    if (est.has_std_error()) {
      const double se = est.std_error[k];
      d.mean_se += se;
      if (se > 0.0) z.push_back(dev / se);
    }
  }
  if (!z.empty()) {
    d.mean_se /= static_cast<double>(exact.size());
    std::sort(z.begin(), z.end());
    d.max_z = z.back();
    const auto idx = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(z.size()))) - 1;
    d.z_p95 = z[std::min(idx, z.size() - 1)];
  }
  return d;
}

}  // namespace

void CheckReport::finalize() {
  passed = std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) {
    return !m.gated || (std::isfinite(m.value) && m.value <= m.threshold);
  });
}

const Metric* CheckReport::metric(const std::string& n) const {
  for (const auto& m : metrics) {
    if (m.name == n) return &m;
  }
  return nullptr;
}

CheckReport check_theorem1_charfn(const CharfnCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  if (!(p.t_step > 0.0) || !(p.t_max >= 0.0)) {
    throw InvalidArgument("theorem1-charfn: need t_step > 0 and t_max >= 0");
  }
  EnsembleSpec ens;
  ens.model = LatticeBoxSpec{p.dim, p.side, Boundary::periodic};
  ens.kernel = CauchyKernel(p.lambda);
  ens.disorder = p.disorder;
  const auto& box = std::get<LatticeBoxSpec>(ens.model);
  std::vector<int> offset(static_cast<std::size_t>(p.dim), 0);
  offset[0] = p.psi_offset;

  CharfnOptions opt;
  opt.site_phi = 0;
  opt.site_psi = box.index(offset);
  opt.threads = c.threads;
  const auto t = EnergyGrid{0.0, p.t_max, p.t_step}.energies();
  const auto est = charfn_mc(ens, t, p.samples, c.seed, opt);

  const LatticeFreeModel model(p.dim);
  double max_dev = 0.0;
  double max_ratio = 0.0;
  double max_z = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::complex<double> exact = lattice_offdiag_charfn(model, offset, t[k]);
    if (p.disorder) exact *= cauchy_charfn(ens.kernel, t[k]);
    const double dev = std::abs(std::complex<double>(est.mean[k], est.mean_im[k]) - exact);
    const double se = est.has_std_error() ? est.std_error[k] : 0.0;
    max_dev = std::max(max_dev, dev);
    max_ratio = std::max(max_ratio, dev / std::max(0.03, 4.0 * se));
    if (se > 0.0) max_z = std::max(max_z, dev / se);
  }

  CheckReport r;
  r.name = "theorem1-charfn";
  r.parameters = {{"dim", p.dim},          {"lambda", p.lambda},
                  {"side", p.side},        {"samples", static_cast<double>(p.samples)},
                  {"t_max", p.t_max},      {"t_step", p.t_step},
                  {"psi_offset", p.psi_offset}, {"disorder", p.disorder ? 1.0 : 0.0}};
  if (p.disorder) {
    r.metrics.push_back({"max_dev_over_band", max_ratio, 1.0, true});
    r.metrics.push_back({"max_abs_dev", max_dev, 0.0, false});
    r.metrics.push_back({"max_z", max_z, 0.0, false});
  } else {
    r.metrics.push_back({"max_abs_dev", max_dev, 0.02, true});
  }
  finish(r, c, start);
  return r;
}

CheckReport check_theorem1_dos(const DosCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  EnsembleSpec ens;
  ens.model = LatticeBoxSpec{p.dim, p.side, Boundary::periodic};
  ens.kernel = CauchyKernel(p.lambda);
  DosOptions opt;
  opt.observable = p.observable == DosObservableChoice::root ? DosObservable::site
                                                             : DosObservable::site_average;
  opt.threads = c.threads;
  const auto est = dos_mc(ens, p.grid, p.samples, c.seed, p.eta, opt);
  const auto exact =
      lattice_dos_curve(LatticeFreeModel(p.dim), CauchyKernel(p.lambda + p.eta), p.grid).values;
  const auto d = compare(est, exact);

  CheckReport r;
  r.name = "theorem1-dos";
  r.parameters = {{"dim", p.dim},
                  {"lambda", p.lambda},
                  {"eta", p.eta},
                  {"side", p.side},
                  {"samples", static_cast<double>(p.samples)},
                  {"site_average", p.observable == DosObservableChoice::site_average ? 1.0 : 0.0}};
  add_grid(r, "energy", p.grid);
  r.metrics.push_back({"max_z", d.max_z, p.z_threshold, true});
  r.metrics.push_back({"sup_distance", d.sup, p.sup_threshold, true});
  r.metrics.push_back({"z_p95", d.z_p95, p.z_p95_threshold, true});
  r.metrics.push_back({"mean_std_error", d.mean_se, 0.0, false});
  finish(r, c, start);
  return r;
}

double truncated_tree_ball_density(int branching, int depth, int ball_radius, double energy,
                                   double width) {
  const BetheFreeModel model(branching);
  const TreeSpec tree{branching, depth};
  const int top = std::clamp(ball_radius, 0, depth);
  double acc = 0.0;
  double count = 0.0;
  for (int level = 0; level <= top; ++level) {
    const double w = static_cast<double>(tree.level_size(level));
    acc += w * truncated_tree_green(model, depth, level, {energy, width}).imag();
    count += w;
  }
  return acc / count / std::numbers::pi;
}

CheckReport check_bethe(const BetheCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  EnsembleSpec ens;
  ens.model = TreeSpec{p.branching, p.depth};
  ens.kernel = CauchyKernel(p.lambda);
  ens.disorder = p.disorder;
  DosOptions opt;
  opt.observable = p.ball_radius > 0 ? DosObservable::ball : DosObservable::site;
  opt.site = 0;
  opt.ball_radius = p.ball_radius;
  opt.route = DosRoute::resolvent;
  opt.threads = c.threads;
  const auto est = dos_mc(ens, p.grid, p.samples, c.seed, p.eta, opt);

  const double width = p.disorder ? p.lambda + p.eta : p.eta;
  const auto km = bethe_dos_curve(BetheFreeModel(p.branching), CauchyKernel(width), p.grid).values;
  std::vector<double> finite(km.size());
  const auto energies = p.grid.energies();
  double bias = 0.0;
  double raw = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    finite[k] = truncated_tree_ball_density(p.branching, p.depth, p.ball_radius, energies[k], width);
    bias = std::max(bias, std::abs(finite[k] - km[k]));
    raw = std::max(raw, std::abs(est.mean[k] - km[k]));
  }
  const auto d = compare(est, finite);

  CheckReport r;
  r.name = "bethe";
  r.parameters = {{"branching", p.branching},
                  {"lambda", p.lambda},
                  {"eta", p.eta},
                  {"depth", p.depth},
                  {"samples", static_cast<double>(p.samples)},
                  {"ball_radius", p.ball_radius},
                  {"disorder", p.disorder ? 1.0 : 0.0}};
  add_grid(r, "energy", p.grid);
  if (p.disorder) {
    r.metrics.push_back({"sup_bias_corrected", d.sup, p.threshold, true});
    r.metrics.push_back({"sup_raw", raw, 0.0, false});
  } else {
    r.metrics.push_back({"sup_raw", raw, p.threshold, true});
    r.metrics.push_back({"sup_bias_corrected", d.sup, 0.0, false});
  }
  r.metrics.push_back({"finite_depth_bias", bias, 0.0, false});
  r.metrics.push_back({"max_z", d.max_z, 0.0, false});
  finish(r, c, start);
  return r;
}

CheckReport check_analytic_strip(const StripCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  for (double y : p.heights) {
    if (!(std::abs(y) < p.lambda - 0.1)) {
      throw InvalidArgument("analytic-strip: heights must satisfy |y| < lambda - 0.1");
    }
  }
  const LatticeFreeModel model(p.dim);
  const CauchyKernel kernel(p.lambda);
  const double h = p.step;
  double residual = 0.0;
  double real_slice = 0.0;
  for (double y : p.heights) {
    for (double e : p.energies.energies()) {
      const std::complex<double> z{e, y};
      const auto fx = (lattice_dos_smoothed(model, kernel, z + h) -
                       lattice_dos_smoothed(model, kernel, z - h)) /
                      (2.0 * h);
      const auto fy = (lattice_dos_smoothed(model, kernel, z + std::complex<double>(0, h)) -
                       lattice_dos_smoothed(model, kernel, z - std::complex<double>(0, h))) /
                      (2.0 * h);
      // analytic: f_y = i f_x
      residual = std::max(residual, std::abs(fy - std::complex<double>(0, 1) * fx));
      if (y == 0.0) {
        const auto fc = lattice_dos_smoothed(model, kernel, z);
        real_slice = std::max(real_slice, std::abs(fc - lattice_dos_smoothed(model, kernel, e)));
      }
    }
  }
  double not_raised = 0.0;
  for (double y : {p.lambda, 1.05 * p.lambda, -1.05 * p.lambda}) {
    try {
      (void)lattice_dos_smoothed(model, kernel, std::complex<double>(0.0, y));
      not_raised += 1.0;
    } catch (const OutsideStripError&) {
    }
  }

  CheckReport r;
  r.name = "analytic-strip";
  r.parameters = {{"dim", p.dim}, {"lambda", p.lambda}, {"difference_step", p.step}};
  for (std::size_t i = 0; i < p.heights.size(); ++i) {
    r.parameters.emplace_back("height_" + std::to_string(i), p.heights[i]);
  }
  add_grid(r, "energy", p.energies);
  r.metrics.push_back({"max_cr_residual", residual, 1e-5, true});
  r.metrics.push_back({"real_slice_deviation", real_slice, 1e-10, true});
  r.metrics.push_back({"outside_strip_not_raised", not_raised, 0.0, true});
  finish(r, c, start);
  return r;
}

CheckReport check_continuum_ids(const ContinuumCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  EnsembleSpec ens;
  ens.model = ContinuumBoxSpec{p.length, p.mesh_step};
  ens.kernel = CauchyKernel(p.lambda);
  ens.disorder = p.disorder;

  // extend the grid downwards to a far-tail energy on the same lattice
  const double tail = -25.0 * p.lambda;
  EnergyGrid ext = p.grid;
  ext.validate();
  if (p.disorder && tail < p.grid.e_min) {
    const double k = std::ceil((p.grid.e_min - tail) / p.grid.step - 1e-9);
    ext.e_min = p.grid.e_min - k * p.grid.step;
  }
  const auto est = ids_mc(ens, ext, p.samples, c.seed, c.threads);
  const std::size_t offset = ext.size() - p.grid.size();
  const ContinuumFreeModel model;

  McEstimate window;
  window.n_samples = est.n_samples;
  std::vector<double> exact;
  for (std::size_t k = offset; k < est.x.size(); ++k) {
    window.x.push_back(est.x[k]);
    window.mean.push_back(est.mean[k]);
    if (est.has_std_error()) window.std_error.push_back(est.std_error[k]);
    exact.push_back(p.disorder ? continuum_ids_smoothed(model, ens.kernel, est.x[k])
                               : continuum_free_ids(model, est.x[k]));
  }
  const auto d = compare(window, exact);

  CheckReport r;
  r.name = "continuum-ids";
  r.parameters = {{"lambda", p.lambda},
                  {"length", p.length},
                  {"mesh_step", p.mesh_step},
                  {"samples", static_cast<double>(p.samples)},
                  {"disorder", p.disorder ? 1.0 : 0.0}};
  add_grid(r, "energy", p.grid);
  r.metrics.push_back({"sup_distance", d.sup, p.disorder ? 0.02 : 0.01, true});
  r.metrics.push_back({"max_z", d.max_z, 0.0, false});
  if (offset > 0) {
    r.parameters.emplace_back("tail_energy", ext.e_min);
    r.metrics.push_back(
        {"tail_exact", continuum_ids_smoothed(model, ens.kernel, ext.e_min), 0.02, true});
    r.metrics.push_back({"tail_sampled", est.mean[0], 0.02, true});
  }
  finish(r, c, start);
  return r;
}

CheckReport check_semigroup(const SemigroupCheckParams& p, const CheckControl& c) {
  const auto start = Clock::now();
  if (!(p.lambda1 > 0.0) || !(p.lambda2 > 0.0)) {
    throw InvalidArgument("semigroup: both scales must be positive");
  }
  const LatticeFreeModel model(p.dim);
  const EnergyGrid grid{-p.support, p.support, p.step};
  const auto target = lattice_dos_curve(model, CauchyKernel(p.lambda1 + p.lambda2), grid);
  const auto target_swapped = lattice_dos_curve(model, CauchyKernel(p.lambda2 + p.lambda1), grid);

  auto sup_against = [&](double first, double second) {
    const auto curve = lattice_dos_curve(model, CauchyKernel(first), grid);
    const auto conv = convolve_cauchy(curve, CauchyKernel(second));
    double sup = 0.0;
    for (std::size_t k = 0; k < conv.values.size(); ++k) {
      if (std::abs(grid.energy(k)) <= p.window + 1e-12) {
        sup = std::max(sup, std::abs(conv.values[k] - target.values[k]));
      }
    }
    return sup;
  };
  const double sup = sup_against(p.lambda1, p.lambda2);
  const double sup_swapped = p.lambda1 == p.lambda2 ? sup : sup_against(p.lambda2, p.lambda1);
  double swap_gap = 0.0;
  for (std::size_t k = 0; k < target.values.size(); ++k) {
    swap_gap = std::max(swap_gap, std::abs(target.values[k] - target_swapped.values[k]));
  }

  CheckReport r;
  r.name = "semigroup";
  r.parameters = {{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"dim", p.dim},
                  {"window", p.window},   {"support", p.support}, {"step", p.step}};
  r.metrics.push_back({"sup_distance", sup, 1e-4, true});
  r.metrics.push_back({"sup_distance_swapped", sup_swapped, 1e-4, true});
  r.metrics.push_back({"target_swap_gap", swap_gap, 1e-12, true});
  finish(r, c, start);
  return r;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"semigroup",      "analytic-strip", "theorem1-charfn",
                                              "theorem1-dos",   "bethe",          "continuum-ids"};
  return names;
}

CheckReport run_named_check(const std::string& name, const CheckControl& c) {
  if (name == "semigroup") return check_semigroup({}, c);
  if (name == "analytic-strip") return check_analytic_strip({}, c);
  if (name == "theorem1-charfn") return check_theorem1_charfn({}, c);
  if (name == "theorem1-dos") return check_theorem1_dos({}, c);
  if (name == "bethe") return check_bethe({}, c);
  if (name == "continuum-ids") return check_continuum_ids({}, c);
  throw InvalidArgument("unknown check '" + name + "'");
}

namespace {

nlohmann::ordered_json to_json(const CheckReport& r, bool include_runtime) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  auto& params = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  auto& metrics = j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : r.metrics) {
    nlohmann::ordered_json mj;
    mj["name"] = m.name;
    mj["value"] = m.value;
    if (m.gated) mj["threshold"] = m.threshold;
    mj["gated"] = m.gated;
    mj["ok"] = m.ok();
    metrics.push_back(std::move(mj));
  }
  j["passed"] = r.passed;
  j["seed"] = r.seed;
  if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

}  // namespace

std::string report_json(const CheckReport& r, bool include_runtime) {
  return to_json(r, include_runtime).dump(2);
}

std::string reports_json(const std::vector<CheckReport>& reports, bool include_runtime) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, include_runtime));
  return arr.dump(2);
}

void print_report_table(std::ostream& os, const std::vector<CheckReport>& reports) {
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %-26s %14s %12s  %s\n", "check", "metric", "value",
                "threshold", "status");
  os << line;
  for (const auto& r : reports) {
    for (const auto& m : r.metrics) {
      if (m.gated) {
        std::snprintf(line, sizeof line, "%-18s %-26s %14.6g %12.4g  %s\n", r.name.c_str(),
                      m.name.c_str(), m.value, m.threshold, m.ok() ? "ok" : "FAIL");
      } else {
        std::snprintf(line, sizeof line, "%-18s %-26s %14.6g %12s  %s\n", r.name.c_str(),
                      m.name.c_str(), m.value, "-", "info");
      }
      os << line;
    }
    std::snprintf(line, sizeof line, "%-18s %-26s %14.3f %12s  %s\n", r.name.c_str(),
                  "(runtime seconds)", r.runtime_seconds, "", r.passed ? "PASS" : "FAIL");
    os << line;
  }
}

}  // namespace cauchydos
