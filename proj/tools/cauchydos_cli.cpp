// cauchydos: exact smoothed densities of states for Cauchy-disordered
// operators, Monte Carlo ensembles, and the named consistency checks.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource cap.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cauchydos/cauchy.hpp"
#include "cauchydos/errors.hpp"
#include "cauchydos/free_models.hpp"
#include "cauchydos/io.hpp"
#include "cauchydos/monte_carlo.hpp"
#include "cauchydos/verify.hpp"

namespace {

using namespace cauchydos;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string model = "lattice";
  int dim = 1;
  int k = 2;
  double lambda = 0.0;
  std::string grid = "-6:6:0.01";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct SampleArgs {
  int size = 0;
  int depth = 10;
  double mesh = 0.05;
  std::size_t samples = 100;
  double broaden = 0.1;
  std::string observable = "root";
  int ball_radius = 0;
  bool compare_exact = false;
  bool disorder_off = false;
};

struct CharfnArgs {
  int size = 512;
  std::size_t samples = 400;
  std::string t_grid = "0:6:0.1";
  int psi_offset = 0;
  std::string route = "auto";
  bool disorder_off = false;
};

struct CheckArgs {
  std::string name;
  std::string out = "check_report.json";
  double force_threshold = 0.0;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot open '" + path + "' for writing");
  return f;
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    const std::vector<std::string>& argv, json params, std::uint64_t seed,
                    double wall, const std::vector<std::string>& outputs, json extra = {}) {
  json m;
  m["subcommand"] = subcommand;
  m["argv"] = argv;
  m["parameters"] = std::move(params);
  m["master_seed"] = seed;
  m["version"] = CAUCHYDOS_VERSION_STRING;
  m["wall_time_seconds"] = wall;
  m["outputs"] = outputs;
  for (auto& [key, v] : extra.items()) m[key] = v;
  auto f = open_out(path);
  f << m.dump(2) << '\n';
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Usage("--lambda must be positive");
}

int cmd_exact(const Common& c, const std::vector<std::string>& argv) {
  const auto t0 = std::chrono::steady_clock::now();
  require_lambda(c.lambda);
  const CauchyKernel kernel(c.lambda);
  const EnergyGrid grid = parse_grid(c.grid);
  const std::string out = c.out.empty() ? "exact.csv" : c.out;
  json params{{"model", c.model}, {"lambda", c.lambda}, {"grid", c.grid}};
  json extra;
  std::ostringstream csv;
  if (c.model == "lattice") {
    params["dim"] = c.dim;
    const auto curve = lattice_dos_curve(LatticeFreeModel(c.dim), kernel, grid);
    write_density_csv(csv, curve);
    extra["declared_tail_mass"] = 1.0 - cauchy_mass(kernel, grid.e_min, grid.e_max);
    extra["window_mass_trapezoid"] = trapezoid_mass(curve);
  } else if (c.model == "bethe") {
    params["k"] = c.k;
    const auto curve = bethe_dos_curve(BetheFreeModel(c.k), kernel, grid);
    write_density_csv(csv, curve);
    extra["declared_tail_mass"] = 1.0 - cauchy_mass(kernel, grid.e_min, grid.e_max);
    extra["window_mass_trapezoid"] = trapezoid_mass(curve);
  } else if (c.model == "continuum") {
    const auto e = grid.energies();
    std::vector<double> ids(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      ids[i] = continuum_ids_smoothed(ContinuumFreeModel{}, kernel, e[i]);
    }
    write_ids_csv(csv, e, ids);
  } else {
    throw Usage("unknown model '" + c.model + "'");
  }
  open_out(out) << csv.str();
  write_manifest(out + ".manifest.json", "exact", argv, params, c.seed, elapsed(t0), {out},
                 extra);
  return kOk;
}

EnsembleSpec make_ensemble(const Common& c, const SampleArgs& s) {
  require_lambda(c.lambda);
  EnsembleSpec ens;
  ens.kernel = CauchyKernel(c.lambda);
  ens.disorder = !s.disorder_off;
  if (c.model == "lattice") {
    ens.model = LatticeBoxSpec{c.dim, s.size > 0 ? s.size : 2000, Boundary::periodic};
  } else if (c.model == "bethe") {
    ens.model = TreeSpec{c.k, s.depth};
  } else if (c.model == "continuum") {
    ens.model = ContinuumBoxSpec{s.size > 0 ? s.size : 200, s.mesh};
  } else {
    throw Usage("unknown model '" + c.model + "'");
  }
  ens.validate();
  return ens;
}

int cmd_sample(const Common& c, const SampleArgs& s, const std::vector<std::string>& argv) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ens = make_ensemble(c, s);
  const EnergyGrid grid = parse_grid(c.grid);
  if (s.samples == 0) throw Usage("--samples must be positive");
  if (s.broaden < 0.0) throw Usage("--broaden must be nonnegative");
  if (s.samples == 1) {
    std::cerr << "warning: a single sample has no standard error; the std_error column is omitted\n";
  }
  const bool ids_mode = c.model == "continuum" || s.broaden == 0.0;
  const std::string out = c.out.empty() ? "sample.csv" : c.out;

  McEstimate est;
  if (ids_mode) {
    est = ids_mc(ens, grid, s.samples, c.seed, c.threads);
  } else {
    DosOptions opt;
    opt.threads = c.threads;
    if (s.observable == "root") {
      opt.observable = DosObservable::site;
    } else if (s.observable == "site-average") {
      opt.observable = DosObservable::site_average;
    } else if (s.observable == "ball") {
      opt.observable = DosObservable::ball;
      opt.ball_radius = s.ball_radius;
    } else {
      throw Usage("unknown observable '" + s.observable + "'");
    }
    est = dos_mc(ens, grid, s.samples, c.seed, s.broaden, opt);
  }

  std::vector<double> exact;
  if (s.compare_exact) {
    const double width = s.disorder_off ? s.broaden : c.lambda + s.broaden;
    if (ids_mode && c.model != "continuum") {
      throw Usage("--compare-exact needs --broaden > 0 for lattice and bethe models");
    }
    if (c.model == "lattice") {
      exact = lattice_dos_curve(LatticeFreeModel(c.dim), CauchyKernel(width), grid).values;
    } else if (c.model == "bethe") {
      for (double e : grid.energies()) {
        exact.push_back(
            s.observable == "ball"
                ? truncated_tree_ball_density(c.k, s.depth, s.ball_radius, e, width)
                : bethe_dos_smoothed(BetheFreeModel(c.k), CauchyKernel(width), e));
      }
    } else {
      for (double e : grid.energies()) {
        exact.push_back(s.disorder_off ? continuum_free_ids(ContinuumFreeModel{}, e)
                                       : continuum_ids_smoothed(ContinuumFreeModel{}, ens.kernel, e));
      }
    }
  }

  std::ostringstream csv;
  if (exact.empty()) {
    write_estimate_csv(csv, est);
  } else {
    const bool se = est.has_std_error();
    csv << "x,mean,mean_im" << (se ? ",std_error" : "") << ",n_samples,exact" << (se ? ",z" : "")
        << '\n';
    for (std::size_t i = 0; i < est.x.size(); ++i) {
      csv << format_number(est.x[i]) << ',' << format_number(est.mean[i]) << ','
          << format_number(est.mean_im[i]);
      if (se) csv << ',' << format_number(est.std_error[i]);
      csv << ',' << est.n_samples << ',' << format_number(exact[i]);
      if (se) {
        const double z = est.std_error[i] > 0.0 ? (est.mean[i] - exact[i]) / est.std_error[i] : 0.0;
        csv << ',' << format_number(z);
      }
      csv << '\n';
    }
  }
  open_out(out) << csv.str();

  json params{{"model", c.model},         {"lambda", c.lambda},
              {"grid", c.grid},           {"samples", s.samples},
              {"broaden", s.broaden},     {"observable", s.observable},
              {"disorder", !s.disorder_off}, {"compare_exact", s.compare_exact}};
  if (c.model == "lattice") {
    params["dim"] = c.dim;
    params["size"] = std::get<LatticeBoxSpec>(ens.model).side;
  } else if (c.model == "bethe") {
    params["k"] = c.k;
    params["depth"] = s.depth;
    params["ball_radius"] = s.ball_radius;
  } else {
    params["size"] = std::get<ContinuumBoxSpec>(ens.model).length;
    params["mesh"] = s.mesh;
  }
  json extra;
  if (!ids_mode) {
    const double width = s.disorder_off ? s.broaden : c.lambda + s.broaden;
    extra["declared_tail_mass"] = 1.0 - cauchy_mass(CauchyKernel(width), grid.e_min, grid.e_max);
  }
  write_manifest(out + ".manifest.json", "sample", argv, params, c.seed, elapsed(t0), {out},
                 extra);
  return kOk;
}

int cmd_charfn(const Common& c, const CharfnArgs& a, const std::vector<std::string>& argv) {
  const auto t0 = std::chrono::steady_clock::now();
  require_lambda(c.lambda);
  if (c.model != "lattice") throw Usage("charfn supports --model lattice only");
  if (a.samples == 0) throw Usage("--samples must be positive");
  EnsembleSpec ens;
  ens.model = LatticeBoxSpec{c.dim, a.size, Boundary::periodic};
  ens.kernel = CauchyKernel(c.lambda);
  ens.disorder = !a.disorder_off;
  ens.validate();
  const auto tg = parse_grid(a.t_grid);
  const auto t = tg.energies();
  std::vector<int> offset(static_cast<std::size_t>(c.dim), 0);
  offset[0] = a.psi_offset;

  CharfnOptions opt;
  opt.site_psi = std::get<LatticeBoxSpec>(ens.model).index(offset);
  opt.threads = c.threads;
  if (a.route == "auto") {
    opt.route = CharfnRoute::automatic;
  } else if (a.route == "chebyshev") {
    opt.route = CharfnRoute::chebyshev;
  } else if (a.route == "eigen") {
    opt.route = CharfnRoute::eigen;
  } else {
    throw Usage("unknown route '" + a.route + "'");
  }
  if (a.samples == 1) {
    std::cerr << "warning: a single sample has no standard error; the std_error column is omitted\n";
  }
  const auto est = charfn_mc(ens, t, a.samples, c.seed, opt);

  const LatticeFreeModel model(c.dim);
  const bool se = est.has_std_error();
  std::ostringstream csv;
  csv << "t,mean,mean_im" << (se ? ",std_error" : "") << ",exact,exact_im\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::complex<double> ex = lattice_offdiag_charfn(model, offset, t[i]);
    if (ens.disorder) ex *= cauchy_charfn(ens.kernel, t[i]);
    csv << format_number(t[i]) << ',' << format_number(est.mean[i]) << ','
        << format_number(est.mean_im[i]);
    if (se) csv << ',' << format_number(est.std_error[i]);
    csv << ',' << format_number(ex.real()) << ',' << format_number(ex.imag()) << '\n';
  }
  const std::string out = c.out.empty() ? "charfn.csv" : c.out;
  open_out(out) << csv.str();
  json params{{"model", c.model},       {"dim", c.dim},         {"size", a.size},
              {"lambda", c.lambda},     {"samples", a.samples}, {"t_grid", a.t_grid},
              {"psi_offset", a.psi_offset}, {"route", a.route}, {"disorder", ens.disorder}};
  write_manifest(out + ".manifest.json", "charfn", argv, params, c.seed, elapsed(t0), {out});
  return kOk;
}

int cmd_check(const Common& c, const CheckArgs& a, bool forced,
              const std::vector<std::string>& argv) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> names;
  if (a.name == "all") {
    names = check_names();
  } else {
    bool known = false;
    for (const auto& n : check_names()) known = known || n == a.name;
    if (!known) throw Usage("unknown check '" + a.name + "'");
    names = {a.name};
  }
  CheckControl control;
  control.seed = c.seed;
  control.threads = c.threads;
  if (forced) control.force_threshold = a.force_threshold;

  std::vector<CheckReport> reports;
  for (const auto& n : names) {
    reports.push_back(run_named_check(n, control));
    print_report_table(std::cout, {reports.back()});
    std::cout.flush();
  }
  open_out(a.out) << reports_json(reports) << '\n';
  bool ok = true;
  json runtimes = json::object();
  for (const auto& r : reports) {
    ok = ok && r.passed;
    runtimes[r.name] = r.runtime_seconds;
  }
  json params{{"check", a.name}};
  if (forced) params["force_threshold"] = a.force_threshold;
  write_manifest(a.out + ".manifest.json", "check", argv, params, c.seed, elapsed(t0), {a.out},
                 json{{"check_runtimes_seconds", runtimes}});
  std::cout << (ok ? "all checks passed" : "one or more checks FAILED") << '\n';
  return ok ? kOk : kCheckFailed;
}

int run(std::vector<std::string> argv);

int cmd_replay(const std::string& manifest) {
  std::ifstream f(manifest);
  if (!f) throw Usage("cannot read manifest '" + manifest + "'");
  json m;
  try {
    m = json::parse(f);
  } catch (const json::exception& e) {
    throw Usage("malformed manifest: " + std::string(e.what()));
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw Usage("manifest has no argv");
  const auto argv = m["argv"].get<std::vector<std::string>>();
  if (argv.size() < 2 || argv[1] == "replay") throw Usage("manifest argv is not replayable");
  return run(argv);
}

int run(std::vector<std::string> argv) {
  CLI::App app{"Exact and sampled densities of states for Cauchy-disordered operators", "cauchydos"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CAUCHYDOS_VERSION_STRING));

  Common c;
  SampleArgs s;
  CharfnArgs ch;
  CheckArgs ck;
  std::string manifest;

  auto add_model = [&c](CLI::App* sub) {
    sub->add_option("--model", c.model, "lattice, bethe or continuum")
        ->check(CLI::IsMember({"lattice", "bethe", "continuum"}));
    sub->add_option("--dim", c.dim, "lattice dimension")->check(CLI::Range(1, 8));
    sub->add_option("--k", c.k, "Bethe branching number K")->check(CLI::Range(2, 64));
  };
  auto add_run = [&c](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--threads", c.threads,
                    "worker threads (default: CAUCHYDOS_THREADS or hardware)");
  };

  auto* exact = app.add_subcommand("exact", "exact smoothed DOS (lattice, bethe) or IDS (continuum)");
  add_model(exact);
  exact->add_option("--lambda", c.lambda, "Cauchy scale")->required();
  exact->add_option("--grid", c.grid, "energy grid min:max:step");
  exact->add_option("--out", c.out, "CSV path (default exact.csv)");

  auto* sample = app.add_subcommand("sample", "Monte Carlo ensemble of local densities");
  add_model(sample);
  add_run(sample);
  sample->add_option("--lambda", c.lambda, "Cauchy scale")->required();
  sample->add_option("--size", s.size, "lattice side or continuum box length");
  sample->add_option("--depth", s.depth, "tree depth");
  sample->add_option("--mesh", s.mesh, "continuum mesh step");
  sample->add_option("--samples", s.samples, "number of disorder samples");
  sample->add_option("--broaden", s.broaden, "Cauchy broadening eta (0: IDS)");
  sample->add_option("--grid", c.grid, "energy grid min:max:step");
  sample->add_option("--observable", s.observable, "root, site-average or ball");
  sample->add_option("--ball-radius", s.ball_radius, "tree levels averaged by --observable ball");
  sample->add_flag("--compare-exact", s.compare_exact, "append exact and z columns");
  sample->add_flag("--disorder-off", s.disorder_off, "use the free operator");
  sample->add_option("--out", c.out, "CSV path (default sample.csv)");

  auto* charfn = app.add_subcommand("charfn", "Monte Carlo characteristic function");
  add_model(charfn);
  add_run(charfn);
  charfn->add_option("--lambda", c.lambda, "Cauchy scale")->required();
  charfn->add_option("--size", ch.size, "lattice side");
  charfn->add_option("--samples", ch.samples, "number of disorder samples");
  charfn->add_option("--t-grid", ch.t_grid, "time grid min:max:step");
  charfn->add_option("--psi-offset", ch.psi_offset, "psi = delta_0 shifted along the first axis");
  charfn->add_option("--route", ch.route, "auto, chebyshev or eigen");
  charfn->add_flag("--disorder-off", ch.disorder_off, "use the free operator");
  charfn->add_option("--out", c.out, "CSV path (default charfn.csv)");

  auto* check = app.add_subcommand("check", "run named checks");
  add_run(check);
  check->add_option("name", ck.name, "check name or all")->required();
  check->add_option("--out", ck.out, "JSON report path");
  auto* forced = check->add_option("--force-threshold", ck.force_threshold,
                                   "replace every gated threshold");

  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest, "manifest JSON path")->required();

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*exact) return cmd_exact(c, argv);
    if (*sample) return cmd_sample(c, s, argv);
    if (*charfn) return cmd_charfn(c, ch, argv);
    if (*check) return cmd_check(c, ck, forced->count() > 0, argv);
    if (*replay) return cmd_replay(manifest);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: large boxes are supported by `cauchydos charfn` (Chebyshev propagation)\n";
    return kCap;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(std::vector<std::string>(argv, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
