#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cauchydos/measures.hpp"

namespace cauchydos {

/// One measured quantity. Gated metrics must satisfy value <= threshold;
/// informational ones are reported only.
struct Metric {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool gated = true;

  bool ok() const noexcept { return !gated || value <= threshold; }
};

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<Metric> metrics;
  bool passed = false;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;

  /// Recomputes `passed` from the metrics; a NaN metric fails.
  void finalize();
  const Metric* metric(const std::string& name) const;
};

/// Options shared by every check.
struct CheckControl {
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  /// When set, replaces every gated threshold (used to exercise failure paths).
  std::optional<double> force_threshold;
};

struct CharfnCheckParams {
  int dim = 1;
  double lambda = 1.0;
  int side = 512;
  std::size_t samples = 400;
  double t_max = 6.0;
  double t_step = 0.1;
  /// psi = delta_0 shifted by this many sites along the first axis.
  int psi_offset = 0;
  bool disorder = true;
};

/// Sample mean of <delta_0, exp(itH) delta_psi> against
/// exp(-lambda|t|) <delta_0, exp(itH_0) delta_psi>. With disorder, every t
/// must satisfy |dev| <= max(0.03, 4 SE); without, |dev| <= 0.02.
CheckReport check_theorem1_charfn(const CharfnCheckParams& p, const CheckControl& c = {});

enum class DosObservableChoice { root, site_average };

struct DosCheckParams {
  int dim = 1;
  double lambda = 1.0;
  double eta = 0.1;
  int side = 2000;
  std::size_t samples = 200;
  EnergyGrid grid{-6.0, 6.0, 0.02};
  DosObservableChoice observable = DosObservableChoice::site_average;
  double z_threshold = 4.0;
  double sup_threshold = 0.005;
  double z_p95_threshold = 2.5;
};

/// Broadened sample mean of the local DOS against the exact curve at
/// lambda + eta.
CheckReport check_theorem1_dos(const DosCheckParams& p, const CheckControl& c = {});

struct BetheCheckParams {
  int branching = 2;
  double lambda = 1.0;
  double eta = 0.1;
  int depth = 14;
  std::size_t samples = 100;
  EnergyGrid grid{-2.9, 2.9, 0.02};
  /// Vertices of level <= ball_radius are averaged (0 = root only).
  int ball_radius = 7;
  bool disorder = true;
  double threshold = 0.01;
};

/// Tree DOS against the smeared Kesten-McKay law. The finite-depth bias is
/// measured with the free truncated-tree Green function and removed before
/// the sup distance is gated.
CheckReport check_bethe(const BetheCheckParams& p, const CheckControl& c = {});

/// Expected ball-averaged smoothed density of the truncated tree at
/// z = E + i*width (free Green function, level-weighted).
double truncated_tree_ball_density(int branching, int depth, int ball_radius, double energy,
                                   double width);

struct StripCheckParams {
  int dim = 1;
  double lambda = 1.0;
  std::vector<double> heights{-0.5, -0.25, 0.0, 0.25, 0.5};
  EnergyGrid energies{-6.0, 6.0, 0.25};
  double step = 1e-4;
};

/// Cauchy-Riemann residual of the complex-energy DOS inside the strip and
/// the outside-strip error beyond it.
CheckReport check_analytic_strip(const StripCheckParams& p, const CheckControl& c = {});

struct ContinuumCheckParams {
  double lambda = 0.2;
  int length = 200;
  double mesh_step = 0.05;
  std::size_t samples = 100;
  EnergyGrid grid{0.0, 4.0, 0.02};
  bool disorder = true;
};

/// Averaged empirical IDS of continuum boxes against psi_lambda * sqrt(E)/pi.
CheckReport check_continuum_ids(const ContinuumCheckParams& p, const CheckControl& c = {});

struct SemigroupCheckParams {
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  int dim = 1;
  double window = 8.0;
  double support = 40.0;
  double step = 0.01;
};

/// psi_lambda2 convolved into the lambda1 curve against the lambda1+lambda2 curve.
CheckReport check_semigroup(const SemigroupCheckParams& p, const CheckControl& c = {});

/// Names accepted by run_named_check, in `all` order.
const std::vector<std::string>& check_names();

/// Runs a check with its default parameters. Throws InvalidArgument on an
/// unknown name.
CheckReport run_named_check(const std::string& name, const CheckControl& c = {});

/// JSON record; runtime is left out when include_runtime is false so the
/// record is a pure function of (name, parameters, seed).
std::string report_json(const CheckReport& r, bool include_runtime = false);
std::string reports_json(const std::vector<CheckReport>& reports, bool include_runtime = false);
void print_report_table(std::ostream& os, const std::vector<CheckReport>& reports);

}  // namespace cauchydos
