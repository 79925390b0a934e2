#include "cauchydos/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "cauchydos/chebyshev.hpp"
#include "cauchydos/eigen.hpp"
#include "cauchydos/errors.hpp"
#include "cauchydos/parallel.hpp"
#include "cauchydos/tree_resolvent.hpp"

namespace cauchydos {
namespace {

constexpr std::size_t kDenseCap = 4096;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

// Runs fn(sample_index) on every sample, rewrapping failures with the index.
template <typename Fn>
void for_each_sample(std::size_t n_samples, std::size_t threads, Fn&& fn) {
  parallel_for(
      n_samples,
      [&fn](std::size_t s) {
        try {
          fn(s);
        } catch (const ResourceCapExceeded&) {
          throw;
        } catch (const SampleError&) {
          throw;
        } catch (const std::exception& e) {
          throw SampleError("sample " + std::to_string(s) + ": " + e.what(), s);
        }
      },
      threads);
}

void require_samples(std::size_t n_samples, const char* who) {
  if (n_samples == 0) throw InvalidArgument(std::string(who) + ": n_samples must be positive");
}

}  // namespace

void EnsembleSpec::validate() const {
  std::visit([](const auto& m) { m.validate(); }, model);
}

std::size_t EnsembleSpec::coupling_count() const {
  return std::visit(overloaded{
                        [](const LatticeBoxSpec& m) { return m.site_count(); },
                        [](const TreeSpec& m) { return m.vertex_count(); },
                        [](const ContinuumBoxSpec& m) {
                          m.validate();
                          return static_cast<std::size_t>(m.length);
                        },
                    },
                    model);
}

std::size_t EnsembleSpec::dimension() const {
  return std::visit(overloaded{
                        [](const LatticeBoxSpec& m) { return m.site_count(); },
                        [](const TreeSpec& m) { return m.vertex_count(); },
                        [](const ContinuumBoxSpec& m) { return m.mesh_size(); },
                    },
                    model);
}

double EnsembleSpec::volume() const {
  return std::visit(overloaded{
                        [](const LatticeBoxSpec& m) { return static_cast<double>(m.site_count()); },
                        [](const TreeSpec& m) { return static_cast<double>(m.vertex_count()); },
                        [](const ContinuumBoxSpec& m) { return static_cast<double>(m.length); },
                    },
                    model);
}

std::vector<double> EnsembleSpec::couplings(std::uint64_t master_seed,
                                            std::uint64_t sample_index) const {
  if (!disorder) return {};
  return draw_sample(kernel, coupling_count(), master_seed, sample_index).omegas;
}

SymmetricOperator EnsembleSpec::build(std::span<const double> omegas) const {
  return std::visit(overloaded{
                        [omegas](const LatticeBoxSpec& m) { return build_lattice(m, omegas); },
                        [omegas](const TreeSpec& m) { return build_tree(m, omegas); },
                        [omegas](const ContinuumBoxSpec& m) { return build_continuum(m, omegas); },
                    },
                    model);
}

McEstimate reduce_samples(std::span<const double> x, const std::vector<std::vector<double>>& re,
                          const std::vector<std::vector<double>>& im, std::uint64_t seed) {
  const std::size_t n = re.size();
  const std::size_t m = x.size();
  const bool complex = !im.empty();
  McEstimate out;
  out.x.assign(x.begin(), x.end());
  out.n_samples = n;
  out.seed = seed;
  out.mean.assign(m, 0.0);
  out.mean_im.assign(m, 0.0);
  if (n == 0) return out;
  if (n >= 2) out.std_error.assign(m, 0.0);
  std::vector<double> col(n);
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) {
    double var = 0.0;
    for (int part = 0; part < (complex ? 2 : 1); ++part) {
      const auto& src = part == 0 ? re : im;
      for (std::size_t s = 0; s < n; ++s) col[s] = src[s][j];
      const double mu = pairwise_sum(col.data(), n) / dn;
      (part == 0 ? out.mean : out.mean_im)[j] = mu;
      if (n >= 2) {
        for (std::size_t s = 0; s < n; ++s) col[s] = (col[s] - mu) * (col[s] - mu);
        var += pairwise_sum(col.data(), n) / (dn - 1.0);
      }
    }
    if (n >= 2) out.std_error[j] = std::sqrt(var / dn);
  }
  return out;
}

McEstimate charfn_mc(const EnsembleSpec& ensemble, std::span<const double> t_grid,
                     std::size_t n_samples, std::uint64_t master_seed,
                     const CharfnOptions& options) {
  require_samples(n_samples, "charfn_mc");
  ensemble.validate();
  const std::size_t dim = ensemble.dimension();
  if (options.site_phi >= dim || options.site_psi >= dim) {
    throw InvalidArgument("charfn_mc: site index out of range");
  }
  if (options.route == CharfnRoute::eigen && dim > kDenseCap) {
    throw ResourceCapExceeded("charfn_mc: dimension " + std::to_string(dim) +
                              " exceeds the dense cap; use the Chebyshev route");
  }
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));

  std::vector<std::vector<double>> re(n_samples);
  std::vector<std::vector<double>> im(n_samples);
  for_each_sample(n_samples, options.threads, [&](std::size_t s) {
    const auto omegas = ensemble.couplings(master_seed, s);
    const auto op = ensemble.build(omegas);
    const auto bound = gershgorin_bound(op);
    const std::size_t terms = chebyshev_terms(bound, t_max);
    bool use_eigen = options.route == CharfnRoute::eigen;
    if (options.route == CharfnRoute::automatic) {
      use_eigen = terms > options.term_budget && dim <= kDenseCap;
    }
    auto& r = re[s];
    auto& i = im[s];
    r.resize(t_grid.size());
    i.resize(t_grid.size());
    if (use_eigen) {
      EigOptions eo;
      eo.vectors = EigenvectorMode::selected_rows;
      eo.rows = {options.site_phi, options.site_psi};
      const auto eig = eig_sym(op, eo);
      const auto mu = local_spectral_measure(eig, options.site_phi, options.site_psi);
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        std::complex<double> a = 0.0;
        for (std::size_t e = 0; e < mu.size(); ++e) {
          a += mu.weights()[e] * std::polar(1.0, t_grid[k] * mu.points()[e]);
        }
        r[k] = a.real();
        i[k] = a.imag();
      }
    } else {
      const auto moments = chebyshev_moments(op, options.site_phi, options.site_psi, bound, terms);
      for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const auto a = amplitude_from_moments(moments, bound, t_grid[k]);
        r[k] = a.real();
        i[k] = a.imag();
      }
    }
  });
  return reduce_samples(t_grid, re, im, master_seed);
}

McEstimate dos_mc(const EnsembleSpec& ensemble, const EnergyGrid& grid, std::size_t n_samples,
                  std::uint64_t master_seed, double eta, const DosOptions& options) {
  require_samples(n_samples, "dos_mc");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("dos_mc: broadening eta must be positive (use ids_mc for eta = 0)");
  }
  ensemble.validate();
  grid.validate();
  const std::size_t dim = ensemble.dimension();
  const bool is_tree = std::holds_alternative<TreeSpec>(ensemble.model);
  if (options.observable == DosObservable::ball && !is_tree) {
    throw InvalidArgument("dos_mc: the ball observable needs a tree model");
  }
  if (options.observable == DosObservable::site && options.site >= dim) {
    throw InvalidArgument("dos_mc: site index out of range");
  }
  DosRoute route = options.route;
  if (route == DosRoute::automatic) route = is_tree ? DosRoute::resolvent : DosRoute::eigen;
  if (route == DosRoute::resolvent && !is_tree) {
    throw InvalidArgument("dos_mc: the resolvent route needs a tree model");
  }
  if (route == DosRoute::eigen && dim > kDenseCap) {
    throw ResourceCapExceeded("dos_mc: dimension " + std::to_string(dim) +
                              " exceeds the dense eigensolver cap of " +
                              std::to_string(kDenseCap) + "; use charfn mode instead");
  }
  const CauchyKernel broaden(eta);
  const auto energies = grid.energies();
  std::vector<std::vector<double>> values(n_samples);

  // vertices (or sites) averaged by the observable
  std::vector<std::size_t> rows;
  std::size_t ball_count = 0;
  if (options.observable == DosObservable::site) {
    rows = {options.site};
  } else if (options.observable == DosObservable::ball) {
    const auto& tree = std::get<TreeSpec>(ensemble.model);
    ball_count = tree.level_start(std::clamp(options.ball_radius, 0, tree.depth) + 1);
    rows.resize(ball_count);
    for (std::size_t v = 0; v < ball_count; ++v) rows[v] = v;
  }

  for_each_sample(n_samples, options.threads, [&](std::size_t s) {
    const auto omegas = ensemble.couplings(master_seed, s);
    auto& out = values[s];
    out.assign(energies.size(), 0.0);
    if (route == DosRoute::resolvent) {
      const auto& tree = std::get<TreeSpec>(ensemble.model);
      TreeResolvent res(tree, omegas);
      int level = 0;
      if (options.observable == DosObservable::ball) level = options.ball_radius;
      if (options.observable == DosObservable::site_average) level = tree.depth;
      const std::size_t first = options.observable == DosObservable::site ? options.site : 0;
      if (options.observable == DosObservable::site) {
        // smallest ball containing the site
        while (tree.level_start(level + 1) <= first) ++level;
      }
      std::vector<std::complex<double>> g;
      for (std::size_t k = 0; k < energies.size(); ++k) {
        res.diagonal({energies[k], eta}, level, g);
        double acc = 0.0;
        if (options.observable == DosObservable::site) {
          acc = g[first].imag();
        } else {
          for (const auto& gv : g) acc += gv.imag();
          acc /= static_cast<double>(g.size());
        }
        out[k] = acc / std::numbers::pi;
      }
      return;
    }
    const auto op = ensemble.build(omegas);
    EigOptions eo;
    if (options.observable == DosObservable::site_average) {
      eo.vectors = EigenvectorMode::none;
    } else {
      eo.vectors = EigenvectorMode::selected_rows;
      eo.rows = rows;
    }
    const auto eig = eig_sym(op, eo);
    const std::size_t n = eig.dimension();
    std::vector<double> w(n, 0.0);
    if (options.observable == DosObservable::site_average) {
      std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t v : rows) {
          const double c = eig.component(i, v);
          acc += c * c;
        }
        w[i] = acc / static_cast<double>(rows.size());
      }
    }
    const auto spec = WeightedSpectrum::real(eig.values(), w);
    out = smear_spectrum(spec, broaden, grid).values;
  });
  return reduce_samples(energies, values, {}, master_seed);
}

McEstimate ids_mc(const EnsembleSpec& ensemble, const EnergyGrid& grid, std::size_t n_samples,
                  std::uint64_t master_seed, std::size_t threads) {
  require_samples(n_samples, "ids_mc");
  ensemble.validate();
  grid.validate();
  const std::size_t dim = ensemble.dimension();
  if (dim > kDenseCap) {
    throw ResourceCapExceeded("ids_mc: dimension " + std::to_string(dim) +
                              " exceeds the dense eigensolver cap of " +
                              std::to_string(kDenseCap));
  }
  const auto energies = grid.energies();
  const double volume = ensemble.volume();
  std::vector<std::vector<double>> values(n_samples);
  for_each_sample(n_samples, threads, [&](std::size_t s) {
    const auto op = ensemble.build(ensemble.couplings(master_seed, s));
    EigOptions eo;
    eo.vectors = EigenvectorMode::none;
    const auto ids = empirical_ids(eig_sym(op, eo), volume);
    auto& out = values[s];
    out.resize(energies.size());
    for (std::size_t k = 0; k < energies.size(); ++k) out[k] = ids(energies[k]);
  });
  return reduce_samples(energies, values, {}, master_seed);
}

}  // namespace cauchydos
