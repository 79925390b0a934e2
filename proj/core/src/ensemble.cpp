#include "cauchydos/ensemble.hpp"

#include <cmath>
#include <string>

#include "cauchydos/errors.hpp"
#include "cauchydos/rng.hpp"

namespace cauchydos {

DisorderSample draw_sample(const CauchyKernel& kernel, std::size_t count,
                           std::uint64_t master_seed, std::uint64_t sample_index) {
  if (count == 0) throw InvalidArgument("draw_sample: count must be positive");
  DisorderSample s{std::vector<double>(count), master_seed, sample_index};
  for (std::size_t i = 0; i < count; ++i) {
    s.omegas[i] = cauchy_sample(kernel, uniform_open01(master_seed, sample_index, i));
  }
  return s;
}

void LatticeBoxSpec::validate() const {
  if (dim < 1) throw InvalidArgument("lattice box: dimension must be >= 1");
  if (side < 1) throw InvalidArgument("lattice box: side must be >= 1");
  double sites = std::pow(static_cast<double>(side), dim);
  if (sites > 1e9) throw InvalidArgument("lattice box: site count too large");
}

std::size_t LatticeBoxSpec::site_count() const {
  validate();
  std::size_t n = 1;
  for (int j = 0; j < dim; ++j) n *= static_cast<std::size_t>(side);
  return n;
}

std::size_t LatticeBoxSpec::index(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != dim) {
    throw InvalidArgument("lattice box: coordinate vector has wrong dimension");
  }
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int j = 0; j < dim; ++j) {
    const int c = ((coords[static_cast<std::size_t>(j)] % side) + side) % side;
    idx += static_cast<std::size_t>(c) * stride;
    stride *= static_cast<std::size_t>(side);
  }
  return idx;
}

void TreeSpec::validate() const {
  if (branching < 2) throw InvalidArgument("tree: branching must be >= 2");
  if (depth < 0) throw InvalidArgument("tree: depth must be >= 0");
  if (depth > 40) throw InvalidArgument("tree: depth too large");
}

std::size_t TreeSpec::level_size(int level) const {
  if (level == 0) return 1;
  std::size_t n = static_cast<std::size_t>(branching) + 1;
  for (int j = 1; j < level; ++j) n *= static_cast<std::size_t>(branching);
  return n;
}

std::size_t TreeSpec::level_start(int level) const {
  std::size_t start = 0;
  for (int j = 0; j < level; ++j) start += level_size(j);
  return start;
}

std::size_t TreeSpec::vertex_count() const {
  validate();
  return level_start(depth + 1);
}

std::vector<std::size_t> TreeSpec::parents() const {
  const std::size_t n = vertex_count();
  std::vector<std::size_t> parent(n, 0);
  for (int level = 1; level <= depth; ++level) {
    const std::size_t start = level_start(level);
    const std::size_t prev = level_start(level - 1);
    const std::size_t fan = level == 1 ? static_cast<std::size_t>(branching) + 1
                                       : static_cast<std::size_t>(branching);
    for (std::size_t i = 0; i < level_size(level); ++i) parent[start + i] = prev + i / fan;
  }
  return parent;
}

BumpFamily::Overlap BumpFamily::overlap(std::size_t mesh_index) const noexcept {
  const auto m = static_cast<std::size_t>(mesh_per_unit);
  const int cell = static_cast<int>(mesh_index / m) % length;
  const auto r = mesh_index % m;
  const double right = static_cast<double>(r) / static_cast<double>(m);
  return {cell, 1.0 - right, (cell + 1) % length, right};
}

double BumpFamily::value(int bump, std::size_t mesh_index) const noexcept {
  const auto o = overlap(mesh_index);
  double v = 0.0;
  if (o.left_bump == bump) v += o.left_weight;
  if (o.right_bump == bump) v += o.right_weight;
  return v;
}

void ContinuumBoxSpec::validate() const {
  if (length < 1) throw InvalidArgument("continuum box: length must be >= 1");
  if (!(mesh_step > 0.0) || !std::isfinite(mesh_step)) {
    throw InvalidArgument("continuum box: mesh step must be positive");
  }
  const double inv = 1.0 / mesh_step;
  const double m = std::round(inv);
  if (std::abs(inv - m) > 1e-9 * m || m < 4.0) {
    throw InvalidArgument("continuum box: 1/h must be an integer >= 4 (got h = " +
                          std::to_string(mesh_step) + ")");
  }
}

int ContinuumBoxSpec::mesh_per_unit() const {
  validate();
  return static_cast<int>(std::round(1.0 / mesh_step));
}

BumpFamily ContinuumBoxSpec::bumps() const { return BumpFamily{length, mesh_per_unit()}; }

std::size_t ContinuumBoxSpec::mesh_size() const { return bumps().mesh_size(); }

namespace {

void check_length(std::span<const double> omegas, std::size_t expected, const char* what) {
  if (!omegas.empty() && omegas.size() != expected) {
    throw InvalidArgument(std::string(what) + ": disorder sample has " +
                          std::to_string(omegas.size()) + " values, expected " +
                          std::to_string(expected));
  }
}

}  // namespace

SymmetricOperator build_lattice(const LatticeBoxSpec& spec, std::span<const double> omegas) {
  const std::size_t n = spec.site_count();
  check_length(omegas, n, "build_lattice");
  std::vector<SymmetricOperator::Entry> entries;
  entries.reserve(n * static_cast<std::size_t>(spec.dim + 1));
  const auto side = static_cast<std::size_t>(spec.side);
  std::size_t stride = 1;
  for (int j = 0; j < spec.dim; ++j) {
    for (std::size_t site = 0; site < n; ++site) {
      const std::size_t c = (site / stride) % side;
      if (c + 1 < side) {
        entries.push_back({site, site + stride, 1.0});
      } else if (spec.boundary == Boundary::periodic) {
        // side 1: both directions wrap onto the site itself
        const double w = side == 1 ? 2.0 : 1.0;
        entries.push_back({site, site + stride - side * stride, w});
      }
    }
    stride *= side;
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) entries.push_back({i, i, omegas[i]});
  return SymmetricOperator(n, std::move(entries));
}

SymmetricOperator build_tree(const TreeSpec& spec, std::span<const double> omegas) {
  const std::size_t n = spec.vertex_count();
  check_length(omegas, n, "build_tree");
  const auto parent = spec.parents();
  std::vector<SymmetricOperator::Entry> entries;
  entries.reserve(2 * n);
  for (std::size_t v = 1; v < n; ++v) entries.push_back({parent[v], v, 1.0});
  for (std::size_t i = 0; i < omegas.size(); ++i) entries.push_back({i, i, omegas[i]});
  return SymmetricOperator(n, std::move(entries));
}

SymmetricOperator build_continuum(const ContinuumBoxSpec& spec, std::span<const double> omegas) {
  const BumpFamily bumps = spec.bumps();
  const std::size_t n = bumps.mesh_size();
  check_length(omegas, static_cast<std::size_t>(spec.length), "build_continuum");
  const double h = 1.0 / static_cast<double>(bumps.mesh_per_unit);
  const double inv_h2 = 1.0 / (h * h);
  std::vector<SymmetricOperator::Entry> entries;
  entries.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = 2.0 * inv_h2;
    if (!omegas.empty()) {
      const auto o = bumps.overlap(j);
      v += omegas[static_cast<std::size_t>(o.left_bump)] * o.left_weight +
           omegas[static_cast<std::size_t>(o.right_bump)] * o.right_weight;
    }
    entries.push_back({j, j, v});
    entries.push_back({j, (j + 1) % n, -inv_h2});
  }
  return SymmetricOperator(n, std::move(entries));
}

}  // namespace cauchydos
