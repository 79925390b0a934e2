#include "cauchydos/io.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "cauchydos/errors.hpp"
#include "io_detail.hpp"

namespace cauchydos {
namespace {

double parse_number(std::string_view s, std::string_view whole) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw InvalidArgument("grid '" + std::string(whole) + "': '" + buf + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_number(double v) { return detail::format_number(v); }

EnergyGrid parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw InvalidArgument("grid '" + std::string(text) + "' must have the form min:max:step");
  }
  EnergyGrid g{parse_number(text.substr(0, a), text),
               parse_number(text.substr(a + 1, b - a - 1), text),
               parse_number(text.substr(b + 1), text)};
  g.validate();
  return g;
}

void write_density_csv(std::ostream& os, const GridDensity& density) {
  const bool im = density.is_complex();
  os << (im ? "energy,density,density_im\n" : "energy,density\n");
  for (std::size_t k = 0; k < density.values.size(); ++k) {
    os << detail::format_number(density.grid.energy(k)) << ','
       << detail::format_number(density.values[k]);
    if (im) os << ',' << detail::format_number(density.imag[k]);
    os << '\n';
  }
}

void write_ids_csv(std::ostream& os, std::span<const double> energies,
                   std::span<const double> ids) {
  if (energies.size() != ids.size()) throw InvalidArgument("write_ids_csv: length mismatch");
  os << "energy,ids\n";
  for (std::size_t k = 0; k < ids.size(); ++k) {
    os << detail::format_number(energies[k]) << ',' << detail::format_number(ids[k]) << '\n';
  }
}

void write_estimate_csv(std::ostream& os, const McEstimate& est, const std::string& x_name) {
  const bool se = est.has_std_error();
  os << x_name << ",mean,mean_im" << (se ? ",std_error" : "") << ",n_samples\n";
  for (std::size_t k = 0; k < est.x.size(); ++k) {
    os << detail::format_number(est.x[k]) << ',' << detail::format_number(est.mean[k]) << ','
       << detail::format_number(est.mean_im[k]);
    if (se) os << ',' << detail::format_number(est.std_error[k]);
    os << ',' << est.n_samples << '\n';
  }
}

}  // namespace cauchydos
