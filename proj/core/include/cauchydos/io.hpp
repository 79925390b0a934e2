#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "cauchydos/measures.hpp"
#include "cauchydos/monte_carlo.hpp"

namespace cauchydos {

/// `%.12g`, the numeric format of every text artifact.
std::string format_number(double v);

/// Parses `min:max:step`. Throws InvalidArgument on malformed input.
EnergyGrid parse_grid(std::string_view text);

/// `energy,density` (plus `density_im` for complex curves).
void write_density_csv(std::ostream& os, const GridDensity& density);

/// `energy,ids` sampled on a grid.
void write_ids_csv(std::ostream& os, std::span<const double> energies,
                   std::span<const double> ids);

/// `x,mean,mean_im,std_error,n_samples`; the std_error column is dropped
/// when the estimate has none. `x_name` renames the first column.
void write_estimate_csv(std::ostream& os, const McEstimate& est, const std::string& x_name = "x");

}  // namespace cauchydos
