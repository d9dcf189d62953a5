#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kkscatter/analytic_scattering.hpp"
#include "kkscatter/currents.hpp"
#include "kkscatter/kk_spectrum.hpp"
#include "kkscatter/numerical_oracle.hpp"

namespace kkscatter {

/// printf "%.17g": 17 significant digits, round-trips every double.
std::string format_double(double value);

std::string_view to_string(Part part);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string current_field_csv(const std::vector<CurrentField>& fields);
std::string spectrum_csv(const std::vector<SpectrumLevel>& levels);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never see a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace kkscatter
