#include "kkscatter/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kkscatter {

std::string format_double(double value) {
  char buf[64];
  // -0.0 + 0.0 is +0.0; keeps "-0" out of the output.
  std::snprintf(buf, sizeof buf, "%.17g", value + 0.0);
  return buf;
}

std::string_view to_string(Part part) {
  switch (part) {
    case Part::Incident: return "incident";
    case Part::Reflected: return "reflected";
    case Part::Transmitted: return "transmitted";
    case Part::Total: return "total";
  }
  return "unknown";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "k1,E_axial,R1,T1,re_r,im_r,re_t,im_t\n";
  for (const auto& row : rows) {
    out << format_double(row.k1) << ',' << format_double(row.e_axial) << ','
        << format_double(row.R1) << ',' << format_double(row.T1) << ','
        << format_double(row.r.real()) << ',' << format_double(row.r.imag())
        << ',' << format_double(row.t.real()) << ','
        << format_double(row.t.imag()) << '\n';
  }
  return out.str();
}

std::string current_field_csv(const std::vector<CurrentField>& fields) {
  std::ostringstream out;
  out << "part,phi,z,j_phi,j_z\n";
  for (const auto& field : fields) {
    for (const auto& [point, current] : field.samples) {
      out << to_string(field.part) << ',' << format_double(point.phi()) << ','
          << format_double(point.z()) << ',' << format_double(current.j_phi)
          << ',' << format_double(current.j_z) << '\n';
    }
  }
  return out.str();
}

std::string spectrum_csv(const std::vector<SpectrumLevel>& levels) {
  std::ostringstream out;
  out << "modes,compact_energy,degeneracy,open,k1_or_kappa\n";
  for (const auto& level : levels) {
    for (std::size_t i = 0; i < level.modes.size(); ++i) {
      out << (i ? ";" : "") << level.modes[i];
    }
    out << ',' << format_double(level.compact_energy) << ','
        << level.degeneracy << ',' << (level.open ? "true" : "false") << ','
        << format_double(level.k1_or_kappa) << '\n';
  }
  return out.str();
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "a,V0,R_barrier,T_barrier,R_delta,T_delta,err\n";
  for (const auto& row : rows) {
    out << format_double(row.width) << ',' << format_double(row.height) << ','
        << format_double(row.R_barrier) << ',' << format_double(row.T_barrier)
        << ',' << format_double(row.R_delta) << ','
        << format_double(row.T_delta) << ',' << format_double(row.error)
        << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kkscatter
