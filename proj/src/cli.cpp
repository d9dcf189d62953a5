#include "kkscatter/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "kkscatter/analytic_scattering.hpp"
#include "kkscatter/currents.hpp"
#include "kkscatter/kk_spectrum.hpp"
#include "kkscatter/numerical_oracle.hpp"
#include "kkscatter/output.hpp"
#include "kkscatter/radius_inference.hpp"

#ifndef KKSCATTER_VERSION
#define KKSCATTER_VERSION "unknown"
#endif

namespace kkscatter::cli {

namespace {

using nlohmann::json;

// Malformed flags or unreadable inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<double> hbar;
  std::optional<double> mass;
  std::string config_path;
};

struct Units {
  PhysicalConfig config;
  std::optional<std::vector<double>> radii;
};

Units resolve_units(const GlobalOptions& global) {
  double hbar = 1.0;
  double mass = 1.0;
  Units units;
  if (!global.config_path.empty()) {
    std::ifstream in(global.config_path);
    if (!in) throw UsageError("cannot read config file " + global.config_path);
    json doc;
    try {
      doc = json::parse(in);
      if (doc.contains("hbar")) hbar = doc.at("hbar").get<double>();
      if (doc.contains("mass")) mass = doc.at("mass").get<double>();
      if (doc.contains("radii")) {
        units.radii = doc.at("radii").get<std::vector<double>>();
      }
    } catch (const json::exception& e) {
      throw UsageError("malformed config file " + global.config_path + ": " +
                       e.what());
    }
  }
  if (global.hbar) hbar = *global.hbar;
  if (global.mass) mass = *global.mass;
  units.config = PhysicalConfig(hbar, mass);
  return units;
}

CompactGeometry circle_geometry(const Units& units,
                                std::optional<double> radius) {
  if (radius) return CompactGeometry::circle(*radius);
  if (units.radii) return CompactGeometry(*units.radii);
  return CompactGeometry{};
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size()) {
    throw UsageError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

// "re:im", or a bare real number.
Complex parse_complex(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {parse_number(text, "complex"), 0.0};
  return {parse_number(text.substr(0, colon), "complex real part"),
          parse_number(text.substr(colon + 1), "complex imaginary part")};
}

// "NPHIxNZ"
std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  auto parse_count = [&](const std::string& part) {
    if (part.empty() ||
        part.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("grid must look like NPHIxNZ, got '" + text + "'");
    }
    const auto value = std::stoul(part);
    if (value == 0) throw UsageError("grid counts must be positive");
    return static_cast<std::size_t>(value);
  };
  if (x == std::string::npos) {
    throw UsageError("grid must look like NPHIxNZ, got '" + text + "'");
  }
  return {parse_count(text.substr(0, x)), parse_count(text.substr(x + 1))};
}

// "zmin:zmax"
std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) {
    throw UsageError("range must look like MIN:MAX, got '" + text + "'");
  }
  const double lo = parse_number(text.substr(0, colon), "range minimum");
  const double hi = parse_number(text.substr(colon + 1), "range maximum");
  if (!(lo <= hi)) throw UsageError("range minimum exceeds maximum");
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    values.push_back(parse_number(item, what));
  }
  if (values.empty()) throw UsageError(what + " list is empty");
  return values;
}

std::string json_array(const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += format_double(values[i]);
  }
  return s + "]";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Shared state of one invocation.
struct Invocation {
  Invocation(const std::vector<std::string>& a, std::ostream& o)
      : args(a), out(o) {}

  const std::vector<std::string>& args;
  std::ostream& out;
  GlobalOptions global;
  std::string command;
  std::string out_path;
  json parameters = json::object();

  void emit(const std::string& contents) {
    if (out_path.empty()) {
      out << contents;
      return;
    }
    const std::filesystem::path path(out_path);
    write_file_atomic(path, contents);

    json manifest;
    manifest["command"] = command;
    manifest["parameters"] = parameters;
    manifest["argv"] = std::vector<std::string>(args.begin() + 1, args.end());
    manifest["tool_version"] = KKSCATTER_VERSION;
    manifest["timestamp"] = utc_timestamp();
    auto manifest_path = path;
    manifest_path += ".manifest.json";
    write_file_atomic(manifest_path, manifest.dump(2) + "\n");
  }

  void record_units(const PhysicalConfig& config) {
    parameters["hbar"] = config.hbar();
    parameters["mass"] = config.mass();
  }
};

void add_out_option(CLI::App* sub, Invocation& inv) {
  sub->add_option("--out", inv.out_path, "Write output to FILE (atomically)");
}

// ---------------------------------------------------------------------------

struct AmplitudesArgs {
  double lambda = 0.0;
  double k1 = 0.0;
  std::optional<double> radius;
};

void run_amplitudes(Invocation& inv, const AmplitudesArgs& a) {
  const auto units = resolve_units(inv.global);
  const auto geometry = circle_geometry(units, a.radius);
  const auto setup = make_setup(a.lambda, a.k1, 0, Complex{1.0, 0.0},
                                Complex{}, units.config, geometry);
  const auto amps = coefficients(setup);

  inv.record_units(units.config);
  inv.parameters["lambda"] = a.lambda;
  inv.parameters["k1"] = a.k1;
  inv.parameters["radius"] = setup.radius();

  std::ostringstream s;
  s << "{\"r\": " << json_array({amps.r().real(), amps.r().imag()})
    << ", \"t\": " << json_array({amps.t().real(), amps.t().imag()})
    << ", \"R1\": " << format_double(amps.R1())
    << ", \"T1\": " << format_double(amps.T1()) << "}\n";
  inv.emit(s.str());
}

struct SweepArgs {
  double lambda = 0.0;
  double k1_min = 0.0;
  double k1_max = 0.0;
  int steps = 0;
  std::optional<double> radius;
};

void run_sweep(Invocation& inv, const SweepArgs& a) {
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  if (!(a.k1_min <= a.k1_max)) throw UsageError("--k1-min exceeds --k1-max");
  if (a.steps > 1 && a.k1_min == a.k1_max) {
    throw UsageError("a multi-step sweep needs --k1-min < --k1-max");
  }
  const auto units = resolve_units(inv.global);
  const auto geometry = circle_geometry(units, a.radius);

  std::vector<double> grid(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        a.steps == 1 ? a.k1_min
                     : a.k1_min + (a.k1_max - a.k1_min) * i / (a.steps - 1);
  }
  const auto rows = sweep_coefficients(a.lambda, grid, units.config, geometry);

  inv.record_units(units.config);
  inv.parameters["lambda"] = a.lambda;
  inv.parameters["k1_min"] = a.k1_min;
  inv.parameters["k1_max"] = a.k1_max;
  inv.parameters["steps"] = a.steps;
  inv.parameters["radius"] = geometry.radius(0);
  inv.emit(sweep_csv(rows));
}

struct CurrentsArgs {
  double lambda = 0.0;
  double k1 = 0.0;
  int n = 0;
  std::string F1 = "1:0";
  std::string G1 = "0:0";
  std::string A1 = "1:0";
  std::string grid = "8x4";
  std::string zrange = "-1:1";
  std::optional<double> radius;
};

void run_currents(Invocation& inv, const CurrentsArgs& a) {
  const Complex F1 = parse_complex(a.F1);
  const Complex G1 = parse_complex(a.G1);
  const Complex A1 = parse_complex(a.A1);
  const auto [n_phi, n_z] = parse_grid(a.grid);
  const auto [z_min, z_max] = parse_range(a.zrange);
  if (n_z > 1 && z_min == z_max) {
    throw UsageError("several z samples need zmin < zmax");
  }

  const auto units = resolve_units(inv.global);
  const auto geometry = circle_geometry(units, a.radius);
  const auto setup = make_setup(a.lambda, a.k1, a.n, F1, G1, units.config,
                                geometry);
  const auto amps = coefficients(setup);
  const GridSpec spec{n_phi, n_z, z_min, z_max};

  std::vector<CurrentField> fields;
  for (Part part : {Part::Incident, Part::Reflected, Part::Transmitted}) {
    const auto points = region_grid(part, spec);
    if (points.empty()) continue;
    fields.push_back(evaluate_current_field(part, points, setup, amps, A1));
  }
  if (fields.empty()) {
    throw Error(ErrorKind::InvalidGrid, "z range contains no point off z = 0");
  }

  inv.record_units(units.config);
  inv.parameters["lambda"] = a.lambda;
  inv.parameters["k1"] = a.k1;
  inv.parameters["n"] = a.n;
  inv.parameters["F1"] = {F1.real(), F1.imag()};
  inv.parameters["G1"] = {G1.real(), G1.imag()};
  inv.parameters["A1"] = {A1.real(), A1.imag()};
  inv.parameters["grid"] = a.grid;
  inv.parameters["zrange"] = a.zrange;
  inv.parameters["radius"] = setup.radius();
  inv.emit(current_field_csv(fields));
}

struct SpectrumArgs {
  double emax = 0.0;
  std::string radii;
  std::optional<double> energy;
};

void run_spectrum(Invocation& inv, const SpectrumArgs& a) {
  std::optional<std::vector<double>> radii;
  if (!a.radii.empty()) radii = parse_list(a.radii, "radii");
  const auto units = resolve_units(inv.global);
  if (!radii) radii = units.radii.value_or(std::vector<double>{1.0});
  const CompactGeometry geometry(*radii);
  const auto levels = enumerate_levels(a.emax, units.config, geometry, a.energy);

  inv.record_units(units.config);
  inv.parameters["emax"] = a.emax;
  inv.parameters["radii"] = *radii;
  inv.parameters["energy"] = a.energy.value_or(a.emax);
  inv.emit(spectrum_csv(levels));
}

struct OracleArgs {
  double lambda = 0.0;
  double k1 = 0.0;
  std::string widths;
};

void run_oracle(Invocation& inv, const OracleArgs& a) {
  const auto widths = parse_list(a.widths, "widths");
  const auto units = resolve_units(inv.global);
  const auto study = delta_limit_study(a.k1, a.lambda, widths, units.config);

  inv.record_units(units.config);
  inv.parameters["lambda"] = a.lambda;
  inv.parameters["k1"] = a.k1;
  inv.parameters["widths"] = widths;
  inv.emit(convergence_csv(study.rows));
}

struct InferArgs {
  std::string input;
  double tolerance = 0.05;
};

void run_infer_radius(Invocation& inv, const InferArgs& a, std::ostream& err) {
  std::ifstream in(a.input);
  if (!in) throw UsageError("cannot read input file " + a.input);
  std::vector<double> offsets;
  std::vector<double> sigmas;
  std::optional<std::vector<std::vector<int>>> modes;
  try {
    const json doc = json::parse(in);
    offsets = doc.at("offsets").get<std::vector<double>>();
    if (doc.contains("sigmas")) sigmas = doc.at("sigmas").get<std::vector<double>>();
    if (doc.contains("modes")) {
      modes = doc.at("modes").get<std::vector<std::vector<int>>>();
    }
  } catch (const json::exception& e) {
    throw UsageError("malformed input file " + a.input + ": " + e.what());
  }
  if (!sigmas.empty() && sigmas.size() != offsets.size()) {
    throw UsageError("sigmas and offsets differ in length");
  }
  const auto units = resolve_units(inv.global);

  std::vector<double> radii;
  double rms = 0.0;
  std::string assignment;
  if (modes) {
    if (modes->size() != offsets.size() || modes->empty()) {
      throw UsageError("modes and offsets differ in length");
    }
    std::vector<TorusLevel> levels;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      levels.push_back({(*modes)[i], offsets[i], sigmas.empty() ? 0.0 : sigmas[i]});
    }
    const auto fit = fit_torus_radii(levels, units.config, modes->front().size());
    radii = fit.radii;
    rms = fit.rms_residual;
    assignment = json(*modes).dump();
  } else {
    const auto result = assign_modes(offsets, a.tolerance, sigmas);
    if (const auto* failure = std::get_if<AssignmentFailure>(&result)) {
      err << "error: inconsistent ladder: " << failure->detail << "\n";
      throw Error(ErrorKind::InconsistentLadder, "mode assignment failed");
    }
    const auto& assigned = std::get<ModeAssignment>(result);
    const auto fit = fit_radius(assigned.levels, units.config);
    radii = {fit.radius};
    rms = fit.rms_residual;
    std::vector<int> ns;
    for (const auto& l : assigned.levels) ns.push_back(l.n());
    assignment = json(ns).dump();
  }

  inv.record_units(units.config);
  inv.parameters["input"] = a.input;
  inv.parameters["tolerance"] = a.tolerance;
  std::ostringstream s;
  s << "{\"radii\": " << json_array(radii)
    << ", \"rms_residual\": " << format_double(rms)
    << ", \"assignment\": " << assignment << "}\n";
  inv.emit(s.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Delta-potential scattering with compact extra dimensions",
               "kkscatter"};
  app.require_subcommand(1);
  app.fallthrough();

  Invocation inv(args, out);
  app.add_option("--hbar", inv.global.hbar, "Reduced Planck constant");
  app.add_option("--mass", inv.global.mass, "Particle mass");
  app.add_option("--config", inv.global.config_path,
                 "JSON file {hbar, mass, radii}");

  AmplitudesArgs amp;
  auto* amplitudes = app.add_subcommand(
      "amplitudes", "Reflection/transmission amplitudes and coefficients");
  amplitudes->add_option("--lambda", amp.lambda, "Delta strength")->required();
  amplitudes->add_option("--k1", amp.k1, "Axial wavenumber")->required();
  amplitudes->add_option("--radius", amp.radius, "Compactification radius");
  add_out_option(amplitudes, inv);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Coefficients over a k1 range");
  sweep->add_option("--lambda", sw.lambda)->required();
  sweep->add_option("--k1-min", sw.k1_min)->required();
  sweep->add_option("--k1-max", sw.k1_max)->required();
  sweep->add_option("--steps", sw.steps)->required();
  sweep->add_option("--radius", sw.radius);
  add_out_option(sweep, inv);

  CurrentsArgs cur;
  auto* currents = app.add_subcommand("currents",
                                      "Probability-current fields on a grid");
  currents->add_option("--lambda", cur.lambda)->required();
  currents->add_option("--k1", cur.k1)->required();
  currents->add_option("--n", cur.n, "Angular mode");
  currents->add_option("--F1", cur.F1, "Cosine amplitude, re:im");
  currents->add_option("--G1", cur.G1, "Sine amplitude, re:im");
  currents->add_option("--A1", cur.A1, "Incident amplitude, re:im");
  currents->add_option("--grid", cur.grid, "NPHIxNZ");
  currents->add_option("--zrange", cur.zrange, "zmin:zmax");
  currents->add_option("--radius", cur.radius);
  add_out_option(currents, inv);

  SpectrumArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "Kaluza-Klein levels");
  spectrum->add_option("--emax", spec.emax)->required();
  spectrum->add_option("--radii", spec.radii, "Comma-separated radii");
  spectrum->add_option("--energy", spec.energy,
                       "Beam energy for channel status (default emax)");
  add_out_option(spectrum, inv);

  OracleArgs orc;
  auto* oracle = app.add_subcommand(
      "oracle", "Square-barrier convergence to the delta amplitudes");
  oracle->add_option("--lambda", orc.lambda)->required();
  oracle->add_option("--k1", orc.k1)->required();
  oracle->add_option("--widths", orc.widths, "Comma-separated, decreasing")
      ->required();
  add_out_option(oracle, inv);

  InferArgs inf;
  auto* infer = app.add_subcommand("infer-radius",
                                   "Fit compactification radii to offsets");
  infer->add_option("--input", inf.input, "JSON input file")->required();
  infer->add_option("--tol", inf.tolerance, "Relative ladder tolerance");
  add_out_option(infer, inv);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (amplitudes->parsed()) {
      inv.command = "amplitudes";
      run_amplitudes(inv, amp);
    } else if (sweep->parsed()) {
      inv.command = "sweep";
      run_sweep(inv, sw);
    } else if (currents->parsed()) {
      inv.command = "currents";
      run_currents(inv, cur);
    } else if (spectrum->parsed()) {
      inv.command = "spectrum";
      run_spectrum(inv, spec);
    } else if (oracle->parsed()) {
      inv.command = "oracle";
      run_oracle(inv, orc);
    } else if (infer->parsed()) {
      inv.command = "infer-radius";
      run_infer_radius(inv, inf, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace kkscatter::cli
