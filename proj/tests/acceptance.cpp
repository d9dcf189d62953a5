// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <unistd.h>

#include "cli_cases.hpp"
#include "kkscatter/analytic_scattering.hpp"
#include "kkscatter/currents.hpp"
#include "kkscatter/kk_spectrum.hpp"
#include "kkscatter/numerical_oracle.hpp"
#include "kkscatter/radius_inference.hpp"
#include "test_support.hpp"

using namespace kkscatter;
using kkscatter::testing::RandomSetupSource;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... values) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, values...);
  return buf;
}

Outcome unitarity() {
  constexpr double tol = 1e-12;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> lam(-10.0, 10.0);
  std::uniform_real_distribution<double> kk(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double k = 0.0;
    while (k == 0.0) k = kk(rng);
    const auto amps = coefficients(make_setup(lam(rng), k, 0, {1.0, 0.0}, {}));
    worst = std::max(worst, std::abs(amps.R1() + amps.T1() - 1.0));
  }
  return {worst <= tol,
          fmt("10000 draws, max |R1+T1-1| = %.3g (tol %.0e)", worst, tol)};
}

Outcome boundary() {
  constexpr double tol = 1e-12;
  RandomSetupSource src(202);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = src.setup();
    const auto [rho1, rho2] =
        boundary_residuals(s, reflection_amplitude(s), transmission_amplitude(s));
    worst = std::max({worst, std::abs(rho1), std::abs(rho2)});
  }
  return {worst < tol,
          fmt("1000 setups, max residual = %.3g (tol %.0e)", worst, tol)};
}

Outcome oracle_convergence() {
  const std::vector<double> widths{1e-3, 1e-4};
  const auto study = delta_limit_study(1.0, 1.0, widths);
  auto coeff_error = [](const ConvergenceRow& row) {
    return std::abs(row.R_barrier - row.R_delta) +
           std::abs(row.T_barrier - row.T_delta);
  };
  const double e3 = coeff_error(study.rows[0]);
  const double e4 = coeff_error(study.rows[1]);
  const double ratio = e3 / e4;
  const double amp_ratio = study.rows[0].error / study.rows[1].error;
  const bool pass = e3 <= 5e-3 && ratio >= 8.0 && ratio <= 12.0 &&
                    amp_ratio >= 8.0 && amp_ratio <= 12.0;
  return {pass, fmt("coefficient error %.3g at a=1e-3 (tol 5e-3), shrink x%.2f "
                    "at a=1e-4 (amplitudes x%.2f; band [8, 12])",
                    e3, ratio, amp_ratio)};
}

Outcome current_oracle() {
  constexpr double tol = 1e-8;
  RandomSetupSource src(303);
  double worst = 0.0;
  double worst_residue = 0.0;
  double min_order = 1e9;
  double max_order = 0.0;
  const Part parts[] = {Part::Incident, Part::Reflected, Part::Transmitted};
  auto rel = [](const CurrentVector& a, const CurrentVector& b) {
    return std::hypot(a.j_phi - b.j_phi, a.j_z - b.j_z) / b.norm();
  };
  for (int i = 0; i < 100; ++i) {
    const auto s = src.setup();
    const auto a = coefficients(s);
    const Complex A1 = src.complex_amplitude();
    const Part part = parts[i % 3];
    const double z = src.uniform(0.05, 5.0);
    const SurfacePoint p(src.uniform(0.0, 2.0 * std::numbers::pi),
                         part == Part::Transmitted ? z : -z);
    const auto exact = current_closed_form(part, p, s, a, A1);
    const auto fine = current_numerical(part, p, s, a, A1, 1e-5);
    worst = std::max(worst, rel(fine.current, exact));
    worst_residue = std::max(worst_residue, fine.imaginary_residue);
    // Observed order from h = 2e-3 -> 1e-3.
    const double e1 = rel(current_numerical(part, p, s, a, A1, 2e-3).current, exact);
    const double e2 = rel(current_numerical(part, p, s, a, A1, 1e-3).current, exact);
    const double order = std::log2(e1 / e2);
    min_order = std::min(min_order, order);
    max_order = std::max(max_order, order);
  }
  const bool pass = worst <= tol && min_order > 1.9 && max_order < 2.1 &&
                    worst_residue < 1e-10;
  return {pass, fmt("100 samples, max rel error %.3g at h=1e-5 (tol %.0e), "
                    "observed order in [%.3f, %.3f], imag residue %.2g",
                    worst, tol, min_order, max_order, worst_residue)};
}

Outcome flux_balance() {
  RandomSetupSource src(404);
  double worst_balance = 0.0;
  double worst_coeff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = src.setup();
    const auto a = coefficients(s);
    const SurfacePoint p(src.uniform(0.0, 6.28), src.uniform(-5.0, 5.0));
    const auto ji = current_closed_form(Part::Incident, p, s, a);
    const auto jr = current_closed_form(Part::Reflected, p, s, a);
    const auto jt = current_closed_form(Part::Transmitted, p, s, a);
    worst_balance = std::max(worst_balance, std::abs(ji.j_z + jr.j_z - jt.j_z));

    const std::vector<SurfacePoint> grid{p, SurfacePoint(p.phi() + 1.0, -1.0)};
    const auto [R1, T1] = coefficients_from_currents(s, a, 1.0, grid);
    worst_coeff = std::max(
        {worst_coeff, std::abs(R1 - a.R1()), std::abs(T1 - a.T1())});
  }
  return {worst_balance <= 1e-12 && worst_coeff <= 1e-10,
          fmt("1000 points, max |ji+jr-jt| = %.3g (tol 1e-12), max coefficient "
              "mismatch %.3g (tol 1e-10)",
              worst_balance, worst_coeff)};
}

std::set<std::vector<int>> mode_box(double e_max, const PhysicalConfig& config,
                                    const std::vector<double>& radii) {
  const std::size_t d = radii.size();
  std::vector<int> bound(d);
  for (std::size_t i = 0; i < d; ++i) {
    bound[i] = static_cast<int>(std::ceil(
        radii[i] * std::sqrt(2.0 * config.mass() * e_max) / config.hbar()));
  }
  std::set<std::vector<int>> found;
  std::vector<int> modes(d, 0);
  while (true) {
    double energy = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      energy += static_cast<double>(modes[i]) * modes[i] * config.hbar() *
                config.hbar() / (2.0 * config.mass() * radii[i] * radii[i]);
    }
    if (energy <= e_max) found.insert(modes);
    std::size_t i = 0;
    while (i < d && modes[i] == bound[i]) modes[i++] = 0;
    if (i == d) break;
    ++modes[i];
  }
  return found;
}

Outcome spectrum() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int matched = 0;
  bool scaling_exact = true;
  double worst_roundtrip = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    std::vector<double> radii(d);
    for (auto& r : radii) r = 0.2 + 2.0 * u(rng);
    const PhysicalConfig config(0.5 + u(rng), 0.5 + u(rng));
    const double e_max = 0.1 + 30.0 * u(rng);
    const CompactGeometry geometry(radii);
    const auto levels = enumerate_levels(e_max, config, geometry);
    std::set<std::vector<int>> got;
    for (const auto& l : levels) got.insert(l.modes);
    matched += got.size() == levels.size() && got == mode_box(e_max, config, radii);

    for (double s : {2.0, 0.5, 4.0}) {
      std::vector<double> shrunk(radii);
      for (auto& r : shrunk) r /= s;
      const CompactGeometry narrow(shrunk);
      for (const auto& l : levels) {
        scaling_exact &= compact_energy(l.modes, config, narrow) ==
                         s * s * l.compact_energy;
      }
    }
    for (const auto& l : levels) {
      const double energy = l.compact_energy + 0.01 + 10.0 * u(rng);
      const auto ch = axial_wavenumber(energy, l.modes, config, geometry);
      const double back =
          total_energy(std::get<OpenChannel>(ch).k1, l.modes, config, geometry);
      worst_roundtrip = std::max(worst_roundtrip, std::abs(back - energy) / energy);
    }
  }
  return {matched == 100 && scaling_exact && worst_roundtrip <= 1e-12,
          fmt("%d/100 instances equal the brute-force box, 1/R^2 scaling %s, "
              "max relative E<->k1 round-trip error %.3g (tol 1e-12)",
              matched, scaling_exact ? "exact" : "NOT exact", worst_roundtrip)};
}

Outcome periodicity() {
  int accepted = 0;
  for (int n = -10; n <= 10; ++n) accepted += check_periodicity(n, 1e-9);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    double x = u(rng);
    while (x == std::round(x)) x = u(rng);
    rejected += !check_periodicity(x, 1e-9);
  }
  return {accepted == 21 && rejected == 100,
          fmt("%d/21 integers accepted, %d/100 non-integers rejected (tol 1e-9)",
              accepted, rejected)};
}

Outcome radius_inference() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> log_r(std::log(0.01), std::log(10.0));
  double worst_1d = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double R = std::exp(log_r(rng));
    const double c = 1.0 / (2.0 * R * R);
    std::vector<MeasuredLevel> levels;
    for (int n = 1; n <= 5; ++n) levels.emplace_back(n, c * n * n);
    worst_1d = std::max(worst_1d, std::abs(fit_radius(levels).radius - R) / R);
  }

  double worst_2d = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double R1 = std::exp(log_r(rng));
    const double R2 = std::exp(log_r(rng));
    const double c1 = 1.0 / (2.0 * R1 * R1);
    const double c2 = 1.0 / (2.0 * R2 * R2);
    std::vector<TorusLevel> levels;
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        levels.push_back({{a, b}, c1 * a * a + c2 * b * b, 0.0});
      }
    }
    const auto fit = fit_torus_radii(levels, {}, 2);
    worst_2d = std::max({worst_2d, std::abs(fit.radii[0] - R1) / R1,
                         std::abs(fit.radii[1] - R2) / R2});
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  int within = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double R = std::exp(log_r(rng));
    const double c = 1.0 / (2.0 * R * R);
    std::vector<MeasuredLevel> levels;
    for (int n = 1; n <= 5; ++n) {
      const double exact = c * n * n;
      const double sigma = 1e-3 * exact;
      levels.emplace_back(n, exact + sigma * gauss(rng), sigma);
    }
    within += std::abs(fit_radius(levels).radius - R) / R <= 1e-2;
  }
  return {worst_1d <= 1e-9 && worst_2d <= 1e-9 && within >= 95,
          fmt("1-D max rel error %.3g, 2-torus max rel error %.3g (tol 1e-9), "
              "noisy fits within 1e-2: %d/100 (need 95)",
              worst_1d, worst_2d, within)};
}

Outcome cli_determinism() {
  const fs::path tmp =
      fs::temp_directory_path() / ("kkscatter_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  int identical = 0;
  int golden = 0;
  const auto cases = kkscatter::testing::golden_cases();
  for (const auto& c : cases) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      auto args = c.args;
      const auto out = tmp / (std::to_string(run) + "_" + c.golden);
      args.push_back("--out");
      args.push_back(out.string());
      if (kkscatter::testing::run_cli(args).code != 0) continue;
      const auto bytes = kkscatter::testing::read_file(out);
      if (run == 0) {
        first = bytes;
        golden += bytes == kkscatter::testing::read_file(
                               kkscatter::testing::test_dir() / "golden" / c.golden);
      } else {
        identical += !first.empty() && bytes == first;
      }
    }
  }
  fs::remove_all(tmp);
  const int n = static_cast<int>(cases.size());
  return {identical == n && golden == n,
          fmt("%d/%d commands byte-identical on re-run, %d/%d match golden files",
              identical, n, golden, n)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 unitarity", unitarity},
      {"AC2 boundary residuals", boundary},
      {"AC3 square-barrier oracle convergence", oracle_convergence},
      {"AC4 closed-form vs finite-difference currents", current_oracle},
      {"AC5 flux balance", flux_balance},
      {"AC6 spectrum correctness", spectrum},
      {"AC7 periodicity", periodicity},
      {"AC8 radius inference", radius_inference},
      {"AC9 CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome{false, ""};
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
