// Command-line front-end: codebook design, sweeps, tables, multi-user runs and
// single-profile fits. All output is CSV (or the codebook text format).
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "risofdm/commands.hpp"

namespace {

using namespace risofdm;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::string scenario;
  std::string codebook;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> draws;
  std::string profile = "all";
  bool equal_power = false;
  bool direct_link = false;
  std::size_t threads = 0;
};

Scenario load(const Common& c) {
  Scenario sc = c.scenario.empty() ? Scenario{} : load_scenario(c.scenario);
  if (c.seed) sc.seed = *c.seed;
  if (c.draws) {
    sc.draws = *c.draws;
    sc.miso_draws = *c.draws;
  }
  if (c.equal_power) sc.equal_power = true;
  if (c.direct_link) sc.direct_link = true;
  sc.validate();
  return sc;
}

std::optional<ProfileCodebook> codebook(const Common& c) {
  if (c.codebook.empty()) return std::nullopt;
  return load_codebook(c.codebook);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write '" + path + "'");
  os << text;
  if (!os.flush()) throw ValidationError("failed writing '" + path + "'");
}

void add_common(CLI::App* cmd, Common& c, bool profiles) {
  cmd->add_option("--scenario", c.scenario, "Scenario file (defaults apply when omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "Output path; '-' or omitted writes to stdout");
  cmd->add_option("--seed", c.seed, "Fading seed override");
  cmd->add_option("--draws", c.draws, "Fading draw count override");
  cmd->add_flag("--equal-power", c.equal_power, "Split the power budget equally");
  cmd->add_flag("--direct-link", c.direct_link, "Include the Tx-UE path");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  if (profiles) {
    cmd->add_option("--codebook", c.codebook, "Codebook file from design-sets")
        ->check(CLI::ExistingFile);
    cmd->add_option("--profile", c.profile, "arctan, const, ideal or all")
        ->check(CLI::IsMember({"arctan", "const", "ideal", "all"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wide-band RIS link simulator with arctan phase-frequency cells"};
  app.require_subcommand(1);

  Common c;
  bool miso_design = false;
  std::string variable;
  double fit_a = 0.0;
  double fit_b0 = 0.0;

  auto* design = app.add_subcommand("design-sets", "Design the profile codebook");
  add_common(design, c, false);
  design->add_flag("--miso", miso_design, "Design over every Tx antenna of the array");

  auto* sweep = app.add_subcommand(
      "sweep",
      "Rate sweep. CSV columns: variable, value, theta2_deg, profile, rate_bps_hz, "
      "initial_rate_bps_hz, iterations (descent passes), evaluations, wall_time_s, "
      "fading_mean_bps_hz and fading_std_bps_hz (nan unless fading is enabled)");
  add_common(sweep, c, true);
  sweep->add_option("--variable", variable, "theta2, bits, n_elements, n_subcarriers or theta1")
      ->check(CLI::IsMember({"theta2", "bits", "n_elements", "n_subcarriers", "theta1"}));

  auto* tables = app.add_subcommand(
      "tables", "Coverage and gain tables; --out is a prefix for levels.csv, theta1.csv, ns.csv");
  add_common(tables, c, true);

  auto* miso = app.add_subcommand("miso", "Multi-user mean sum rate versus RIS size");
  add_common(miso, c, true);

  auto* fit = app.add_subcommand("fit", "Fit an arctan profile to a linear phase law");
  add_common(fit, c, false);
  fit->add_option("--a", fit_a, "Slope in rad/Hz")->required();
  fit->add_option("--b0", fit_b0, "Intercept in rad")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    Scenario sc = load(c);
    const auto cb = codebook(c);
    CommandOptions opts;
    opts.threads = c.threads;
    opts.profiles = ProfileMask::parse(c.profile);
    opts.miso = miso_design;
    std::ostringstream os;
    if (*design) {
      cmd_design_sets(sc, os, opts);
    } else if (*sweep) {
      if (!variable.empty()) {
        sc.variable = parse_scenario_text("[sweep]\nvariable = " + variable + "\n").variable;
      }
      cmd_sweep(sc, cb ? &*cb : nullptr, os, opts);
    } else if (*tables) {
      std::ostringstream a, b;
      cmd_tables(sc, cb ? &*cb : nullptr, os, a, b, opts);
      if (c.out.empty() || c.out == "-") {
        std::cout << os.str() << '\n' << a.str() << '\n' << b.str();
      } else {
        emit(c.out + "levels.csv", os.str());
        emit(c.out + "theta1.csv", a.str());
        emit(c.out + "ns.csv", b.str());
      }
      return 0;
    } else if (*miso) {
      cmd_miso(sc, cb ? &*cb : nullptr, os, opts);
    } else if (*fit) {
      cmd_fit(sc, make_linear(fit_a, fit_b0), os);
    }
    emit(c.out, os.str());
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
