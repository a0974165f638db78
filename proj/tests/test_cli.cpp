#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "risofdm/commands.hpp"
#include "risofdm/units.hpp"

using namespace risofdm;
namespace fs = std::filesystem;

namespace {

double rad(double deg) { return deg * kPi / 180.0; }

constexpr const char* kSmall = R"(# compact scenario for command tests
[ofdm]
n_s = 16

[ris]
n_y = 8
bits = 2
delta_theta_deg = 5

[sweep]
variable = theta2
values = 100 150 200
theta2_step_deg = 30
coverage_rows = 2:0.1 4:0.1
theta1_values_deg = 0 180
theta1_levels = 4
theta1_r_th = 0.1
ns_values = 8 16
ns_levels = 4

[miso]
q_x = 2
l = 1 2
n_y_values = 4
draws = 2
n_s = 8
bits = 2
scheme = both
)";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("risofdm-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name, std::ios::binary) << text;
    return path / name;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(RISOFDM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t data_rows(const std::string& csv) {
  std::size_t n = 0;
  std::istringstream is(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults follow the reference deployment") {
    const Scenario s;
    s.validate();
    CHECK(s.tx == Vec3{0.0, 0.0, 3.0});
    CHECK(s.ris == Vec3{100.0, 0.0, 3.0});
    CHECK(s.ue_radius == 15.0);
    const auto g = s.ris_geometry();
    CHECK(g.spacing == doctest::Approx(s.lambda0() / 2));
    CHECK(g.amplitude == 0.85);
    const auto grid = s.grid();
    CHECK(grid.f0 == 2.5e9);
    CHECK(grid.delta_f == 200e3);
    CHECK(grid.total_power == doctest::Approx(1.2589254117941673e-3));
    CHECK(grid.noise_psd == doctest::Approx(3.9810717055349565e-21));
    CHECK(rad(s.tx_theta_bw_deg) == doctest::Approx(kPi / 6));
    CHECK(rad(s.tx_phi_bw_deg) == doctest::Approx(kPi / 4));
    CHECK(rad(s.ue_theta_bw_deg) == doctest::Approx(kPi / 4));
    CHECK(rad(s.ue_phi_bw_deg) == doctest::Approx(kPi / 2));
    CHECK(s.theta1() == doctest::Approx(0.0).scale(1.0));
  }

  TEST_CASE("scenario errors carry line and column") {
    auto expect = [](const std::string& text, std::size_t line, std::size_t col) {
      try {
        parse_scenario_text(text);
        FAIL("expected ScenarioError for: " << text);
      } catch (const ScenarioError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == col);
      }
    };
    expect("[ris]\nn_y = 10\nfoo = 1\n", 3, 1);
    expect("[nope]\n", 1, 2);
    expect("[ris]\n  n_y = ten\n", 2, 9);
    expect("n_y = 4\n", 1, 1);
    expect("[geometry]\ntx = 1 2\n", 2, 6);
    CHECK_THROWS_AS(parse_scenario_text("[ris]\nzeta = 0.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_scenario_text("[sweep]\ncoverage_rows = 3:1.0\n"), ValidationError);
  }

  TEST_CASE("scenario write and parse round trip") {
    Scenario s = parse_scenario_text(kSmall);
    s.theta1_deg = 30.0;
    s.kappa = 12.5;
    s.fading_enabled = true;
    s.miso_kappa = INFINITY;
    std::ostringstream a;
    write_scenario(a, s);
    const Scenario back = parse_scenario_text(a.str());
    std::ostringstream b;
    write_scenario(b, back);
    CHECK(a.str() == b.str());
    CHECK(back.theta1_deg.value() == 30.0);
    CHECK(back.values == std::vector<double>{100.0, 150.0, 200.0});
    CHECK(std::isinf(back.miso_kappa));
  }

  TEST_CASE("CSV headers are versioned and stable") {
    CHECK(std::string(kSweepCsvHeader) ==
          "# risofdm sweep v1\nvariable,value,theta2_deg,profile,rate_bps_hz,"
          "initial_rate_bps_hz,iterations,evaluations,wall_time_s,fading_mean_bps_hz,"
          "fading_std_bps_hz\n");
    CHECK(std::string(kBitsTableHeader) ==
          "# risofdm coverage-by-levels v1\nlevels,r_th_bps_hz,arctan_percent,const_percent\n");
    CHECK(std::string(kTheta1TableHeader) ==
          "# risofdm coverage-by-theta1 v1\n"
          "theta1_deg,levels,r_th_bps_hz,arctan_percent,const_percent\n");
    CHECK(std::string(kNsTableHeader) ==
          "# risofdm gain-by-subcarriers v1\nn_s,levels,win_percent,max_gain_percent\n");
    CHECK(std::string(kMisoCsvHeader) ==
          "# risofdm miso v1\n"
          "n_ue,n_y,scheme,profile,mean_sum_rate_bps_hz,std_sum_rate_bps_hz,draws\n");
    CHECK(std::string(kFitCsvHeader) ==
          "# risofdm fit v1\na_rad_per_hz,b0_rad,m,i0,mse_rad2,max_abs_error_rad\n");
  }

  TEST_CASE("design-sets is deterministic and rejects odd bit counts") {
    TempDir dir;
    const auto sc = dir.write("small.ini", kSmall);
    const auto a = dir.path / "a.txt";
    const auto b = dir.path / "b.txt";
    REQUIRE(run("design-sets --scenario " + sc.string() + " --out " + a.string()) == 0);
    REQUIRE(run("design-sets --scenario " + sc.string() + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    const auto cb = load_codebook(a.string());
    CHECK(cb.size() == 4);
    CHECK(cb.bits == 2);

    const auto odd = dir.write("odd.ini", std::string(kSmall) + "\n[ris]\nbits = 3\n");
    CHECK(run("design-sets --scenario " + odd.string()) == 2);
    std::ostringstream os;
    CHECK_THROWS_AS(cmd_design_sets(parse_scenario_text("[ris]\nbits = 3\n"), os),
                    ValidationError);
  }

  TEST_CASE("sweep rows per point and profile") {
    TempDir dir;
    const auto sc = dir.write("small.ini", kSmall);
    const auto cb = dir.path / "cb.txt";
    REQUIRE(run("design-sets --scenario " + sc.string() + " --out " + cb.string()) == 0);
    const auto all = dir.path / "all.csv";
    REQUIRE(run("sweep --scenario " + sc.string() + " --codebook " + cb.string() + " --out " +
                all.string()) == 0);
    const std::string text = slurp(all);
    CHECK(text.rfind(kSweepCsvHeader, 0) == 0);
    CHECK(data_rows(text) == 9);
    const auto one = dir.path / "one.csv";
    REQUIRE(run("sweep --scenario " + sc.string() + " --profile arctan --out " + one.string()) ==
            0);
    CHECK(data_rows(slurp(one)) == 3);

    // Codebook sized for a different bit count.
    const auto wrong = dir.write("b4.ini", std::string(kSmall) + "\n[ris]\nbits = 4\n");
    CHECK(run("sweep --scenario " + wrong.string() + " --codebook " + cb.string()) == 2);
    CHECK(run("sweep --scenario " + sc.string() + " --profile best") == 2);
    CHECK(run("sweep --scenario " + (dir.path / "missing.ini").string()) == 2);
  }

  TEST_CASE("tables emit one row per configured entry") {
    TempDir dir;
    const auto sc = dir.write("small.ini", kSmall);
    const auto prefix = (dir.path / "t_").string();
    REQUIRE(run("tables --scenario " + sc.string() + " --out " + prefix) == 0);
    const auto levels = slurp(prefix + "levels.csv");
    CHECK(levels.rfind(kBitsTableHeader, 0) == 0);
    CHECK(data_rows(levels) == 2);
    CHECK(data_rows(slurp(prefix + "theta1.csv")) == 2);
    CHECK(data_rows(slurp(prefix + "ns.csv")) == 2);
    const auto again = (dir.path / "u_").string();
    REQUIRE(run("tables --scenario " + sc.string() + " --out " + again) == 0);
    CHECK(slurp(prefix + "levels.csv") == slurp(again + "levels.csv"));
    CHECK(slurp(prefix + "ns.csv") == slurp(again + "ns.csv"));
  }

  TEST_CASE("miso command grid and zero-forcing refusal") {
    TempDir dir;
    const auto sc = dir.write("small.ini", kSmall);
    const auto out = dir.path / "m.csv";
    REQUIRE(run("miso --scenario " + sc.string() + " --out " + out.string()) == 0);
    // 1 RIS size x 2 user counts x 2 schemes x 2 profiles
    CHECK(data_rows(slurp(out)) == 8);
    const auto bad = dir.write("bad.ini", std::string(kSmall) + "\n[miso]\nl = 3\n");
    CHECK(run("miso --scenario " + bad.string()) == 2);
    const auto mrt = dir.write("mrt.ini", std::string(kSmall) + "\n[miso]\nl = 3\nscheme = mrt\n");
    CHECK(run("miso --scenario " + mrt.string()) == 0);
  }

  TEST_CASE("fit command and argument errors") {
    TempDir dir;
    const auto out = dir.path / "fit.csv";
    REQUIRE(run("fit --a -1e-7 --b0 0.5 --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind(kFitCsvHeader, 0) == 0);
    CHECK(data_rows(text) == 1);
    CHECK(run("fit --a 1e-7") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("") == 2);
  }
}
