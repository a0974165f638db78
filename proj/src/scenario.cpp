#include "risofdm/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "risofdm/units.hpp"

namespace risofdm {

ScenarioError::ScenarioError(const std::string& msg, std::size_t line, std::size_t column)
    : ValidationError("scenario:" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                      msg),
      line_(line),
      column_(column) {}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kTheta2: return "theta2";
    case SweepVariable::kBits: return "bits";
    case SweepVariable::kElements: return "n_elements";
    case SweepVariable::kSubcarriers: return "n_subcarriers";
    case SweepVariable::kTheta1: return "theta1";
  }
  return "?";
}

namespace {

double rad(double deg) { return deg * kPi / 180.0; }

struct Cursor {
  std::size_t line;
  std::size_t column;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double to_double(const std::string& tok, const Cursor& at) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ScenarioError("expected a number, got '" + tok + "'", at.line, at.column);
  }
  return v;
}

std::size_t to_count(const std::string& tok, const Cursor& at) {
  const double v = to_double(tok, at);
  if (v < 0.0 || v != std::floor(v) || v > 1e9) {
    throw ScenarioError("expected a non-negative integer, got '" + tok + "'", at.line, at.column);
  }
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& tok, const Cursor& at) {
  if (tok == "true" || tok == "yes" || tok == "on" || tok == "1") return true;
  if (tok == "false" || tok == "no" || tok == "off" || tok == "0") return false;
  throw ScenarioError("expected a boolean, got '" + tok + "'", at.line, at.column);
}

std::string single(const std::string& value, const Cursor& at) {
  const auto t = split_ws(value);
  if (t.size() != 1) throw ScenarioError("expected a single value", at.line, at.column);
  return t[0];
}

using Setter = std::function<void(Scenario&, const std::string&, const Cursor&)>;

Setter number(double Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    s.*field = to_double(single(v, at), at);
  };
}
// Rician factors additionally accept "inf" for a pure line-of-sight channel.
Setter rician(double Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    const std::string t = single(v, at);
    s.*field = t == "inf" ? std::numeric_limits<double>::infinity() : to_double(t, at);
  };
}
Setter count(std::size_t Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    s.*field = to_count(single(v, at), at);
  };
}
Setter integer(int Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    s.*field = static_cast<int>(to_count(single(v, at), at));
  };
}
Setter boolean(bool Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    s.*field = to_bool(single(v, at), at);
  };
}
Setter word(std::string Scenario::*field, std::vector<std::string> allowed) {
  return [field, allowed](Scenario& s, const std::string& v, const Cursor& at) {
    const std::string w = single(v, at);
    for (const auto& a : allowed) {
      if (a == w) {
        s.*field = w;
        return;
      }
    }
    throw ScenarioError("unsupported value '" + w + "'", at.line, at.column);
  };
}
Setter vec3(Vec3 Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    const auto t = split_ws(v);
    if (t.size() != 3) throw ScenarioError("expected three coordinates", at.line, at.column);
    s.*field = {to_double(t[0], at), to_double(t[1], at), to_double(t[2], at)};
  };
}
Setter numbers(std::vector<double> Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    std::vector<double> out;
    for (const auto& t : split_ws(v)) out.push_back(to_double(t, at));
    s.*field = out;
  };
}
Setter counts(std::vector<std::size_t> Scenario::*field) {
  return [field](Scenario& s, const std::string& v, const Cursor& at) {
    std::vector<std::size_t> out;
    for (const auto& t : split_ws(v)) out.push_back(to_count(t, at));
    if (out.empty()) throw ScenarioError("expected at least one value", at.line, at.column);
    s.*field = out;
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"geometry.tx", vec3(&Scenario::tx)},
      {"geometry.ris", vec3(&Scenario::ris)},
      {"geometry.ue_radius", number(&Scenario::ue_radius)},
      {"geometry.ue_theta2p_deg", number(&Scenario::ue_theta2p_deg)},
      {"geometry.theta1_deg",
       [](Scenario& s, const std::string& v, const Cursor& at) {
         s.theta1_deg = to_double(single(v, at), at);
       }},
      {"geometry.theta1p_deg", number(&Scenario::theta1p_deg)},
      {"geometry.direct_link", boolean(&Scenario::direct_link)},
      {"ofdm.f0", number(&Scenario::f0)},
      {"ofdm.delta_f", number(&Scenario::delta_f)},
      {"ofdm.n_s", count(&Scenario::n_s)},
      {"ofdm.power_dbm", number(&Scenario::power_dbm)},
      {"ofdm.noise_dbm_per_hz", number(&Scenario::noise_dbm_per_hz)},
      {"ofdm.equal_power", boolean(&Scenario::equal_power)},
      {"ris.n_y", count(&Scenario::n_y)},
      {"ris.n_z", count(&Scenario::n_z)},
      {"ris.zeta", number(&Scenario::zeta)},
      {"ris.gamma", number(&Scenario::gamma)},
      {"ris.bits", integer(&Scenario::bits)},
      {"ris.epsilon", number(&Scenario::epsilon)},
      {"ris.delta_theta_deg", number(&Scenario::delta_theta_deg)},
      {"ris.fit_m_max", number(&Scenario::fit_m_max)},
      {"ris.fit_i0_max", number(&Scenario::fit_i0_max)},
      {"antennas.tx_theta_bw_deg", number(&Scenario::tx_theta_bw_deg)},
      {"antennas.tx_phi_bw_deg", number(&Scenario::tx_phi_bw_deg)},
      {"antennas.ue_theta_bw_deg", number(&Scenario::ue_theta_bw_deg)},
      {"antennas.ue_phi_bw_deg", number(&Scenario::ue_phi_bw_deg)},
      {"antennas.gain_model", word(&Scenario::gain_model, {"beamwidth", "unity"})},
      {"sweep.variable",
       [](Scenario& s, const std::string& v, const Cursor& at) {
         const std::string w = single(v, at);
         for (auto var : {SweepVariable::kTheta2, SweepVariable::kBits, SweepVariable::kElements,
                          SweepVariable::kSubcarriers, SweepVariable::kTheta1}) {
           if (w == to_string(var)) {
             s.variable = var;
             return;
           }
         }
         throw ScenarioError("unknown sweep variable '" + w + "'", at.line, at.column);
       }},
      {"sweep.start", number(&Scenario::start)},
      {"sweep.stop", number(&Scenario::stop)},
      {"sweep.step", number(&Scenario::step)},
      {"sweep.values", numbers(&Scenario::values)},
      {"sweep.theta2_step_deg", number(&Scenario::theta2_step_deg)},
      {"sweep.coverage_rows",
       [](Scenario& s, const std::string& v, const Cursor& at) {
         std::vector<CoverageRow> rows;
         for (const auto& t : split_ws(v)) {
           const auto colon = t.find(':');
           if (colon == std::string::npos) {
             throw ScenarioError("coverage rows are written levels:r_th", at.line, at.column);
           }
           rows.push_back({to_count(t.substr(0, colon), at), to_double(t.substr(colon + 1), at)});
         }
         s.coverage_rows = rows;
       }},
      {"sweep.theta1_values_deg", numbers(&Scenario::theta1_values_deg)},
      {"sweep.theta1_levels", count(&Scenario::theta1_levels)},
      {"sweep.theta1_r_th", number(&Scenario::theta1_r_th)},
      {"sweep.ns_values", counts(&Scenario::ns_values)},
      {"sweep.ns_levels", count(&Scenario::ns_levels)},
      {"fading.enabled", boolean(&Scenario::fading_enabled)},
      {"fading.kappa", rician(&Scenario::kappa)},
      {"fading.sigma2", number(&Scenario::sigma2)},
      {"fading.seed",
       [](Scenario& s, const std::string& v, const Cursor& at) {
         const std::string w = single(v, at);
         char* end = nullptr;
         const unsigned long long x = std::strtoull(w.c_str(), &end, 10);
         if (w.empty() || *end != '\0' || w[0] == '-') {
           throw ScenarioError("expected an unsigned seed", at.line, at.column);
         }
         s.seed = x;
       }},
      {"fading.draws", count(&Scenario::draws)},
      {"fading.rewaterfill", boolean(&Scenario::rewaterfill)},
      {"miso.q_x", count(&Scenario::q_x)},
      {"miso.q_z", count(&Scenario::q_z)},
      {"miso.delta_t_lambda", number(&Scenario::delta_t_lambda)},
      {"miso.l", counts(&Scenario::ue_counts)},
      {"miso.n_y_values", counts(&Scenario::miso_n_y)},
      {"miso.scheme", word(&Scenario::miso_scheme, {"zf", "mrt", "both"})},
      {"miso.power_dbm", number(&Scenario::miso_power_dbm)},
      {"miso.bits", integer(&Scenario::miso_bits)},
      {"miso.kappa", rician(&Scenario::miso_kappa)},
      {"miso.draws", count(&Scenario::miso_draws)},
      {"miso.n_s", count(&Scenario::miso_n_s)},
  };
  return table;
}

std::string trim(const std::string& s, std::size_t& offset) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  offset = b;
  return s.substr(b, e - b);
}

}  // namespace

Scenario parse_scenario(std::istream& is) {
  Scenario sc;
  std::string section;
  std::string raw;
  std::size_t lineno = 0;
  const std::vector<std::string> sections = {"geometry", "ofdm",  "ris", "antennas",
                                             "sweep",    "fading", "miso"};
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const std::string content = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string line = trim(content, lead);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError("unterminated section header", lineno, lead + 1);
      std::size_t off = 0;
      section = trim(line.substr(1, line.size() - 2), off);
      bool known = false;
      for (const auto& s : sections) known = known || s == section;
      if (!known) throw ScenarioError("unknown section '" + section + "'", lineno, lead + 2 + off);
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ScenarioError("expected 'key = value'", lineno, lead + 1);
    if (section.empty()) throw ScenarioError("key outside of any section", lineno, lead + 1);
    std::size_t key_off = 0;
    const std::string key = trim(content.substr(0, eq), key_off);
    std::size_t val_off = 0;
    const std::string value = trim(content.substr(eq + 1), val_off);
    const auto it = setters().find(section + "." + key);
    if (it == setters().end()) {
      throw ScenarioError("unknown key '" + key + "' in section [" + section + "]", lineno,
                          key_off + 1);
    }
    it->second(sc, value, Cursor{lineno, eq + 2 + val_off});
  }
  sc.validate();
  return sc;
}

Scenario parse_scenario_text(const std::string& text) {
  std::istringstream is(text);
  return parse_scenario(is);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open scenario '" + path + "'");
  return parse_scenario(is);
}

void Scenario::validate() const {
  grid().validate();
  ris_geometry().validate();
  slope_count(bits);
  if (!(zeta >= 0.5 && zeta <= 1.0)) throw ValidationError("ris.zeta must lie in [0.5, 1]");
  if (!(ue_radius > 0.0)) throw ValidationError("geometry.ue_radius must be positive");
  if (!(epsilon > 0.0)) throw ValidationError("ris.epsilon must be positive");
  if (!(delta_theta_deg > 0.0)) throw ValidationError("ris.delta_theta_deg must be positive");
  if (!(theta2_step_deg > 0.0)) throw ValidationError("sweep.theta2_step_deg must be positive");
  if (!(step > 0.0)) throw ValidationError("sweep.step must be positive");
  if (fit_m_max < 0.0 || !(fit_i0_max > 0.0)) throw ValidationError("invalid fit ranges");
  if (draws < 1 || miso_draws < 1) throw ValidationError("draw counts must be at least 1");
  if (!(kappa >= 0.0) || !(miso_kappa >= 0.0) || !(sigma2 >= 0.0)) {
    throw ValidationError("fading parameters must be non-negative");
  }
  for (const auto& row : coverage_rows) {
    if (row.levels < 2 || (row.levels & (row.levels - 1)) != 0) {
      throw ValidationError("coverage levels must be powers of two (>= 2)");
    }
  }
  tx_array().validate();
  slope_count(miso_bits);
  norm(tx - ris) > 0.0 ? void() : throw ValidationError("geometry.tx and geometry.ris coincide");
}

OfdmGrid Scenario::grid() const {
  OfdmGrid g;
  g.f0 = f0;
  g.delta_f = delta_f;
  g.n_s = n_s;
  g.total_power = dbm_to_watt(power_dbm);
  g.noise_psd = dbm_to_watt(noise_dbm_per_hz);
  return g;
}

double Scenario::lambda0() const { return wavelength(f0); }

RisGeometry Scenario::ris_geometry() const {
  RisGeometry g;
  g.center = ris;
  g.n_y = n_y;
  g.n_z = n_z;
  g.spacing = zeta * lambda0();
  g.amplitude = gamma;
  return g;
}

AntennaGains Scenario::gains() const {
  if (gain_model == "unity") return AntennaGains{1.0, 1.0};
  return AntennaGains{gain_from_beamwidths(rad(tx_theta_bw_deg), rad(tx_phi_bw_deg)),
                      gain_from_beamwidths(rad(ue_theta_bw_deg), rad(ue_phi_bw_deg))};
}

Vec3 Scenario::tx_position() const {
  if (!theta1_deg) return tx;
  return tx_for_arrival(ris, norm(ris - tx), rad(*theta1_deg), rad(theta1p_deg));
}

double Scenario::theta1() const {
  const auto link = make_link(tx_position(), ris, ue_on_circle(ris, 1.0, kPi, kPi / 2.0), {});
  return link.theta1;
}

double Scenario::theta1p() const {
  const auto link = make_link(tx_position(), ris, ue_on_circle(ris, 1.0, kPi, kPi / 2.0), {});
  return link.theta1p;
}

LinkGeometry Scenario::link(double theta2) const {
  return make_link(tx_position(), ris, ue_on_circle(ris, ue_radius, theta2, rad(ue_theta2p_deg)),
                   gains());
}

DesignOptions Scenario::design_options() const {
  DesignOptions o;
  o.delta_theta = rad(delta_theta_deg);
  o.fit.m_max = fit_m_max;
  o.fit.i0_max = fit_i0_max;
  return o;
}

FadingConfig Scenario::fading() const {
  FadingConfig f;
  f.kappa = kappa;
  f.sigma2 = sigma2;
  f.seed = seed;
  f.draws = draws;
  f.rewaterfill = rewaterfill;
  return f;
}

TxArray Scenario::tx_array() const {
  TxArray t;
  t.q_x = q_x;
  t.q_z = q_z;
  t.spacing = delta_t_lambda * lambda0();
  t.base = tx;
  return t;
}

std::vector<double> Scenario::theta2_grid() const {
  return angle_grid(kPi / 2.0, 1.5 * kPi, rad(theta2_step_deg));
}

namespace {

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

}  // namespace

void write_scenario(std::ostream& os, const Scenario& s) {
  const auto old = os.precision(17);
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "[geometry]\n"
     << "tx = " << s.tx[0] << ' ' << s.tx[1] << ' ' << s.tx[2] << "\n"
     << "ris = " << s.ris[0] << ' ' << s.ris[1] << ' ' << s.ris[2] << "\n"
     << "ue_radius = " << s.ue_radius << "\n"
     << "ue_theta2p_deg = " << s.ue_theta2p_deg << "\n";
  if (s.theta1_deg) os << "theta1_deg = " << *s.theta1_deg << "\n";
  os << "theta1p_deg = " << s.theta1p_deg << "\n"
     << "direct_link = " << b(s.direct_link) << "\n\n"
     << "[ofdm]\n"
     << "f0 = " << s.f0 << "\ndelta_f = " << s.delta_f << "\nn_s = " << s.n_s
     << "\npower_dbm = " << s.power_dbm << "\nnoise_dbm_per_hz = " << s.noise_dbm_per_hz
     << "\nequal_power = " << b(s.equal_power) << "\n\n"
     << "[ris]\n"
     << "n_y = " << s.n_y << "\nn_z = " << s.n_z << "\nzeta = " << s.zeta
     << "\ngamma = " << s.gamma << "\nbits = " << s.bits << "\nepsilon = " << s.epsilon
     << "\ndelta_theta_deg = " << s.delta_theta_deg << "\nfit_m_max = " << s.fit_m_max
     << "\nfit_i0_max = " << s.fit_i0_max << "\n\n"
     << "[antennas]\n"
     << "tx_theta_bw_deg = " << s.tx_theta_bw_deg << "\ntx_phi_bw_deg = " << s.tx_phi_bw_deg
     << "\nue_theta_bw_deg = " << s.ue_theta_bw_deg << "\nue_phi_bw_deg = " << s.ue_phi_bw_deg
     << "\ngain_model = " << s.gain_model << "\n\n"
     << "[sweep]\n"
     << "variable = " << to_string(s.variable) << "\nstart = " << s.start << "\nstop = " << s.stop
     << "\nstep = " << s.step << "\n";
  if (!s.values.empty()) os << "values = " << join(s.values) << "\n";
  os << "theta2_step_deg = " << s.theta2_step_deg << "\ncoverage_rows =";
  for (const auto& r : s.coverage_rows) os << ' ' << r.levels << ':' << r.r_th;
  os << "\ntheta1_values_deg = " << join(s.theta1_values_deg)
     << "\ntheta1_levels = " << s.theta1_levels << "\ntheta1_r_th = " << s.theta1_r_th
     << "\nns_values = " << join(s.ns_values) << "\nns_levels = " << s.ns_levels << "\n\n"
     << "[fading]\n"
     << "enabled = " << b(s.fading_enabled) << "\nkappa = " << s.kappa << "\nsigma2 = " << s.sigma2
     << "\nseed = " << s.seed << "\ndraws = " << s.draws << "\nrewaterfill = " << b(s.rewaterfill)
     << "\n\n"
     << "[miso]\n"
     << "q_x = " << s.q_x << "\nq_z = " << s.q_z << "\ndelta_t_lambda = " << s.delta_t_lambda
     << "\nl = " << join(s.ue_counts) << "\nn_y_values = " << join(s.miso_n_y)
     << "\nscheme = " << s.miso_scheme << "\npower_dbm = " << s.miso_power_dbm
     << "\nbits = " << s.miso_bits << "\nkappa = " << s.miso_kappa << "\ndraws = " << s.miso_draws
     << "\nn_s = " << s.miso_n_s << "\n";
  os.precision(old);
}

}  // namespace risofdm
