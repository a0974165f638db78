#include "risofdm/miso.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "risofdm/units.hpp"
#include "risofdm/water_filling.hpp"

namespace risofdm {

namespace {

constexpr int kMaxDim = 64;
using SmallMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

}  // namespace

void TxArray::validate() const {
  if (q_x < 1 || q_z < 1) throw ValidationError("TxArray: antenna counts must be positive");
  if (size() > kMaxDim) throw ValidationError("TxArray: at most 64 antennas are supported");
  if (!(spacing > 0.0)) throw ValidationError("TxArray: spacing must be positive");
}

double TxArray::index_x(std::size_t j) const {
  return static_cast<double>(j % q_x) + 1.0 - static_cast<double>(q_x) / 2.0;
}

double TxArray::index_z(std::size_t j) const {
  return static_cast<double>(j / q_x) + 1.0 - static_cast<double>(q_z) / 2.0;
}

Vec3 TxArray::position(std::size_t j) const {
  return base + Vec3{spacing * index_x(j), 0.0, spacing * index_z(j)};
}

std::vector<Vec3> ues_on_half_circle(const Vec3& ris_center, double radius, std::size_t count) {
  if (count < 1) throw ValidationError("ues_on_half_circle: need at least one UE");
  std::vector<Vec3> out;
  for (std::size_t l = 0; l < count; ++l) {
    const double theta2 =
        kPi / 2.0 + kPi * (static_cast<double>(l) + 0.5) / static_cast<double>(count);
    out.push_back(ue_on_circle(ris_center, radius, theta2, kPi / 2.0));
  }
  return out;
}

const char* to_string(Precoder p) { return p == Precoder::kZF ? "zf" : "mrt"; }

MisoModel build_miso_model(const TxArray& tx, const RisGeometry& geom,
                           const std::vector<Vec3>& ues, const OfdmGrid& grid,
                           const AntennaGains& gains, const MisoLinkOptions& opts) {
  tx.validate();
  geom.validate();
  grid.validate();
  if (ues.empty() || ues.size() > kMaxDim) throw ValidationError("MISO: UE count must lie in [1, 64]");
  MisoModel m;
  m.n_elements = geom.size();
  m.n_s = grid.n_s;
  m.n_ue = ues.size();
  m.n_tx = tx.size();
  m.amplitude = geom.amplitude;
  const std::size_t n = m.n_elements;
  const std::size_t ns = m.n_s;
  const double los = opts.fading != nullptr ? opts.fading->los_scale() : 1.0;

  m.h1.resize(m.n_tx * n * ns);
  for (std::size_t q = 0; q < m.n_tx; ++q) {
    const LinkGeometry link = make_link(tx.position(q), geom.center, ues[0], gains);
    std::vector<cd> chi;
    if (opts.fading != nullptr) {
      chi = sample_diffuse(*opts.fading, opts.draw, stream_id(FadingLink::kTxRis, q), n, grid,
                           link.g_t, link.d1);
    }
    const auto h = incoming_coefficients(geom, link, grid, los, chi.empty() ? nullptr : &chi);
    std::copy(h.begin(), h.end(), m.h1.begin() + static_cast<std::ptrdiff_t>(q * n * ns));
  }
  m.h2.resize(m.n_ue * n * ns);
  for (std::size_t l = 0; l < m.n_ue; ++l) {
    const LinkGeometry link = make_link(tx.position(0), geom.center, ues[l], gains);
    std::vector<cd> chi;
    if (opts.fading != nullptr) {
      chi = sample_diffuse(*opts.fading, opts.draw, stream_id(FadingLink::kRisUe, l), n, grid,
                           link.g_r, link.d2);
    }
    const auto h = outgoing_coefficients(geom, link, grid, los, chi.empty() ? nullptr : &chi);
    std::copy(h.begin(), h.end(), m.h2.begin() + static_cast<std::ptrdiff_t>(l * n * ns));
  }
  m.direct.assign(ns * m.n_ue * m.n_tx, cd{0.0, 0.0});
  if (opts.include_direct) {
    for (std::size_t l = 0; l < m.n_ue; ++l) {
      for (std::size_t q = 0; q < m.n_tx; ++q) {
        const LinkGeometry link = make_link(tx.position(q), geom.center, ues[l], gains);
        SmallScaleTerms terms;
        terms.los_scale = los;
        if (opts.fading != nullptr) {
          terms.chi_d = sample_diffuse(*opts.fading, opts.draw,
                                       stream_id(FadingLink::kDirect, q * 256 + l), 1, grid,
                                       link.g_t * link.g_r, link.dd);
        }
        const auto d = direct_term(link, grid, ChannelOptions{true, false, &terms});
        for (std::size_t k = 0; k < ns; ++k) m.direct[(k * m.n_ue + l) * m.n_tx + q] = d[k];
      }
    }
  }
  return m;
}

MisoChannelSet miso_channels(const MisoModel& m, const std::vector<double>& phases) {
  const std::size_t n = m.n_elements;
  const std::size_t ns = m.n_s;
  if (phases.size() != n * ns) {
    throw ValidationError("miso_channels: phase matrix has " + std::to_string(phases.size()) +
                          " entries, expected " + std::to_string(n * ns));
  }
  MisoChannelSet ch;
  ch.n_s = ns;
  ch.n_ue = m.n_ue;
  ch.n_tx = m.n_tx;
  ch.direct = m.direct;
  ch.cascaded.assign(ns * m.n_ue * m.n_tx, cd{0.0, 0.0});
  for (std::size_t l = 0; l < m.n_ue; ++l) {
    for (std::size_t q = 0; q < m.n_tx; ++q) {
      for (std::size_t k = 0; k < ns; ++k) {
        cd acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
          acc += m.h1[(q * n + j) * ns + k] * m.h2[(l * n + j) * ns + k] *
                 std::polar(1.0, phases[j * ns + k]);
        }
        ch.cascaded[ch.at(k, l, q)] = m.amplitude * acc;
      }
    }
  }
  return ch;
}

MisoChannelSet miso_channels(const TxArray& tx, const RisGeometry& geom,
                             const std::vector<Vec3>& ues, const OfdmGrid& grid,
                             const AntennaGains& gains, const std::vector<double>& phases,
                             const MisoLinkOptions& opts) {
  return miso_channels(build_miso_model(tx, geom, ues, grid, gains, opts), phases);
}

namespace {

SmallMatrix channel_matrix(const MisoChannelSet& ch, std::size_t k) {
  SmallMatrix c(static_cast<Eigen::Index>(ch.n_ue), static_cast<Eigen::Index>(ch.n_tx));
  for (std::size_t l = 0; l < ch.n_ue; ++l) {
    for (std::size_t q = 0; q < ch.n_tx; ++q) {
      c(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(q)) = ch.total(k, l, q);
    }
  }
  return c;
}

void ensure_plan_shape(const MisoChannelSet& ch, PrecodingPlan& plan) {
  if (plan.n_s != ch.n_s || plan.n_ue != ch.n_ue || plan.n_tx != ch.n_tx) {
    plan.n_s = ch.n_s;
    plan.n_ue = ch.n_ue;
    plan.n_tx = ch.n_tx;
    plan.u.assign(ch.n_s * ch.n_tx * ch.n_ue, cd{0.0, 0.0});
    plan.power.assign(ch.n_s * ch.n_ue, 0.0);
  }
}

// |c_l . u_j|^2, the power UE l receives from stream j.
double coupling(const MisoChannelSet& ch, const PrecodingPlan& plan, std::size_t k, std::size_t l,
                std::size_t j) {
  cd acc{0.0, 0.0};
  for (std::size_t q = 0; q < ch.n_tx; ++q) acc += ch.total(k, l, q) * plan.col(k, q, j);
  return std::norm(acc);
}

}  // namespace

void zf_precoder(const MisoChannelSet& ch, std::size_t k, PrecodingPlan& plan) {
  ensure_plan_shape(ch, plan);
  if (ch.n_ue > ch.n_tx) {
    throw NumericError("zero-forcing needs L <= Q (L = " + std::to_string(ch.n_ue) +
                       ", Q = " + std::to_string(ch.n_tx) + ")");
  }
  const SmallMatrix c = channel_matrix(ch, k);
  // Right pseudo-inverse C^H (C C^H)^-1 of the full-row-rank channel.
  const SmallMatrix gram = c * c.adjoint();
  Eigen::LDLT<SmallMatrix> ldlt(gram);
  const auto d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  const double dmin = d.cwiseAbs().minCoeff();
  if (ldlt.info() != Eigen::Success || !(dmax > 0.0) || dmin <= 1e-13 * dmax) {
    throw NumericError("zero-forcing: channel matrix is rank deficient at sub-carrier " +
                       std::to_string(k));
  }
  SmallMatrix ident = SmallMatrix::Identity(gram.rows(), gram.cols());
  const SmallMatrix pinv = c.adjoint() * ldlt.solve(ident);
  for (std::size_t l = 0; l < ch.n_ue; ++l) {
    const auto li = static_cast<Eigen::Index>(l);
    const double nrm = pinv.col(li).norm();
    for (std::size_t q = 0; q < ch.n_tx; ++q) {
      plan.col(k, q, l) = pinv(static_cast<Eigen::Index>(q), li) / nrm;
    }
  }
}

void mrt_precoder(const MisoChannelSet& ch, std::size_t k, PrecodingPlan& plan) {
  ensure_plan_shape(ch, plan);
  for (std::size_t l = 0; l < ch.n_ue; ++l) {
    double nrm2 = 0.0;
    for (std::size_t q = 0; q < ch.n_tx; ++q) nrm2 += std::norm(ch.total(k, l, q));
    const double nrm = std::sqrt(nrm2);
    for (std::size_t q = 0; q < ch.n_tx; ++q) {
      plan.col(k, q, l) = nrm > 0.0 ? std::conj(ch.total(k, l, q)) / nrm : cd{0.0, 0.0};
    }
    if (!(nrm > 0.0)) plan.zero_channel = true;
  }
}

PrecodingPlan make_plan(const MisoChannelSet& ch, Precoder scheme, double noise, double budget,
                        bool equal_power) {
  PrecodingPlan plan;
  plan.scheme = scheme;
  ensure_plan_shape(ch, plan);
  for (std::size_t k = 0; k < ch.n_s; ++k) {
    if (scheme == Precoder::kZF) {
      zf_precoder(ch, k, plan);
    } else {
      mrt_precoder(ch, k, plan);
    }
  }
  const double share = budget / static_cast<double>(ch.n_ue);
  if (scheme == Precoder::kMRT || equal_power) {
    std::fill(plan.power.begin(), plan.power.end(), share / static_cast<double>(ch.n_s));
    return plan;
  }
  std::vector<double> gains(ch.n_s);
  for (std::size_t l = 0; l < ch.n_ue; ++l) {
    for (std::size_t k = 0; k < ch.n_s; ++k) gains[k] = coupling(ch, plan, k, l, l);
    const auto wf = water_filling(gains, noise, share);
    for (std::size_t k = 0; k < ch.n_s; ++k) plan.power[k * ch.n_ue + l] = wf.power[k];
  }
  return plan;
}

double sinr(const MisoChannelSet& ch, const PrecodingPlan& plan, std::size_t k, std::size_t l,
            double noise) {
  double interference = 0.0;
  for (std::size_t j = 0; j < ch.n_ue; ++j) {
    if (j != l) interference += coupling(ch, plan, k, l, j) * plan.power[k * ch.n_ue + j];
  }
  return coupling(ch, plan, k, l, l) * plan.power[k * ch.n_ue + l] / (interference + noise);
}

double sum_rate(const MisoChannelSet& ch, const PrecodingPlan& plan, double noise) {
  double acc = 0.0;
  for (std::size_t k = 0; k < ch.n_s; ++k) {
    for (std::size_t l = 0; l < ch.n_ue; ++l) acc += std::log1p(sinr(ch, plan, k, l, noise));
  }
  return acc / (std::log(2.0) * static_cast<double>(ch.n_s));
}

ProfileCodebook design_codebook_miso(const TxArray& tx, const RisGeometry& geom,
                                     const OfdmGrid& grid, int bits, const DesignOptions& opts) {
  tx.validate();
  geom.validate();
  grid.validate();
  const DirectionGrid dirs = direction_grid(opts.delta_theta);
  std::vector<double> slopes;
  const Vec3 probe_ue = ue_on_circle(geom.center, 1.0, kPi, kPi / 2.0);
  for (std::size_t q = 0; q < tx.size(); ++q) {
    const LinkGeometry link = make_link(tx.position(q), geom.center, probe_ue, AntennaGains{});
    append_optimal_slopes(geom, link.theta1, link.theta1p, dirs, slopes);
  }
  const auto set = quantile_means(slopes, slope_count(bits));
  return codebook_from_slopes(set, bits, grid, opts.fit);
}

MisoSelection miso_selection(const MisoModel& m, const std::vector<cd>& state_phasors,
                             std::size_t n_states, const OfdmGrid& grid, Precoder scheme,
                             bool equal_power) {
  if (state_phasors.size() != n_states * m.n_s) {
    throw ValidationError("miso_selection: phasor table shape mismatch");
  }
  MisoSelection p;
  p.n_elements = m.n_elements;
  p.n_states = n_states;
  p.n_s = m.n_s;
  p.n_ue = m.n_ue;
  p.n_tx = m.n_tx;
  p.base = m.direct;
  p.state_phasors = state_phasors;
  p.noise = grid.noise_per_subcarrier();
  p.budget = grid.total_power;
  p.scheme = scheme;
  p.equal_power = equal_power;
  const std::size_t n = m.n_elements;
  const std::size_t ns = m.n_s;
  const std::size_t block = m.n_ue * m.n_tx;
  p.weights.resize(n * ns * block);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < ns; ++k) {
      for (std::size_t l = 0; l < m.n_ue; ++l) {
        const cd b = m.amplitude * m.h2[(l * n + j) * ns + k];
        for (std::size_t q = 0; q < m.n_tx; ++q) {
          p.weights[((j * ns + k) * m.n_ue + l) * m.n_tx + q] = m.h1[(q * n + j) * ns + k] * b;
        }
      }
    }
  }
  return p;
}

MisoSelection miso_arctan_selection(const MisoModel& m, const ProfileCodebook& cb,
                                    const OfdmGrid& grid, Precoder scheme, bool equal_power) {
  std::vector<cd> ph(cb.size() * grid.n_s);
  for (std::size_t s = 0; s < cb.size(); ++s) {
    for (std::size_t k = 0; k < grid.n_s; ++k) {
      ph[s * grid.n_s + k] = std::polar(1.0, cb.phase(s, grid.frequency(k)));
    }
  }
  return miso_selection(m, ph, cb.size(), grid, scheme, equal_power);
}

MisoSelection miso_constant_selection(const MisoModel& m, int bits, const OfdmGrid& grid,
                                      Precoder scheme, bool equal_power) {
  const auto states = constant_phase_states(bits);
  std::vector<cd> ph(states.size() * grid.n_s);
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::fill_n(ph.begin() + static_cast<std::ptrdiff_t>(s * grid.n_s), grid.n_s,
                std::polar(1.0, states[s]));
  }
  return miso_selection(m, ph, states.size(), grid, scheme, equal_power);
}

MisoChannelSet selection_channels(const MisoSelection& p, const std::vector<std::size_t>& states) {
  if (states.size() != p.n_elements) throw ValidationError("MISO: expected one state per element");
  MisoChannelSet ch;
  ch.n_s = p.n_s;
  ch.n_ue = p.n_ue;
  ch.n_tx = p.n_tx;
  ch.direct = p.base;
  ch.cascaded.assign(p.base.size(), cd{0.0, 0.0});
  const std::size_t block = p.n_ue * p.n_tx;
  for (std::size_t j = 0; j < p.n_elements; ++j) {
    if (states[j] >= p.n_states) throw ValidationError("MISO: state index out of range");
    for (std::size_t k = 0; k < p.n_s; ++k) {
      const cd ph = p.state_phasors[states[j] * p.n_s + k];
      const cd* w = &p.weights[(j * p.n_s + k) * block];
      cd* out = &ch.cascaded[k * block];
      for (std::size_t t = 0; t < block; ++t) out[t] += w[t] * ph;
    }
  }
  return ch;
}

MisoResult evaluate_miso(const MisoSelection& p, const std::vector<std::size_t>& states) {
  const MisoChannelSet ch = selection_channels(p, states);
  MisoResult r;
  r.plan = make_plan(ch, p.scheme, p.noise, p.budget, p.equal_power);
  r.assignment.state_index = states;
  r.assignment.rate = sum_rate(ch, r.plan, p.noise);
  r.assignment.initial_rate = r.assignment.rate;
  r.assignment.power = r.plan.power;
  return r;
}

namespace {

// Zero-forcing sum rate without forming the precoders: with unit-norm ZF
// columns the useful gain of UE l is 1 / [(C C^H)^-1]_ll and there is no
// interference. The Gram matrix is factored by an unpivoted Cholesky.
double zf_objective(const MisoChannelSet& ch, const MisoSelection& p) {
  const std::size_t nl = ch.n_ue;
  const std::size_t nq = ch.n_tx;
  const std::size_t ns = ch.n_s;
  if (nl > nq) throw NumericError("zero-forcing needs L <= Q");
  std::vector<double> gains(nl * ns);
  std::vector<cd> r(nl * nl), x(nl * nl);
  for (std::size_t k = 0; k < ns; ++k) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (std::size_t i = 0; i < nl; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        cd s{0.0, 0.0};
        for (std::size_t q = 0; q < nq; ++q) s += ch.total(k, i, q) * std::conj(ch.total(k, j, q));
        for (std::size_t t = 0; t < j; ++t) s -= r[i * nl + t] * std::conj(r[j * nl + t]);
        if (i == j) {
          const double d = s.real();
          dmin = std::min(dmin, d);
          dmax = std::max(dmax, d);
          r[i * nl + i] = d > 0.0 ? std::sqrt(d) : 0.0;
        } else {
          r[i * nl + j] = r[j * nl + j] != 0.0 ? s / r[j * nl + j] : cd{0.0, 0.0};
        }
      }
    }
    if (!(dmax > 0.0) || dmin <= 1e-13 * dmax) {
      throw NumericError("zero-forcing: channel matrix is rank deficient at sub-carrier " +
                         std::to_string(k));
    }
    // x = r^-1 (lower triangular); [G^-1]_ll = sum_i |x_il|^2.
    for (std::size_t j = 0; j < nl; ++j) {
      x[j * nl + j] = 1.0 / r[j * nl + j];
      for (std::size_t i = j + 1; i < nl; ++i) {
        cd s{0.0, 0.0};
        for (std::size_t t = j; t < i; ++t) s += r[i * nl + t] * x[t * nl + j];
        x[i * nl + j] = -s / r[i * nl + i];
      }
    }
    for (std::size_t l = 0; l < nl; ++l) {
      double inv = 0.0;
      for (std::size_t i = l; i < nl; ++i) inv += std::norm(x[i * nl + l]);
      gains[l * ns + k] = 1.0 / inv;
    }
  }
  const double share = p.budget / static_cast<double>(nl);
  double acc = 0.0;
  std::vector<double> g(ns);
  for (std::size_t l = 0; l < nl; ++l) {
    std::copy(gains.begin() + static_cast<std::ptrdiff_t>(l * ns),
              gains.begin() + static_cast<std::ptrdiff_t>((l + 1) * ns), g.begin());
    if (p.equal_power) {
      const double pk = share / static_cast<double>(ns);
      for (std::size_t k = 0; k < ns; ++k) acc += std::log1p(g[k] * pk / p.noise);
    } else {
      const auto wf = water_filling(g, p.noise, share);
      for (std::size_t k = 0; k < ns; ++k) acc += std::log1p(g[k] * wf.power[k] / p.noise);
    }
  }
  return acc / (std::log(2.0) * static_cast<double>(ns));
}

double objective(const MisoChannelSet& ch, const MisoSelection& p) {
  if (p.scheme == Precoder::kZF) return zf_objective(ch, p);
  return sum_rate(ch, make_plan(ch, p.scheme, p.noise, p.budget, p.equal_power), p.noise);
}

}  // namespace

MisoResult optimize_profiles_miso(const MisoSelection& p, std::vector<std::size_t> states,
                                  const DescentOptions& opts) {
  if (!(opts.epsilon > 0.0)) throw ValidationError("optimize_profiles_miso: epsilon must be positive");
  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(p.n_elements);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  const std::size_t block = p.n_ue * p.n_tx;
  MisoChannelSet ch = selection_channels(p, states);
  double rate = objective(ch, p);
  Assignment info;
  info.initial_rate = rate;
  MisoChannelSet cand = ch;
  for (std::size_t pass = 0; pass < opts.max_passes; ++pass) {
    const double pass_start = rate;
    for (std::size_t j : order) {
      for (std::size_t s = 0; s < p.n_states; ++s) {
        if (s == states[j]) continue;
        for (std::size_t k = 0; k < p.n_s; ++k) {
          const cd delta =
              p.state_phasors[s * p.n_s + k] - p.state_phasors[states[j] * p.n_s + k];
          const cd* w = &p.weights[(j * p.n_s + k) * block];
          const cd* cur = &ch.cascaded[k * block];
          cd* out = &cand.cascaded[k * block];
          for (std::size_t t = 0; t < block; ++t) out[t] = cur[t] + w[t] * delta;
        }
        const double v = objective(cand, p);
        ++info.evaluations;
        if (!(v > rate)) continue;
        const std::size_t previous = states[j];
        states[j] = s;
        MisoChannelSet exact = selection_channels(p, states);
        const double ve = objective(exact, p);
        if (ve > rate) {
          ch = std::move(exact);
          rate = ve;
          info.accepted_rates.push_back(rate);
        } else {
          states[j] = previous;
        }
      }
    }
    ++info.passes;
    if (rate - pass_start <= opts.epsilon) break;
  }
  MisoResult r = evaluate_miso(p, states);
  r.assignment.initial_rate = info.initial_rate;
  r.assignment.accepted_rates = std::move(info.accepted_rates);
  r.assignment.passes = info.passes;
  r.assignment.evaluations = info.evaluations;
  return r;
}

MisoResult exhaustive_oracle_miso(const MisoSelection& p) {
  const double combos =
      std::pow(static_cast<double>(p.n_states), static_cast<double>(p.n_elements));
  if (combos > 1e7) throw ValidationError("exhaustive MISO search exceeds the 1e7 bound");
  std::vector<std::size_t> states(p.n_elements, 0);
  std::vector<std::size_t> best_states = states;
  double best = -1.0;
  while (true) {
    const double v = objective(selection_channels(p, states), p);
    if (v > best) {
      best = v;
      best_states = states;
    }
    std::size_t d = 0;
    while (d < p.n_elements && states[d] + 1 == p.n_states) {
      states[d] = 0;
      ++d;
    }
    if (d == p.n_elements) break;
    ++states[d];
  }
  return evaluate_miso(p, best_states);
}

std::vector<LinearProfile> codebook_state_pairs(const ProfileCodebook& cb) {
  std::vector<LinearProfile> out;
  for (const auto& e : cb.entries) out.push_back(e.linear);
  return out;
}

std::vector<LinearProfile> constant_state_pairs(int bits) {
  std::vector<LinearProfile> out;
  for (double ph : constant_phase_states(bits)) out.push_back(LinearProfile{0.0, ph});
  return out;
}

std::vector<std::size_t> initial_assignment_miso(const MisoSelection& p,
                                                 const std::vector<LinearProfile>& state_pairs,
                                                 const TxArray& tx, const RisGeometry& geom,
                                                 const std::vector<Vec3>& ues,
                                                 const AntennaGains& gains, const OfdmGrid& grid) {
  std::vector<std::size_t> best;
  double best_rate = -1.0;
  for (const Vec3& ue : ues) {
    const LinkGeometry link = make_link(tx.position(0), geom.center, ue, gains);
    auto states =
        nearest_states(optimal_linear(geom, link, grid.f0), state_pairs, grid.bandwidth() / 2.0);
    double v = -1.0;
    try {
      v = objective(selection_channels(p, states), p);
    } catch (const NumericError&) {
      v = -1.0;
    }
    if (v > best_rate || best.empty()) {
      best_rate = v;
      best = std::move(states);
    }
  }
  return best;
}

}  // namespace risofdm
