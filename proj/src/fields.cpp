#include "fstirap/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fstirap {

namespace {

// Below this magnitude the standing-wave factor is treated as an exact node,
// so that z0 = lambda/4 + k lambda/2 gives an identically zero stokes pulse.
constexpr double kNodeEps = 1e-12;

// Support extends 6 pulse widths past the outermost peak; Gaussian tails are
// below exp(-36) of the peak there.
constexpr double kSupportWidths = 6.0;

double standing_wave_factor(double z, double lambda) {
  const double c = std::cos(2.0 * std::numbers::pi * z / lambda);
  return std::abs(c) < kNodeEps ? 0.0 : c;
}

}  // namespace

void FieldGeometry::validate() const {
  if (!(W_C > 0.0)) throw std::invalid_argument("W_C must be positive");
  if (!(W_L > 0.0)) throw std::invalid_argument("W_L must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  if (G0 < 0.0) throw std::invalid_argument("G0 must be non-negative");
  if (Omega0 < 0.0) throw std::invalid_argument("Omega0 must be non-negative");
}

double hermite_gauss_coupling(double x, double y, double z, int m_idx, int n_idx,
                              const FieldGeometry& geom) {
  geom.validate();
  if (m_idx < 0 || n_idx < 0)
    throw std::invalid_argument("mode indices must be non-negative");
  const double sq2 = std::numbers::sqrt2;
  return geom.G0 * std::hermite(static_cast<unsigned>(m_idx), sq2 * x / geom.W_C) *
         std::hermite(static_cast<unsigned>(n_idx), sq2 * y / geom.W_C) *
         std::exp(-(x * x + y * y) / (geom.W_C * geom.W_C)) *
         std::cos(2.0 * std::numbers::pi * z / geom.lambda);
}

PulsePair pulses_atom1(const FieldGeometry& geom) {
  geom.validate();
  const double cos_z0 = standing_wave_factor(geom.z0, geom.lambda);
  const double stokes_amp = geom.G0 * std::abs(cos_z0);
  const double pump_amp = geom.Omega0 * std::exp(-geom.z0 * geom.z0 / (geom.W_L * geom.W_L));

  PulsePair p;
  p.phi_L = geom.phi_L;
  p.stokes_sign = cos_z0 < 0.0 ? -1.0 : 1.0;
  p.stokes_peak_time = 0.0;
  p.pump_peak_time = geom.d / geom.v;
  p.stokes = [amp = stokes_amp, v = geom.v, wc = geom.W_C](double t) {
    const double u = v * t / wc;
    return amp * std::exp(-u * u);
  };
  p.pump = [amp = pump_amp, v = geom.v, d = geom.d, wl = geom.W_L](double t) {
    const double u = (v * t - d) / wl;
    return amp * std::exp(-u * u);
  };

  const double width = kSupportWidths * std::max(geom.transit_time_laser(),
                                                 geom.transit_time_cavity());
  p.t_min = std::min(p.pump_peak_time, p.stokes_peak_time) - width;
  p.t_max = std::max(p.pump_peak_time, p.stokes_peak_time) + width;
  return p;
}

PulsePair pulses_atom2(const FieldGeometry& geom) {
  geom.validate();
  PulsePair p;
  p.phi_L = geom.phi_L;
  p.stokes_sign = 1.0;
  p.stokes_peak_time = geom.tau;
  p.pump_peak_time = geom.tau - geom.d / geom.v;
  p.stokes = [amp = geom.G0, v = geom.v, wc = geom.W_C, tau = geom.tau](double t) {
    const double u = v * (t - tau) / wc;
    return amp * std::exp(-u * u);
  };
  p.pump = [amp = geom.Omega0, v = geom.v, d = geom.d, wl = geom.W_L,
            tau = geom.tau](double t) {
    const double u = (v * (t - tau) + d) / wl;
    return amp * std::exp(-u * u);
  };

  const double width = kSupportWidths * std::max(geom.transit_time_laser(),
                                                 geom.transit_time_cavity());
  p.t_min = std::min(p.pump_peak_time, p.stokes_peak_time) - width;
  p.t_max = std::max(p.pump_peak_time, p.stokes_peak_time) + width;
  return p;
}

std::string to_string(PulseOrdering ordering) {
  return ordering == PulseOrdering::stokes_first ? "stokes_first" : "pump_first";
}

std::string to_string(ProcessKind process) {
  switch (process) {
    case ProcessKind::stirap: return "STIRAP";
    case ProcessKind::f_stirap: return "f_STIRAP";
    case ProcessKind::incomplete: return "incomplete";
  }
  throw std::logic_error("unknown process kind");
}

SequenceClassification classify_sequence(const PulsePair& pulses,
                                         const ClassifyOptions& options) {
  if (!(options.epsilon_rel > 0.0 && options.epsilon_rel < 1.0))
    throw std::invalid_argument("epsilon_rel must be in (0, 1)");
  if (options.samples < 16) throw std::invalid_argument("too few classification samples");
  if (!(pulses.t_max > pulses.t_min))
    throw std::invalid_argument("pulse support is empty");

  const int n = options.samples;
  const double dt = (pulses.t_max - pulses.t_min) / (n - 1);
  std::vector<double> ts(n), pump(n), stokes(n);
  double global_peak = 0.0;
  double pump_peak = 0.0, stokes_peak = 0.0;
  int pump_argmax = 0, stokes_argmax = 0;
  for (int i = 0; i < n; ++i) {
    ts[i] = pulses.t_min + i * dt;
    pump[i] = pulses.pump(ts[i]);
    stokes[i] = pulses.stokes(ts[i]);
    if (pump[i] > pump_peak) { pump_peak = pump[i]; pump_argmax = i; }
    if (stokes[i] > stokes_peak) { stokes_peak = stokes[i]; stokes_argmax = i; }
    global_peak = std::max(global_peak, std::max(pump[i], stokes[i]));
  }
  if (pump_peak == 0.0 || stokes_peak == 0.0)
    throw std::invalid_argument("classify_sequence: identically-zero pulse");

  SequenceClassification out;
  out.ordering = ts[pump_argmax] < ts[stokes_argmax] ? PulseOrdering::pump_first
                                                     : PulseOrdering::stokes_first;

  // Trailing window: past both peaks, down to where the envelopes become
  // negligible relative to the global peak.
  const int i_peak = std::max(pump_argmax, stokes_argmax);
  const double cutoff = options.epsilon_rel * global_peak;
  int i_end = i_peak;
  for (int i = n - 1; i >= i_peak; --i) {
    if (std::max(pump[i], stokes[i]) > cutoff) { i_end = i; break; }
  }
  // The ending statistics use the latter half of the window: near the peak
  // the ratio is still sweeping, what matters is where the pulses die out.
  const int i_begin = i_peak + (i_end - i_peak) / 2;
  out.window_begin = ts[i_begin];
  out.window_end = ts[i_end];

  std::vector<double> ratios;
  ratios.reserve(i_end - i_begin + 1);
  bool infinite = false;
  for (int i = i_begin; i <= i_end; ++i) {
    if (stokes[i] == 0.0) {
      if (pump[i] > 0.0) infinite = true;
      continue;
    }
    ratios.push_back(pump[i] / stokes[i]);
  }
  if (infinite || ratios.empty()) {
    out.ending_ratio = std::numeric_limits<double>::infinity();
    out.ratio_rel_std = 0.0;
    out.mixing_angle = std::numbers::pi / 2.0;
    out.process = ProcessKind::stirap;
    return out;
  }

  const auto count = static_cast<double>(ratios.size());
  double mean = 0.0;
  for (const double r : ratios) mean += r;
  mean /= count;
  double var = 0.0;
  for (const double r : ratios) var += (r - mean) * (r - mean);
  var /= count;
  out.ending_ratio = mean;
  out.ratio_rel_std = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
  out.mixing_angle = std::atan(mean);

  const double r_first = stokes[i_begin] > 0.0 ? pump[i_begin] / stokes[i_begin] : mean;
  const double r_last = stokes[i_end] > 0.0 ? pump[i_end] / stokes[i_end] : mean;
  if (out.ratio_rel_std < options.stability_rel_std) {
    out.process = ProcessKind::f_stirap;
  } else if (mean >= options.divergence_ratio && r_last >= r_first) {
    // Stokes vanishes first: completed transfer out of g1.
    out.process = ProcessKind::stirap;
  } else if (mean <= 1.0 / options.divergence_ratio && r_last <= r_first) {
    // Pump vanishes first into the stokes tail: the mirrored completed
    // transfer (the second-atom ordering).
    out.process = ProcessKind::stirap;
  } else {
    out.process = ProcessKind::incomplete;
  }
  return out;
}

}  // namespace fstirap
