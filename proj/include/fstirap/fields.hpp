#pragma once

#include <functional>
#include <string>

namespace fstirap {

/// Beam and trajectory parameters defining one atom's traversal of the
/// cavity mode and the laser beam. SI units: m, s, rad, rad/s.
struct FieldGeometry {
  double G0 = 0.0;      // peak cavity coupling, rad/s
  double Omega0 = 0.0;  // peak laser Rabi frequency, rad/s
  double W_C = 0.0;     // cavity-mode waist, m
  double W_L = 0.0;     // laser waist, m
  double lambda = 0.0;  // wavelength, m
  double v = 0.0;       // atom speed, m/s
  double z0 = 0.0;      // trajectory offset from the cavity center along the cavity axis, m
  double d = 0.0;       // cavity-center-to-laser-axis distance, m
  double phi_L = 0.0;   // laser initial phase, rad
  double tau = 0.0;     // arrival delay, s (0 for the first atom)
  double x0 = 0.0;      // inter-cavity separation along the flight axis, m

  void validate() const;  // throws std::invalid_argument

  double transit_time_laser() const { return W_L / v; }   // T_L
  double transit_time_cavity() const { return W_C / v; }  // T_C
};

/// Pump/stokes Rabi-frequency envelopes seen by a moving atom. Envelopes are
/// non-negative; a negative standing-wave factor is folded into stokes_sign
/// (a pi phase on the cavity coupling) so the envelope stays non-negative.
struct PulsePair {
  std::function<double(double)> pump;    // Omega(t), rad/s, >= 0
  std::function<double(double)> stokes;  // G(t) envelope, rad/s, >= 0
  double phi_L = 0.0;
  double stokes_sign = 1.0;  // -1 when cos(2 pi z0 / lambda) < 0
  double t_min = 0.0;        // support, s
  double t_max = 0.0;
  double pump_peak_time = 0.0;
  double stokes_peak_time = 0.0;
};

/// Spatial coupling of a Hermite-Gauss TEM_mn cavity mode at (x, y, z):
/// G0 H_m(sqrt2 x/W_C) H_n(sqrt2 y/W_C) exp(-(x^2+y^2)/W_C^2) cos(2 pi z/lambda).
double hermite_gauss_coupling(double x, double y, double z, int m_idx, int n_idx,
                              const FieldGeometry& geom);

/// Envelopes for an atom crossing the cavity center region at z = z0 and then
/// the laser beam a distance d downstream (stokes before pump for d > 0).
/// Time origin: the atom passes the cavity center at t = 0.
PulsePair pulses_atom1(const FieldGeometry& geom);

/// Envelopes for an atom on the z = 0 line meeting the laser a distance d
/// before the cavity center (pump before stokes), arriving with delay tau.
PulsePair pulses_atom2(const FieldGeometry& geom);

enum class PulseOrdering { stokes_first, pump_first };
enum class ProcessKind { stirap, f_stirap, incomplete };

std::string to_string(PulseOrdering ordering);
std::string to_string(ProcessKind process);

struct SequenceClassification {
  PulseOrdering ordering = PulseOrdering::stokes_first;
  double ending_ratio = 0.0;   // pump/stokes over the ending window; may be +inf
  double ratio_rel_std = 0.0;  // relative standard deviation of the ratio samples
  double mixing_angle = 0.0;   // atan(ending_ratio), rad
  ProcessKind process = ProcessKind::incomplete;
  double window_begin = 0.0;   // ending analysis window, s
  double window_end = 0.0;
};

struct ClassifyOptions {
  double epsilon_rel = 1e-2;      // envelope cutoff relative to the global peak
  double stability_rel_std = 0.10;
  double divergence_ratio = 10.0; // pump/stokes beyond which the stokes pulse
                                  // has effectively vanished first
  int samples = 4001;
};

/// Classify a pulse pair: ordering from peak times; ending ratio and its
/// stability measured over the latter half of the trailing window where the
/// envelopes are non-negligible and both decaying. A stable finite ratio is
/// an f-STIRAP ending; a ratio that runs away (either coupling vanishing
/// first while the other is still non-negligible) is a completed-transfer
/// STIRAP ending.
SequenceClassification classify_sequence(const PulsePair& pulses,
                                         const ClassifyOptions& options = {});

}  // namespace fstirap
