// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_CHANNEL_HPP
#define FDBF_CHANNEL_HPP

#include <vector>

#include "fdbf/rng.hpp"
#include "fdbf/types.hpp"

namespace fdbf {

/// Uniform linear array.
struct ArrayGeometry {
    int n_elements = 1;
    double spacing_over_lambda = 0.5;
};

/// Parameters of the geometric cluster/ray wideband channel.
struct ClusterRaySpec {
    int n_clusters = 4;
    int rays_per_cluster = 10;
    double angular_spread_deg = 2.0;
    double pathloss_exponent = 3.0; // recorded; large-scale loss is carried by the power knobs
    int n_taps = 4;
    double rolloff = 1.0;            // raised cosine roll-off
    double symbol_interval = 1.0;    // taps are spaced by this; internally normalized
};

/// One propagation ray: absolute arrival/departure angles, total delay in
/// symbol intervals, complex gain, owning cluster.
struct Ray {
    double aoa = 0.0;
    double aod = 0.0;
    double delay = 0.0;
    cxd gain{0.0, 0.0};
    int cluster = 0;
};

struct TimeDomainChannel {
    std::vector<CMatrix> taps; // L matrices, each n_rx x n_tx
};

struct FrequencyChannel {
    std::vector<CMatrix> subcarriers; // K matrices, each n_rx x n_tx

    int n_subcarriers() const { return static_cast<int>(subcarriers.size()); }
};

/// Placement of the co-located transmit and receive arrays of a full-duplex
/// transceiver, plus the Rician power split between the deterministic
/// near-field path and the stochastic far-field leakage.
struct SiGeometry {
    double angle_between_arrays = 1.5707963267948966; // radians
    double distance_over_lambda = 2.0;                // nearest-element separation
    double rician_kappa = 3.1622776601683795;          // linear power ratio (5 dB)
    bool los_every_tap = true; // false confines the deterministic path to tap 0
    // true rescales the near-field matrix to ‖H‖_F^2 = n_rx n_tx so the Rician
    // factor is a pure power ratio; false keeps the raw 1/d amplitude taper
    // (d in wavelengths), which leaves the near-field part energetically weak.
    bool normalize_los = true;
};

/// Array response a(theta), entry n = exp(j 2 pi (d/lambda) n sin(theta)) / sqrt(N).
CVector array_response(const ArrayGeometry& geom, double theta);

/// Time-domain raised cosine pulse with unit symbol interval; removable
/// singularities at t = 0 and |t| = 1/(2 beta) are evaluated analytically.
double raised_cosine(double t, double rolloff);

/// Draws cluster centers uniform on [0, 2 pi), per-ray angle offsets uniform
/// within the angular spread, cluster delays uniform on [0, (L-1) Ts], ray
/// delays uniform on [0, Ts], and unit-variance complex Gaussian gains.
/// Draw order is fixed: per cluster (aoa, aod, delay), then per ray
/// (aoa offset, aod offset, delay, gain).
std::vector<Ray> draw_cluster_rays(const ClusterRaySpec& spec, Rng& rng);

/// Expected value of sum_l p(l - tau)^2 under the ray delay distribution;
/// used to normalize ensemble channel energy. Deterministic quadrature.
double expected_pulse_energy(const ClusterRaySpec& spec);

/// Assembles the L tap matrices from a drawn ray set. Scaled so that the
/// ensemble average of the total tap energy equals n_rx * n_tx.
TimeDomainChannel synth_from_rays(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                  const ClusterRaySpec& spec, const std::vector<Ray>& rays);

/// Draws rays and assembles the channel in one step.
TimeDomainChannel synth_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                const ClusterRaySpec& spec, Rng& rng);

/// Deterministic near-field matrix: entry (r, t) = exp(-j 2 pi d_rt / lambda) / d_rt
/// for the element-pair distances of the two arrays, Frobenius-normalized to
/// n_rx * n_tx. The receive array lies on the x axis with elements at
/// (q d, 0); the transmit array starts at (0, -D) and extends along
/// (cos a, -sin a), so the nearest element pair is D apart.
CMatrix si_los_matrix(const ArrayGeometry& tx, const ArrayGeometry& rx, const SiGeometry& geom);

/// Aggregate self-interference channel: per tap,
/// sqrt(k/(k+1)) * H_los + sqrt(1/(k+1)) * H_nlos[l], with the far-field part
/// drawn from the cluster/ray model. The near-field matrix consumes no
/// randomness.
TimeDomainChannel synth_si_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                   const SiGeometry& geom, const ClusterRaySpec& spec, Rng& rng);

/// DFT of the taps at every subcarrier. Requires K >= L.
FrequencyChannel to_frequency(const TimeDomainChannel& td, int n_subcarriers);

} // namespace fdbf

#endif
