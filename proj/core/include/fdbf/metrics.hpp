// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_METRICS_HPP
#define FDBF_METRICS_HPP

#include <span>
#include <vector>

#include "fdbf/beamforming.hpp"
#include "fdbf/types.hpp"

namespace fdbf {

/// Linear power knobs of one trial. SNR = rho / sigma^2 and SIR = rho_u / rho_s
/// as linear ratios.
struct LinkBudget {
    double rho_u = 1.0;
    double rho_d = 1.0;
    double rho_s = 0.0;
    double sigma_u2 = 1.0;
    double sigma_d2 = 1.0;
};

/// Per-device receiver power draw, milliwatts.
struct PowerModel {
    double lna_mw = 39.0;
    double splitter_mw = 19.5;
    double combiner_mw = 19.5;
    double phase_shifter_mw = 2.0;
    double mixer_mw = 16.8;
    double lo_mw = 5.0;
    double lpf_mw = 14.0;
    double bb_amp_mw = 5.0;
    double adc_mw = 250.0;

    double rf_chain_mw() const { return mixer_mw + lo_mw + lpf_mw + bb_amp_mw; }
};

enum class ReceiverArch { full_digital, hybrid };

/// One Monte Carlo trial's metrics plus its sweep coordinates.
struct MetricRecord {
    double se_up = 0.0;
    double se_down = 0.0;
    double se_sum = 0.0;
    double resid_si_over_noise = 0.0; // mean over subcarriers, linear ratio
    double snr_db = 0.0;
    double sir_db = 0.0;
    int n_rf = 0;
    int bs_antennas = 0;
    long zf_infeasible = 0;
    long zero_phase = 0;

    bool operator==(const MetricRecord&) const = default;
};

struct EnsembleResult {
    std::vector<MetricRecord> records;
};

/// Uplink spectral efficiency with the self-interference-plus-noise
/// covariance Q = rho_s (W* H_s F_bs)(W* H_s F_bs)* + sigma^2 W* W, diagonally
/// loaded by a trace-relative floor before inversion. `si_uses_ue_precoder`
/// switches the interference term to the uplink UE precoder instead of the
/// BS transmit precoder.
double uplink_rate(const DigitalBeamformerSet& beams, const FrequencyChannel& h_u,
                   const FrequencyChannel& h_s, const LinkBudget& budget,
                   bool si_uses_ue_precoder = false);

/// Downlink spectral efficiency with noise covariance sigma^2 W* W.
double downlink_rate(const DigitalBeamformerSet& beams, const FrequencyChannel& h_d,
                     const LinkBudget& budget);

/// Total receive-side consumption, milliwatts.
double total_power_mw(ReceiverArch arch, int n_rx, int n_rf, const PowerModel& pm);

/// Spectral efficiency per watt of receive-side consumption.
double energy_efficiency(double se, ReceiverArch arch, int n_rx, int n_rf, const PowerModel& pm);

/// Empirical fraction of samples strictly below the target rate.
double outage_probability(std::span<const double> se_samples, double rate);

/// Largest rate whose empirical outage probability does not exceed epsilon
/// (lower quantile convention).
double epsilon_rate(std::span<const double> se_samples, double epsilon);

/// Per-subcarrier leaked interference power rho_s ‖W_bs[k]* H_s[k] F_bs[k]‖_F^2.
std::vector<double> residual_si_power(const DigitalBeamformerSet& beams,
                                      const FrequencyChannel& h_s, const LinkBudget& budget);

} // namespace fdbf

#endif
