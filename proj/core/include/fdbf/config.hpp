// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_CONFIG_HPP
#define FDBF_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdbf/metrics.hpp"

namespace fdbf {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DesignKind { full_digital, hybrid, beamsteering, svd_phase, angle_search, upper_bound };

struct DesignChoice {
    DesignKind kind = DesignKind::full_digital;
    int n_inner = 0; // 0 uses the scenario default
    std::string label;
};

enum class SweepAxis { none, snr_db, sir_db, n_rf, bs_antennas };

/// Fully resolved scenario. Defaults are the mmWave system parameters; the
/// named presets override groups of fields, individual keys override presets.
struct ScenarioConfig {
    std::string preset = "mmwave";
    std::string band_label = "28 GHz";
    double bandwidth_ghz = 0.85;

    // geometry and channel
    int ue_antennas = 4;
    int bs_tx_antennas = 16;
    int bs_rx_antennas = 16;
    int subcarriers = 16;
    int cp_len = 4; // K/4
    int clusters = 4;
    int rays_per_cluster = 10;
    double angular_spread_deg = 2.0;
    double pathloss_exponent = 3.0;
    int taps = 4;
    double rolloff = 1.0;

    // self-interference
    double si_angle_deg = 90.0;
    double si_distance_lambda = 2.0;
    double si_rician_kappa_db = 5.0;
    int si_taps = 1;
    bool si_los_every_tap = true;
    bool si_los_normalized = false; // presets keep the physical 1/d taper
    bool si_cov_uses_ue_precoder = false;

    // solver
    int n_rf = 2;
    int n_streams = 2;
    int n_outer = 10;
    int n_inner = 50;
    bool streams_track_rf = false;

    // link budget and sweep
    double snr_db = 0.0;
    double sir_db = -120.0;
    SweepAxis sweep = SweepAxis::snr_db;
    double snr_start_db = -10.0;
    double snr_step_db = 5.0;
    double snr_stop_db = 10.0;
    double sir_start_db = -160.0;
    double sir_step_db = 20.0;
    double sir_stop_db = -40.0;
    std::vector<int> nrf_list{1, 2, 4, 8};
    std::vector<int> antennas_list{16, 64};
    std::vector<int> variants; // EE study: 1..4; empty = plain run

    // Monte Carlo
    std::uint64_t seed = 1;
    int trials = 1000;
    int workers = 0; // 0 = hardware concurrency

    std::vector<DesignChoice> designs;

    // metrics and output
    std::vector<double> outage_targets;
    double epsilon = 0.1;
    PowerModel power;
    std::string out_path; // empty = stdout
    std::string format = "csv";
    bool full_records = false;
    std::string dump_channels_dir;
    std::string dump_beams_dir;
};

/// Named presets: mmwave, sub6, variant1..variant4, and the figure recipes
/// fig4..fig8. Throws ConfigError for unknown names.
ScenarioConfig preset_config(const std::string& name);

/// Names and one-line descriptions of the figure recipes.
std::vector<std::pair<std::string, std::string>> recipe_list();

/// Parses flat `key = value` text (UTF-8, '#' comments). The `preset` key is
/// applied first, remaining keys in file order. Unknown keys and invariant
/// violations raise ConfigError with the offending key named. The FDBF_SEED
/// environment variable, when set, overrides the seed. A non-empty
/// `preset_override` replaces the preset named in the text.
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& preset_override = "");

/// parse_config_text applied to a file.
ScenarioConfig load_config(const std::string& path, const std::string& preset_override = "");

void validate_config(const ScenarioConfig& cfg);

/// The fully resolved configuration as sorted `key = value` lines, echoed
/// into outputs for provenance.
std::map<std::string, std::string> config_echo(const ScenarioConfig& cfg);

/// Transmit/interference powers for one sweep point. SNR and SIR are taken as
/// rho/sigma^2 and rho_u/rho_s; the per-stream scale is 2.4 snr / n_streams^2
/// with unit noise.
LinkBudget make_budget(double snr_db, double sir_db, int n_streams);

const char* to_string(SweepAxis axis);
const char* to_string(DesignKind kind);

} // namespace fdbf

#endif
