// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_SWEEP_HPP
#define FDBF_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fdbf/config.hpp"
#include "fdbf/metrics.hpp"

namespace fdbf {

/// Aggregates of one (variant, sweep point, design) cell.
struct SweepRow {
    std::string design;          // design label, "[variantN]" suffix when applicable
    double axis = 0.0;           // sweep axis value
    double se_up_mean = 0.0;
    double se_down_mean = 0.0;
    double se_sum_mean = 0.0;
    double se_up_p10 = 0.0;      // epsilon = 0.1 uplink rate
    double ee = 0.0;             // bits/s/Hz per watt, uplink SE over receive power
    double resid_ratio_mean = 0.0; // leaked SI power over noise, linear mean
    std::vector<double> outage;  // at the configured target rates, uplink
    long events_zf_infeasible = 0;
    long events_zero_phase = 0;
    int trials = 0;
    std::vector<MetricRecord> records;

    bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
    std::string axis_name;
    std::vector<double> outage_targets;
    std::vector<SweepRow> rows;

    bool operator==(const SweepResult&) const = default;
};

/// Runs the configured Monte Carlo sweep. Deterministic: a given config and
/// seed produce identical results regardless of worker count.
SweepResult run_sweep(const ScenarioConfig& cfg);

/// CSV with one row per (sweep point x design), numbers at 12 significant
/// digits. The outage cell packs `target:probability` pairs separated by ';'.
void emit_csv(const SweepResult& res, std::ostream& out);

/// JSON mirror including the resolved config; per-trial records included when
/// full is set. Numbers are serialized losslessly.
std::string emit_json(const SweepResult& res, const ScenarioConfig& cfg, bool full);

/// Inverse of emit_json (ignores the embedded config echo).
SweepResult sweep_result_from_json(const std::string& text);

/// Writes to cfg.out_path (or stdout when empty) in cfg.format.
void emit_results(const SweepResult& res, const ScenarioConfig& cfg);

} // namespace fdbf

#endif
