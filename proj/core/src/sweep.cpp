// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fdbf/beamforming.hpp"
#include "fdbf/dump.hpp"
#include "fdbf/rng.hpp"

namespace fdbf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

constexpr double kResidFloorDb = -400.0;

double resid_db(double ratio_mean) {
    if (!(ratio_mean > 0.0))
        return kResidFloorDb;
    return std::max(kResidFloorDb, 10.0 * std::log10(ratio_mean));
}

/// One (variant, sweep point) execution unit.
struct Cell {
    std::uint64_t key = 0; // rng stream derivation
    double axis = 0.0;
    std::string variant_suffix;
    std::string file_tag; // distinguishes variants in dump file names
    double snr_db = 0.0;
    double sir_db = -120.0;
    int n_rf = 2;
    int n_streams = 2;
    int bs_tx = 16;
    int bs_rx = 16;
    PowerModel power;
};

std::vector<Cell> build_cells(const ScenarioConfig& cfg) {
    struct VariantDims {
        int antennas;
        double adc;
        std::string suffix;
    };
    std::vector<VariantDims> variant_dims;
    if (cfg.variants.empty()) {
        variant_dims.push_back({0, 0.0, ""});
    } else {
        for (int v : cfg.variants) {
            const ScenarioConfig vc = preset_config("variant" + std::to_string(v));
            variant_dims.push_back(
                {vc.bs_rx_antennas, vc.power.adc_mw, "[variant" + std::to_string(v) + "]"});
        }
    }
    auto file_tag_of = [](const std::string& suffix) {
        if (suffix.empty())
            return std::string();
        std::string tag = "_";
        for (char ch : suffix)
            if (ch != '[' && ch != ']')
                tag += ch;
        return tag;
    };

    std::vector<double> axis_values;
    switch (cfg.sweep) {
    case SweepAxis::none:
        axis_values.push_back(0.0);
        break;
    case SweepAxis::snr_db:
        for (double s = cfg.snr_start_db; s <= cfg.snr_stop_db + 1e-9; s += cfg.snr_step_db)
            axis_values.push_back(s);
        break;
    case SweepAxis::sir_db:
        for (double s = cfg.sir_start_db; s <= cfg.sir_stop_db + 1e-9; s += cfg.sir_step_db)
            axis_values.push_back(s);
        break;
    case SweepAxis::n_rf:
        for (int r : cfg.nrf_list)
            axis_values.push_back(static_cast<double>(r));
        break;
    case SweepAxis::bs_antennas:
        for (int a : cfg.antennas_list)
            axis_values.push_back(static_cast<double>(a));
        break;
    }

    std::vector<Cell> cells;
    for (const VariantDims& vd : variant_dims) {
        // Variants share the rng key per axis point: equal-dimension variants
        // then see identical channel draws (common random numbers).
        std::uint64_t key = 0;
        for (double ax : axis_values) {
            Cell c;
            c.key = key++;
            c.axis = ax;
            c.variant_suffix = vd.suffix;
            c.file_tag = file_tag_of(vd.suffix);
            c.snr_db = cfg.sweep == SweepAxis::snr_db ? ax : cfg.snr_db;
            c.sir_db = cfg.sweep == SweepAxis::sir_db ? ax : cfg.sir_db;
            c.n_rf = cfg.sweep == SweepAxis::n_rf ? static_cast<int>(ax) : cfg.n_rf;
            c.bs_tx = cfg.sweep == SweepAxis::bs_antennas ? static_cast<int>(ax)
                                                          : cfg.bs_tx_antennas;
            c.bs_rx = cfg.sweep == SweepAxis::bs_antennas ? static_cast<int>(ax)
                                                          : cfg.bs_rx_antennas;
            c.power = cfg.power;
            if (vd.antennas > 0) {
                c.bs_tx = c.bs_rx = vd.antennas;
                c.power.adc_mw = vd.adc;
            }
            c.n_streams = cfg.streams_track_rf ? std::min(c.n_rf, cfg.ue_antennas)
                                               : cfg.n_streams;
            cells.push_back(c);
        }
    }
    return cells;
}

ReceiverArch arch_of(DesignKind kind) {
    switch (kind) {
    case DesignKind::full_digital:
    case DesignKind::upper_bound:
        return ReceiverArch::full_digital;
    default:
        return ReceiverArch::hybrid;
    }
}

struct TrialContext {
    const ScenarioConfig& cfg;
    const Cell& cell;
    ArrayGeometry ue, bs_tx, bs_rx;
    ClusterRaySpec link_spec, si_spec;
    SiGeometry si_geom;
    LinkBudget budget;
};

double mean_ratio(const std::vector<double>& resid_power, double sigma2) {
    double acc = 0.0;
    for (double p : resid_power)
        acc += p;
    return resid_power.empty() ? 0.0 : acc / (sigma2 * static_cast<double>(resid_power.size()));
}

void maybe_dump_beams(const TrialContext& ctx, int trial, const std::string& label,
                      const DigitalBeamformerSet& beams) {
    if (ctx.cfg.dump_beams_dir.empty())
        return;
    const std::string base = ctx.cfg.dump_beams_dir + "/point" + std::to_string(ctx.cell.key) +
                             ctx.cell.file_tag + "_trial" + std::to_string(trial) + "_" + label +
                             "_";
    write_beamformer_dump(base + "f_ue.beam", beams.f_ue);
    write_beamformer_dump(base + "w_bs.beam", beams.w_bs);
    write_beamformer_dump(base + "f_bs.beam", beams.f_bs);
    write_beamformer_dump(base + "w_ue.beam", beams.w_ue);
}

std::vector<MetricRecord> run_trial(const TrialContext& ctx, int trial) {
    const ScenarioConfig& cfg = ctx.cfg;
    Rng rng = Rng::for_trial(cfg.seed, ctx.cell.key, static_cast<std::uint64_t>(trial));

    // Fixed draw order: uplink rays, downlink rays, self-interference leakage.
    const std::vector<Ray> rays_u = draw_cluster_rays(ctx.link_spec, rng);
    const std::vector<Ray> rays_d = draw_cluster_rays(ctx.link_spec, rng);
    const TimeDomainChannel td_u = synth_from_rays(ctx.ue, ctx.bs_rx, ctx.link_spec, rays_u);
    const TimeDomainChannel td_d = synth_from_rays(ctx.bs_tx, ctx.ue, ctx.link_spec, rays_d);
    const TimeDomainChannel td_s =
        synth_si_channel(ctx.bs_tx, ctx.bs_rx, ctx.si_geom, ctx.si_spec, rng);

    const int k = cfg.subcarriers;
    const FrequencyChannel h_u = to_frequency(td_u, k);
    const FrequencyChannel h_d = to_frequency(td_d, k);
    const FrequencyChannel h_s = to_frequency(td_s, k);

    if (!cfg.dump_channels_dir.empty()) {
        const std::string base = cfg.dump_channels_dir + "/point" +
                                 std::to_string(ctx.cell.key) + ctx.cell.file_tag + "_trial" +
                                 std::to_string(trial);
        write_channel_dump(base + "_u.chan", td_u, k);
        write_channel_dump(base + "_d.chan", td_d, k);
        write_channel_dump(base + "_s.chan", td_s, k);
    }

    const LinkBudget& budget = ctx.budget;
    const int n_s = ctx.cell.n_streams;

    std::vector<MetricRecord> out;
    out.reserve(cfg.designs.size());
    for (const DesignChoice& design : cfg.designs) {
        SolverConfig solver;
        solver.n_outer = cfg.n_outer;
        solver.n_inner = design.n_inner > 0 ? design.n_inner : cfg.n_inner;
        solver.n_streams = n_s;
        solver.n_rf = ctx.cell.n_rf;

        MetricRecord rec;
        rec.snr_db = ctx.cell.snr_db;
        rec.sir_db = ctx.cell.sir_db;
        rec.n_rf = ctx.cell.n_rf;
        rec.bs_antennas = ctx.cell.bs_rx;

        switch (design.kind) {
        case DesignKind::full_digital: {
            const FullDigitalResult r = full_digital_design(h_u, h_d, h_s, solver);
            rec.se_up = uplink_rate(r.beams, h_u, h_s, budget, cfg.si_cov_uses_ue_precoder);
            rec.se_down = downlink_rate(r.beams, h_d, budget);
            rec.resid_si_over_noise =
                mean_ratio(residual_si_power(r.beams, h_s, budget), budget.sigma_u2);
            rec.zf_infeasible = r.events.zf_infeasible;
            rec.zero_phase = r.events.zero_phase_entries;
            maybe_dump_beams(ctx, trial, design.label, r.beams);
            break;
        }
        case DesignKind::hybrid: {
            const HybridResult r = hybrid_design(h_u, h_d, h_s, solver);
            rec.se_up =
                uplink_rate(r.beams.composed, h_u, h_s, budget, cfg.si_cov_uses_ue_precoder);
            rec.se_down = downlink_rate(r.beams.composed, h_d, budget);
            rec.resid_si_over_noise =
                mean_ratio(residual_si_power(r.beams.composed, h_s, budget), budget.sigma_u2);
            rec.zf_infeasible = r.events.zf_infeasible;
            rec.zero_phase = r.events.zero_phase_entries;
            maybe_dump_beams(ctx, trial, design.label, r.beams.composed);
            break;
        }
        case DesignKind::beamsteering: {
            const DigitalBeamformerSet beams = baseline_beamsteering(
                rays_u, rays_d, ctx.link_spec, ctx.ue, ctx.bs_tx, ctx.bs_rx, k, solver);
            rec.se_up = uplink_rate(beams, h_u, h_s, budget, cfg.si_cov_uses_ue_precoder);
            rec.se_down = downlink_rate(beams, h_d, budget);
            rec.resid_si_over_noise =
                mean_ratio(residual_si_power(beams, h_s, budget), budget.sigma_u2);
            break;
        }
        case DesignKind::svd_phase: {
            const DigitalBeamformerSet beams = baseline_svd(h_u, h_d, solver);
            rec.se_up = uplink_rate(beams, h_u, h_s, budget, cfg.si_cov_uses_ue_precoder);
            rec.se_down = downlink_rate(beams, h_d, budget);
            rec.resid_si_over_noise =
                mean_ratio(residual_si_power(beams, h_s, budget), budget.sigma_u2);
            break;
        }
        case DesignKind::angle_search: {
            const DigitalBeamformerSet beams =
                baseline_anglesearch(h_u, h_d, ctx.ue, ctx.bs_tx, ctx.bs_rx, solver);
            rec.se_up = uplink_rate(beams, h_u, h_s, budget, cfg.si_cov_uses_ue_precoder);
            rec.se_down = downlink_rate(beams, h_d, budget);
            rec.resid_si_over_noise =
                mean_ratio(residual_si_power(beams, h_s, budget), budget.sigma_u2);
            break;
        }
        case DesignKind::upper_bound: {
            const double k_ns = static_cast<double>(k) * static_cast<double>(n_s);
            rec.se_up = upper_bound_rate(h_u, budget.rho_u * k_ns, n_s);
            rec.se_down = upper_bound_rate(h_d, budget.rho_d * k_ns, n_s);
            break;
        }
        }
        rec.se_sum = rec.se_up + rec.se_down;
        if (!std::isfinite(rec.se_up) || !std::isfinite(rec.se_down))
            throw std::runtime_error("run_sweep: non-finite spectral efficiency in trial");
        out.push_back(rec);
    }
    return out;
}

} // namespace

SweepResult run_sweep(const ScenarioConfig& cfg) {
    validate_config(cfg);
    const std::vector<Cell> cells = build_cells(cfg);
    const int n_designs = static_cast<int>(cfg.designs.size());

    SweepResult res;
    res.axis_name = to_string(cfg.sweep);
    res.outage_targets = cfg.outage_targets;

    for (const Cell& cell : cells) {
        TrialContext ctx{cfg,
                         cell,
                         ArrayGeometry{cfg.ue_antennas, 0.5},
                         ArrayGeometry{cell.bs_tx, 0.5},
                         ArrayGeometry{cell.bs_rx, 0.5},
                         ClusterRaySpec{cfg.clusters, cfg.rays_per_cluster,
                                        cfg.angular_spread_deg, cfg.pathloss_exponent, cfg.taps,
                                        cfg.rolloff, 1.0},
                         ClusterRaySpec{cfg.clusters, cfg.rays_per_cluster,
                                        cfg.angular_spread_deg, cfg.pathloss_exponent,
                                        cfg.si_taps, cfg.rolloff, 1.0},
                         SiGeometry{cfg.si_angle_deg * 3.141592653589793 / 180.0,
                                    cfg.si_distance_lambda,
                                    std::pow(10.0, cfg.si_rician_kappa_db / 10.0),
                                    cfg.si_los_every_tap, cfg.si_los_normalized},
                         make_budget(cell.snr_db, cell.sir_db, cell.n_streams)};

        std::vector<std::vector<MetricRecord>> records(
            static_cast<std::size_t>(n_designs),
            std::vector<MetricRecord>(static_cast<std::size_t>(cfg.trials)));

        const unsigned hw = std::thread::hardware_concurrency();
        const int workers =
            cfg.workers > 0 ? cfg.workers : static_cast<int>(hw > 0 ? hw : 1);
        std::atomic<int> next{0};
        std::atomic<bool> failed{false};
        std::string error_message;
        std::mutex error_mutex;

        auto body = [&]() {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= cfg.trials || failed.load())
                    break;
                try {
                    const std::vector<MetricRecord> recs = run_trial(ctx, t);
                    for (int d = 0; d < n_designs; ++d)
                        records[d][t] = recs[d];
                } catch (const std::exception& e) {
                    std::scoped_lock lock(error_mutex);
                    failed.store(true);
                    if (error_message.empty())
                        error_message = e.what();
                }
            }
        };

        if (workers <= 1 || cfg.trials == 1) {
            body();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < std::min(workers, cfg.trials); ++w)
                pool.emplace_back(body);
            for (std::thread& th : pool)
                th.join();
        }
        if (failed.load())
            throw std::runtime_error("run_sweep: trial failed: " + error_message);

        for (int d = 0; d < n_designs; ++d) {
            SweepRow row;
            row.design = cfg.designs[d].label + cell.variant_suffix;
            row.axis = cell.axis;
            row.trials = cfg.trials;
            row.records = records[d];

            std::vector<double> up;
            up.reserve(row.records.size());
            for (const MetricRecord& r : row.records) {
                row.se_up_mean += r.se_up;
                row.se_down_mean += r.se_down;
                row.se_sum_mean += r.se_sum;
                row.resid_ratio_mean += r.resid_si_over_noise;
                row.events_zf_infeasible += r.zf_infeasible;
                row.events_zero_phase += r.zero_phase;
                up.push_back(r.se_up);
            }
            const double n = static_cast<double>(row.records.size());
            row.se_up_mean /= n;
            row.se_down_mean /= n;
            row.se_sum_mean /= n;
            row.resid_ratio_mean /= n;
            row.se_up_p10 = epsilon_rate(up, 0.1);
            row.ee = energy_efficiency(row.se_up_mean, arch_of(cfg.designs[d].kind), cell.bs_rx,
                                       cell.n_rf, cell.power);
            for (double target : cfg.outage_targets)
                row.outage.push_back(outage_probability(up, target));
            res.rows.push_back(std::move(row));
        }
    }
    return res;
}

void emit_csv(const SweepResult& res, std::ostream& out) {
    out << "sweep_axis,design,se_up_mean,se_down_mean,se_sum_mean,se_up_p10,"
           "ee_bits_per_joule_hz,outage_at_targets,resid_si_db_mean,trials\n";
    for (const SweepRow& row : res.rows) {
        std::string outage;
        for (std::size_t i = 0; i < row.outage.size(); ++i) {
            if (i)
                outage += ';';
            outage += fmt12(res.outage_targets[i]) + ":" + fmt12(row.outage[i]);
        }
        out << fmt12(row.axis) << ',' << row.design << ',' << fmt12(row.se_up_mean) << ','
            << fmt12(row.se_down_mean) << ',' << fmt12(row.se_sum_mean) << ','
            << fmt12(row.se_up_p10) << ',' << fmt12(row.ee) << ',' << outage << ','
            << fmt12(resid_db(row.resid_ratio_mean)) << ',' << row.trials << '\n';
    }
}

namespace {

ordered_json record_to_json(const MetricRecord& r) {
    return ordered_json{{"se_up", r.se_up},
                        {"se_down", r.se_down},
                        {"se_sum", r.se_sum},
                        {"resid_si_over_noise", r.resid_si_over_noise},
                        {"snr_db", r.snr_db},
                        {"sir_db", r.sir_db},
                        {"n_rf", r.n_rf},
                        {"bs_antennas", r.bs_antennas},
                        {"zf_infeasible", r.zf_infeasible},
                        {"zero_phase", r.zero_phase}};
}

MetricRecord record_from_json(const ordered_json& j) {
    MetricRecord r;
    r.se_up = j.at("se_up").get<double>();
    r.se_down = j.at("se_down").get<double>();
    r.se_sum = j.at("se_sum").get<double>();
    r.resid_si_over_noise = j.at("resid_si_over_noise").get<double>();
    r.snr_db = j.at("snr_db").get<double>();
    r.sir_db = j.at("sir_db").get<double>();
    r.n_rf = j.at("n_rf").get<int>();
    r.bs_antennas = j.at("bs_antennas").get<int>();
    r.zf_infeasible = j.at("zf_infeasible").get<long>();
    r.zero_phase = j.at("zero_phase").get<long>();
    return r;
}

} // namespace

std::string emit_json(const SweepResult& res, const ScenarioConfig& cfg, bool full) {
    ordered_json root;
    root["schema"] = "fdbf-sweep-v1";
    ordered_json conf;
    for (const auto& [k, v] : config_echo(cfg))
        conf[k] = v;
    root["config"] = conf;
    root["axis"] = res.axis_name;
    root["outage_targets"] = res.outage_targets;
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : res.rows) {
        ordered_json r;
        r["design"] = row.design;
        r["sweep_axis"] = row.axis;
        r["se_up_mean"] = row.se_up_mean;
        r["se_down_mean"] = row.se_down_mean;
        r["se_sum_mean"] = row.se_sum_mean;
        r["se_up_p10"] = row.se_up_p10;
        r["ee_bits_per_joule_hz"] = row.ee;
        r["resid_ratio_mean"] = row.resid_ratio_mean;
        r["outage"] = row.outage;
        r["events"] = ordered_json{{"zf_infeasible", row.events_zf_infeasible},
                                   {"zero_phase", row.events_zero_phase}};
        r["trials"] = row.trials;
        if (full) {
            ordered_json recs = ordered_json::array();
            for (const MetricRecord& rec : row.records)
                recs.push_back(record_to_json(rec));
            r["records"] = recs;
        }
        rows.push_back(r);
    }
    root["rows"] = rows;
    return root.dump(2) + "\n";
}

SweepResult sweep_result_from_json(const std::string& text) {
    const ordered_json root = ordered_json::parse(text);
    SweepResult res;
    res.axis_name = root.at("axis").get<std::string>();
    res.outage_targets = root.at("outage_targets").get<std::vector<double>>();
    for (const ordered_json& r : root.at("rows")) {
        SweepRow row;
        row.design = r.at("design").get<std::string>();
        row.axis = r.at("sweep_axis").get<double>();
        row.se_up_mean = r.at("se_up_mean").get<double>();
        row.se_down_mean = r.at("se_down_mean").get<double>();
        row.se_sum_mean = r.at("se_sum_mean").get<double>();
        row.se_up_p10 = r.at("se_up_p10").get<double>();
        row.ee = r.at("ee_bits_per_joule_hz").get<double>();
        row.resid_ratio_mean = r.at("resid_ratio_mean").get<double>();
        row.outage = r.at("outage").get<std::vector<double>>();
        row.events_zf_infeasible = r.at("events").at("zf_infeasible").get<long>();
        row.events_zero_phase = r.at("events").at("zero_phase").get<long>();
        row.trials = r.at("trials").get<int>();
        if (r.contains("records"))
            for (const ordered_json& rec : r.at("records"))
                row.records.push_back(record_from_json(rec));
        res.rows.push_back(std::move(row));
    }
    return res;
}

void emit_results(const SweepResult& res, const ScenarioConfig& cfg) {
    std::ostringstream body;
    if (cfg.format == "csv")
        emit_csv(res, body);
    else
        body << emit_json(res, cfg, cfg.full_records);

    if (cfg.out_path.empty()) {
        std::cout << body.str();
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_results: cannot open '" + cfg.out_path + "'");
    out << body.str();
    if (!out)
        throw std::runtime_error("emit_results: write failed for '" + cfg.out_path + "'");
}

} // namespace fdbf
