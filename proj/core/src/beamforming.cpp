// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace fdbf {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const SolverConfig& cfg) {
    if (cfg.n_outer < 1 || cfg.n_inner < 1)
        throw std::invalid_argument("SolverConfig: iteration counts must be >= 1");
    if (cfg.n_streams < 1)
        throw std::invalid_argument("SolverConfig: n_streams must be >= 1");
    if (cfg.n_rf < cfg.n_streams)
        throw std::invalid_argument("SolverConfig: need n_streams <= n_rf");
}

void check_channels(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                    const FrequencyChannel& h_s) {
    const int k = h_u.n_subcarriers();
    if (k == 0 || h_d.n_subcarriers() != k || h_s.n_subcarriers() != k)
        throw std::invalid_argument("design: subcarrier counts differ");
    if (h_s.subcarriers[0].rows() != h_u.subcarriers[0].rows())
        throw std::invalid_argument("design: SI rows must match BS receive antennas");
    if (h_s.subcarriers[0].cols() != h_d.subcarriers[0].cols())
        throw std::invalid_argument("design: SI cols must match BS transmit antennas");
}

// Orthonormal basis of the column space of c, truncated at the numerical rank.
// Empty matrix for (numerically) zero c.
CMatrix column_basis(const CMatrix& c) {
    if (c.size() == 0 || frob(c) == 0.0)
        return CMatrix(c.rows(), 0);
    const SvdResult dec = svd(c);
    const double smax = dec.s(0);
    Index rank = 0;
    for (Index i = 0; i < dec.s.size(); ++i)
        if (dec.s(i) > tol::pinv_rank_rtol * smax)
            ++rank;
    return dec.u.leftCols(rank);
}

// Entrywise z/|z| with zero entries mapped to 1 (phase 0), counted as events.
CMatrix phase_only(const CMatrix& m, DesignEvents* events) {
    CMatrix out(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            const double mag = std::abs(m(i, j));
            if (mag == 0.0) {
                out(i, j) = cxd(1.0, 0.0);
                if (events)
                    ++events->zero_phase_entries;
            } else {
                out(i, j) = m(i, j) / mag;
            }
        }
    }
    return out;
}

// Dominant right singular vectors, with deterministic completion past the
// minimum dimension.
CMatrix right_singular_basis(const CMatrix& a, Index n) {
    return left_singular_basis(a.adjoint(), n);
}

Index argmax_energy(const FrequencyChannel& h) {
    Index best = 0;
    double best_e = -1.0;
    for (int k = 0; k < h.n_subcarriers(); ++k) {
        const double e = h.subcarriers[k].squaredNorm();
        if (e > best_e) {
            best_e = e;
            best = k;
        }
    }
    return best;
}

Index argmin_energy(const FrequencyChannel& h) {
    Index best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int k = 0; k < h.n_subcarriers(); ++k) {
        const double e = h.subcarriers[k].squaredNorm();
        if (e < best_e) {
            best_e = e;
            best = k;
        }
    }
    return best;
}

} // namespace

CMatrix baseband_zf(const CMatrix& a, const CMatrix& c, Index n, DesignEvents* events) {
    if (n < 1 || n > a.rows())
        throw std::invalid_argument("baseband_zf: n out of range");
    if (c.rows() != a.rows())
        throw std::invalid_argument("baseband_zf: row mismatch between target and interference");

    const CMatrix si_basis = column_basis(c);
    const Index dof = a.rows() - si_basis.cols();
    if (n > dof && events)
        ++events->zf_infeasible;

    CMatrix projected = a;
    if (si_basis.cols() > 0)
        projected -= si_basis * (si_basis.adjoint() * a);
    // A target fully inside the interference subspace leaves only projection
    // round-off behind; treat it as zero so the null-space completion kicks in.
    if (projected.norm() <= 1e-12 * a.norm())
        projected.setZero();

    if (n <= dof)
        return left_singular_basis(projected, n, si_basis);
    if (dof <= 0)
        return left_singular_basis(projected, n);

    // Not enough degrees of freedom: fill what the null space allows, then
    // complete unconstrained so the requested stream count is still served.
    CMatrix x(a.rows(), n);
    x.leftCols(dof) = left_singular_basis(projected, dof, si_basis);
    const CMatrix widened = left_singular_basis(x.leftCols(dof), n);
    x.rightCols(n - dof) = widened.rightCols(n - dof);
    return x;
}

FullDigitalResult full_digital_design(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                      const FrequencyChannel& h_s, const SolverConfig& cfg) {
    validate(cfg);
    check_channels(h_u, h_d, h_s);
    const int n_k = h_u.n_subcarriers();
    const Index n_s = cfg.n_streams;

    FullDigitalResult res;
    res.beams.f_ue.resize(n_k);
    res.beams.w_bs.resize(n_k);
    res.beams.f_bs.resize(n_k);
    res.beams.w_ue.resize(n_k);
    res.residual_si.resize(n_k);

    for (int k = 0; k < n_k; ++k) {
        const CMatrix& hu = h_u.subcarriers[k];
        const CMatrix& hd = h_d.subcarriers[k];
        const CMatrix& hs = h_s.subcarriers[k];

        CMatrix f_ue = right_singular_basis(hu, n_s);
        CMatrix f_bs = right_singular_basis(hd, n_s);
        CMatrix w_bs, w_ue;

        for (int t = 0; t < cfg.n_outer; ++t) {
            w_bs = baseband_zf(hu * f_ue, hs * f_bs, n_s, &res.events);
            f_ue = left_singular_basis(hu.adjoint() * w_bs, n_s);
            w_ue = left_singular_basis(hd * f_bs, n_s);
            f_bs = baseband_zf(hd.adjoint() * w_ue, hs.adjoint() * w_bs, n_s, &res.events);
        }

        res.residual_si[k] = (w_bs.adjoint() * hs * f_bs).norm();
        res.beams.f_ue[k] = std::move(f_ue);
        res.beams.w_bs[k] = std::move(w_bs);
        res.beams.f_bs[k] = std::move(f_bs);
        res.beams.w_ue[k] = std::move(w_ue);
    }
    return res;
}

CMatrix analog_alternating_projection(const CMatrix& a, const CMatrix& c, Index l, int n_inner,
                                      DesignEvents* events) {
    if (l < 1 || l > a.rows())
        throw std::invalid_argument("analog_alternating_projection: l out of range");
    if (n_inner < 1)
        throw std::invalid_argument("analog_alternating_projection: n_inner must be >= 1");
    if (c.size() > 0 && c.rows() != a.rows())
        throw std::invalid_argument("analog_alternating_projection: row mismatch");

    const CMatrix si_basis = column_basis(c);
    CMatrix x = left_singular_basis(a, l);
    if (si_basis.cols() == 0)
        return phase_only(x, events); // nothing to project against: fixed point
    for (int it = 0; it < n_inner; ++it) {
        CMatrix y = x - si_basis * (si_basis.adjoint() * x);
        x = phase_only(y, events);
    }
    return x;
}

CMatrix digital_factor(const CMatrix& x_rf, const CMatrix& a, Index n) {
    if (x_rf.rows() < x_rf.cols())
        throw std::invalid_argument("digital_factor: analog factor must be tall");
    const SvdResult dec = svd(x_rf);
    const double smin = dec.s(dec.s.size() - 1);
    if (!(smin > tol::pinv_rank_rtol * dec.s(0)))
        throw std::invalid_argument("digital_factor: analog factor is rank deficient");
    const CMatrix q = left_singular_basis(dec.u.adjoint() * a, n);
    return dec.v * dec.s.cwiseInverse().asDiagonal() * q;
}

HybridResult hybrid_design(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                           const FrequencyChannel& h_s, const SolverConfig& cfg) {
    validate(cfg);
    check_channels(h_u, h_d, h_s);
    const int n_k = h_u.n_subcarriers();
    const Index n_s = cfg.n_streams;
    const Index n_rf = cfg.n_rf;
    const Index ue_ul = h_u.subcarriers[0].cols();
    const Index ue_dl = h_d.subcarriers[0].rows();
    const Index n_rf_ue_ul = cfg.n_rf_ue > 0 ? cfg.n_rf_ue : std::min<Index>(n_rf, ue_ul);
    const Index n_rf_ue_dl = cfg.n_rf_ue > 0 ? cfg.n_rf_ue : std::min<Index>(n_rf, ue_dl);
    if (n_s > n_rf_ue_ul || n_s > n_rf_ue_dl)
        throw std::invalid_argument("hybrid_design: UE RF chains cannot carry the stream count");
    if (n_rf > h_s.subcarriers[0].rows() || n_rf > h_s.subcarriers[0].cols())
        throw std::invalid_argument("hybrid_design: more BS RF chains than antennas");

    const CMatrix& g_u = h_u.subcarriers[argmax_energy(h_u)];
    const CMatrix& g_d = h_d.subcarriers[argmax_energy(h_d)];
    const CMatrix& g_s = h_s.subcarriers[argmin_energy(h_s)];

    HybridResult res;
    DesignEvents& ev = res.events;

    // Initialization: unit-modulus phases of the dominant right singular
    // vectors of the strongest subcarriers; digital factors project the
    // per-subcarrier SVD precoders onto the analog range.
    CMatrix f_rf_ue = phase_only(right_singular_basis(g_u, n_rf_ue_ul), &ev);
    CMatrix f_rf_bs = phase_only(right_singular_basis(g_d, n_rf), &ev);
    CMatrix w_rf_bs, w_rf_ue;

    std::vector<CMatrix> f_ue(n_k), f_bs(n_k);
    res.beams.f_bb_ue.resize(n_k);
    res.beams.f_bb_bs.resize(n_k);
    res.beams.w_bb_bs.resize(n_k);
    res.beams.w_bb_ue.resize(n_k);
    res.beams.composed.f_ue.resize(n_k);
    res.beams.composed.w_bs.resize(n_k);
    res.beams.composed.f_bs.resize(n_k);
    res.beams.composed.w_ue.resize(n_k);
    res.residual_si.resize(n_k);

    for (int k = 0; k < n_k; ++k) {
        res.beams.f_bb_ue[k] =
            digital_factor(f_rf_ue, right_singular_basis(h_u.subcarriers[k], n_s), n_s);
        res.beams.f_bb_bs[k] =
            digital_factor(f_rf_bs, right_singular_basis(h_d.subcarriers[k], n_s), n_s);
        f_ue[k] = f_rf_ue * res.beams.f_bb_ue[k];
        f_bs[k] = f_rf_bs * res.beams.f_bb_bs[k];
    }

    for (int k = 0; k < n_k; ++k) {
        const CMatrix& hu = h_u.subcarriers[k];
        const CMatrix& hd = h_d.subcarriers[k];

        for (int t = 0; t < cfg.n_outer; ++t) {
            w_rf_bs = analog_alternating_projection(g_u * f_ue[k], g_s * f_rf_bs, n_rf,
                                                    cfg.n_inner, &ev);
            res.beams.w_bb_bs[k] = digital_factor(w_rf_bs, hu * f_ue[k], n_s);
            res.beams.composed.w_bs[k] = w_rf_bs * res.beams.w_bb_bs[k];

            w_rf_ue = phase_only(left_singular_basis(g_d * f_bs[k], n_rf_ue_dl), &ev);
            res.beams.w_bb_ue[k] = digital_factor(w_rf_ue, hd * f_bs[k], n_s);
            res.beams.composed.w_ue[k] = w_rf_ue * res.beams.w_bb_ue[k];

            f_rf_ue = phase_only(
                left_singular_basis(g_u.adjoint() * res.beams.composed.w_bs[k], n_rf_ue_ul), &ev);
            res.beams.f_bb_ue[k] =
                digital_factor(f_rf_ue, hu.adjoint() * res.beams.composed.w_bs[k], n_s);
            f_ue[k] = f_rf_ue * res.beams.f_bb_ue[k];
            res.beams.composed.f_ue[k] = f_ue[k];

            f_rf_bs = analog_alternating_projection(
                g_d.adjoint() * res.beams.composed.w_ue[k], g_s.adjoint() * w_rf_bs, n_rf,
                cfg.n_inner, &ev);
            res.beams.f_bb_bs[k] =
                digital_factor(f_rf_bs, hd.adjoint() * res.beams.composed.w_ue[k], n_s);
            f_bs[k] = f_rf_bs * res.beams.f_bb_bs[k];
            res.beams.composed.f_bs[k] = f_bs[k];
        }

        res.residual_si[k] = (res.beams.composed.w_bs[k].adjoint() * h_s.subcarriers[k] *
                              res.beams.composed.f_bs[k])
                                 .norm();
    }

    res.beams.f_rf_ue = f_rf_ue;
    res.beams.w_rf_bs = w_rf_bs;
    res.beams.f_rf_bs = f_rf_bs;
    res.beams.w_rf_ue = w_rf_ue;
    res.analog_residual = (w_rf_bs.adjoint() * g_s * f_rf_bs).norm();
    return res;
}

namespace {

// Unit-norm steering column (array response already carries 1/sqrt(N)).
void steering_columns(CMatrix& dst, const ArrayGeometry& geom, const std::vector<double>& angles) {
    dst.resize(geom.n_elements, static_cast<Index>(angles.size()));
    for (std::size_t i = 0; i < angles.size(); ++i)
        dst.col(static_cast<Index>(i)) = array_response(geom, angles[i]);
}

// Phases of the given columns scaled to unit norm.
CMatrix phase_columns(const CMatrix& m) {
    CMatrix out = phase_only(m, nullptr);
    out *= 1.0 / std::sqrt(static_cast<double>(m.rows()));
    return out;
}

DigitalBeamformerSet replicate(CMatrix f_ue, CMatrix w_bs, CMatrix f_bs, CMatrix w_ue, int n_k) {
    DigitalBeamformerSet set;
    set.f_ue.assign(n_k, f_ue);
    set.w_bs.assign(n_k, w_bs);
    set.f_bs.assign(n_k, f_bs);
    set.w_ue.assign(n_k, w_ue);
    return set;
}

// Strongest ray angle of each of the n strongest clusters; ray strength is
// |gain|^2 times the pulse energy its delay retains inside the tap window.
struct SteerPick {
    std::vector<double> aoa;
    std::vector<double> aod;
};

SteerPick strongest_cluster_angles(const std::vector<Ray>& rays, const ClusterRaySpec& spec,
                                   Index n) {
    if (rays.empty())
        throw std::invalid_argument("baseline_beamsteering: empty ray set");
    auto ray_strength = [&](const Ray& r) {
        double e = 0.0;
        for (int l = 0; l < spec.n_taps; ++l) {
            const double p = raised_cosine(l * spec.symbol_interval - r.delay, spec.rolloff);
            e += p * p;
        }
        return std::norm(r.gain) * e;
    };

    struct ClusterInfo {
        double strength = 0.0;
        double best_ray = -1.0;
        double aoa = 0.0, aod = 0.0;
    };
    std::map<int, ClusterInfo> clusters;
    for (const Ray& r : rays) {
        const double s = ray_strength(r);
        ClusterInfo& ci = clusters[r.cluster];
        ci.strength += s;
        if (s > ci.best_ray) {
            ci.best_ray = s;
            ci.aoa = r.aoa;
            ci.aod = r.aod;
        }
    }
    std::vector<ClusterInfo> order;
    for (auto& [id, ci] : clusters)
        order.push_back(ci);
    std::stable_sort(order.begin(), order.end(),
                     [](const ClusterInfo& a, const ClusterInfo& b) { return a.strength > b.strength; });

    SteerPick pick;
    for (Index i = 0; i < n; ++i) {
        const ClusterInfo& ci = order[static_cast<std::size_t>(i) % order.size()];
        pick.aoa.push_back(ci.aoa);
        pick.aod.push_back(ci.aod);
    }
    return pick;
}

} // namespace

DigitalBeamformerSet baseline_beamsteering(const std::vector<Ray>& uplink_rays,
                                           const std::vector<Ray>& downlink_rays,
                                           const ClusterRaySpec& spec, const ArrayGeometry& ue,
                                           const ArrayGeometry& bs_tx, const ArrayGeometry& bs_rx,
                                           int n_subcarriers, const SolverConfig& cfg) {
    validate(cfg);
    if (cfg.n_rf != cfg.n_streams)
        throw std::invalid_argument("baselines: analog-only architecture needs n_rf == n_streams");
    const SteerPick up = strongest_cluster_angles(uplink_rays, spec, cfg.n_rf);
    const SteerPick down = strongest_cluster_angles(downlink_rays, spec, cfg.n_rf);

    CMatrix f_ue, w_bs, f_bs, w_ue;
    steering_columns(f_ue, ue, up.aod);
    steering_columns(w_bs, bs_rx, up.aoa);
    steering_columns(f_bs, bs_tx, down.aod);
    steering_columns(w_ue, ue, down.aoa);
    return replicate(f_ue, w_bs, f_bs, w_ue, n_subcarriers);
}

DigitalBeamformerSet baseline_svd(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                  const SolverConfig& cfg) {
    validate(cfg);
    if (cfg.n_rf != cfg.n_streams)
        throw std::invalid_argument("baselines: analog-only architecture needs n_rf == n_streams");
    const CMatrix& g_u = h_u.subcarriers[argmax_energy(h_u)];
    const CMatrix& g_d = h_d.subcarriers[argmax_energy(h_d)];
    const Index n = cfg.n_streams;
    CMatrix f_ue = phase_columns(right_singular_basis(g_u, n));
    CMatrix w_bs = phase_columns(left_singular_basis(g_u, n));
    CMatrix f_bs = phase_columns(right_singular_basis(g_d, n));
    CMatrix w_ue = phase_columns(left_singular_basis(g_d, n));
    return replicate(f_ue, w_bs, f_bs, w_ue, h_u.n_subcarriers());
}

namespace {

// Gain-maximizing steering angle over a uniform grid on [-90, 90] degrees
// (every distinct uniform-linear-array beam appears exactly once there). The
// search scores one beam at a time, so all n columns take the single winning
// angle. `transmit` selects ‖G a‖ (precoder side) versus ‖G* a‖ (combiner
// side).
std::vector<double> grid_search(const CMatrix& g, const ArrayGeometry& geom, bool transmit,
                                Index n, double grid_step_deg) {
    const int steps = static_cast<int>(std::lround(180.0 / grid_step_deg)) + 1;
    double best_gain = -1.0, best_angle = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double ang = (-90.0 + i * grid_step_deg) * kPi / 180.0;
        const CVector a = array_response(geom, ang);
        const double gain = transmit ? (g * a).norm() : (g.adjoint() * a).norm();
        if (gain > best_gain) {
            best_gain = gain;
            best_angle = ang;
        }
    }
    return std::vector<double>(static_cast<std::size_t>(n), best_angle);
}

} // namespace

DigitalBeamformerSet baseline_anglesearch(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                          const ArrayGeometry& ue, const ArrayGeometry& bs_tx,
                                          const ArrayGeometry& bs_rx, const SolverConfig& cfg,
                                          double grid_step_deg) {
    validate(cfg);
    if (cfg.n_rf != cfg.n_streams)
        throw std::invalid_argument("baselines: analog-only architecture needs n_rf == n_streams");
    if (!(grid_step_deg > 0.0))
        throw std::invalid_argument("baseline_anglesearch: grid step must be positive");
    const CMatrix& g_u = h_u.subcarriers[argmax_energy(h_u)];
    const CMatrix& g_d = h_d.subcarriers[argmax_energy(h_d)];
    const Index n = cfg.n_streams;

    CMatrix f_ue, w_bs, f_bs, w_ue;
    steering_columns(f_ue, ue, grid_search(g_u, ue, true, n, grid_step_deg));
    steering_columns(w_bs, bs_rx, grid_search(g_u, bs_rx, false, n, grid_step_deg));
    steering_columns(f_bs, bs_tx, grid_search(g_d, bs_tx, true, n, grid_step_deg));
    steering_columns(w_ue, ue, grid_search(g_d, ue, false, n, grid_step_deg));
    return replicate(f_ue, w_bs, f_bs, w_ue, h_u.n_subcarriers());
}

double upper_bound_rate(const FrequencyChannel& h, double snr_linear, int n_streams) {
    if (h.n_subcarriers() == 0)
        throw std::invalid_argument("upper_bound_rate: empty channel");
    const Index n_s = n_streams;
    if (n_s < 1 ||
        n_s > std::min(h.subcarriers[0].rows(), h.subcarriers[0].cols()))
        throw std::invalid_argument("upper_bound_rate: stream count out of range");
    const double k = static_cast<double>(h.n_subcarriers());
    const double share = snr_linear / (k * static_cast<double>(n_streams));
    double bits = 0.0;
    for (const CMatrix& sub : h.subcarriers) {
        Eigen::JacobiSVD<CMatrix> dec(sub);
        for (Index l = 0; l < n_s; ++l) {
            const double s = dec.singularValues()(l);
            bits += std::log2(1.0 + share * s * s);
        }
    }
    return bits / k;
}

} // namespace fdbf
