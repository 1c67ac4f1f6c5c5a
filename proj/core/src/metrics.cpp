// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdbf {

namespace {

CMatrix loaded(CMatrix q) {
    const Index n = q.rows();
    q = 0.5 * (q + q.adjoint().eval());
    const double floor = tol::noise_cov_floor * q.trace().real() / static_cast<double>(n);
    q += floor * CMatrix::Identity(n, n);
    return q;
}

} // namespace

double uplink_rate(const DigitalBeamformerSet& beams, const FrequencyChannel& h_u,
                   const FrequencyChannel& h_s, const LinkBudget& budget,
                   bool si_uses_ue_precoder) {
    const int n_k = h_u.n_subcarriers();
    if (n_k == 0 || beams.n_subcarriers() != n_k || h_s.n_subcarriers() != n_k)
        throw std::invalid_argument("uplink_rate: subcarrier counts differ");
    double bits = 0.0;
    for (int k = 0; k < n_k; ++k) {
        const CMatrix& w = beams.w_bs[k];
        const CMatrix eff = w.adjoint() * h_u.subcarriers[k] * beams.f_ue[k];
        const CMatrix& si_pre = si_uses_ue_precoder ? beams.f_ue[k] : beams.f_bs[k];
        const CMatrix leak = w.adjoint() * h_s.subcarriers[k] * si_pre;
        const CMatrix q = loaded(budget.rho_s * (leak * leak.adjoint()) +
                                 budget.sigma_u2 * (w.adjoint() * w));
        bits += logdet_capacity(eff, q, budget.rho_u);
    }
    return bits / static_cast<double>(n_k);
}

double downlink_rate(const DigitalBeamformerSet& beams, const FrequencyChannel& h_d,
                     const LinkBudget& budget) {
    const int n_k = h_d.n_subcarriers();
    if (n_k == 0 || beams.n_subcarriers() != n_k)
        throw std::invalid_argument("downlink_rate: subcarrier counts differ");
    double bits = 0.0;
    for (int k = 0; k < n_k; ++k) {
        const CMatrix& w = beams.w_ue[k];
        const CMatrix eff = w.adjoint() * h_d.subcarriers[k] * beams.f_bs[k];
        const CMatrix q = loaded(budget.sigma_d2 * (w.adjoint() * w));
        bits += logdet_capacity(eff, q, budget.rho_d);
    }
    return bits / static_cast<double>(n_k);
}

double total_power_mw(ReceiverArch arch, int n_rx, int n_rf, const PowerModel& pm) {
    if (n_rx < 1 || n_rf < 1)
        throw std::invalid_argument("total_power_mw: counts must be >= 1");
    const double rf = pm.rf_chain_mw();
    if (arch == ReceiverArch::full_digital)
        return n_rx * (pm.lna_mw + rf + 2.0 * pm.adc_mw);
    return n_rx * (pm.lna_mw + pm.splitter_mw + n_rf * pm.phase_shifter_mw) +
           n_rf * (rf + pm.combiner_mw + 2.0 * pm.adc_mw);
}

double energy_efficiency(double se, ReceiverArch arch, int n_rx, int n_rf, const PowerModel& pm) {
    return se / (total_power_mw(arch, n_rx, n_rf, pm) * 1e-3);
}

double outage_probability(std::span<const double> se_samples, double rate) {
    if (se_samples.empty())
        throw std::invalid_argument("outage_probability: empty ensemble");
    const auto below = std::count_if(se_samples.begin(), se_samples.end(),
                                     [rate](double se) { return se < rate; });
    return static_cast<double>(below) / static_cast<double>(se_samples.size());
}

double epsilon_rate(std::span<const double> se_samples, double epsilon) {
    if (se_samples.empty())
        throw std::invalid_argument("epsilon_rate: empty ensemble");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon_rate: epsilon must be in (0, 1)");
    std::vector<double> sorted(se_samples.begin(), se_samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    auto idx = static_cast<std::size_t>(std::floor(epsilon * n));
    idx = std::min(idx, sorted.size() - 1);
    return sorted[idx];
}

std::vector<double> residual_si_power(const DigitalBeamformerSet& beams,
                                      const FrequencyChannel& h_s, const LinkBudget& budget) {
    const int n_k = h_s.n_subcarriers();
    if (n_k == 0 || beams.n_subcarriers() != n_k)
        throw std::invalid_argument("residual_si_power: subcarrier counts differ");
    std::vector<double> out(n_k);
    for (int k = 0; k < n_k; ++k) {
        const CMatrix leak = beams.w_bs[k].adjoint() * h_s.subcarriers[k] * beams.f_bs[k];
        out[k] = budget.rho_s * leak.squaredNorm();
    }
    return out;
}

} // namespace fdbf
