// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "fdbf/metrics.hpp"
#include "fdbf/rng.hpp"

using namespace fdbf;

namespace {

CMatrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = rng.cgaussian();
    return m;
}

FrequencyChannel random_channel(Index rows, Index cols, int n_k, std::uint64_t seed) {
    FrequencyChannel h;
    for (int k = 0; k < n_k; ++k)
        h.subcarriers.push_back(random_matrix(rows, cols, seed + 1000 * k));
    return h;
}

DigitalBeamformerSet orthonormal_beams(Index bs, Index ue, Index n_s, int n_k,
                                       std::uint64_t seed) {
    DigitalBeamformerSet set;
    for (int k = 0; k < n_k; ++k) {
        set.f_ue.push_back(left_singular_basis(random_matrix(ue, n_s, seed + 10 * k), n_s));
        set.w_bs.push_back(left_singular_basis(random_matrix(bs, n_s, seed + 10 * k + 1), n_s));
        set.f_bs.push_back(left_singular_basis(random_matrix(bs, n_s, seed + 10 * k + 2), n_s));
        set.w_ue.push_back(left_singular_basis(random_matrix(ue, n_s, seed + 10 * k + 3), n_s));
    }
    return set;
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("uplink rate without interference reduces to the logdet kernel") {
    const int n_k = 2;
    const DigitalBeamformerSet beams = orthonormal_beams(8, 4, 2, n_k, 3);
    const FrequencyChannel h_u = random_channel(8, 4, n_k, 11);
    const FrequencyChannel h_s = random_channel(8, 8, n_k, 13);
    LinkBudget b;
    b.rho_u = 0.8;
    b.rho_s = 0.0;
    const double got = uplink_rate(beams, h_u, h_s, b);
    double want = 0.0;
    for (int k = 0; k < n_k; ++k) {
        const CMatrix eff = beams.w_bs[k].adjoint() * h_u.subcarriers[k] * beams.f_ue[k];
        want += logdet_capacity(eff, CMatrix::Identity(2, 2), b.rho_u);
    }
    CHECK(got == doctest::Approx(want / n_k).epsilon(1e-9));
}

TEST_CASE("nulled interference matches the interference-free value") {
    const int n_k = 2;
    DigitalBeamformerSet beams = orthonormal_beams(8, 4, 2, n_k, 5);
    FrequencyChannel h_s;
    // interference channel whose beamformed product is exactly zero:
    // H_s = (I - W W*) X (I - F F*)
    for (int k = 0; k < n_k; ++k) {
        const CMatrix x = random_matrix(8, 8, 17 + k);
        const CMatrix pw =
            CMatrix::Identity(8, 8) - beams.w_bs[k] * beams.w_bs[k].adjoint();
        const CMatrix pf =
            CMatrix::Identity(8, 8) - beams.f_bs[k] * beams.f_bs[k].adjoint();
        h_s.subcarriers.push_back(pw * x * pf);
    }
    const FrequencyChannel h_u = random_channel(8, 4, n_k, 19);
    LinkBudget strong;
    strong.rho_u = 0.8;
    strong.rho_s = 1e12;
    LinkBudget off = strong;
    off.rho_s = 0.0;
    CHECK(uplink_rate(beams, h_u, h_s, strong) ==
          doctest::Approx(uplink_rate(beams, h_u, h_s, off)).epsilon(1e-6));
}

TEST_CASE("zero-forced designs beat naive beams under strong interference") {
    // paired comparison on one seeded draw
    const int n_k = 2;
    const FrequencyChannel h_u = random_channel(16, 4, n_k, 23);
    const FrequencyChannel h_d = random_channel(4, 16, n_k, 29);
    const FrequencyChannel h_s = random_channel(16, 16, n_k, 31);
    SolverConfig cfg;
    cfg.n_streams = 2;
    cfg.n_rf = 2;
    const FullDigitalResult r = full_digital_design(h_u, h_d, h_s, cfg);

    DigitalBeamformerSet naive;
    for (int k = 0; k < n_k; ++k) {
        naive.f_ue.push_back(CMatrix::Identity(4, 2));
        naive.w_bs.push_back(CMatrix::Identity(16, 2));
        naive.f_bs.push_back(CMatrix::Identity(16, 2));
        naive.w_ue.push_back(CMatrix::Identity(4, 2));
    }
    LinkBudget b;
    b.rho_u = 0.25;
    b.rho_s = 0.25 * 1e12;
    CHECK(uplink_rate(r.beams, h_u, h_s, b) > uplink_rate(naive, h_u, h_s, b));
}

TEST_CASE("downlink with identity channel at unit per-stream SNR") {
    const int n_k = 4;
    DigitalBeamformerSet beams;
    FrequencyChannel h_d;
    for (int k = 0; k < n_k; ++k) {
        beams.f_ue.push_back(CMatrix::Identity(2, 2));
        beams.w_bs.push_back(CMatrix::Identity(2, 2));
        beams.f_bs.push_back(CMatrix::Identity(2, 2));
        beams.w_ue.push_back(CMatrix::Identity(2, 2));
        h_d.subcarriers.push_back(CMatrix::Identity(2, 2));
    }
    LinkBudget b;
    b.rho_d = 1.0;
    CHECK(downlink_rate(beams, h_d, b) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("downlink through exact SVD factors equals the upper bound") {
    const int n_k = 4;
    const FrequencyChannel h_d = random_channel(4, 8, n_k, 37);
    DigitalBeamformerSet beams;
    for (int k = 0; k < n_k; ++k) {
        const SvdResult dec = svd(h_d.subcarriers[k]);
        beams.w_ue.push_back(dec.u.leftCols(2));
        beams.f_bs.push_back(dec.v.leftCols(2));
        beams.f_ue.push_back(CMatrix::Identity(8, 2));
        beams.w_bs.push_back(CMatrix::Identity(4, 2));
    }
    LinkBudget b;
    b.rho_d = 0.6;
    const double got = downlink_rate(beams, h_d, b);
    const double want = upper_bound_rate(h_d, b.rho_d * n_k * 2, 2);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("uplink without interference matches the downlink formula by symmetry") {
    const int n_k = 2;
    const FrequencyChannel h = random_channel(8, 4, n_k, 41);
    DigitalBeamformerSet as_uplink = orthonormal_beams(8, 4, 2, n_k, 43);
    DigitalBeamformerSet as_downlink;
    FrequencyChannel h_t;
    for (int k = 0; k < n_k; ++k) {
        as_downlink.w_ue.push_back(as_uplink.w_bs[k]);
        as_downlink.f_bs.push_back(as_uplink.f_ue[k]);
        as_downlink.f_ue.push_back(as_uplink.f_ue[k]);
        as_downlink.w_bs.push_back(as_uplink.w_bs[k]);
        h_t.subcarriers.push_back(h.subcarriers[k]);
    }
    LinkBudget b;
    b.rho_u = b.rho_d = 0.9;
    b.rho_s = 0.0;
    const FrequencyChannel h_s = random_channel(8, 8, n_k, 47);
    CHECK(uplink_rate(as_uplink, h, h_s, b) ==
          doctest::Approx(downlink_rate(as_downlink, h_t, b)).epsilon(1e-12));
}

TEST_CASE("power totals match hand arithmetic") {
    PowerModel pm;
    pm.adc_mw = 250.0;
    CHECK(std::abs(total_power_mw(ReceiverArch::full_digital, 16, 1, pm) - 9276.8) <=
          1e-12 * 9276.8);
    CHECK(std::abs(total_power_mw(ReceiverArch::hybrid, 16, 2, pm) - 2120.6) <= 1e-12 * 2120.6);
    CHECK(energy_efficiency(0.0, ReceiverArch::hybrid, 16, 2, pm) == 0.0);
    // strictly decreasing in the converter draw at fixed spectral efficiency
    PowerModel more = pm;
    more.adc_mw = 400.0;
    CHECK(energy_efficiency(5.0, ReceiverArch::hybrid, 16, 2, more) <
          energy_efficiency(5.0, ReceiverArch::hybrid, 16, 2, pm));
    CHECK_THROWS_AS(total_power_mw(ReceiverArch::hybrid, 0, 1, pm), std::invalid_argument);
}

TEST_CASE("outage probability on degenerate and seeded ensembles") {
    const std::vector<double> flat(32, 3.0);
    CHECK(outage_probability(flat, 2.9) == 0.0);
    CHECK(outage_probability(flat, 3.1) == 1.0);
    CHECK(outage_probability(flat, 0.0) == 0.0);

    Rng rng(51);
    std::vector<double> se(500);
    for (double& x : se)
        x = rng.uniform(0.0, 10.0);
    const double target = 4.0;
    int count = 0;
    for (double x : se)
        if (x < target)
            ++count;
    CHECK(outage_probability(se, target) ==
          doctest::Approx(static_cast<double>(count) / 500.0));
}

TEST_CASE("epsilon rate edge cases and order-statistics oracle") {
    std::vector<double> five{5.0, 1.0, 4.0, 2.0, 3.0};
    CHECK(epsilon_rate(five, 0.199) == 1.0); // just below 1/N: the minimum
    const std::vector<double> flat(10, 6.5);
    CHECK(epsilon_rate(flat, 0.3) == 6.5);

    Rng rng(53);
    std::vector<double> se(1000);
    for (double& x : se)
        x = rng.gaussian();
    std::vector<double> sorted = se;
    std::sort(sorted.begin(), sorted.end());
    CHECK(epsilon_rate(se, 0.1) == sorted[100]);

    // non-decreasing in epsilon
    double prev = -1e300;
    for (double eps : {0.05, 0.1, 0.2, 0.5, 0.9}) {
        const double r = epsilon_rate(se, eps);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK_THROWS_AS(epsilon_rate(se, 0.0), std::invalid_argument);
}

TEST_CASE("zero-forced design keeps leaked interference below the noise floor") {
    const int n_k = 2;
    const FrequencyChannel h_u = random_channel(16, 4, n_k, 61);
    const FrequencyChannel h_d = random_channel(4, 16, n_k, 67);
    const FrequencyChannel h_s = random_channel(16, 16, n_k, 71);
    SolverConfig cfg;
    cfg.n_streams = 2;
    cfg.n_rf = 2;
    const FullDigitalResult r = full_digital_design(h_u, h_d, h_s, cfg);
    LinkBudget b;
    b.rho_u = 0.6;
    b.rho_s = b.rho_u * 1e12; // interference 120 dB above the signal
    for (double leaked : residual_si_power(r.beams, h_s, b))
        CHECK(leaked / b.sigma_u2 < 1.0);
}

TEST_CASE("residual interference power oracle") {
    const int n_k = 2;
    const FrequencyChannel h_s = random_channel(8, 8, n_k, 59);
    DigitalBeamformerSet ident;
    for (int k = 0; k < n_k; ++k) {
        ident.f_ue.push_back(CMatrix::Identity(4, 2));
        ident.w_bs.push_back(CMatrix::Identity(8, 2));
        ident.f_bs.push_back(CMatrix::Identity(8, 2));
        ident.w_ue.push_back(CMatrix::Identity(4, 2));
    }
    LinkBudget b;
    b.rho_s = 2.5;
    const std::vector<double> got = residual_si_power(ident, h_s, b);
    for (int k = 0; k < n_k; ++k) {
        const double want = b.rho_s * h_s.subcarriers[k].topLeftCorner(2, 2).squaredNorm();
        CHECK(got[k] == doctest::Approx(want).epsilon(1e-12));
    }
}

} // TEST_SUITE
