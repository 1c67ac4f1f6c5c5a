// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdbf/linalg.hpp"

namespace fdbf {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const ArrayGeometry& g, const char* who) {
    if (g.n_elements < 1)
        throw std::invalid_argument(std::string(who) + ": n_elements must be >= 1");
    if (!(g.spacing_over_lambda > 0.0))
        throw std::invalid_argument(std::string(who) + ": spacing must be positive");
}

void validate(const ClusterRaySpec& s) {
    if (s.n_clusters < 1 || s.rays_per_cluster < 1 || s.n_taps < 1)
        throw std::invalid_argument("ClusterRaySpec: counts must be >= 1");
    if (s.rolloff < 0.0 || s.rolloff > 1.0)
        throw std::invalid_argument("ClusterRaySpec: rolloff must be in [0, 1]");
    if (s.angular_spread_deg < 0.0)
        throw std::invalid_argument("ClusterRaySpec: angular spread must be >= 0");
    if (!(s.symbol_interval > 0.0))
        throw std::invalid_argument("ClusterRaySpec: symbol interval must be positive");
}

double sinc(double x) {
    if (x == 0.0)
        return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

} // namespace

CVector array_response(const ArrayGeometry& geom, double theta) {
    validate(geom, "array_response");
    const int n = geom.n_elements;
    CVector a(n);
    const double phase_step = 2.0 * kPi * geom.spacing_over_lambda * std::sin(theta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        const double ang = phase_step * i;
        a(i) = scale * cxd(std::cos(ang), std::sin(ang));
    }
    return a;
}

double raised_cosine(double t, double rolloff) {
    if (rolloff < 0.0 || rolloff > 1.0)
        throw std::invalid_argument("raised_cosine: rolloff must be in [0, 1]");
    if (t == 0.0)
        return 1.0;
    if (rolloff == 0.0)
        return sinc(t);
    const double two_bt = 2.0 * rolloff * std::abs(t);
    if (std::abs(two_bt - 1.0) < 1e-9) {
        // limit at |t| = 1/(2 beta)
        return kPi / 4.0 * sinc(1.0 / (2.0 * rolloff));
    }
    return sinc(t) * std::cos(kPi * rolloff * t) / (1.0 - two_bt * two_bt);
}

std::vector<Ray> draw_cluster_rays(const ClusterRaySpec& spec, Rng& rng) {
    validate(spec);
    const double spread = spec.angular_spread_deg * kPi / 180.0;
    const double delay_window = (spec.n_taps - 1) * spec.symbol_interval;
    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(spec.n_clusters) * spec.rays_per_cluster);
    for (int c = 0; c < spec.n_clusters; ++c) {
        const double aoa_c = rng.uniform(0.0, 2.0 * kPi);
        const double aod_c = rng.uniform(0.0, 2.0 * kPi);
        const double tau_c = delay_window > 0.0 ? rng.uniform(0.0, delay_window) : 0.0;
        for (int r = 0; r < spec.rays_per_cluster; ++r) {
            Ray ray;
            ray.aoa = aoa_c + rng.uniform(-spread / 2.0, spread / 2.0);
            ray.aod = aod_c + rng.uniform(-spread / 2.0, spread / 2.0);
            ray.delay = tau_c + rng.uniform(0.0, spec.symbol_interval);
            ray.gain = rng.cgaussian();
            ray.cluster = c;
            rays.push_back(ray);
        }
    }
    return rays;
}

double expected_pulse_energy(const ClusterRaySpec& spec) {
    // E_tau[ sum_l p(l - tau)^2 ] with tau = tau_c + tau_r,
    // tau_c ~ U[0, L-1], tau_r ~ U[0, 1] in symbol units.
    // Tensor-product Gauss-Legendre quadrature, 64 nodes per axis.
    static const int kNodes = 64;
    static thread_local std::vector<double> x, w;
    if (x.empty()) {
        // Golub-Welsch via Newton iteration on Legendre polynomials
        x.resize(kNodes);
        w.resize(kNodes);
        for (int i = 0; i < kNodes; ++i) {
            double xi = std::cos(kPi * (i + 0.75) / (kNodes + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int n = 2; n <= kNodes; ++n) {
                    const double p2 = ((2.0 * n - 1.0) * xi * p1 - (n - 1.0) * p0) / n;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = kNodes * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-15)
                    break;
            }
            double p0 = 1.0, p1 = xi;
            for (int n = 2; n <= kNodes; ++n) {
                const double p2 = ((2.0 * n - 1.0) * xi * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            const double dp = kNodes * (xi * p1 - p0) / (xi * xi - 1.0);
            x[i] = xi;
            w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }

    const int taps = spec.n_taps;
    const double window = static_cast<double>(taps - 1);
    auto tap_sum = [&](double tau) {
        double acc = 0.0;
        for (int l = 0; l < taps; ++l) {
            const double p = raised_cosine(static_cast<double>(l) - tau, spec.rolloff);
            acc += p * p;
        }
        return acc;
    };

    double total = 0.0;
    if (window > 0.0) {
        for (int i = 0; i < kNodes; ++i) {
            const double tc = 0.5 * window * (x[i] + 1.0);
            for (int j = 0; j < kNodes; ++j) {
                const double tr = 0.5 * (x[j] + 1.0);
                total += 0.25 * w[i] * w[j] * tap_sum(tc + tr);
            }
        }
    } else {
        for (int j = 0; j < kNodes; ++j) {
            const double tr = 0.5 * (x[j] + 1.0);
            total += 0.5 * w[j] * tap_sum(tr);
        }
    }
    return total;
}

TimeDomainChannel synth_from_rays(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                  const ClusterRaySpec& spec, const std::vector<Ray>& rays) {
    validate(tx, "synth_from_rays tx");
    validate(rx, "synth_from_rays rx");
    validate(spec);
    if (rays.empty())
        throw std::invalid_argument("synth_from_rays: no rays");

    const int n_rx = rx.n_elements, n_tx = tx.n_elements;
    const double gamma = static_cast<double>(rays.size()) * expected_pulse_energy(spec);
    const double scale = std::sqrt(static_cast<double>(n_rx) * n_tx / gamma);

    TimeDomainChannel td;
    td.taps.assign(spec.n_taps, CMatrix::Zero(n_rx, n_tx));
    for (const Ray& ray : rays) {
        const CVector a_rx = array_response(rx, ray.aoa);
        const CVector a_tx = array_response(tx, ray.aod);
        const CMatrix outer = a_rx * a_tx.adjoint();
        for (int l = 0; l < spec.n_taps; ++l) {
            const double p = raised_cosine(l * spec.symbol_interval - ray.delay, spec.rolloff);
            if (p != 0.0)
                td.taps[l] += (scale * ray.gain * p) * outer;
        }
    }
    return td;
}

TimeDomainChannel synth_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                const ClusterRaySpec& spec, Rng& rng) {
    return synth_from_rays(tx, rx, spec, draw_cluster_rays(spec, rng));
}

CMatrix si_los_matrix(const ArrayGeometry& tx, const ArrayGeometry& rx, const SiGeometry& geom) {
    validate(tx, "si_los_matrix tx");
    validate(rx, "si_los_matrix rx");
    if (!(geom.distance_over_lambda > 0.0))
        throw std::invalid_argument("si_los_matrix: array separation must be positive");

    // All coordinates in wavelengths. Receive element q at (q d, 0); transmit
    // element p at (0, -D) + p d (cos a, -sin a). The spherical wavefront is
    // captured by the exact per-pair distances.
    const int n_rx = rx.n_elements, n_tx = tx.n_elements;
    const double d_rx = rx.spacing_over_lambda, d_tx = tx.spacing_over_lambda;
    const double ca = std::cos(geom.angle_between_arrays);
    const double sa = std::sin(geom.angle_between_arrays);
    CMatrix h(n_rx, n_tx);
    for (int q = 0; q < n_rx; ++q) {
        const double rx_x = q * d_rx, rx_y = 0.0;
        for (int p = 0; p < n_tx; ++p) {
            const double tx_x = p * d_tx * ca;
            const double tx_y = -geom.distance_over_lambda - p * d_tx * sa;
            const double dist = std::hypot(rx_x - tx_x, rx_y - tx_y);
            const double ang = -2.0 * kPi * dist;
            h(q, p) = cxd(std::cos(ang), std::sin(ang)) / dist;
        }
    }
    if (geom.normalize_los) {
        const double target = std::sqrt(static_cast<double>(n_rx) * n_tx);
        h *= target / h.norm();
    }
    return h;
}

TimeDomainChannel synth_si_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                   const SiGeometry& geom, const ClusterRaySpec& spec, Rng& rng) {
    if (geom.rician_kappa < 0.0)
        throw std::invalid_argument("synth_si_channel: Rician factor must be >= 0");
    const CMatrix h_los = si_los_matrix(tx, rx, geom);
    const TimeDomainChannel nlos = synth_channel(tx, rx, spec, rng);
    const double w_los = std::sqrt(geom.rician_kappa / (geom.rician_kappa + 1.0));
    const double w_nlos = std::sqrt(1.0 / (geom.rician_kappa + 1.0));

    TimeDomainChannel td;
    td.taps.reserve(nlos.taps.size());
    for (std::size_t l = 0; l < nlos.taps.size(); ++l) {
        CMatrix tap = w_nlos * nlos.taps[l];
        if (geom.los_every_tap || l == 0)
            tap += w_los * h_los;
        td.taps.push_back(std::move(tap));
    }
    return td;
}

FrequencyChannel to_frequency(const TimeDomainChannel& td, int n_subcarriers) {
    if (td.taps.empty())
        throw std::invalid_argument("to_frequency: empty channel");
    if (n_subcarriers < static_cast<int>(td.taps.size()))
        throw std::invalid_argument("to_frequency: need K >= L (delay spread must fit the CP)");
    FrequencyChannel f;
    f.subcarriers.reserve(n_subcarriers);
    for (int k = 0; k < n_subcarriers; ++k)
        f.subcarriers.push_back(dft_taps(td.taps, k, n_subcarriers));
    return f;
}

} // namespace fdbf
