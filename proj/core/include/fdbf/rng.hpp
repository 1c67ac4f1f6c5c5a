// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_RNG_HPP
#define FDBF_RNG_HPP

#include <cstdint>
#include <random>

#include "fdbf/types.hpp"

namespace fdbf {

/// Deterministic random stream. The engine is std::mt19937_64 (fully specified
/// by the standard); uniform and Gaussian transforms are implemented here
/// rather than via std distributions, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Stream for one Monte Carlo trial, decorrelated from (master, point,
    /// trial) by splitmix64 rounds. Trials can be generated in any order.
    static Rng for_trial(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
        std::uint64_t x = splitmix(master ^ 0x8000000000000001ULL);
        x = splitmix(x + 0x9E3779B97F4A7C15ULL * (point + 1));
        x = splitmix(x + 0xC2B2AE3D27D4EB4FULL * (trial + 1));
        return Rng(x);
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached so consumption order stays deterministic.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly-symmetric complex Gaussian, unit variance.
    cxd cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cxd(re * 0.7071067811865475244, im * 0.7071067811865475244);
    }

    std::uint64_t raw() { return eng_(); }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace fdbf

#endif
