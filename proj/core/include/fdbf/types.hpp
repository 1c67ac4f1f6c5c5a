// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_TYPES_HPP
#define FDBF_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace fdbf {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical tolerances used across the library. Exposed read-only so tests
/// can assert against the exact constants the implementation applies.
namespace tol {
inline constexpr double svd_unitary = 1e-10;        // ‖U*U - I‖_F bound
inline constexpr double svd_reconstruction = 1e-8;  // relative reconstruction
inline constexpr double pinv_rank_rtol = 1e-10;     // singular value cutoff, relative to max
inline constexpr double projector = 1e-8;           // idempotence / annihilation
inline constexpr double orthonormal_columns = 1e-8; // digital beamformer constraint
inline constexpr double composed_orthonormal = 1e-6;// hybrid composed constraint
inline constexpr double unit_modulus = 1e-12;       // analog entry modulus
inline constexpr double noise_cov_floor = 1e-12;    // trace-relative diagonal loading
}

inline bool is_finite(const CMatrix& a) {
    return a.allFinite();
}

inline double frob(const CMatrix& a) {
    return a.norm();
}

} // namespace fdbf

#endif
