// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_LINALG_HPP
#define FDBF_LINALG_HPP

#include <span>
#include <vector>

#include "fdbf/types.hpp"

namespace fdbf {

/// Thin singular value decomposition A = U diag(S) V* with a fixed phase
/// convention: the first above-threshold entry of every U column is rotated to
/// be real and positive (V follows), so repeated runs are bit-identical.
struct SvdResult {
    CMatrix u;  // orthonormal columns, rows(a) x r
    RVector s;  // non-increasing, length r = min(rows, cols)
    CMatrix v;  // orthonormal columns, cols(a) x r
};

SvdResult svd(const CMatrix& a);

/// First n columns of the phase-fixed U factor. Requires n <= min(rows, cols);
/// n may exceed the numerical rank, in which case trailing columns span the
/// null space deterministically.
CMatrix dominant_left_singular_vectors(const CMatrix& a, Index n);

/// Like dominant_left_singular_vectors but allows n up to rows(a): columns
/// beyond min(rows, cols) are completed deterministically from canonical basis
/// vectors orthogonalized against everything already chosen. `avoid`, when
/// non-empty, is an additional set of directions the completed columns must be
/// orthogonal to (used to keep zero-forcing exact in rank-deficient cases).
CMatrix left_singular_basis(const CMatrix& a, Index n, const CMatrix& avoid = CMatrix());

/// Moore-Penrose pseudo-inverse. Singular values below
/// tol::pinv_rank_rtol * max(S) are treated as zero.
CMatrix pseudo_inverse(const CMatrix& c);

/// Orthogonal projector onto the complement of the column space of c:
/// P = I - C C†. Requires cols(c) < rows(c).
CMatrix null_projector(const CMatrix& c);

/// log2 det(I + power_scale * E Q^{-1} E*) for an effective channel E and a
/// Hermitian positive definite noise covariance Q, computed via Cholesky
/// whitening followed by an SVD of the whitened matrix. Throws if Q is not
/// positive definite.
double logdet_capacity(const CMatrix& effective, const CMatrix& noise_cov, double power_scale);

/// k-th subcarrier of an L-tap matrix channel:
/// sum_l taps[l] * exp(-j 2 pi k l / K). Requires 0 <= k < K and L <= K.
CMatrix dft_taps(std::span<const CMatrix> taps, int k, int n_subcarriers);

} // namespace fdbf

#endif
