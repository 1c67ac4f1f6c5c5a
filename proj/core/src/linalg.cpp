// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdbf {

namespace {

void require_finite(const CMatrix& a, const char* who) {
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument(std::string(who) + ": empty matrix");
    if (!is_finite(a))
        throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

// Rotate each column of u so its first significant entry is real-positive,
// applying the conjugate rotation to v to preserve the product u diag(s) v*.
void fix_phases(CMatrix& u, CMatrix& v) {
    for (Index j = 0; j < u.cols(); ++j) {
        const double colmax = u.col(j).cwiseAbs().maxCoeff();
        if (colmax <= 0.0)
            continue;
        Index pivot = 0;
        for (Index i = 0; i < u.rows(); ++i) {
            if (std::abs(u(i, j)) > 1e-12 * colmax) {
                pivot = i;
                break;
            }
        }
        const cxd p = u(pivot, j);
        const double mag = std::abs(p);
        if (mag == 0.0)
            continue;
        const cxd rot = std::conj(p) / mag;
        u.col(j) *= rot;
        if (j < v.cols())
            v.col(j) *= rot;
    }
}

} // namespace

SvdResult svd(const CMatrix& a) {
    require_finite(a, "svd");
    Eigen::JacobiSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    fix_phases(out.u, out.v);
    return out;
}

CMatrix dominant_left_singular_vectors(const CMatrix& a, Index n) {
    require_finite(a, "dominant_left_singular_vectors");
    if (n < 1 || n > std::min(a.rows(), a.cols()))
        throw std::invalid_argument("dominant_left_singular_vectors: n out of range");
    return svd(a).u.leftCols(n);
}

CMatrix left_singular_basis(const CMatrix& a, Index n, const CMatrix& avoid) {
    require_finite(a, "left_singular_basis");
    if (n < 1 || n > a.rows())
        throw std::invalid_argument("left_singular_basis: n out of range");

    const SvdResult dec = svd(a);
    const double smax = dec.s.size() ? dec.s(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < dec.s.size(); ++i)
        if (dec.s(i) > tol::pinv_rank_rtol * smax)
            ++rank;

    const Index keep = std::min(n, rank);
    CMatrix basis(a.rows(), n);
    basis.leftCols(keep) = dec.u.leftCols(keep);

    if (keep == n)
        return basis;

    // Deterministic completion: sweep canonical basis vectors, reject what is
    // already spanned by the kept columns or the avoid set.
    CMatrix avoid_basis;
    if (avoid.size() > 0 && frob(avoid) > 0.0) {
        const SvdResult av = svd(avoid);
        Index arank = 0;
        const double amax = av.s(0);
        for (Index i = 0; i < av.s.size(); ++i)
            if (av.s(i) > tol::pinv_rank_rtol * amax)
                ++arank;
        avoid_basis = av.u.leftCols(arank);
    }

    Index filled = keep;
    for (Index e = 0; e < a.rows() && filled < n; ++e) {
        CVector cand = CVector::Zero(a.rows());
        cand(e) = 1.0;
        cand -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * cand);
        if (avoid_basis.size() > 0)
            cand -= avoid_basis * (avoid_basis.adjoint() * cand);
        const double nrm = cand.norm();
        if (nrm < 1e-8)
            continue;
        // second orthogonalization pass for numerical cleanliness
        cand /= nrm;
        cand -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * cand);
        if (avoid_basis.size() > 0)
            cand -= avoid_basis * (avoid_basis.adjoint() * cand);
        basis.col(filled) = cand / cand.norm();
        ++filled;
    }
    if (filled < n)
        throw std::runtime_error("left_singular_basis: cannot complete basis within constraints");
    return basis;
}

CMatrix pseudo_inverse(const CMatrix& c) {
    require_finite(c, "pseudo_inverse");
    const SvdResult dec = svd(c);
    const double smax = dec.s.size() ? dec.s(0) : 0.0;
    RVector sinv = RVector::Zero(dec.s.size());
    for (Index i = 0; i < dec.s.size(); ++i)
        if (smax > 0.0 && dec.s(i) > tol::pinv_rank_rtol * smax)
            sinv(i) = 1.0 / dec.s(i);
    return dec.v * sinv.asDiagonal() * dec.u.adjoint();
}

CMatrix null_projector(const CMatrix& c) {
    require_finite(c, "null_projector");
    if (c.cols() >= c.rows())
        throw std::invalid_argument("null_projector: need cols < rows");
    CMatrix p = CMatrix::Identity(c.rows(), c.rows()) - c * pseudo_inverse(c);
    p = 0.5 * (p + p.adjoint().eval());
    return p;
}

double logdet_capacity(const CMatrix& effective, const CMatrix& noise_cov, double power_scale) {
    require_finite(effective, "logdet_capacity");
    require_finite(noise_cov, "logdet_capacity");
    if (noise_cov.rows() != noise_cov.cols())
        throw std::invalid_argument("logdet_capacity: noise covariance must be square");
    if (effective.cols() != noise_cov.rows())
        throw std::invalid_argument("logdet_capacity: dimension mismatch");
    if (power_scale < 0.0)
        throw std::invalid_argument("logdet_capacity: negative power scale");
    const double herm_dev = (noise_cov - noise_cov.adjoint()).norm();
    if (herm_dev > 1e-9 * std::max(1.0, noise_cov.norm()))
        throw std::invalid_argument("logdet_capacity: noise covariance not Hermitian");

    Eigen::LLT<CMatrix> llt(0.5 * (noise_cov + noise_cov.adjoint()));
    if (llt.info() != Eigen::Success)
        throw std::domain_error("logdet_capacity: noise covariance not positive definite");

    // E Q^{-1} E* = B* B with B = L^{-1} E*; singular values of B give the
    // eigenvalues of the capacity argument.
    CMatrix b = llt.matrixL().solve(effective.adjoint());
    Eigen::JacobiSVD<CMatrix> dec(b);
    double bits = 0.0;
    for (Index i = 0; i < dec.singularValues().size(); ++i) {
        const double s2 = dec.singularValues()(i) * dec.singularValues()(i);
        bits += std::log2(1.0 + power_scale * s2);
    }
    return bits;
}

CMatrix dft_taps(std::span<const CMatrix> taps, int k, int n_subcarriers) {
    if (taps.empty())
        throw std::invalid_argument("dft_taps: no taps");
    if (n_subcarriers < 1 || k < 0 || k >= n_subcarriers)
        throw std::invalid_argument("dft_taps: subcarrier index out of range");
    if (static_cast<int>(taps.size()) > n_subcarriers)
        throw std::invalid_argument("dft_taps: more taps than subcarriers");
    const Index rows = taps[0].rows(), cols = taps[0].cols();
    CMatrix acc = CMatrix::Zero(rows, cols);
    for (std::size_t l = 0; l < taps.size(); ++l) {
        if (taps[l].rows() != rows || taps[l].cols() != cols)
            throw std::invalid_argument("dft_taps: tap dimension mismatch");
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                           static_cast<double>(l) / static_cast<double>(n_subcarriers);
        acc += taps[l] * cxd(std::cos(ang), std::sin(ang));
    }
    return acc;
}

} // namespace fdbf
