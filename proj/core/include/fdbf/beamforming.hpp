// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_BEAMFORMING_HPP
#define FDBF_BEAMFORMING_HPP

#include <vector>

#include "fdbf/channel.hpp"
#include "fdbf/linalg.hpp"
#include "fdbf/types.hpp"

namespace fdbf {

/// Iteration counts and dimensions for the beamformer designs.
struct SolverConfig {
    int n_outer = 10;
    int n_inner = 50;
    int n_streams = 2;
    int n_rf = 2;     // RF chains at the base station
    int n_rf_ue = 0;  // RF chains at the UEs; 0 derives min(n_rf, UE antennas)
};

/// Degenerate events encountered during a design. Counted, never hidden.
struct DesignEvents {
    long zf_infeasible = 0;     // requested streams exceeded the zero-forcing DoF
    long zero_phase_entries = 0; // zero entries hit by the unit-modulus projection
};

/// Per-subcarrier beamformers of the four link ends. Also used for composed
/// hybrid and analog-only baseline sets, whose columns are unit-norm but not
/// necessarily orthonormal.
struct DigitalBeamformerSet {
    std::vector<CMatrix> f_ue; // uplink UE precoders
    std::vector<CMatrix> w_bs; // BS combiners
    std::vector<CMatrix> f_bs; // BS precoders
    std::vector<CMatrix> w_ue; // downlink UE combiners

    int n_subcarriers() const { return static_cast<int>(w_bs.size()); }
};

struct FullDigitalResult {
    DigitalBeamformerSet beams;
    std::vector<double> residual_si; // ‖W_BS[k]* H_s[k] F_BS[k]‖_F per subcarrier
    DesignEvents events;
};

/// Frequency-flat analog factors plus per-subcarrier digital factors. The
/// composed set holds the products as they stood when each subcarrier was
/// processed (the analog factors keep evolving through the subcarrier loop).
struct HybridBeamformerSet {
    CMatrix f_rf_ue, w_rf_bs, f_rf_bs, w_rf_ue;
    std::vector<CMatrix> f_bb_ue, w_bb_bs, f_bb_bs, w_bb_ue;
    DigitalBeamformerSet composed;
};

struct HybridResult {
    HybridBeamformerSet beams;
    double analog_residual = 0.0;    // ‖W_rf* G_s F_rf‖_F at the final analog factors
    std::vector<double> residual_si; // composed per-subcarrier residual
    DesignEvents events;
};

/// Zero-forcing constrained subproblem: n dominant left singular vectors of
/// (I - C C†) A. Columns are orthonormal and annihilate C; if n exceeds the
/// available degrees of freedom the overflow columns are completed without
/// the constraint and the event is counted.
CMatrix baseband_zf(const CMatrix& a, const CMatrix& c, Index n, DesignEvents* events = nullptr);

/// Cyclic maximization over the four beamformers with a hard per-subcarrier
/// zero-forcing constraint on the self-interference channel.
FullDigitalResult full_digital_design(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                      const FrequencyChannel& h_s, const SolverConfig& cfg);

/// Alternating projection between the zero-forcing subspace of c and the
/// unit-modulus set, started from the dominant left singular vectors of a.
/// Output entries have exactly unit modulus.
CMatrix analog_alternating_projection(const CMatrix& a, const CMatrix& c, Index l, int n_inner,
                                      DesignEvents* events = nullptr);

/// Closed-form digital factor for a fixed analog factor: with
/// X_rf = U S V*, returns V S^{-1} Q where Q collects the n dominant left
/// singular vectors of U* A. The composed product X_rf X_bb has orthonormal
/// columns. Throws if x_rf is rank deficient.
CMatrix digital_factor(const CMatrix& x_rf, const CMatrix& a, Index n);

/// Two nested loops: outer zero-forcing cyclic maximization, inner
/// alternating projections for the analog factors of the base station. The
/// zero-forcing constraint is imposed on the analog factors against the
/// lowest-energy self-interference subcarrier only.
HybridResult hybrid_design(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                           const FrequencyChannel& h_s, const SolverConfig& cfg);

/// Analog-only reference designs. None of them reacts to self-interference.
/// Beam steering points one array response vector at the strongest ray of
/// each of the n_rf strongest clusters.
DigitalBeamformerSet baseline_beamsteering(const std::vector<Ray>& uplink_rays,
                                           const std::vector<Ray>& downlink_rays,
                                           const ClusterRaySpec& spec, const ArrayGeometry& ue,
                                           const ArrayGeometry& bs_tx, const ArrayGeometry& bs_rx,
                                           int n_subcarriers, const SolverConfig& cfg);

/// Entrywise phases of the dominant singular vectors of each link's
/// strongest subcarrier.
DigitalBeamformerSet baseline_svd(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                  const SolverConfig& cfg);

/// Exhaustive steering-angle search on a uniform grid, maximizing beamformed
/// channel gain on each link's strongest subcarrier. The search scores single
/// beams, so every RF column of a link end takes the winning angle.
DigitalBeamformerSet baseline_anglesearch(const FrequencyChannel& h_u, const FrequencyChannel& h_d,
                                          const ArrayGeometry& ue, const ArrayGeometry& bs_tx,
                                          const ArrayGeometry& bs_rx, const SolverConfig& cfg,
                                          double grid_step_deg = 2.0);

/// Interference-free waterline: (1/K) sum_k sum_{l<n_s}
/// log2(1 + snr/(K n_s) * sigma_l(H[k])^2).
double upper_bound_rate(const FrequencyChannel& h, double snr_linear, int n_streams);

} // namespace fdbf

#endif
