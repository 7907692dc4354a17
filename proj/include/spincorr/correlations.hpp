#pragma once

#include <array>

#include "spincorr/models.hpp"

// Model-agnostic correlation measures for two-qubit states: von Neumann
// entropy, mutual information, the local measurement induced by the marginal
// eigenbases, measurement-induced disturbance, and Wootters concurrence.
// All quantities involving logarithms are in bits (base 2).
namespace spincorr::correlations {

using models::DensityMatrix;

/// Complete pair of rank-1 orthogonal 2x2 projectors per party.
/// Construction validates rank, orthogonality and completeness to 1e-12.
struct ProjectiveMeasurement {
    ProjectiveMeasurement(std::array<linalg::ComplexMatrix, 2> pa,
                          std::array<linalg::ComplexMatrix, 2> pb);

    std::array<linalg::ComplexMatrix, 2> projectors_a;
    std::array<linalg::ComplexMatrix, 2> projectors_b;
};

/// S(rho) = -tr rho log2 rho, with 0 log 0 = 0. Eigenvalues in [-1e-12, 0)
/// are treated as 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// I(rho) = S(rho_a) + S(rho_b) - S(rho) for a 4x4 state.
double mutual_information(const DensityMatrix& rho);

/// Measurement whose projectors are eigenprojectors of the two marginals.
/// A degenerate marginal (eigenvalue gap < 1e-10) yields computational-basis
/// projectors, which pins the otherwise ambiguous basis choice.
ProjectiveMeasurement induced_measurement(const DensityMatrix& rho);

/// Sum_ij (Pa_i x Pb_j) rho (Pa_i x Pb_j). Leaves both marginals invariant
/// when the measurement is the induced one.
DensityMatrix apply_measurement(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// Measurement-induced disturbance Q = I(rho) - I(measured rho), clamped to
/// 0 when within -1e-10 of it.
double mid(const DensityMatrix& rho);

/// Wootters concurrence in [0, 1]. The spin-flip spectrum {lambda_i} is
/// obtained as the singular values of S conj(sqrt(rho)) S sqrt(rho) with
/// S = sigma_y x sigma_y, which equals the usual square roots of the
/// eigenvalues of rho S rho* S without squaring away the small ones.
double concurrence(const DensityMatrix& rho);

/// Everything the sweep engine needs for one parameter point.
struct CorrelationReport {
    double log_z;
    double s_rho;
    double s_a;
    double s_b;
    double i_rho;
    double i_measured;
    double q;
    double c;
};

CorrelationReport correlation_report(const models::ThermalPoint& point);

}  // namespace spincorr::correlations
