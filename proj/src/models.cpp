#include "spincorr/models.hpp"

#include <cmath>

namespace spincorr::models {

using linalg::ComplexMatrix;
using linalg::cplx;

void validate(const HamiltonianSpec& spec) {
    if (const auto* xxz = std::get_if<XxzSpec>(&spec)) {
        if (!std::isfinite(xxz->J) || !std::isfinite(xxz->Jz) ||
            !std::isfinite(xxz->B) || !std::isfinite(xxz->b))
            throw InvalidSpec("xxz parameters must be finite");
        if (xxz->B < 0.0)
            throw InvalidSpec("xxz uniform field B must be >= 0");
    } else {
        const auto& dm = std::get<XxxDmSpec>(spec);
        if (!std::isfinite(dm.J) || !std::isfinite(dm.D))
            throw InvalidSpec("xxx-dm parameters must be finite");
    }
}

DensityMatrix::DensityMatrix(linalg::ComplexMatrix m) : mat_(m) {
    if (mat_.dim() != 2 && mat_.dim() != 4)
        throw InvalidDimension("density matrix dimension must be 2 or 4");
    if (linalg::hermiticity_defect(mat_) > 1e-12)
        throw InvalidState("density matrix is not Hermitian within 1e-12");
    if (std::abs(linalg::trace(mat_) - cplx(1.0, 0.0)) > 1e-12)
        throw InvalidState("density matrix trace is not 1 within 1e-12");
    const auto e = linalg::eigh(mat_);
    if (e.eigenvalues[0] < -1e-12)
        throw InvalidState("density matrix has an eigenvalue below -1e-12");
}

ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec) {
    validate(spec);
    ComplexMatrix h(4);
    if (const auto* xxz = std::get_if<XxzSpec>(&spec)) {
        h(0, 0) = 0.5 * xxz->Jz + xxz->B;
        h(1, 1) = -0.5 * xxz->Jz + xxz->b;
        h(2, 2) = -0.5 * xxz->Jz - xxz->b;
        h(3, 3) = 0.5 * xxz->Jz - xxz->B;
        h(1, 2) = xxz->J;
        h(2, 1) = xxz->J;
    } else {
        const auto& dm = std::get<XxxDmSpec>(spec);
        h(0, 0) = 0.5 * dm.J;
        h(1, 1) = -0.5 * dm.J;
        h(2, 2) = -0.5 * dm.J;
        h(3, 3) = 0.5 * dm.J;
        h(1, 2) = dm.J * cplx(1.0, dm.D);
        h(2, 1) = dm.J * cplx(1.0, -dm.D);
    }
    return h;
}

ThermalState thermal_state(const ThermalPoint& point) {
    const double t = point.temperature;
    if (!std::isfinite(t) || t <= 0.0)
        throw InvalidTemperature("temperature must be positive and finite");

    const auto e = linalg::eigh(build_hamiltonian(point.spec));
    const double e_min = e.eigenvalues[0];
    ComplexMatrix weights =
        linalg::matrix_function(e, [&](double x) { return std::exp(-(x - e_min) / t); });

    const double z_shifted = linalg::trace(weights).real();
    const double log_z = -e_min / t + std::log(z_shifted);
    return ThermalState{DensityMatrix((1.0 / z_shifted) * weights), log_z};
}

}  // namespace spincorr::models
