#include "spincorr/correlations.hpp"

#include <algorithm>
#include <cmath>

namespace spincorr::correlations {

using linalg::ComplexMatrix;
using linalg::cplx;
using linalg::Keep;

namespace {

void check_projector(const ComplexMatrix& p) {
    if (p.dim() != 2) throw InvalidDimension("projector must be 2x2");
    if (linalg::max_abs_diff(p * p, p) > 1e-12)
        throw InvalidState("projector is not idempotent within 1e-12");
    if (std::abs(linalg::trace(p) - cplx(1.0, 0.0)) > 1e-12)
        throw InvalidState("projector is not rank-1 within 1e-12");
}

void check_pair(const std::array<ComplexMatrix, 2>& p) {
    check_projector(p[0]);
    check_projector(p[1]);
    if (linalg::max_abs(p[0] * p[1]) > 1e-12)
        throw InvalidState("projectors are not orthogonal within 1e-12");
    if (linalg::max_abs_diff(p[0] + p[1], ComplexMatrix::identity(2)) > 1e-12)
        throw InvalidState("projectors do not sum to the identity within 1e-12");
}

std::array<ComplexMatrix, 2> marginal_projectors(const ComplexMatrix& reduced) {
    const auto e = linalg::eigh(reduced);
    std::array<ComplexMatrix, 2> p{ComplexMatrix(2), ComplexMatrix(2)};
    if (e.eigenvalues[1] - e.eigenvalues[0] < 1e-10) {
        for (int k = 0; k < 2; ++k) p[k](k, k) = 1.0;
        return p;
    }
    for (int k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                p[k](r, c) = e.eigenvectors(r, k) * std::conj(e.eigenvectors(c, k));
    return p;
}

// sigma_y x sigma_y in the {|11>,|10>,|01>,|00>} ordering.
ComplexMatrix spin_flip() {
    ComplexMatrix s(4);
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s;
}

double entropy_bits(const linalg::HermitianEigen& e) {
    double s = 0.0;
    for (int i = 0; i < e.dim; ++i) {
        const double p = std::max(e.eigenvalues[i], 0.0);
        if (p > 0.0) s -= p * std::log2(p);
    }
    return std::max(s, 0.0);
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(std::array<ComplexMatrix, 2> pa,
                                             std::array<ComplexMatrix, 2> pb)
    : projectors_a(pa), projectors_b(pb) {
    check_pair(projectors_a);
    check_pair(projectors_b);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_bits(linalg::eigh(rho.mat()));
}

double mutual_information(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw InvalidDimension("mutual_information expects a 4x4 state");
    const double s_a = entropy_bits(linalg::eigh(linalg::partial_trace(rho.mat(), Keep::A)));
    const double s_b = entropy_bits(linalg::eigh(linalg::partial_trace(rho.mat(), Keep::B)));
    return s_a + s_b - von_neumann_entropy(rho);
}

ProjectiveMeasurement induced_measurement(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw InvalidDimension("induced_measurement expects a 4x4 state");
    return ProjectiveMeasurement(
        marginal_projectors(linalg::partial_trace(rho.mat(), Keep::A)),
        marginal_projectors(linalg::partial_trace(rho.mat(), Keep::B)));
}

DensityMatrix apply_measurement(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    if (rho.dim() != 4)
        throw InvalidDimension("apply_measurement expects a 4x4 state");
    ComplexMatrix out(4);
    for (const auto& pa : m.projectors_a)
        for (const auto& pb : m.projectors_b) {
            const ComplexMatrix k = linalg::kron(pa, pb);
            out = out + k * rho.mat() * k;
        }
    return DensityMatrix(linalg::hermitize(out));
}

double mid(const DensityMatrix& rho) {
    const double i_rho = mutual_information(rho);
    const double i_measured = mutual_information(apply_measurement(rho, induced_measurement(rho)));
    double q = i_rho - i_measured;
    if (q < 0.0 && q >= -1e-10) q = 0.0;
    return q;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw InvalidDimension("concurrence expects a 4x4 state");
    const auto e = linalg::eigh(rho.mat());
    const ComplexMatrix sqrt_rho =
        linalg::matrix_function(e, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const ComplexMatrix s = spin_flip();
    const auto lambda = linalg::singular_values(s * linalg::conjugate(sqrt_rho) * s * sqrt_rho);
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return std::clamp(c, 0.0, 1.0);
}

CorrelationReport correlation_report(const models::ThermalPoint& point) {
    const auto state = models::thermal_state(point);
    const auto& rho = state.rho;

    CorrelationReport r{};
    r.log_z = state.log_z;
    r.s_rho = von_neumann_entropy(rho);
    r.s_a = entropy_bits(linalg::eigh(linalg::partial_trace(rho.mat(), Keep::A)));
    r.s_b = entropy_bits(linalg::eigh(linalg::partial_trace(rho.mat(), Keep::B)));
    r.i_rho = r.s_a + r.s_b - r.s_rho;
    r.i_measured = mutual_information(apply_measurement(rho, induced_measurement(rho)));
    r.q = r.i_rho - r.i_measured;
    if (r.q < 0.0 && r.q >= -1e-10) r.q = 0.0;
    r.c = concurrence(rho);
    return r;
}

}  // namespace spincorr::correlations
