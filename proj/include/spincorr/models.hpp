#pragma once

#include <variant>

#include "spincorr/linalg.hpp"

// Two-qubit Hamiltonians and their thermal (Gibbs) states. Basis ordering is
// {|11>,|10>,|01>,|00>} everywhere, index 0 <-> |11>; spin operators are the
// Pauli matrices (eigenvalues +-1) and the Boltzmann constant is 1.
namespace spincorr::models {

/// XXZ exchange with uniform field B >= 0 and inhomogeneity b:
/// H = [J(sx sx + sy sy) + Jz sz sz + (B+b) sz1 + (B-b) sz2] / 2.
struct XxzSpec {
    double J = 0.0;
    double Jz = 0.0;
    double B = 0.0;
    double b = 0.0;
};

/// Isotropic exchange plus a Dzyaloshinski-Moriya term along z:
/// H = (J/2) [sx sx + sy sy + sz sz + D (s1 x s2)_z].
struct XxxDmSpec {
    double J = 0.0;
    double D = 0.0;
};

using HamiltonianSpec = std::variant<XxzSpec, XxxDmSpec>;

/// Throws InvalidSpec when a parameter is non-finite or B < 0.
void validate(const HamiltonianSpec& spec);

/// Thermal (unit-trace, PSD, Hermitian) state. Construction validates the
/// invariants: hermiticity and trace within 1e-12, minimum eigenvalue
/// >= -1e-12; violations throw InvalidState.
class DensityMatrix {
public:
    explicit DensityMatrix(linalg::ComplexMatrix m);

    const linalg::ComplexMatrix& mat() const noexcept { return mat_; }
    int dim() const noexcept { return mat_.dim(); }

private:
    linalg::ComplexMatrix mat_;
};

/// A model at temperature T > 0 (units with k = 1).
struct ThermalPoint {
    HamiltonianSpec spec;
    double temperature = 1.0;
};

/// Hermitian 4x4 matrix of the model in the standard basis.
linalg::ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec);

struct ThermalState {
    DensityMatrix rho;
    double log_z;  // log of the unshifted partition function tr e^{-H/T}
};

/// rho(T) = e^{-H/T} / Z via the generic eigendecomposition route.
/// Exponents are shifted by the ground energy before exponentiating, so no
/// overflow is possible for any T > 0; throws InvalidTemperature otherwise.
ThermalState thermal_state(const ThermalPoint& point);

}  // namespace spincorr::models
