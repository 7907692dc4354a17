#pragma once

#include "spincorr/models.hpp"

// Analytic expressions for the two thermal models, used as independent
// oracles against the generic eigendecomposition pipeline. All exponentials
// are evaluated relative to the largest exponent, so temperatures down to
// 1e-3 are safe; logarithms are base 2.
namespace spincorr::closed_forms {

/// Log-safe building blocks of the XXZ thermal state. Populations and the
/// off-diagonal are stored normalized by the partition function Z; log_z
/// carries the absolute scale. In unnormalized terms, with
/// eta = sqrt(b^2 + J^2), m = cosh(eta/T), n = b sinh(eta/T)/eta and
/// s = e^{Jz/2T} J sinh(eta/T)/eta:
///   rho22 = e^{Jz/2T}(m - n),  rho33 = e^{Jz/2T}(m + n),
/// and the spectrum of Z*rho is {e^{-(Jz+2B)/2T}, e^{(Jz+-2eta)/2T},
/// e^{-(Jz-2B)/2T}}.
struct XxzDerived {
    double eta;        // sqrt(b^2 + J^2)
    double p11, p44;   // corner populations e^{-(Jz +- 2B)/2T} / Z
    double p22, p33;   // middle populations rho22/Z, rho33/Z
    double lam_minus;  // spectral weight e^{(Jz - 2 eta)/2T} / Z
    double lam_plus;   // spectral weight e^{(Jz + 2 eta)/2T} / Z
    double s_over_z;   // signed off-diagonal s / Z
    double log_z;
};

XxzDerived xxz_derived(double J, double Jz, double B, double b, double T);

/// Scaled concurrence auxiliaries for the XXZ state:
///   xi_pm = e^{Jz/T} Z^2 mu +- sqrt(2) nu,  mu = b^2 + J^2 cosh(2 eta/T),
///   nu = sqrt(J^2 Z^4 (b^2 + mu + J^2) sinh^2(eta/T)) e^{Jz/T}.
/// Stored as a_pm = xi_pm * e^{-2 eta/T} / (e^{Jz/T} Z^2) and
/// mu_scaled = mu e^{-2 eta/T}, which keeps every factor representable;
/// a_plus >= a_minus >= 0, with a_plus * a_minus = eta^4 e^{-4 eta/T}
/// exactly (the identity used to evaluate a_minus without cancellation).
struct XxzConcurrenceAux {
    double mu_scaled;
    double a_plus;
    double a_minus;
};

XxzConcurrenceAux xxz_concurrence_aux(double J, double b, double eta, double T);

/// Log-safe building blocks of the DM thermal state. With
/// delta = 2 J sqrt(1 + D^2) (carrying the sign of J),
/// L_pm = e^{(J +- delta)/2T} and M_pm = +-1 + e^{delta/T}:
///   rho22 = rho33 = L_minus M_plus / 2, corners are e^{-J/2T}, and the
///   off-diagonal magnitude is |L_minus M_minus| / 2.
struct DmDerived {
    double delta;     // 2 J sqrt(1 + D^2)
    double p_corner;  // e^{-J/2T} / Z
    double q_minus;   // L_minus / Z
    double q_plus;    // L_plus / Z
    double p22;       // rho22/Z = (q_plus + q_minus)/2
    double off_abs;   // |L_minus M_minus| / (2 Z) = |q_plus - q_minus|/2
    double log_z;
};

DmDerived dm_derived(double J, double D, double T);

/// The XXZ thermal matrix assembled from xxz_derived.
models::DensityMatrix xxz_thermal_matrix(double J, double Jz, double B, double b, double T);

/// Q for the XXZ state:
///   -p22 log p22 - p33 log p33 + lam_minus log lam_minus + lam_plus log lam_plus.
double xxz_mid(double J, double Jz, double B, double b, double T);

/// C for the XXZ state: max{ sqrt(xi_plus)/(eta Z^2) - sqrt(xi_minus)/(eta Z^2)
/// - 2 e^{-Jz/2T} / Z, 0 }, evaluated in the factored form where the eta and
/// Z powers cancel. On the eta = 0 line (J = b = 0) the state is diagonal and
/// the result is 0 directly.
double xxz_concurrence(double J, double Jz, double B, double b, double T);

/// Q for the DM state:
///   -2 p22 log p22 + q_minus log q_minus + q_plus log q_plus.
double dm_mid(double J, double D, double T);

/// C for the DM state: max{ (2/Z)(|L_minus M_minus|/2 - e^{-J/2T}), 0 }.
double dm_concurrence(double J, double D, double T);

/// D = 0 reduction in terms of x = e^{J/2T}:
///   Q = (4 x^4 log x - (1 + x^4)(-1 + log(1 + x^4))) / (3 + x^4),
/// with x^4 log x -> 0 at x = 0. Throws InvalidInput for x < 0.
double dm_isotropic_mid(double x);

/// D = 0 reduction: C = max{ (-2 + |x^4 - 1|) / (3 + x^4), 0 }.
double dm_isotropic_concurrence(double x);

}  // namespace spincorr::closed_forms
