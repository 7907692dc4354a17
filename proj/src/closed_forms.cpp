#include "spincorr/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>

namespace spincorr::closed_forms {

using linalg::ComplexMatrix;

namespace {

void check_temperature(double t) {
    if (!std::isfinite(t) || t <= 0.0)
        throw InvalidTemperature("temperature must be positive and finite");
}

void check_finite(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) throw InvalidInput("parameters must be finite");
}

double plog2(double p) {
    return p > 0.0 ? p * std::log2(p) : 0.0;
}

double clamp_mid(double q) {
    return (q < 0.0 && q >= -1e-10) ? 0.0 : q;
}

}  // namespace

XxzDerived xxz_derived(double J, double Jz, double B, double b, double T) {
    check_finite({J, Jz, B, b});
    check_temperature(T);
    if (B < 0.0) throw InvalidInput("uniform field B must be >= 0");

    XxzDerived d{};
    d.eta = std::hypot(b, J);

    // Exponents of the four Boltzmann weights: corners -(Jz +- 2B)/2T and the
    // middle-block spectral pair (Jz +- 2 eta)/2T.
    const double u11 = -(Jz + 2.0 * B) / (2.0 * T);
    const double up = (Jz + 2.0 * d.eta) / (2.0 * T);
    const double um = (Jz - 2.0 * d.eta) / (2.0 * T);
    const double u44 = -(Jz - 2.0 * B) / (2.0 * T);
    const double u_max = std::max(std::max(u11, u44), std::max(up, um));

    const double w11 = std::exp(u11 - u_max);
    const double wp = std::exp(up - u_max);
    const double wm = std::exp(um - u_max);
    const double w44 = std::exp(u44 - u_max);
    const double zs = w11 + wp + wm + w44;

    d.p11 = w11 / zs;
    d.p44 = w44 / zs;
    d.lam_plus = wp / zs;
    d.lam_minus = wm / zs;

    // rho22/Z = (wp (1 - b/eta) + wm (1 + b/eta)) / (2 zs) and the b -> -b
    // mirror for rho33; both are sums of nonnegative terms since |b| <= eta.
    const double r = d.eta > 0.0 ? b / d.eta : 0.0;
    d.p22 = 0.5 * (wp * (1.0 - r) + wm * (1.0 + r)) / zs;
    d.p33 = 0.5 * (wp * (1.0 + r) + wm * (1.0 - r)) / zs;

    const double jr = d.eta > 0.0 ? J / d.eta : 0.0;
    d.s_over_z = 0.5 * jr * (wp - wm) / zs;

    d.log_z = u_max + std::log(zs);
    return d;
}

XxzConcurrenceAux xxz_concurrence_aux(double J, double b, double eta, double T) {
    XxzConcurrenceAux aux{};
    const double c = eta / T;
    const double e2 = std::exp(-2.0 * c);
    aux.mu_scaled = b * b * e2 + 0.5 * J * J * (1.0 + e2 * e2);
    // sinh(c) e^{-c} without cancellation for small c.
    const double sinh_scaled = -0.5 * std::expm1(-2.0 * c);
    const double root = std::sqrt(eta * eta * e2 + aux.mu_scaled);
    aux.a_plus = aux.mu_scaled + std::sqrt(2.0) * std::abs(J) * sinh_scaled * root;
    // a_plus * a_minus = eta^4 e^{-4c} exactly; dividing avoids the
    // subtractive cancellation that loses the small root.
    const double eta2e2 = eta * eta * e2;
    aux.a_minus = aux.a_plus > 0.0 ? (eta2e2 * eta2e2) / aux.a_plus : 0.0;
    return aux;
}

models::DensityMatrix xxz_thermal_matrix(double J, double Jz, double B, double b, double T) {
    const XxzDerived d = xxz_derived(J, Jz, B, b, T);
    ComplexMatrix m(4);
    m(0, 0) = d.p11;
    m(1, 1) = d.p22;
    m(2, 2) = d.p33;
    m(3, 3) = d.p44;
    m(1, 2) = -d.s_over_z;
    m(2, 1) = -d.s_over_z;
    return models::DensityMatrix(m);
}

double xxz_mid(double J, double Jz, double B, double b, double T) {
    const XxzDerived d = xxz_derived(J, Jz, B, b, T);
    const double q = (-plog2(d.p22) - plog2(d.p33)) + plog2(d.lam_minus) + plog2(d.lam_plus);
    return clamp_mid(q);
}

double xxz_concurrence(double J, double Jz, double B, double b, double T) {
    const XxzDerived d = xxz_derived(J, Jz, B, b, T);
    if (d.eta == 0.0) return 0.0;  // diagonal state, separable

    const XxzConcurrenceAux aux = xxz_concurrence_aux(J, b, d.eta, T);
    const double sqrt_ap = std::sqrt(aux.a_plus);
    const double sqrt_am = sqrt_ap > 0.0 ? (d.eta * d.eta * std::exp(-2.0 * d.eta / T)) / sqrt_ap : 0.0;
    // (sqrt(xi+) - sqrt(xi-)) / (eta Z^2) = lam_plus (a+ - a-) /
    // (eta (sqrt(a+) + sqrt(a-))), with a+ - a- in product form.
    const double sinh_scaled = -0.5 * std::expm1(-2.0 * d.eta / T);
    const double root = std::sqrt(d.eta * d.eta * std::exp(-2.0 * d.eta / T) + aux.mu_scaled);
    const double diff = 2.0 * std::sqrt(2.0) * std::abs(J) * sinh_scaled * root / (sqrt_ap + sqrt_am);

    const double c = d.lam_plus * diff / d.eta - 2.0 * std::sqrt(d.p11 * d.p44);
    return std::max(c, 0.0);
}

DmDerived dm_derived(double J, double D, double T) {
    check_finite({J, D});
    check_temperature(T);

    DmDerived d{};
    d.delta = 2.0 * J * std::sqrt(1.0 + D * D);

    const double uc = -J / (2.0 * T);
    const double up = (J + d.delta) / (2.0 * T);
    const double um = (J - d.delta) / (2.0 * T);
    const double u_max = std::max(uc, std::max(up, um));

    const double wc = std::exp(uc - u_max);
    const double wp = std::exp(up - u_max);
    const double wm = std::exp(um - u_max);
    const double zs = 2.0 * wc + wp + wm;

    d.p_corner = wc / zs;
    d.q_plus = wp / zs;
    d.q_minus = wm / zs;
    d.p22 = 0.5 * (d.q_plus + d.q_minus);
    d.off_abs = 0.5 * std::abs(d.q_plus - d.q_minus);
    d.log_z = u_max + std::log(zs);
    return d;
}

double dm_mid(double J, double D, double T) {
    const DmDerived d = dm_derived(J, D, T);
    const double q = -2.0 * plog2(d.p22) + plog2(d.q_minus) + plog2(d.q_plus);
    return clamp_mid(q);
}

double dm_concurrence(double J, double D, double T) {
    const DmDerived d = dm_derived(J, D, T);
    return std::max(2.0 * d.off_abs - 2.0 * d.p_corner, 0.0);
}

double dm_isotropic_mid(double x) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInput("x must be a nonnegative real");
    const double y = x * x * x * x;
    if (std::isinf(y)) return 1.0;
    const double xlog = x > 0.0 ? 4.0 * y * std::log2(x) : 0.0;
    const double log1y = std::log1p(y) / std::numbers::ln2;
    return (xlog - (1.0 + y) * (-1.0 + log1y)) / (3.0 + y);
}

double dm_isotropic_concurrence(double x) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInput("x must be a nonnegative real");
    const double y = x * x * x * x;
    if (std::isinf(y)) return 1.0;
    return std::max((-2.0 + std::abs(y - 1.0)) / (3.0 + y), 0.0);
}

}  // namespace spincorr::closed_forms
