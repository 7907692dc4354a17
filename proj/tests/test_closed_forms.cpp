#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spincorr/closed_forms.hpp"
#include "spincorr/correlations.hpp"
#include "test_util.hpp"

using namespace spincorr;
using namespace spincorr::closed_forms;
using linalg::ComplexMatrix;
using models::XxxDmSpec;
using models::XxzSpec;

namespace {

double generic_mid_xxz(double j, double jz, double bu, double bi, double t) {
    return correlations::mid(models::thermal_state({XxzSpec{j, jz, bu, bi}, t}).rho);
}

double generic_conc_xxz(double j, double jz, double bu, double bi, double t) {
    return correlations::concurrence(models::thermal_state({XxzSpec{j, jz, bu, bi}, t}).rho);
}

double generic_mid_dm(double j, double d, double t) {
    return correlations::mid(models::thermal_state({XxxDmSpec{j, d}, t}).rho);
}

double generic_conc_dm(double j, double d, double t) {
    return correlations::concurrence(models::thermal_state({XxxDmSpec{j, d}, t}).rho);
}

}  // namespace

TEST_CASE("xxz_thermal_matrix: trivial and explicit points") {
    const auto mixed = xxz_thermal_matrix(0, 0, 0, 0, 1.7);
    CHECK(linalg::max_abs_diff(mixed.mat(), 0.25 * ComplexMatrix::identity(4)) <= 1e-15);

    // J=1, Jz=0, B=0, b=0, T=1: middle block (cosh1, -sinh1; -sinh1, cosh1)/Z,
    // corners 1/Z with Z = 2 + 2 cosh 1.
    const double z = 2.0 + 2.0 * std::cosh(1.0);
    const auto m = xxz_thermal_matrix(1, 0, 0, 0, 1).mat();
    CHECK(m(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-13));
    CHECK(m(3, 3).real() == doctest::Approx(1.0 / z).epsilon(1e-13));
    CHECK(m(1, 1).real() == doctest::Approx(std::cosh(1.0) / z).epsilon(1e-13));
    CHECK(m(2, 2).real() == doctest::Approx(std::cosh(1.0) / z).epsilon(1e-13));
    CHECK(m(1, 2).real() == doctest::Approx(-std::sinh(1.0) / z).epsilon(1e-13));

    CHECK_THROWS_AS(xxz_thermal_matrix(1, 0, 0, 0, 0.0), InvalidTemperature);
    CHECK_THROWS_AS(xxz_thermal_matrix(1, 0, 0, 0, -0.4), InvalidTemperature);
}

TEST_CASE("xxz_thermal_matrix agrees with the generic route at spot points") {
    double worst = 0.0;
    for (double t : {0.1, 0.4, 1.0, 2.0}) {
        const auto generic = models::thermal_state({XxzSpec{1.3, -0.7, 1.1, -0.9}, t});
        const auto closed = xxz_thermal_matrix(1.3, -0.7, 1.1, -0.9, t);
        worst = std::max(worst, linalg::max_abs_diff(generic.rho.mat(), closed.mat()));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("xxz_mid: decoupled line, symmetry, fixture") {
    for (double jz : {-1.0, 0.0, 0.7})
        for (double bu : {0.0, 1.0})
            for (double bi : {-0.8, 0.0, 1.2})
                CHECK(xxz_mid(0.0, jz, bu, bi, 0.7) <= 1e-12);

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const double j = testutil::uniform(rng, -2, 2);
        const double jz = testutil::uniform(rng, -2, 2);
        const double bu = testutil::uniform(rng, 0, 2);
        const double bi = testutil::uniform(rng, 0.01, 2);
        const double t = testutil::uniform(rng, 0.1, 2);
        CHECK(xxz_mid(j, jz, bu, bi, t) == xxz_mid(j, jz, bu, -bi, t));
        CHECK(xxz_mid(j, jz, bu, bi, t) == xxz_mid(-j, jz, bu, bi, t));
    }

    CHECK(std::abs(xxz_mid(1, 0, 0, 0.5, 0.4) - generic_mid_xxz(1, 0, 0, 0.5, 0.4)) <= 1e-10);
    CHECK(xxz_mid(1, 0, 0, 0.5, 0.4) == doctest::Approx(0.728679447295742).epsilon(1e-10));
}

TEST_CASE("xxz_concurrence: decoupled line, symmetry, fixture") {
    CHECK(xxz_concurrence(0, 0.5, 1.0, 0, 0.4) == 0.0);
    CHECK(xxz_concurrence(0, -0.5, 0.0, 0, 2.0) == 0.0);

    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        const double j = testutil::uniform(rng, 0.01, 2);
        const double jz = testutil::uniform(rng, -2, 2);
        const double bu = testutil::uniform(rng, 0, 2);
        const double bi = testutil::uniform(rng, -2, 2);
        const double t = testutil::uniform(rng, 0.1, 2);
        CHECK(xxz_concurrence(j, jz, bu, bi, t) == xxz_concurrence(j, jz, bu, -bi, t));
        CHECK(xxz_concurrence(j, jz, bu, bi, t) == xxz_concurrence(-j, jz, bu, bi, t));
    }

    CHECK(std::abs(xxz_concurrence(1, 0, 0, 0.5, 0.4) - generic_conc_xxz(1, 0, 0, 0.5, 0.4)) <= 1e-9);
    CHECK(xxz_concurrence(1, 0, 0, 0.5, 0.4) == doctest::Approx(0.682859025924573).epsilon(1e-10));
}

TEST_CASE("concurrence auxiliaries keep their ordering") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 500; ++trial) {
        const double j = testutil::uniform(rng, -2, 2);
        const double b = testutil::uniform(rng, -2, 2);
        const double t = testutil::uniform(rng, 0.1, 2);
        const double eta = std::hypot(b, j);
        if (eta == 0.0) continue;
        const auto aux = xxz_concurrence_aux(j, b, eta, t);
        CHECK(aux.a_plus >= aux.a_minus);
        CHECK(aux.a_minus >= 0.0);
    }
}

TEST_CASE("dm_mid: decoupled line and fixture") {
    CHECK(dm_mid(0.0, 0.0, 0.7) <= 1e-12);
    CHECK(dm_mid(0.0, 2.0, 0.7) <= 1e-12);

    CHECK(std::abs(dm_mid(1, 1, 0.6) - generic_mid_dm(1, 1, 0.6)) <= 1e-10);
    CHECK(dm_mid(1, 1, 0.6) == doctest::Approx(0.894936864832589).epsilon(1e-10));
}

TEST_CASE("dm closed forms reduce to the isotropic expressions at D = 0") {
    double worst_q = 0.0, worst_c = 0.0;
    for (double j = -3.0; j <= 3.0; j += 0.25)
        for (double t : {0.1, 0.3, 0.6, 1.0, 2.0}) {
            const double x = std::exp(j / (2.0 * t));
            worst_q = std::max(worst_q, std::abs(dm_mid(j, 0.0, t) - dm_isotropic_mid(x)));
            worst_c = std::max(worst_c,
                               std::abs(dm_concurrence(j, 0.0, t) - dm_isotropic_concurrence(x)));
        }
    CHECK(worst_q <= 1e-12);
    CHECK(worst_c <= 1e-12);
}

TEST_CASE("dm closed forms are even in D") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        const double j = testutil::uniform(rng, -3, 3);
        const double d = testutil::uniform(rng, 0, 3);
        const double t = testutil::uniform(rng, 0.1, 2);
        CHECK(dm_mid(j, d, t) == dm_mid(j, -d, t));
        CHECK(dm_concurrence(j, d, t) == dm_concurrence(j, -d, t));
    }
}

TEST_CASE("dm_concurrence: fixture and the weak-DM ferromagnetic null") {
    CHECK(std::abs(dm_concurrence(1, 2, 0.6) - generic_conc_dm(1, 2, 0.6)) <= 1e-10);
    CHECK(dm_concurrence(1, 2, 0.6) == doctest::Approx(0.980841441533878).epsilon(1e-10));

    CHECK(dm_concurrence(-1, 0.1, 0.6) == 0.0);
}

TEST_CASE("isotropic closed forms: limits, threshold, exact point") {
    CHECK(dm_isotropic_mid(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(dm_isotropic_mid(1.0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
    CHECK(std::abs(dm_isotropic_mid(100.0) - 1.0) <= 1e-3);
    CHECK(std::abs(dm_isotropic_mid(1e-6) - 1.0 / 3.0) <= 1e-5);
    CHECK(dm_isotropic_mid(1e200) == 1.0);

    CHECK(dm_isotropic_concurrence(std::pow(3.0, 0.25)) <= 1e-15);
    CHECK(dm_isotropic_concurrence(2.0) == doctest::Approx(13.0 / 19.0).epsilon(1e-15));
    CHECK(dm_isotropic_concurrence(0.0) == 0.0);
    CHECK(std::abs(dm_isotropic_concurrence(100.0) - 1.0) <= 1e-3);

    CHECK_THROWS_AS(dm_isotropic_mid(-0.5), InvalidInput);
    CHECK_THROWS_AS(dm_isotropic_concurrence(-2.0), InvalidInput);
}

TEST_CASE("isotropic mid increases monotonically beyond x = 1") {
    double prev = dm_isotropic_mid(1.0);
    for (int k = 1; k <= 1000; ++k) {
        const double x = 1.0 + 0.01 * k;
        const double q = dm_isotropic_mid(x);
        CHECK(q > prev);
        prev = q;
    }
}

TEST_CASE("oracle equivalence: closed forms vs generic pipeline on random clouds") {
    std::mt19937_64 rng(79);
    double worst_q = 0.0, worst_c = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const double j = testutil::uniform(rng, -2, 2);
        const double jz = testutil::uniform(rng, -2, 2);
        const double bu = testutil::uniform(rng, 0, 2);
        const double bi = testutil::uniform(rng, -2, 2);
        const double t = testutil::uniform(rng, 0.1, 2);
        const auto state = models::thermal_state({XxzSpec{j, jz, bu, bi}, t});
        worst_q = std::max(worst_q,
                           std::abs(correlations::mid(state.rho) - xxz_mid(j, jz, bu, bi, t)));
        worst_c = std::max(worst_c, std::abs(correlations::concurrence(state.rho) -
                                             xxz_concurrence(j, jz, bu, bi, t)));
    }
    CHECK(worst_q <= 1e-9);
    CHECK(worst_c <= 1e-9);

    worst_q = worst_c = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const double j = testutil::uniform(rng, -3, 3);
        const double d = testutil::uniform(rng, 0, 3);
        const double t = testutil::uniform(rng, 0.1, 2);
        const auto state = models::thermal_state({XxxDmSpec{j, d}, t});
        worst_q = std::max(worst_q, std::abs(correlations::mid(state.rho) - dm_mid(j, d, t)));
        worst_c = std::max(worst_c,
                           std::abs(correlations::concurrence(state.rho) - dm_concurrence(j, d, t)));
    }
    CHECK(worst_q <= 1e-9);
    CHECK(worst_c <= 1e-9);
}

TEST_CASE("derived quantities sum to unit trace") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = xxz_derived(testutil::uniform(rng, -2, 2), testutil::uniform(rng, -2, 2),
                                   testutil::uniform(rng, 0, 2), testutil::uniform(rng, -2, 2),
                                   testutil::uniform(rng, 0.1, 2));
        CHECK(d.p11 + d.p22 + d.p33 + d.p44 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(d.p11 + d.lam_plus + d.lam_minus + d.p44 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(d.p22 >= 0.0);
        CHECK(d.p33 >= 0.0);

        const auto dd = dm_derived(testutil::uniform(rng, -3, 3), testutil::uniform(rng, 0, 3),
                                   testutil::uniform(rng, 0.1, 2));
        CHECK(2 * dd.p_corner + dd.q_plus + dd.q_minus == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(2 * dd.p_corner + 2 * dd.p22 == doctest::Approx(1.0).epsilon(1e-13));
    }
}
