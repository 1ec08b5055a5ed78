#include <cmath>

#include "doctest.h"
#include "sugra/errors.hpp"
#include "sugra/psk.hpp"
#include "sugra/sampling.hpp"
#include "sugra/vphs.hpp"

using namespace sugra;
using doctest::Approx;
using geometry::Point;

TEST_CASE("cone metric signature is (2n, 2)") {
    for (int n = 0; n <= 3; ++n) {
        const psk::ComplexHyperbolic m(n);
        auto rng = sampling::make_rng(3, "test-signature");
        for (int i = 0; i < 30; ++i) {
            const Point q = sampling::cone_point(n, rng);
            const Eigen::MatrixXd g = geometry::values(m.cone_metric(geometry::seed(q, 1)));
            CHECK(geometry::signature_of(g) == geometry::Signature{2 * n, 2, 0});
        }
    }
}

TEST_CASE("conic special Kaehler axioms") {
    CHECK(psk::verify_csk_axioms(psk::ComplexHyperbolic(0), {1.0, 0.0}).max() < 1e-10);
    const psk::ComplexHyperbolic m(1);
    const psk::CskResidual r = psk::verify_csk_axioms(m, {0.3, 0.0, 1.5, 0.7});
    CHECK(r.max() < 1e-9);
    CHECK(r.flat_torsion == 0.0);
}

TEST_CASE("derivative of the Chern connection form") {
    CHECK(psk::verify_chi_derivative(psk::ComplexHyperbolic(0), {1.3, 0.2}) < 1e-10);
    CHECK(psk::verify_chi_derivative(psk::ComplexHyperbolic(1), {0.0, 0.0, 0.9, -0.4}) < 1e-10);
    auto rng = sampling::make_rng(5, "test-chi");
    CHECK(psk::verify_chi_derivative(psk::ComplexHyperbolic(2), sampling::cone_point(2, rng)) < 1e-9);
}

TEST_CASE("Chern curvature and connection form routes") {
    auto rng = sampling::make_rng(6, "test-chern");
    for (int n = 0; n <= 2; ++n) {
        const psk::ComplexHyperbolic m(n);
        const Point q = sampling::cone_point(n, rng);
        CHECK(psk::verify_chern_curvature(m, q) < 1e-10);
        CHECK(psk::verify_connection_form(m, q) < 1e-10);
        CHECK(psk::verify_homogeneity(m, q) < 1e-10);
    }
}

TEST_CASE("Levi-Civita difference along horizontal lifts") {
    const psk::ComplexHyperbolic m(1);
    auto coord = [](int a) {
        return geometry::VectorField{2, [a](const JetVector& x) {
                                         JetVector v(2, x[0].zero_like());
                                         v[a] = x[0].constant_like(1.0);
                                         return v;
                                     }};
    };
    const geometry::VectorField zero{2, [](const JetVector& x) { return JetVector(2, x[0].zero_like()); }};
    const Point q{0.2, 0.0, 1.1, 0.3};
    CHECK(psk::verify_lc_difference(m, m.horizontal_lift(zero), m.horizontal_lift(zero), q) == 0.0);
    CHECK(psk::verify_lc_difference(m, m.horizontal_lift(coord(0)), m.horizontal_lift(coord(0)), q) < 1e-9);
    CHECK(psk::verify_lc_difference(m, m.horizontal_lift(coord(0)), m.horizontal_lift(coord(1)), q) < 1e-9);
}

TEST_CASE("projective curvature with the calibrated normalisation") {
    const double scale = psk::calibrate_projective_curvature({0.0, 0.0});
    CHECK(scale == Approx(1.0).epsilon(1e-10));
    CHECK(psk::verify_d1(psk::ComplexHyperbolic(1), {0.0, 0.0}, scale) < 1e-9);
    CHECK(psk::verify_d1(psk::ComplexHyperbolic(2), {0.1, 0.0, 0.0, 0.2}, scale) < 1e-8);
    auto rng = sampling::make_rng(7, "test-d1");
    CHECK(psk::verify_d1(psk::ComplexHyperbolic(3), sampling::base_point(3, rng), scale) < 1e-8);
}

TEST_CASE("Euler field is the complete lift oracle for the flat connection") {
    const psk::ComplexHyperbolic m(1);
    const geometry::VectorField xi{4, [&m](const JetVector& q) { return m.euler_field(q); }};
    const geometry::ConnectionFn flat = [&m](const JetVector& q) {
        return geometry::flat_pullback_connection(m.embedding(q));
    };
    CHECK(geometry::complete_lift_residual(xi, flat, {0.3, -0.1, 1.4, 0.5}, {0.2, 1.0, -0.4, 0.3}) < 1e-10);
}

TEST_CASE("chart domains") {
    const psk::ComplexHyperbolic m(1);
    CHECK_THROWS_AS(m.check_base_point({0.8, 0.7}), DomainError);
    CHECK_THROWS_AS(m.check_cone_point({0.1, 0.1, -1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(m.check_cone_point({0.1, 0.1, 1.0}), ArgumentError);
    CHECK_THROWS_AS(psk::ComplexHyperbolic(-1), ArgumentError);
    CHECK_THROWS_AS(psk::ComplexHyperbolic(4), ArgumentError);
}

TEST_CASE("flat frame at the origin") {
    for (int n = 1; n <= 2; ++n) {
        const vphs::HodgeBundle e(n);
        const CJetMatrix p = e.parallel_frame(geometry::seed(Point(2 * n, 0.0), 1));
        // s_0 = sigma and s_j = sigma (x) d_{X_j}
        for (int i = 0; i <= n; ++i)
            for (int a = 0; a < e.rank(); ++a) {
                const std::complex<double> want = a == i ? 1.0 : 0.0;
                CHECK(std::abs(p(a, i).value() - want) < 1e-14);
            }
    }
}

TEST_CASE("variation of Hodge structure identities") {
    auto rng = sampling::make_rng(8, "test-vphs");
    for (int n = 0; n <= 3; ++n) {
        const vphs::HodgeBundle e(n);
        for (int i = 0; i < 5; ++i) {
            const Point x = sampling::base_point(n, rng);
            CHECK(vphs::check_parallel_frame(e, x) < 1e-10);
            CHECK(vphs::check_flatness(e, x) < 1e-8);
            CHECK(vphs::check_polarization_parallel(e, x) < 1e-10);
            CHECK(vphs::check_transversality(e, x) < 1e-12);
            CHECK(vphs::check_frame_pairings(e, x) < 1e-12);
            CHECK(vphs::check_reality(e, x) < 1e-12);
            CHECK(vphs::check_connection_routes(e, x) < 1e-10);
            const double h = vphs::check_hodge_metrics(e, x);
            CHECK(h >= 0.0);
            CHECK(h < 1e-12);
        }
    }
}

TEST_CASE("Griffiths transversality block structure") {
    const vphs::HodgeBundle e(2);
    const Point x{0.1, -0.2, 0.3, 0.05};
    const JetVector s = geometry::seed(x, 1);
    for (int a = 0; a < 4; ++a) {
        const CJetMatrix c = e.connection_matrix(s, a);
        // the L summand only reaches L (x) T^{1,0}, the middle never reaches the far extreme
        for (int row = 0; row < e.rank(); ++row) {
            const int p_row = vphs::hodge_p(e.type_of(row));
            for (int col = 0; col < e.rank(); ++col) {
                const int p_col = vphs::hodge_p(e.type_of(col));
                if (p_row < p_col - 1 || p_row > p_col + 1) CHECK(std::abs(c(row, col).value()) < 1e-12);
            }
        }
    }
}
