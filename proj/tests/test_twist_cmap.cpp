#include <cmath>
#include <complex>

#include "doctest.h"
#include "sugra/cmap.hpp"
#include "sugra/errors.hpp"
#include "sugra/sampling.hpp"
#include "sugra/twist.hpp"

using namespace sugra;
using doctest::Approx;
using geometry::Point;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Point origin_point(int n, double r) {
    Point p(4 * n + 4, 0.0);
    p[2 * n] = r;
    return p;
}

}  // namespace

TEST_CASE("hyperkahler structure of the rigid metric") {
    auto rng = sampling::make_rng(21, "test-rigid");
    for (int n = 0; n <= 2; ++n) {
        const twist::TwistData d(n, 1);
        for (int i = 0; i < 5; ++i) {
            const Point p = sampling::cmap_point(n, 1, rng);
            const twist::HyperkahlerResidual h = twist::verify_hyperkahler(d, p);
            CHECK(h.algebra < 1e-13);
            CHECK(h.compatibility < 1e-11);
            CHECK(h.closedness < 1e-8);
            CHECK(h.decomposition < 1e-11);
            CHECK(h.metric_routes < 1e-10);
            const Eigen::MatrixXd g = geometry::values(d.chart.metric(geometry::seed(p, 1)));
            CHECK(geometry::signature_of(g) == geometry::Signature{4 * n, 4, 0});
        }
    }
}

TEST_CASE("twist data and the elementary deformation at k = 0") {
    const twist::TwistData d(1, 0);
    const Point p{0.2, -0.1, 1.7, 0.3, 0.1, -0.2, 0.4, 0.6};
    CHECK(twist::verify_twist_data(d, p) < 1e-10);
    // g_H = (g_perp - g_HZ) / r^2 when k = 0
    const JetVector s = geometry::seed(p, 1);
    const Eigen::MatrixXd gh = geometry::values(twist::elementary_deformation(d, s));
    const Eigen::MatrixXd expect =
        (geometry::values(twist::orthogonal_part(d, s)) - geometry::values(twist::horizontal_z_part(d, s))) /
        (1.7 * 1.7);
    CHECK(max_abs(gh - expect) < 1e-12);
}

TEST_CASE("twist rules") {
    const twist::TwistData d(1, 2);
    const Point p{0.1, 0.3, 2.9, 0.5, -0.3, 0.2, 0.1, 1.0};
    const twist::TwistPoint tp = twist::twist_point(d, p);
    const int b = d.chart.base_dim();

    // tw(dr) = dr
    twist::DecomposedForm dr{Eigen::VectorXd::Unit(b, d.chart.r_index()), 0.0};
    const Eigen::VectorXd tdr = twist::twist_form(dr, tp);
    CHECK(max_abs(tdr - Eigen::VectorXd::Unit(b + 1, d.chart.r_index())) == 0.0);

    // tw(Z) = -f Z_k and tw(phi)(tw(Z)) = 1
    const twist::DecomposedVector z{Eigen::VectorXd::Zero(b), 1.0};
    const Eigen::VectorXd tz = twist::twist_vector(z, tp);
    CHECK(tz[b] == Approx(-tp.f));
    CHECK(max_abs(tz.head(b)) == 0.0);
    const twist::DecomposedForm phi{Eigen::VectorXd::Zero(b), 1.0};
    CHECK(twist::twist_form(phi, tp).dot(tz) == Approx(1.0).epsilon(1e-12));

    // tw(X^phi) = X^{phi_k} - beta(X) Z_k, so phi_k vanishes on it only up to -beta(X)
    const Eigen::VectorXd x = Eigen::VectorXd::Unit(b, 0);
    const Eigen::VectorXd tx = twist::twist_vector({x, 0.0}, tp);
    CHECK(twist::twisted_connection(tp).dot(tx) == Approx(-tp.beta[0]).epsilon(1e-12));

    auto rng = sampling::make_rng(22, "test-contractions");
    for (int i = 0; i < 10; ++i) {
        const auto c = twist::contraction_identities(tp, sampling::uniform_vector(b, -1, 1, rng),
                                                     sampling::uniform_vector(b, -1, 1, rng));
        for (double v : c) CHECK(v < 1e-12);
    }
}

TEST_CASE("Hamiltonian of flat sections") {
    const twist::TwistData d(1, 1);
    const Point p{0.3, 0.1, 2.0, 0.2, -0.5, 0.4, 0.1, 0.0};
    Eigen::VectorXcd s0 = Eigen::VectorXcd::Zero(2);
    s0[0] = 1.0;
    CHECK(twist::hamiltonian_of_section(d, s0, p).residual < 1e-10);
    Eigen::VectorXcd s1 = Eigen::VectorXcd::Zero(2);
    s1[1] = {0.3, -1.2};
    CHECK(twist::hamiltonian_of_section(d, s1, p).residual < 1e-10);

    // the section through Phi itself has f = Q(Phi, Phi) = 0 at the origin of the w-fibre
    const Point o = origin_point(1, 2.0);
    CHECK(std::abs(twist::hamiltonian_of_section(d, s0, o).value) < 1e-14);
}

TEST_CASE("symmetry twist") {
    const twist::TwistData d(1, 1);
    const Point p{0.2, 0.2, 1.8, 0.1, 0.3, -0.2, 0.5, 0.4};
    const twist::TwistPoint tp = twist::twist_point(d, p);
    const geometry::VectorField zf{d.chart.dim(), [&d](const JetVector& q) { return d.z_field(q); }};
    const twist::SymmetryTwist sz = twist::symmetry_twist(d, zf, p);
    CHECK(sz.f == Approx(tp.f + 1.0));
    CHECK(sz.hamiltonian_residual < 1e-10);

    // d_r does not preserve f_H
    const geometry::VectorField dr{d.chart.dim(), [&d](const JetVector& q) {
                                       JetVector v(d.chart.dim(), q[0].zero_like());
                                       v[d.chart.r_index()] = q[0].constant_like(1.0);
                                       return v;
                                   }};
    CHECK_THROWS_AS(twist::symmetry_twist(d, dr, p), PreconditionError);

    // the complete lift of the U(1) rotation of z_0
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(2, 2);
    rot(0, 0) = {0.0, 1.0};
    const twist::SymmetryTwist st = twist::symmetry_twist(d, twist::complete_lift(d.chart, rot), p);
    CHECK(st.hamiltonian_residual < 1e-10);
    CHECK(st.invariance_residual < 1e-8);
}

TEST_CASE("eval-metric reference values") {
    const cmap::CmapModel m(0, 0);
    const Point p{1.0, 0.0, 0.0, 0.0};
    Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(4, 4);
    expect(3, 3) = 4.0;
    CHECK(max_abs(m.metric(p, cmap::Route::fs) - expect) < 1e-14);
    CHECK(max_abs(m.metric(p, cmap::Route::assembled) - expect) < 1e-12);
    CHECK(max_abs(m.metric(p, cmap::Route::twist) - expect) < 1e-12);
}

TEST_CASE("routes agree and the twist constant is one") {
    auto rng = sampling::make_rng(23, "test-routes");
    for (int n = 0; n <= 2; ++n)
        for (int k = 0; k <= 2; ++k) {
            const cmap::CmapModel m(n, k);
            std::vector<Point> pts;
            for (int i = 0; i < 5; ++i) pts.push_back(sampling::cmap_point(n, k, rng));
            const double c = cmap::fit_twist_constant(m, pts);
            CHECK(c == Approx(1.0).epsilon(1e-12));
            for (const Point& p : pts) {
                const cmap::RouteComparison r = cmap::compare_routes(m, p, c);
                CHECK(r.fs_vs_assembled < 1e-9);
                CHECK(r.fs_vs_twist < 1e-9);
                CHECK(r.griffiths_vs_weil < 1e-12);
                CHECK(r.assembled_forms < 1e-12);
            }
        }
}

TEST_CASE("Weil and Griffiths rearrangements coincide at k = 0") {
    const cmap::CmapModel m(1, 0);
    const JetVector s = geometry::seed({0.1, 0.4, 1.3, 0.2, 0.3, -0.6, 0.1, 2.0}, 1);
    const Eigen::MatrixXd w = geometry::values(m.metric_assembled(s, cmap::Rearrangement::weil));
    const Eigen::MatrixXd g = geometry::values(m.metric_assembled(s, cmap::Rearrangement::griffiths));
    const Eigen::MatrixXd p = geometry::values(m.metric_assembled(s, cmap::Rearrangement::primary));
    CHECK(max_abs(w - g) < 1e-13);
    CHECK(max_abs(w - p) < 1e-13);
}

TEST_CASE("positive definite") {
    const cmap::CmapModel m(1, 1);
    auto rng = sampling::make_rng(24, "test-positive");
    for (int i = 0; i < 50; ++i) {
        const Eigen::MatrixXd g = m.metric(sampling::cmap_point(1, 1, rng), cmap::Route::fs);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("Einstein constant") {
    auto rng = sampling::make_rng(25, "test-einstein");
    for (int n = 0; n <= 1; ++n)
        for (int k = 0; k <= 2; ++k) {
            const cmap::CmapModel m(n, k);
            for (int i = 0; i < 3; ++i) {
                const cmap::EinsteinPoint e = cmap::einstein_at(m, sampling::cmap_point(n, k, rng));
                CHECK(e.residual < 1e-7);
                CHECK(e.lambda == Approx(-2.0 * (n + 3)).epsilon(1e-9));
            }
        }
}

TEST_CASE("Killing fields") {
    const cmap::CmapModel m(1, 1);
    const Point p{0.2, -0.3, 2.1, 0.4, 0.1, -0.3, 0.8, 1.1};
    CHECK(cmap::killing_residual(m, m.z_field(), p) < 1e-10);
    CHECK(cmap::killing_residual(m, m.heisenberg_field(Eigen::VectorXd::Unit(4, 0)), p) < 1e-9);
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(2, 2);
    rot(1, 1) = {0.0, 1.0};
    CHECK(cmap::killing_residual(m, m.generator_field(rot), p) < 1e-9);
}

TEST_CASE("Heisenberg bracket sign") {
    // The bracket comes out as -Q(s1, s2) Z_k in these conventions. The acceptance
    // run reports the stated sign as failing; here both are pinned down.
    const cmap::CmapModel m(1, 1);
    const Point p{0.1, 0.2, 1.9, 0.3, -0.2, 0.5, 0.1, 0.7};
    const Eigen::VectorXd s1 = Eigen::VectorXd::Unit(4, 0), s2 = Eigen::VectorXd::Unit(4, 1);
    const double q = m.polarization(s1, s2);
    CHECK(std::abs(q) > 0.1);
    const cmap::BracketResidual b = cmap::heisenberg_bracket(m, s1, s2, p);
    CHECK(b.flipped < 1e-12);
    CHECK(b.stated == Approx(2.0 * std::abs(q)));
    CHECK(cmap::z_bracket(m, s1, p) < 1e-12);
    CHECK(cmap::heisenberg_composition(m, s1, 0.5 * s2 - s1, p) < 1e-12);
}

TEST_CASE("lifted isometries") {
    const cmap::CmapModel m(1, 1);
    const Point p{0.3, 0.1, 2.2, 0.5, -0.1, 0.2, 0.3, 0.9};
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    const Point q = m.lift_isometry(id, p);
    for (std::size_t a = 0; a < p.size(); ++a) CHECK(q[a] == Approx(p[a]).epsilon(1e-15));

    // diagonal phase on z_0: X -> e^{-i alpha} X
    const double alpha = 0.7;
    Eigen::MatrixXcd a = id;
    a(0, 0) = std::polar(1.0, alpha);
    const Point r = m.lift_isometry(a, p);
    const std::complex<double> x(p[0], p[1]), x2 = std::polar(1.0, -alpha) * x;
    CHECK(r[0] == Approx(x2.real()));
    CHECK(r[1] == Approx(x2.imag()));
    CHECK(r[2] == Approx(p[2]));
    CHECK(cmap::isometry_residual(m, m.lift_isometry_map(a), p) < 1e-8);

    auto rng = sampling::make_rng(26, "test-isometry");
    for (int i = 0; i < 3; ++i) {
        const Eigen::MatrixXcd u = sampling::unitary(1, rng);
        CHECK(cmap::isometry_residual(m, m.lift_isometry_map(u), p) < 1e-8);
    }

    Eigen::MatrixXcd bad = id;
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(m.lift_isometry(bad, p), ArgumentError);
    CHECK_THROWS_AS(m.lift_isometry(Eigen::MatrixXcd::Identity(3, 3), p), ArgumentError);
}

TEST_CASE("generator Hamiltonians") {
    auto rng = sampling::make_rng(27, "test-generator");
    const cmap::CmapModel m(1, 2);
    for (int i = 0; i < 3; ++i) {
        const cmap::GeneratorCheck g = cmap::generator_check(m, sampling::generator(1, rng), sampling::cmap_point(1, 2, rng));
        CHECK(g.hamiltonian < 1e-10);
        CHECK(g.formula < 1e-10);
        CHECK(g.pushforward < 1e-10);
    }
}

TEST_CASE("chart domain of the deformed space") {
    const cmap::CmapModel m(0, 1);
    CHECK_THROWS_AS(m.check_point({0.1, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(m.check_point({1.5, 0.0, 0.0}), ArgumentError);
    CHECK_NOTHROW(m.check_point({1.5, 0.0, 0.0, 0.0}));
    CHECK_THROWS_AS(cmap::CmapModel(4, 0), ArgumentError);
    CHECK_THROWS_AS(cmap::CmapModel(1, -1), ArgumentError);
}
