#include <cmath>

#include "doctest.h"
#include "sugra/errors.hpp"
#include "sugra/geometry.hpp"
#include "sugra/psk.hpp"
#include "sugra/sampling.hpp"

using namespace sugra;
using namespace sugra::geometry;
using doctest::Approx;

namespace {

MetricField euclidean(int dim) {
    return {dim, {dim, 0, 0}, [dim](const JetVector& p) {
                JetMatrix g(dim, dim, p[0].zero_like());
                for (int i = 0; i < dim; ++i) g(i, i) = p[0].constant_like(1.0);
                return g;
            }};
}

// (r, theta) on the flat plane
MetricField polar() {
    return {2, {2, 0, 0}, [](const JetVector& p) {
                JetMatrix g(2, 2, p[0].zero_like());
                g(0, 0) = p[0].constant_like(1.0);
                g(1, 1) = p[0] * p[0];
                return g;
            }};
}

// unit sphere in (theta, phi)
MetricField sphere() {
    return {2, {2, 0, 0}, [](const JetVector& p) {
                JetMatrix g(2, 2, p[0].zero_like());
                g(0, 0) = p[0].constant_like(1.0);
                const Jet s = sin(p[0]);
                g(1, 1) = s * s;
                return g;
            }};
}

double disk_g(const Point& x, int i, int j) {
    const double q = 1.0 - (x[0] * x[0] + x[1] * x[1]);
    return i == j ? 4.0 / (q * q) : 0.0;
}

MetricField disk() {
    return {2, {2, 0, 0}, [](const JetVector& p) {
                const Jet q = 1.0 - (p[0] * p[0] + p[1] * p[1]);
                const Jet f = 4.0 / (q * q);
                JetMatrix g(2, 2, p[0].zero_like());
                g(0, 0) = f;
                g(1, 1) = f;
                return g;
            }};
}

VectorField field(int dim, std::function<JetVector(const JetVector&)> f) { return {dim, std::move(f)}; }

}  // namespace

TEST_CASE("Christoffel symbols") {
    const Tensor3 e = christoffel(euclidean(3), {0.1, -0.4, 2.0});
    CHECK(e.max_abs() == 0.0);

    const Tensor3 c = christoffel(polar(), {2.0, 0.3});
    CHECK(c(0, 1, 1) == Approx(-2.0));
    CHECK(c(1, 0, 1) == Approx(0.5));
    CHECK(c(1, 1, 0) == Approx(0.5));
    CHECK(c(0, 0, 0) == 0.0);
    CHECK(c(1, 1, 1) == 0.0);
    CHECK(c(0, 0, 1) == 0.0);
}

TEST_CASE("Koszul formula by central differences on the Poincare disk") {
    const Point x{0.3, 0.0};
    const double h = 1e-5;
    auto dg = [&](int a, int i, int j) {
        Point xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        return (disk_g(xp, i, j) - disk_g(xm, i, j)) / (2 * h);
    };
    const Tensor3 c = christoffel(disk(), x);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double v = 0;
                for (int l = 0; l < 2; ++l)
                    v += 0.5 * (l == i ? 1.0 / disk_g(x, i, i) : 0.0) * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
                CHECK(std::abs(c(i, j, k) - v) < 1e-6);
            }
}

TEST_CASE("curvature") {
    CHECK(riemann(euclidean(2), {0.3, 0.4}).max_abs() == 0.0);
    const Point p{1.1, 0.4};
    CHECK(scalar_curvature(sphere(), p) == Approx(2.0).epsilon(1e-12));
    const Eigen::MatrixXd ric = ricci(sphere(), p);
    CHECK(ric(0, 0) == Approx(1.0).epsilon(1e-12));
    CHECK(ric(1, 1) == Approx(std::sin(1.1) * std::sin(1.1)).epsilon(1e-12));
    CHECK(std::abs(ric(0, 1)) < 1e-13);

    // Poincare disk has curvature -1
    CHECK(scalar_curvature(disk(), {0.2, -0.5}) == Approx(-2.0).epsilon(1e-10));

    // homogeneity of CH^1
    const psk::ComplexHyperbolic m(1);
    const double s0 = scalar_curvature(m.base_metric_field(), {0.0, 0.0});
    const double s1 = scalar_curvature(m.base_metric_field(), {0.2, 0.0});
    CHECK(s1 == Approx(s0).epsilon(1e-10));
    CHECK(s0 < 0);
}

TEST_CASE("Lie derivative of a metric") {
    const VectorField rot = field(2, [](const JetVector& p) { return JetVector{-p[1], p[0]}; });
    CHECK(lie_derivative_metric(rot, euclidean(2), {0.7, -1.3}).cwiseAbs().maxCoeff() < 1e-15);

    const VectorField euler = field(1, [](const JetVector& p) { return JetVector{p[0]}; });
    const Eigen::MatrixXd l = lie_derivative_metric(euler, euclidean(1), {0.8});
    CHECK(l(0, 0) == Approx(2.0));

    // half the Euler field on the cone scales the cone metric by one
    const psk::ComplexHyperbolic m(1);
    const Point q{0.3, -0.2, 1.5, 0.7};
    const VectorField half_xi{4, [&m](const JetVector& p) {
                                  JetVector v = m.euler_field(p);
                                  for (Jet& c : v) c = c * 0.5;
                                  return v;
                              }};
    const Eigen::MatrixXd lg = lie_derivative_metric(half_xi, m.cone_metric_field(), q);
    const Eigen::MatrixXd g = values(m.cone_metric(seed(q, 1)));
    CHECK((lg - g).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("brackets and exterior derivatives") {
    const VectorField dx = field(2, [](const JetVector& p) { return JetVector{p[0].constant_like(1.0), p[0].zero_like()}; });
    const VectorField xdy = field(2, [](const JetVector& p) { return JetVector{p[0].zero_like(), p[0]}; });
    const Eigen::VectorXd b = lie_bracket(dx, xdy, {0.4, 2.0});
    CHECK(b(0) == Approx(0.0));
    CHECK(b(1) == Approx(1.0));

    const OneForm xdy_form{2, [](const JetVector& p) { return JetVector{p[0].zero_like(), p[0]}; }};
    const Eigen::MatrixXd d = exterior_derivative(xdy_form, {0.4, 2.0});
    CHECK(d(0, 1) == Approx(1.0));
    CHECK(d(1, 0) == Approx(-1.0));

    // d d = 0 on a generic one-form in three variables
    const TwoForm dd{3, [](const JetVector& p) {
                         const JetVector alpha{sin(p[1] * p[2]), p[0] * exp(p[2]), p[0] * p[1] * p[1]};
                         return exterior_derivative(alpha);
                     }};
    CHECK(exterior_derivative(dd, {0.2, -0.7, 0.5}).max_abs() < 1e-13);
}

TEST_CASE("pull-back of metrics") {
    const ChartMap id{2, 2, [](const JetVector& p) { return p; }};
    const Eigen::MatrixXd g = pullback_metric(id, disk(), {0.1, 0.2});
    CHECK((g - values(disk().eval(seed({0.1, 0.2}, 1)))).cwiseAbs().maxCoeff() < 1e-15);

    const ChartMap two{2, 2, [](const JetVector& p) { return JetVector{2.0 * p[0], 2.0 * p[1]}; }};
    const Eigen::MatrixXd e = pullback_metric(two, euclidean(2), {0.5, 0.5});
    CHECK((e - 4.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const ChartMap bad{3, 2, [](const JetVector& p) { return JetVector{p[0], p[1]}; }};
    CHECK_THROWS_AS(pullback_metric(bad, euclidean(2), {0.5, 0.5}), ArgumentError);
}

TEST_CASE("complete lift residual") {
    // tangent bundle of R^2 with the flat connection
    const ConnectionFn flat = [](const JetVector& x) {
        Connection c;
        c.n = 2;
        c.gamma.assign(8, x[0].zero_like());
        return c;
    };
    const VectorField zero = field(2, [](const JetVector& p) { return JetVector{p[0].zero_like(), p[0].zero_like()}; });
    CHECK(complete_lift_residual(zero, flat, {0.3, 0.1}, {1.0, 2.0}) == 0.0);
    const VectorField lin = field(2, [](const JetVector& p) { return JetVector{2.0 * p[0] - p[1], 0.5 * p[1] + p[0]}; });
    CHECK(complete_lift_residual(lin, flat, {0.3, 0.1}, {1.0, 2.0}) < 1e-12);
}

TEST_CASE("signature") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(3, 3) = -2;
    CHECK(signature_of(g) == Signature{3, 1, 0});
    g(0, 0) = 0;
    CHECK(signature_of(g) == Signature{2, 1, 1});
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
    a(0, 1) = 1;
    CHECK_THROWS_AS(check_metric_value(a), ArgumentError);
}

TEST_CASE("dimension mismatches are argument errors") {
    CHECK_THROWS_AS(christoffel(euclidean(3), {0.1, 0.2}), ArgumentError);
    CHECK_THROWS_AS(seed({0.1}, 4), ArgumentError);
}
