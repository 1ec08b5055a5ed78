#include <cmath>

#include "doctest.h"
#include "sugra/errors.hpp"
#include "sugra/jet.hpp"
#include "sugra/suites.hpp"

using namespace sugra;
using doctest::Approx;

TEST_CASE("variable seeds a coordinate function") {
    const Jet x = Jet::variable(2, 0, 3.0, 2);
    CHECK(x.value() == 3.0);
    CHECK(x.d(0) == 1.0);
    CHECK(x.d(1) == 0.0);
    CHECK(x.d(0, 0) == 0.0);
    CHECK(x.d(0, 1) == 0.0);
    CHECK(x.d(1, 1) == 0.0);

    const Jet y = Jet::variable(1, 0, 0.0, 1);
    CHECK(y.value() == 0.0);
    CHECK(y.gradient() == std::vector<double>{1.0});
}

TEST_CASE("bad shapes are argument errors") {
    CHECK_THROWS_AS(Jet::variable(3, 3, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(Jet::variable(3, -1, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(Jet::variable(17, 0, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(Jet::variable(2, 0, 1.0, 4), ArgumentError);
    const Jet a = Jet::variable(2, 0, 1.0, 2);
    const Jet b = Jet::variable(3, 0, 1.0, 2);
    CHECK_THROWS_AS(a + b, ArgumentError);
    const Jet c = Jet::variable(2, 0, 1.0, 1);
    CHECK_THROWS_AS(c.d(0, 0), ArgumentError);
    CHECK_THROWS_AS(a.d(2), ArgumentError);
}

TEST_CASE("arithmetic derivatives") {
    const Jet x = Jet::variable(1, 0, 3.0, 2);
    const Jet sq = x * x;
    CHECK(sq.value() == 9.0);
    CHECK(sq.d(0) == 6.0);
    CHECK(sq.d(0, 0) == 2.0);

    const Jet zero = x - x;
    for (double v : zero.coeffs()) CHECK(v == 0.0);

    const Jet inv = 1.0 / Jet::variable(1, 0, 2.0, 2);
    CHECK(inv.value() == Approx(0.5));
    CHECK(inv.d(0) == Approx(-0.25));
    CHECK(inv.d(0, 0) == Approx(0.25));
}

TEST_CASE("mixed partials are symmetric") {
    const Jet x = Jet::variable(3, 0, 0.4, 3);
    const Jet y = Jet::variable(3, 1, -1.2, 3);
    const Jet z = Jet::variable(3, 2, 0.7, 3);
    const Jet f = x * y * z + sin(x * y) * exp(z);
    CHECK(f.d(0, 1, 2) == Approx(f.d(2, 0, 1)).epsilon(1e-14));
    CHECK(f.d(1, 0) == Approx(f.d(0, 1)).epsilon(1e-14));
    // d^3/dx dy dz of xyz is 1, of sin(xy) e^z it is (cos(xy) - xy sin(xy)) e^z
    const double xy = 0.4 * -1.2;
    CHECK(f.d(0, 1, 2) == Approx(1.0 + (std::cos(xy) - xy * std::sin(xy)) * std::exp(0.7)).epsilon(1e-13));
}

TEST_CASE("elementary functions") {
    const Jet r = sqrt(Jet::variable(1, 0, 4.0, 2));
    CHECK(r.value() == Approx(2.0));
    CHECK(r.d(0) == Approx(0.25));
    CHECK(r.d(0, 0) == Approx(-1.0 / 32.0));

    const Jet e = exp(Jet::variable(1, 0, 0.0, 3));
    CHECK(e.value() == Approx(1.0));
    CHECK(e.d(0) == Approx(1.0));
    CHECK(e.d(0, 0) == Approx(1.0));
    CHECK(e.d(0, 0, 0) == Approx(1.0));

    const Jet t = atan2(Jet::variable(2, 1, 1.0, 2), Jet::variable(2, 0, 1.0, 2));
    CHECK(t.value() == Approx(M_PI / 4));
    CHECK(t.d(0) == Approx(-0.5));
    CHECK(t.d(1) == Approx(0.5));

    const Jet p = pow(Jet::variable(1, 0, 2.0, 3), 3.0);
    CHECK(p.value() == Approx(8.0));
    CHECK(p.d(0, 0, 0) == Approx(6.0));
}

TEST_CASE("domain violations are singularity errors") {
    CHECK_THROWS_AS(log(Jet::variable(1, 0, -1.0, 2)), SingularityError);
    CHECK_THROWS_AS(log(Jet::variable(1, 0, 0.0, 2)), SingularityError);
    CHECK_THROWS_AS(sqrt(Jet::variable(1, 0, -1.0, 2)), SingularityError);
    CHECK_THROWS_AS(1.0 / Jet::variable(1, 0, 0.0, 2), SingularityError);
}

TEST_CASE("partial drops one order") {
    const Jet x = Jet::variable(2, 0, 0.5, 3);
    const Jet y = Jet::variable(2, 1, 2.0, 3);
    const Jet f = x * x * y;
    const Jet fx = f.partial(0);
    CHECK(fx.order() == 2);
    CHECK(fx.value() == Approx(2.0));   // 2xy
    CHECK(fx.d(1) == Approx(1.0));      // 2x
    CHECK(fx.d(0, 1) == Approx(2.0));
}

TEST_CASE("AD against finite differences on random composite functions") {
    const suites::AdSoundness r = suites::ad_soundness(200, 11);
    CHECK(r.functions == 200);
    CHECK(r.max_error < 1e-6);
    // a second seed to keep the generator honest
    CHECK(suites::ad_soundness(50, 12).max_error < 1e-6);
}
