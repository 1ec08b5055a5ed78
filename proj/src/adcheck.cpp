#include <cmath>
#include <memory>
#include <random>

#include "sugra/jet.hpp"
#include "sugra/sampling.hpp"
#include "sugra/suites.hpp"

namespace sugra::suites {

namespace {

// Random expression over dim variables. Every operation is smooth on the sampled box:
// denominators, logs and roots are shifted away from their singular sets.
struct Expr {
    enum Op { var, constant, add, sub, mul, quot, sin_, cos_, atan_, exp_, root, logp, power, atan2_, sq };
    Op op = constant;
    int index = 0;
    double c = 0;
    std::unique_ptr<Expr> a, b;
};

std::unique_ptr<Expr> random_expr(int dim, int depth, sampling::Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto e = std::make_unique<Expr>();
    if (depth == 0 || u(rng) < 0.2) {
        if (u(rng) < 0.8) {
            e->op = Expr::var;
            e->index = std::uniform_int_distribution<int>(0, dim - 1)(rng);
        } else {
            e->op = Expr::constant;
            e->c = 2.0 * u(rng) - 1.0;
        }
        return e;
    }
    e->op = static_cast<Expr::Op>(std::uniform_int_distribution<int>(Expr::add, Expr::sq)(rng));
    e->c = 0.3 + u(rng);
    e->a = random_expr(dim, depth - 1, rng);
    if (e->op == Expr::add || e->op == Expr::sub || e->op == Expr::mul || e->op == Expr::quot ||
        e->op == Expr::atan2_)
        e->b = random_expr(dim, depth - 1, rng);
    return e;
}

template <class T>
T eval(const Expr& e, const std::vector<T>& x, const T& one) {
    using std::atan;
    using std::atan2;
    using std::cos;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (e.op) {
        case Expr::var: return x[e.index];
        case Expr::constant: return one * e.c;
        case Expr::add: return eval(*e.a, x, one) + eval(*e.b, x, one);
        case Expr::sub: return eval(*e.a, x, one) - eval(*e.b, x, one);
        case Expr::mul: return eval(*e.a, x, one) * eval(*e.b, x, one);
        case Expr::quot: return eval(*e.a, x, one) / (2.0 + sin(eval(*e.b, x, one)));
        case Expr::sin_: return sin(eval(*e.a, x, one) * e.c);
        case Expr::cos_: return cos(eval(*e.a, x, one));
        case Expr::atan_: return atan(eval(*e.a, x, one));
        case Expr::exp_: return exp(eval(*e.a, x, one) * 0.5);
        case Expr::root: {
            const T v = eval(*e.a, x, one);
            return sqrt(v * v + 1.0);
        }
        case Expr::logp: {
            const T v = eval(*e.a, x, one);
            return log(v * v + e.c);
        }
        case Expr::power: {
            const T v = eval(*e.a, x, one);
            return pow(v * v + 1.0, e.c);
        }
        case Expr::atan2_: return atan2(sin(eval(*e.a, x, one)) + 2.0, eval(*e.b, x, one));
        case Expr::sq: {
            const T v = eval(*e.a, x, one);
            return v * v * e.c;
        }
    }
    return one;
}

std::vector<Jet> seeds(const std::vector<double>& x, int order) {
    std::vector<Jet> v;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        v.push_back(Jet::variable(static_cast<int>(x.size()), i, x[i], order));
    return v;
}

double block_error(const std::vector<double>& ad, const std::vector<double>& fd) {
    double scale = 1.0, err = 0.0;
    for (double v : fd) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < ad.size(); ++i) err = std::max(err, std::abs(ad[i] - fd[i]));
    return err / scale;
}

double check_function(const Expr& e, const std::vector<double>& x) {
    const int d = static_cast<int>(x.size());
    const double h = 1e-5;
    const std::vector<Jet> s3 = seeds(x, 3);
    const Jet f = eval(e, s3, s3[0].constant_like(1.0));
    std::vector<double> g_ad, g_fd, h_ad, h_fd, t_ad, t_fd;
    for (int i = 0; i < d; ++i) {
        std::vector<double> xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g_ad.push_back(f.d(i));
        g_fd.push_back((eval(e, xp, 1.0) - eval(e, xm, 1.0)) / (2 * h));
        // second derivatives from the AD gradient, third from the AD Hessian
        const std::vector<Jet> p1 = seeds(xp, 1), m1 = seeds(xm, 1);
        const Jet fp1 = eval(e, p1, p1[0].constant_like(1.0));
        const Jet fm1 = eval(e, m1, m1[0].constant_like(1.0));
        const std::vector<Jet> p2 = seeds(xp, 2), m2 = seeds(xm, 2);
        const Jet fp2 = eval(e, p2, p2[0].constant_like(1.0));
        const Jet fm2 = eval(e, m2, m2[0].constant_like(1.0));
        for (int j = 0; j < d; ++j) {
            h_ad.push_back(f.d(j, i));
            h_fd.push_back((fp1.d(j) - fm1.d(j)) / (2 * h));
            for (int k = 0; k < d; ++k) {
                t_ad.push_back(f.d(j, k, i));
                t_fd.push_back((fp2.d(j, k) - fm2.d(j, k)) / (2 * h));
            }
        }
    }
    return std::max({block_error(g_ad, g_fd), block_error(h_ad, h_fd), block_error(t_ad, t_fd)});
}

}  // namespace

AdSoundness ad_soundness(int functions, std::uint64_t seed, bool parallel) {
    auto rng = sampling::make_rng(seed, "ad");
    std::vector<std::unique_ptr<Expr>> exprs;
    std::vector<std::vector<double>> points;
    for (int i = 0; i < functions; ++i) {
        const int dim = std::uniform_int_distribution<int>(1, 6)(rng);
        exprs.push_back(random_expr(dim, 4, rng));
        const Eigen::VectorXd x = sampling::uniform_vector(dim, -1.0, 1.0, rng);
        points.emplace_back(x.data(), x.data() + x.size());
    }
    AdSoundness r;
    r.functions = functions;
    r.per_function = map_points(functions, [&](int i) { return check_function(*exprs[i], points[i]); }, parallel);
    for (double v : r.per_function) r.max_error = std::max(r.max_error, v);
    return r;
}

}  // namespace sugra::suites
