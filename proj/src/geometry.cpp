#include "sugra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sugra::geometry {

namespace {

Jet at(const Jet& a, int o) { return a.order() > o ? a.truncated(o) : a; }

void require_dim(int expected, std::size_t got, const char* what) {
    if (static_cast<int>(got) != expected)
        throw ArgumentError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                            ", got " + std::to_string(got));
}

JetMatrix eval_metric(const MetricField& g, const JetVector& x) {
    JetMatrix m = g.eval(x);
    if (m.rows() != g.dim || m.cols() != g.dim) throw ArgumentError("metric evaluator returned wrong shape");
    return m;
}

}  // namespace

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

JetVector seed(const Point& p, int order) {
    const int n = static_cast<int>(p.size());
    JetVector x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) x.push_back(Jet::variable(n, i, p[i], order));
    return x;
}

Eigen::MatrixXd values(const JetMatrix& m) {
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).value();
    return r;
}

Eigen::VectorXd values(const JetVector& v) {
    Eigen::VectorXd r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].value();
    return r;
}

int min_order(const JetVector& v) {
    int o = Jet::kMaxOrder;
    for (const Jet& x : v) o = std::min(o, x.order());
    return o;
}

int min_order(const JetMatrix& m) {
    int o = Jet::kMaxOrder;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) o = std::min(o, m(i, j).order());
    return o;
}

Connection levi_civita(const JetMatrix& g) {
    const int n = g.rows();
    const int o = min_order(g);
    if (o < 1) throw ArgumentError("Christoffel symbols need a metric jet of order >= 1");
    const JetMatrix ginv = inverse(truncate(g, o - 1));
    // dg[(c * n + a) * n + b] = d_c g_ab
    std::vector<Jet> dg;
    dg.reserve(n * n * n);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) dg.push_back(g(a, b).partial(c));
    auto D = [&](int c, int a, int b) -> const Jet& { return dg[(c * n + a) * n + b]; };

    const Jet zero = ginv(0, 0).zero_like();
    std::vector<Jet> first(n * n * n, zero);  // first[(l * n + i) * n + j]
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet v = (D(i, j, l) + D(j, i, l) - D(l, i, j)) * 0.5;
                first[(l * n + i) * n + j] = v;
                first[(l * n + j) * n + i] = v;
            }
    Connection c;
    c.n = n;
    c.gamma.assign(n * n * n, zero);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet s = zero;
                for (int l = 0; l < n; ++l) s += ginv(k, l) * first[(l * n + i) * n + j];
                c(k, i, j) = s;
                c(k, j, i) = s;
            }
    return c;
}

Connection flat_pullback_connection(const JetVector& y) {
    const int n = static_cast<int>(y.size());
    const int o = min_order(y);
    if (o < 2) throw ArgumentError("transported flat connection needs a map jet of order >= 2");
    if (n == 0 || y[0].dim() != n) throw ArgumentError("transported flat connection needs a square chart map");
    JetMatrix J = jacobian(truncate(y, o));
    const JetMatrix Jinv = truncate(inverse(truncate(J, o - 2)), o - 2);
    Connection c;
    c.n = n;
    c.gamma.assign(n * n * n, Jinv(0, 0).zero_like());
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const Jet h = J(a, k).partial(j);
                for (int i = 0; i < n; ++i) {
                    const Jet t = Jinv(i, a) * h;
                    c(i, j, k) += t;
                    if (k != j) c(i, k, j) += t;
                }
            }
    return c;
}

Tensor4 curvature(const Connection& c) {
    const int n = c.n;
    Tensor4 r(n);
    if (n == 0) return r;
    if (c.gamma[0].order() < 1) throw ArgumentError("curvature needs connection jets of order >= 1");
    auto G = [&](int i, int j, int k) { return c(i, j, k).value(); };
    auto dG = [&](int m, int i, int j, int k) { return c(i, j, k).d(m); };
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = dG(j, l, k, i) - dG(k, l, j, i);
                    for (int m = 0; m < n; ++m) v += G(l, j, m) * G(m, k, i) - G(l, k, m) * G(m, j, i);
                    r(l, i, j, k) = v;
                }
    return r;
}

Eigen::MatrixXd ricci_from_riemann(const Tensor4& r) {
    const int n = r.n;
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int j = 0; j < n; ++j) ric(a, b) += r(j, b, j, a);
    return ric;
}

Tensor4 lower_first(const Tensor4& r, const Eigen::MatrixXd& g) {
    const int n = r.n;
    Tensor4 out(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = 0.0;
                    for (int m = 0; m < n; ++m) v += g(l, m) * r(m, i, j, k);
                    out(l, i, j, k) = v;
                }
    return out;
}

JetMatrix covariant_derivative(const Connection& c, const JetVector& y) {
    const int n = c.n;
    require_dim(n, y.size(), "covariant_derivative");
    const int o = std::min(min_order(y) - 1, c.gamma.empty() ? 0 : c.gamma[0].order());
    if (o < 0) throw ArgumentError("covariant derivative needs a vector field jet of order >= 1");
    JetMatrix r(n, n, at(y[0], o).zero_like());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet v = at(y[i].partial(j), o);
            for (int m = 0; m < n; ++m) v += at(c(i, j, m), o) * at(y[m], o);
            r(i, j) = v;
        }
    return r;
}

JetMatrix covariant_derivative_form(const Connection& c, const JetVector& alpha) {
    const int n = c.n;
    require_dim(n, alpha.size(), "covariant_derivative_form");
    const int o = std::min(min_order(alpha) - 1, c.gamma.empty() ? 0 : c.gamma[0].order());
    if (o < 0) throw ArgumentError("covariant derivative needs a form jet of order >= 1");
    JetMatrix r(n, n, at(alpha[0], o).zero_like());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet v = at(alpha[j].partial(i), o);
            for (int k = 0; k < n; ++k) v -= at(c(k, i, j), o) * at(alpha[k], o);
            r(i, j) = v;
        }
    return r;
}

Jet directional(const JetVector& x, const Jet& f) {
    const int n = static_cast<int>(x.size());
    const int o = std::min(min_order(x), f.order() - 1);
    if (o < 0) throw ArgumentError("directional derivative needs a function jet of order >= 1");
    Jet v = Jet(f.dim(), o);
    for (int k = 0; k < n; ++k) v += at(x[k], o) * at(f.partial(k), o);
    return v;
}

JetVector lie_bracket(const JetVector& x, const JetVector& y) {
    const int n = static_cast<int>(x.size());
    require_dim(n, y.size(), "lie_bracket");
    const int o = std::min(min_order(x), min_order(y)) - 1;
    if (o < 0) throw ArgumentError("Lie bracket needs vector field jets of order >= 1");
    JetVector r;
    for (int i = 0; i < n; ++i) {
        Jet v(x[0].dim(), o);
        for (int j = 0; j < n; ++j) v += at(x[j], o) * y[i].partial(j).truncated(o) - at(y[j], o) * x[i].partial(j).truncated(o);
        r.push_back(v);
    }
    return r;
}

JetMatrix lie_derivative(const JetVector& x, const JetMatrix& t) {
    const int n = static_cast<int>(x.size());
    if (t.rows() != n || t.cols() != n) throw ArgumentError("lie_derivative: tensor shape mismatch");
    const int o = std::min(min_order(x), min_order(t)) - 1;
    if (o < 0) throw ArgumentError("Lie derivative needs jets of order >= 1");
    std::vector<Jet> dx;  // dx[k * n + i] = d_i X^k
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) dx.push_back(x[k].partial(i).truncated(o));
    JetMatrix r(n, n, Jet(x[0].dim(), o));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet v(x[0].dim(), o);
            for (int k = 0; k < n; ++k) {
                v += at(x[k], o) * t(i, j).partial(k).truncated(o);
                v += at(t(k, j), o) * dx[k * n + i];
                v += at(t(i, k), o) * dx[k * n + j];
            }
            r(i, j) = v;
        }
    return r;
}

JetVector lie_derivative_form(const JetVector& x, const JetVector& alpha) {
    const int n = static_cast<int>(x.size());
    require_dim(n, alpha.size(), "lie_derivative_form");
    const int o = std::min(min_order(x), min_order(alpha)) - 1;
    if (o < 0) throw ArgumentError("Lie derivative needs jets of order >= 1");
    JetVector r;
    for (int i = 0; i < n; ++i) {
        Jet v(x[0].dim(), o);
        for (int k = 0; k < n; ++k) {
            v += at(x[k], o) * alpha[i].partial(k).truncated(o);
            v += at(alpha[k], o) * x[k].partial(i).truncated(o);
        }
        r.push_back(v);
    }
    return r;
}

JetMatrix exterior_derivative(const JetVector& alpha) {
    const int n = static_cast<int>(alpha.size());
    const int o = min_order(alpha) - 1;
    if (o < 0) throw ArgumentError("exterior derivative needs jets of order >= 1");
    JetMatrix r(n, n, Jet(alpha[0].dim(), o));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Jet v = alpha[j].partial(i).truncated(o) - alpha[i].partial(j).truncated(o);
            r(i, j) = v;
            r(j, i) = -v;
        }
    return r;
}

std::vector<Jet> exterior_derivative(const JetMatrix& beta) {
    const int n = beta.rows();
    const int o = min_order(beta) - 1;
    if (o < 0) throw ArgumentError("exterior derivative needs jets of order >= 1");
    std::vector<Jet> r(n * n * n, Jet(beta(0, 0).dim(), o));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r[(i * n + j) * n + k] = beta(j, k).partial(i).truncated(o) + beta(k, i).partial(j).truncated(o) +
                                         beta(i, j).partial(k).truncated(o);
    return r;
}

JetVector differential(const Jet& f) {
    JetVector r;
    for (int i = 0; i < f.dim(); ++i) r.push_back(f.partial(i));
    return r;
}

JetMatrix jacobian(const JetVector& y) {
    const int m = static_cast<int>(y.size());
    if (m == 0) return JetMatrix();
    const int n = y[0].dim();
    const int o = min_order(y) - 1;
    if (o < 0) throw ArgumentError("Jacobian needs jets of order >= 1");
    JetMatrix J(m, n, Jet(n, o));
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < n; ++i) J(a, i) = y[a].partial(i).truncated(o);
    return J;
}

JetMatrix pullback(const JetMatrix& g_along, const JetMatrix& jac) {
    const int m = jac.rows();
    const int n = jac.cols();
    if (g_along.rows() != m || g_along.cols() != m) throw ArgumentError("pullback: shape mismatch");
    const int o = std::min(min_order(g_along), min_order(jac));
    const JetMatrix g = truncate(g_along, o);
    const JetMatrix J = truncate(jac, o);
    JetMatrix gJ(m, n, Jet(J(0, 0).dim(), o));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int j = 0; j < n; ++j) gJ(a, j) += g(a, b) * J(b, j);
    JetMatrix r(n, n, Jet(J(0, 0).dim(), o));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet v(J(0, 0).dim(), o);
            for (int a = 0; a < m; ++a) v += J(a, i) * gJ(a, j);
            r(i, j) = v;
            if (i != j) {
                Jet w(J(0, 0).dim(), o);
                for (int a = 0; a < m; ++a) w += J(a, j) * gJ(a, i);
                r(j, i) = w;
            }
        }
    return r;
}

JetVector contract(const JetMatrix& t, const JetVector& x) {
    const int n = t.rows();
    require_dim(n, x.size(), "contract");
    const int o = std::min(min_order(t), min_order(x));
    JetVector r;
    for (int j = 0; j < t.cols(); ++j) {
        Jet v(x[0].dim(), o);
        for (int i = 0; i < n; ++i) v += at(x[i], o) * at(t(i, j), o);
        r.push_back(v);
    }
    return r;
}

namespace {

// Seed order so that fields which consume derivatives themselves (pull-backs,
// exterior derivatives of closed forms) still leave `need` orders.
int reseed_order(int need, int got) {
    if (got >= need) return need;
    const int q = 2 * need - got;
    if (q > Jet::kMaxOrder) throw ArgumentError("field consumes too many derivative orders");
    return q;
}

JetMatrix metric_jets(const MetricField& g, const Point& p, int need) {
    JetMatrix m = eval_metric(g, seed(p, need));
    const int q = reseed_order(need, min_order(m));
    return q == need ? m : eval_metric(g, seed(p, q));
}

}  // namespace

Tensor3 christoffel(const MetricField& g, const Point& p) {
    require_dim(g.dim, p.size(), "christoffel");
    const Connection c = levi_civita(metric_jets(g, p, 1));
    Tensor3 t(g.dim);
    for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i] = c.gamma[i].value();
    return t;
}

Tensor4 riemann(const MetricField& g, const Point& p) {
    require_dim(g.dim, p.size(), "riemann");
    return curvature(levi_civita(metric_jets(g, p, 2)));
}

Eigen::MatrixXd ricci(const MetricField& g, const Point& p) { return ricci_from_riemann(riemann(g, p)); }

double scalar_curvature(const MetricField& g, const Point& p) {
    require_dim(g.dim, p.size(), "scalar_curvature");
    const JetMatrix gj = metric_jets(g, p, 2);
    const Eigen::MatrixXd ric = ricci_from_riemann(curvature(levi_civita(gj)));
    const Eigen::MatrixXd ginv = values(gj).inverse();
    return (ginv.cwiseProduct(ric.transpose())).sum();
}

Eigen::MatrixXd lie_derivative_metric(const VectorField& x, const MetricField& g, const Point& p) {
    require_dim(g.dim, p.size(), "lie_derivative_metric");
    require_dim(g.dim, static_cast<std::size_t>(x.dim), "lie_derivative_metric field");
    JetVector s = seed(p, 1);
    JetVector xv = x.eval(s);
    JetMatrix gm = eval_metric(g, s);
    const int q = reseed_order(1, std::min(min_order(xv), min_order(gm)));
    if (q != 1) {
        s = seed(p, q);
        xv = x.eval(s);
        gm = eval_metric(g, s);
    }
    return values(lie_derivative(xv, gm));
}

Eigen::VectorXd lie_bracket(const VectorField& x, const VectorField& y, const Point& p) {
    require_dim(x.dim, p.size(), "lie_bracket");
    require_dim(x.dim, static_cast<std::size_t>(y.dim), "lie_bracket field");
    JetVector s = seed(p, 1);
    JetVector xv = x.eval(s), yv = y.eval(s);
    const int q = reseed_order(1, std::min(min_order(xv), min_order(yv)));
    if (q != 1) {
        s = seed(p, q);
        xv = x.eval(s);
        yv = y.eval(s);
    }
    return values(lie_bracket(xv, yv));
}

Eigen::MatrixXd exterior_derivative(const OneForm& alpha, const Point& p) {
    require_dim(alpha.dim, p.size(), "exterior_derivative");
    JetVector a = alpha.eval(seed(p, 1));
    const int q = reseed_order(1, min_order(a));
    if (q != 1) a = alpha.eval(seed(p, q));
    return values(exterior_derivative(a));
}

Tensor3 exterior_derivative(const TwoForm& beta, const Point& p) {
    require_dim(beta.dim, p.size(), "exterior_derivative");
    JetMatrix b = beta.eval(seed(p, 1));
    const int q = reseed_order(1, min_order(b));
    if (q != 1) b = beta.eval(seed(p, q));
    const std::vector<Jet> d = exterior_derivative(b);
    Tensor3 t(beta.dim);
    for (std::size_t i = 0; i < d.size(); ++i) t.a[i] = d[i].value();
    return t;
}

Eigen::MatrixXd pullback_metric(const ChartMap& f, const MetricField& g, const Point& p) {
    require_dim(f.source_dim, p.size(), "pullback_metric");
    if (f.target_dim != g.dim) throw ArgumentError("pullback_metric: map target does not match metric");
    const JetVector y = f.eval(seed(p, 1));
    require_dim(f.target_dim, y.size(), "pullback_metric image");
    return values(pullback(eval_metric(g, y), jacobian(y)));
}

double complete_lift_residual(const VectorField& x, const ConnectionFn& nabla, const Point& base, const Point& v) {
    const int n = x.dim;
    require_dim(n, base.size(), "complete_lift base");
    require_dim(n, v.size(), "complete_lift fibre");
    const JetVector s = seed(base, 2);
    const JetVector X = x.eval(s);
    const Connection c = nabla(s);
    require_dim(n, static_cast<std::size_t>(c.n), "complete_lift connection");
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        // complete lift, from the derivative of the flow
        double lift_h = X[i].value();
        double lift_v = 0.0;
        for (int j = 0; j < n; ++j) lift_v += v[j] * X[i].d(j);
        // horizontal lift plus vertical part of nabla X applied to the tautological section
        double hor_h = X[i].value();
        double hor_v = 0.0;
        double vert = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) hor_v -= c(i, j, k).value() * X[j].value() * v[k];
        for (int j = 0; j < n; ++j) {
            double nx = X[i].d(j);
            for (int k = 0; k < n; ++k) nx += c(i, j, k).value() * X[k].value();
            vert += v[j] * nx;
        }
        res = std::max(res, std::abs(lift_h - hor_h));
        res = std::max(res, std::abs(lift_v - (hor_v + vert)));
    }
    return res;
}

Signature signature_of(const Eigen::MatrixXd& g, double tol) {
    const Eigen::MatrixXd s = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Signature sig;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev[i] > tol * scale)
            ++sig.positive;
        else if (ev[i] < -tol * scale)
            ++sig.negative;
        else
            ++sig.zero;
    }
    return sig;
}

void check_metric_value(const Eigen::MatrixXd& g, double tol) {
    if (g.rows() != g.cols()) throw ArgumentError("metric must be square");
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > tol * scale) throw ArgumentError("metric is not symmetric");
    if (signature_of(g, tol).zero > 0) throw SingularityError("metric is degenerate");
}

}  // namespace sugra::geometry
