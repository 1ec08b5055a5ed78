#include "sugra/cmap.hpp"

#include <cmath>
#include <string>

namespace sugra::cmap {

using cd = std::complex<double>;
using geometry::values;

namespace {

double frob(const Eigen::MatrixXd& m) { return m.norm(); }

Eigen::MatrixXd hermitian_form_j(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n + 1, n + 1);
    j(0, 0) = -1.0;
    return j;
}

}  // namespace

const char* route_name(Route r) {
    switch (r) {
        case Route::fs: return "fs";
        case Route::assembled: return "assembled";
        case Route::twist: return "twist";
    }
    return "?";
}

Route parse_route(const std::string& s) {
    if (s == "fs") return Route::fs;
    if (s == "assembled") return Route::assembled;
    if (s == "twist") return Route::twist;
    throw ArgumentError("unknown metric route '" + s + "' (expected fs, assembled or twist)");
}

CmapModel::CmapModel(int n, int k) : k_(k), data_(n, static_cast<double>(k)) {
    if (n < 0 || n > 3) throw ArgumentError("n must lie in 0..3");
    if (k < 0) throw ArgumentError("k must be a non-negative integer");
}

void CmapModel::check_point(const Point& p) const {
    if (static_cast<int>(p.size()) != dim())
        throw ArgumentError("chart point needs " + std::to_string(dim()) + " coordinates, got " +
                            std::to_string(p.size()));
    double x2 = 0;
    for (int a = 0; a < 2 * n(); ++a) x2 += p[a] * p[a];
    if (!(x2 < 1.0)) throw DomainError("chart point needs |X| < 1");
    const double r = p[r_index()];
    if (!(r > 0.0) || !(r * r - 2.0 * k_ > 1e-8))
        throw DomainError("chart point needs r > 0 and r^2 - 2k > 1e-8 (r = " + std::to_string(r) +
                          ", k = " + std::to_string(k_) + ")");
    for (double v : p)
        if (!std::isfinite(v)) throw DomainError("chart point has a non-finite coordinate");
}

JetMatrix CmapModel::metric_fs(const JetVector& p) const {
    const int N = dim();
    const double k = k_;
    const Jet& r = p[r_index()];
    if (!(r.value() * r.value() - 2.0 * k > 1e-8)) throw DomainError("metric needs r^2 > 2k");
    Jet s = r.constant_like(1.0);
    for (int a = 0; a < 2 * n(); ++a) s -= p[a] * p[a];
    if (!(s.value() > 0.0)) throw DomainError("metric needs |X| < 1");
    const Jet r2 = r * r;
    const Jet rho = r2 - 2.0 * k;
    const Jet sig = r2 + 2.0 * k;
    const Jet rho2 = rho * rho;
    JetMatrix g(N, N, r.zero_like());
    g(r_index(), r_index()) = sig / rho2;

    // r^2/rho times the hyperbolic metric
    const Jet cm = r2 / rho;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) {
            const CJet xi(p[2 * i], p[2 * i + 1]);
            const CJet xj(p[2 * j], p[2 * j + 1]);
            CJet h = xi * xj.conj() / (s * s);
            if (i == j) h.re += 1.0 / s;
            g(2 * i, 2 * j) += cm * h.re;
            g(2 * i, 2 * j + 1) -= cm * h.im;
            g(2 * i + 1, 2 * j) += cm * h.im;
            g(2 * i + 1, 2 * j + 1) += cm * h.re;
        }

    // (sum_{i>=1} |dw_i|^2 - |dw_0|^2) / rho
    for (int i = 0; i <= n(); ++i) {
        const Jet e = (i == 0 ? -1.0 : 1.0) / rho;
        g(w_index(i, 0), w_index(i, 0)) += e;
        g(w_index(i, 1), w_index(i, 1)) += e;
    }

    // 2 r^2 / rho^2 |dw_0 - sum conj(X_j) dw_j|^2 / (1 - |X|^2)
    CJetVector L(N, CJet(r.zero_like()));
    L[w_index(0, 0)] = CJet::constant_like(r, 1.0);
    L[w_index(0, 1)] = CJet::constant_like(r, cd(0.0, 1.0));
    for (int j = 1; j <= n(); ++j) {
        const CJet xb = CJet(p[2 * (j - 1)], p[2 * (j - 1) + 1]).conj();
        L[w_index(j, 0)] = -xb;
        L[w_index(j, 1)] = xb * cd(0.0, -1.0);
    }
    const Jet cl = 2.0 * r2 / (rho2 * s);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a <= r_index() || b <= r_index() || a == t_index() || b == t_index()) continue;
            g(a, b) += cl * (L[a].conj() * L[b]).re;
        }

    // 4 r^2 / (sigma rho^2) Theta^2,
    // Theta = dt + k Im(sum conj(X) dX)/(1 - |X|^2) - Im(sum_{i>=1} conj(w_i) dw_i - conj(w_0) dw_0)/2
    JetVector th(N, r.zero_like());
    th[t_index()] = r.constant_like(1.0);
    for (int m = 0; m < n(); ++m) {
        th[2 * m] -= k * p[2 * m + 1] / s;
        th[2 * m + 1] += k * p[2 * m] / s;
    }
    for (int i = 0; i <= n(); ++i) {
        const double e = i == 0 ? -1.0 : 1.0;
        th[w_index(i, 0)] += 0.5 * e * p[w_index(i, 1)];
        th[w_index(i, 1)] -= 0.5 * e * p[w_index(i, 0)];
    }
    const Jet ct = 4.0 * r2 / (sig * rho2);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) g(a, b) += ct * th[a] * th[b];
    return g;
}

JetMatrix CmapModel::metric_assembled(const JetVector& p, Rearrangement form) const {
    const twist::RigidChart& c = data_.chart;
    const vphs::HodgeBundle& e = c.bundle();
    const int N = dim();
    const double k = k_;
    const Jet& r = p[r_index()];
    if (!(r.value() * r.value() - 2.0 * k > 1e-8)) throw DomainError("metric needs r^2 > 2k");
    const Jet r2 = r * r;
    const Jet rho = r2 - 2.0 * k;
    const Jet sig = r2 + 2.0 * k;
    const Jet rho2 = rho * rho;
    const JetVector x(p.begin(), p.begin() + 2 * n());

    JetMatrix hw;
    Jet cl;
    switch (form) {
        case Rearrangement::primary:
            hw = c.section_form(e.hermitian_lm(x), p);
            cl = sig / rho2;
            break;
        case Rearrangement::griffiths:
            hw = c.section_form(e.hermitian_griffiths(x), p);
            cl = 2.0 * r2 / rho2;
            break;
        case Rearrangement::weil:
            hw = c.section_form(e.hermitian_weil(x), p);
            cl = r.constant_like(4.0 * k) / rho2;
            break;
    }
    const JetMatrix hl = c.section_form(e.hermitian_l(x), p);

    // Theta = phi_k + beta with phi_k = dt + k A
    JetVector th = data_.beta(p);
    const JetVector A = data_.horizontal_potential(p);
    for (int a = 0; a < 2 * n(); ++a) th[a] += k * A[a];
    th[t_index()] += 1.0;

    JetMatrix g(N, N, r.zero_like());
    const Jet inv = 1.0 / rho;
    const Jet ct = 4.0 * r2 / (sig * rho2);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) g(a, b) = inv * hw(a, b) + cl * hl(a, b) + ct * th[a] * th[b];
    g(r_index(), r_index()) += sig / rho2;
    if (n() > 0) {
        const JetMatrix gm = c.cone().base_metric(x);
        const Jet cm = r2 / rho;
        for (int a = 0; a < 2 * n(); ++a)
            for (int b = 0; b < 2 * n(); ++b) g(a, b) += cm * gm(a, b);
    }
    return g;
}

Eigen::MatrixXd CmapModel::metric_twist(const Point& p) const {
    check_point(p);
    return twist::twist_elementary_deformation(data_, p);
}

Eigen::MatrixXd CmapModel::metric(const Point& p, Route route, double c) const {
    check_point(p);
    switch (route) {
        case Route::fs: return values(metric_fs(geometry::seed(p, 1)));
        case Route::assembled: return values(metric_assembled(geometry::seed(p, 1)));
        case Route::twist: return c * metric_twist(p);
    }
    return {};
}

geometry::MetricField CmapModel::metric_field(Route route) const {
    geometry::MetricField g;
    g.dim = dim();
    g.signature = {dim(), 0, 0};
    switch (route) {
        case Route::fs:
            g.eval = [this](const JetVector& p) { return metric_fs(p); };
            break;
        case Route::assembled:
            g.eval = [this](const JetVector& p) { return metric_assembled(p); };
            break;
        case Route::twist:
            throw ArgumentError("the twist route is evaluated pointwise only");
    }
    return g;
}

Eigen::VectorXcd CmapModel::section_coefficients(const Eigen::VectorXd& s) const {
    if (s.size() != 2 * n() + 2) throw ArgumentError("flat section needs 2n + 2 real coefficients");
    Eigen::VectorXcd a(n() + 1);
    for (int i = 0; i <= n(); ++i) a[i] = cd(s[2 * i], s[2 * i + 1]);
    return a;
}

double CmapModel::polarization(const Eigen::VectorXd& s1, const Eigen::VectorXd& s2) const {
    // flat sections pair to a constant; evaluate in the frame at X = 0
    const vphs::HodgeBundle& e = data_.chart.bundle();
    const JetVector x = n() == 0 ? JetVector{} : geometry::seed(Point(2 * n(), 0.0), 1);
    const CJetMatrix P = e.parallel_frame(x);
    const CJetMatrix Q = e.polarization(x);
    const int R = e.rank();
    Eigen::MatrixXcd Pv(R, R), Qv(R, R);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < R; ++j) {
            Pv(i, j) = P(i, j).value();
            Qv(i, j) = Q(i, j).value();
        }
    auto vec = [&](const Eigen::VectorXd& s) {
        const Eigen::VectorXcd a = section_coefficients(s);
        Eigen::VectorXcd c(R);
        c << a, a.conjugate();
        return Eigen::VectorXcd(Pv * c);
    };
    const cd q = (vec(s1).transpose() * Qv * vec(s2)).value();
    return q.real();
}

Jet CmapModel::section_pairing(const Eigen::VectorXd& s, const JetVector& p) const {
    const JetVector x(p.begin(), p.begin() + 2 * n());
    return data_.chart.flat_section_pairing(section_coefficients(s), data_.chart.bundle().polarization(x), p).re;
}

geometry::VectorField CmapModel::z_field() const {
    const int ti = t_index();
    return {dim(), [ti](const JetVector& p) {
                JetVector v(p.size(), p[0].zero_like());
                v[ti] = p[0].constant_like(1.0);
                return v;
            }};
}

geometry::VectorField CmapModel::heisenberg_field(const Eigen::VectorXd& s) const {
    section_coefficients(s);
    return {dim(), [this, s](const JetVector& p) {
                JetVector v(p.size(), p[0].zero_like());
                for (int i = 0; i <= n(); ++i) {
                    v[w_index(i, 0)] = p[0].constant_like(s[2 * i]);
                    v[w_index(i, 1)] = p[0].constant_like(s[2 * i + 1]);
                }
                v[t_index()] = 0.5 * section_pairing(s, p);
                return v;
            }};
}

geometry::ChartMap CmapModel::heisenberg_map(const Eigen::VectorXd& s) const {
    section_coefficients(s);
    return {dim(), dim(), [this, s](const JetVector& p) {
                JetVector y = p;
                for (int i = 0; i <= n(); ++i) {
                    y[w_index(i, 0)] += s[2 * i];
                    y[w_index(i, 1)] += s[2 * i + 1];
                }
                y[t_index()] += 0.5 * section_pairing(s, p);
                return y;
            }};
}

Point CmapModel::heisenberg_isometry(const Eigen::VectorXd& s, const Point& p) const {
    check_point(p);
    const Eigen::VectorXd y = values(heisenberg_map(s).eval(geometry::seed(p, 1)));
    return Point(y.data(), y.data() + y.size());
}

geometry::ChartMap CmapModel::t_shift(double dt) const {
    const int ti = t_index();
    return {dim(), dim(), [ti, dt](const JetVector& p) {
                JetVector y = p;
                y[ti] += dt;
                return y;
            }};
}

void check_unitary(const Eigen::MatrixXcd& a, int n, double tol) {
    if (a.rows() != n + 1 || a.cols() != n + 1) throw ArgumentError("isometry matrix must be (n+1) x (n+1)");
    const Eigen::MatrixXcd j = hermitian_form_j(n).cast<cd>();
    const double res = (a.adjoint() * j * a - j).cwiseAbs().maxCoeff();
    if (!(res <= tol))
        throw ArgumentError("matrix does not preserve the (n,1) Hermitian form (residual " + std::to_string(res) + ")");
}

void check_generator(const Eigen::MatrixXcd& b, int n, double tol) {
    if (b.rows() != n + 1 || b.cols() != n + 1) throw ArgumentError("generator must be (n+1) x (n+1)");
    const Eigen::MatrixXcd j = hermitian_form_j(n).cast<cd>();
    const double res = (b.adjoint() * j + j * b).cwiseAbs().maxCoeff();
    if (!(res <= tol))
        throw ArgumentError("generator is not in u(n,1) (residual " + std::to_string(res) + ")");
}

geometry::ChartMap CmapModel::lift_isometry_map(const Eigen::MatrixXcd& a) const {
    check_unitary(a, n());
    return {dim(), dim(), [this, a](const JetVector& p) {
                const Jet& like = p[0];
                const int n1 = n() + 1;
                // (1, X) -> A (1, X)
                CJetVector v(n1, CJet(like.zero_like()));
                for (int i = 0; i < n1; ++i) {
                    v[i] = CJet::constant_like(like, a(i, 0));
                    for (int l = 1; l < n1; ++l)
                        v[i] = v[i] + CJet(p[2 * (l - 1)], p[2 * (l - 1) + 1]) * a(i, l);
                }
                JetVector y = p;
                for (int j = 1; j < n1; ++j) {
                    const CJet xj = v[j] / v[0];
                    y[2 * (j - 1)] = xj.re;
                    y[2 * (j - 1) + 1] = xj.im;
                }
                for (int i = 0; i < n1; ++i) {
                    CJet w(like.zero_like());
                    for (int l = 0; l < n1; ++l) w = w + CJet(p[w_index(l, 0)], p[w_index(l, 1)]) * a(i, l);
                    y[w_index(i, 0)] = w.re;
                    y[w_index(i, 1)] = w.im;
                }
                y[t_index()] = p[t_index()] - static_cast<double>(k_) * atan2(v[0].im, v[0].re);
                return y;
            }};
}

Point CmapModel::lift_isometry(const Eigen::MatrixXcd& a, const Point& p) const {
    check_point(p);
    const Eigen::VectorXd y = values(lift_isometry_map(a).eval(geometry::seed(p, 1)));
    return Point(y.data(), y.data() + y.size());
}

Eigen::MatrixXd CmapModel::lift_isometry_jacobian(const Eigen::MatrixXcd& a, const Point& p) const {
    check_point(p);
    return values(geometry::jacobian(lift_isometry_map(a).eval(geometry::seed(p, 1))));
}

geometry::VectorField CmapModel::generator_field(const Eigen::MatrixXcd& b) const {
    check_generator(b, n());
    return {dim(), [this, b](const JetVector& p) {
                const Jet& like = p[0];
                const int n1 = n() + 1;
                auto X = [&](int l) { return CJet(p[2 * (l - 1)], p[2 * (l - 1) + 1]); };
                CJetVector v(n1, CJet(like.zero_like()));
                for (int i = 0; i < n1; ++i) {
                    v[i] = CJet::constant_like(like, b(i, 0));
                    for (int l = 1; l < n1; ++l) v[i] = v[i] + X(l) * b(i, l);
                }
                JetVector y(p.size(), like.zero_like());
                for (int j = 1; j < n1; ++j) {
                    const CJet d = v[j] - X(j) * v[0];
                    y[2 * (j - 1)] = d.re;
                    y[2 * (j - 1) + 1] = d.im;
                }
                for (int i = 0; i < n1; ++i) {
                    CJet w(like.zero_like());
                    for (int l = 0; l < n1; ++l) w = w + CJet(p[w_index(l, 0)], p[w_index(l, 1)]) * b(i, l);
                    y[w_index(i, 0)] = w.re;
                    y[w_index(i, 1)] = w.im;
                }
                y[t_index()] = -static_cast<double>(k_) * v[0].im;
                return y;
            }};
}

Point CmapModel::rigid_point(const Point& p) const {
    Point q = p;
    q[t_index()] = 0.0;
    return q;
}

double relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("relative_difference: shape mismatch");
    const double scale = b.cwiseAbs().maxCoeff();
    const double d = (a - b).cwiseAbs().maxCoeff();
    return scale > 0.0 ? d / scale : d;
}

RouteComparison compare_routes(const CmapModel& m, const Point& p, double c) {
    m.check_point(p);
    const JetVector s = geometry::seed(p, 1);
    const Eigen::MatrixXd fs = values(m.metric_fs(s));
    const Eigen::MatrixXd as = values(m.metric_assembled(s));
    const Eigen::MatrixXd gr = values(m.metric_assembled(s, Rearrangement::griffiths));
    const Eigen::MatrixXd we = values(m.metric_assembled(s, Rearrangement::weil));
    const Eigen::MatrixXd tw = m.metric_twist(p);
    RouteComparison r;
    r.fs_vs_assembled = relative_difference(as, fs);
    r.fs_vs_twist = relative_difference(c * tw, fs);
    r.griffiths_vs_weil = relative_difference(gr, we);
    r.assembled_forms = relative_difference(as, gr);
    r.twist_ratio = tw.cwiseProduct(fs).sum() / tw.cwiseProduct(tw).sum();
    return r;
}

EinsteinPoint einstein_at(const CmapModel& m, const Point& p) {
    m.check_point(p);
    const Eigen::MatrixXd ric = geometry::ricci(m.metric_field(), p);
    const Eigen::MatrixXd g = values(m.metric_fs(geometry::seed(p, 1)));
    EinsteinPoint e;
    e.lambda = ric.cwiseProduct(g).sum() / g.cwiseProduct(g).sum();
    e.residual = frob(ric - e.lambda * g) / frob(g);
    return e;
}

double killing_residual(const CmapModel& m, const geometry::VectorField& v, const Point& p) {
    m.check_point(p);
    return geometry::lie_derivative_metric(v, m.metric_field(), p).cwiseAbs().maxCoeff();
}

BracketResidual heisenberg_bracket(const CmapModel& m, const Eigen::VectorXd& s1, const Eigen::VectorXd& s2,
                                   const Point& p) {
    m.check_point(p);
    const Eigen::VectorXd br = geometry::lie_bracket(m.heisenberg_field(s1), m.heisenberg_field(s2), p);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m.dim());
    z[m.t_index()] = m.polarization(s1, s2);
    return {(br - z).cwiseAbs().maxCoeff(), (br + z).cwiseAbs().maxCoeff()};
}

double z_bracket(const CmapModel& m, const Eigen::VectorXd& s, const Point& p) {
    m.check_point(p);
    return geometry::lie_bracket(m.heisenberg_field(s), m.z_field(), p).cwiseAbs().maxCoeff();
}

double heisenberg_composition(const CmapModel& m, const Eigen::VectorXd& s1, const Eigen::VectorXd& s2,
                              const Point& p) {
    m.check_point(p);
    const JetVector x = geometry::seed(p, 1);
    const Eigen::VectorXd lhs = values(m.heisenberg_map(s1).eval(m.heisenberg_map(s2).eval(x)));
    const Eigen::VectorXd rhs =
        values(m.heisenberg_map(s1 + s2).eval(m.t_shift(0.5 * m.polarization(s1, s2)).eval(x)));
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double isometry_residual(const CmapModel& m, const geometry::ChartMap& f, const Point& p) {
    m.check_point(p);
    const Eigen::MatrixXd pulled = geometry::pullback_metric(f, m.metric_field(), p);
    return (pulled - values(m.metric_fs(geometry::seed(p, 1)))).cwiseAbs().maxCoeff();
}

GeneratorCheck generator_check(const CmapModel& m, const Eigen::MatrixXcd& b, const Point& p) {
    m.check_point(p);
    const twist::TwistData& d = m.twist_data();
    const Point q = m.rigid_point(p);
    const geometry::VectorField lift = twist::complete_lift(d.chart, b);
    const twist::SymmetryTwist st = twist::symmetry_twist(d, lift, q);

    const JetVector s = geometry::seed(q, 1);
    const Eigen::VectorXd y = values(lift.eval(geometry::seed(q, 2)));
    const Eigen::VectorXd phi = values(d.connection(s));  // phi = -phi~
    const double fh = d.hamiltonian(s).value();
    // vertical part of nabla_X Phi is the flat section with coefficients B w
    Eigen::VectorXcd w(m.n() + 1);
    for (int i = 0; i <= m.n(); ++i) w[i] = cd(q[m.w_index(i, 0)], q[m.w_index(i, 1)]);
    const Eigen::VectorXcd bw = b * w;
    const JetVector x(s.begin(), s.begin() + 2 * m.n());
    const double q_phi_bw =
        -d.chart.flat_section_pairing(bw, d.chart.bundle().polarization(x), s).re.value();  // Q(Phi, s_Bw)
    const double formula = (fh + d.k) * phi.dot(y) - 0.5 * q_phi_bw;

    GeneratorCheck g;
    g.hamiltonian = st.hamiltonian_residual;
    g.formula = std::abs(st.f - formula);
    const Eigen::VectorXd gen = values(m.generator_field(b).eval(geometry::seed(p, 1)));
    g.pushforward = (gen - st.pushforward).cwiseAbs().maxCoeff();
    return g;
}


double fit_twist_constant(const CmapModel& m, const std::vector<Point>& points) {
    if (points.empty()) throw ArgumentError("calibration needs at least one point");
    double num = 0, den = 0;
    for (const Point& p : points) {
        const Eigen::MatrixXd tw = m.metric_twist(p);
        num += tw.cwiseProduct(m.metric(p, Route::fs)).sum();
        den += tw.cwiseProduct(tw).sum();
    }
    return num / den;
}

}  // namespace sugra::cmap
