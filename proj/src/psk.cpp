#include "sugra/psk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sugra::psk {

using geometry::Connection;
using geometry::MetricField;
using geometry::Tensor4;
using geometry::VectorField;

namespace {


// 1 - |X|^2 over the first 2n entries of x.
Jet one_minus_norm2(const JetVector& x, int n, const Jet& like) {
    Jet s = like.constant_like(1.0);
    for (int a = 0; a < 2 * n; ++a) s -= x[a] * x[a];
    return s;
}

JetVector cone_slice(const JetVector& q, int dim) {
    if (static_cast<int>(q.size()) < dim) throw ArgumentError("cone chart point has too few coordinates");
    return JetVector(q.begin(), q.begin() + dim);
}

double cabs(double re, double im) { return std::hypot(re, im); }

}  // namespace

ComplexHyperbolic::ComplexHyperbolic(int n) : n_(n) {
    if (n < 0 || n > 3) throw ArgumentError("complex hyperbolic dimension must lie in [0, 3], got " + std::to_string(n));
}

void ComplexHyperbolic::check_base_point(const Point& x) const {
    if (static_cast<int>(x.size()) != base_dim()) throw ArgumentError("base point has wrong dimension");
    double s = 0.0;
    for (double v : x) s += v * v;
    if (!(s < 1.0)) throw DomainError("base point outside the unit ball");
}

void ComplexHyperbolic::check_cone_point(const Point& q) const {
    if (static_cast<int>(q.size()) != cone_dim()) throw ArgumentError("cone point has wrong dimension");
    check_base_point(Point(q.begin(), q.begin() + base_dim()));
    if (!(q[r_index()] > 0.0)) throw DomainError("cone point needs r > 0");
}

CJetMatrix ComplexHyperbolic::base_hermitian(const JetVector& x) const {
    if (n_ == 0) return CJetMatrix();
    if (static_cast<int>(x.size()) < base_dim()) throw ArgumentError("base point has too few coordinates");
    const Jet& like = x[0];
    const Jet s = one_minus_norm2(x, n_, like);
    if (!(s.value() > 0.0)) throw DomainError("base point outside the unit ball");
    const Jet inv = 1.0 / s;
    const Jet inv2 = inv * inv;
    CJetMatrix h(n_, n_, CJet(like.zero_like()));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            // X_i bar X_j
            const CJet xi(x[2 * i], x[2 * i + 1]);
            const CJet xj(x[2 * j], x[2 * j + 1]);
            CJet v = xi * xj.conj() * inv2;
            if (i == j) v.re += inv;
            h(i, j) = v;
        }
    return h;
}

JetMatrix ComplexHyperbolic::base_metric(const JetVector& x) const {
    if (n_ == 0) return JetMatrix();
    const CJetMatrix h = base_hermitian(x);
    JetMatrix g(2 * n_, 2 * n_, x[0].zero_like());
    for (int m = 0; m < n_; ++m)
        for (int l = 0; l < n_; ++l) {
            g(2 * m, 2 * l) = h(m, l).re;
            g(2 * m, 2 * l + 1) = -h(m, l).im;
            g(2 * m + 1, 2 * l) = h(m, l).im;
            g(2 * m + 1, 2 * l + 1) = h(m, l).re;
        }
    return g;
}

JetMatrix ComplexHyperbolic::base_kahler_form(const JetVector& x) const {
    if (n_ == 0) return JetMatrix();
    const CJetMatrix h = base_hermitian(x);
    JetMatrix w(2 * n_, 2 * n_, x[0].zero_like());
    for (int m = 0; m < n_; ++m)
        for (int l = 0; l < n_; ++l) {
            w(2 * m, 2 * l) = h(m, l).im;
            w(2 * m, 2 * l + 1) = h(m, l).re;
            w(2 * m + 1, 2 * l) = -h(m, l).re;
            w(2 * m + 1, 2 * l + 1) = h(m, l).im;
        }
    return w;
}

JetVector ComplexHyperbolic::potential(const JetVector& x) const {
    JetVector a;
    if (n_ == 0) return a;
    const Jet inv = 1.0 / one_minus_norm2(x, n_, x[0]);
    for (int m = 0; m < n_; ++m) {
        a.push_back(-x[2 * m + 1] * inv);
        a.push_back(x[2 * m] * inv);
    }
    return a;
}

Eigen::MatrixXd ComplexHyperbolic::base_complex_structure() const {
    Eigen::MatrixXd I = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    for (int m = 0; m < n_; ++m) {
        I(2 * m + 1, 2 * m) = 1.0;
        I(2 * m, 2 * m + 1) = -1.0;
    }
    return I;
}

MetricField ComplexHyperbolic::base_metric_field() const {
    MetricField g;
    g.dim = base_dim();
    g.signature = {base_dim(), 0, 0};
    g.eval = [*this](const JetVector& x) { return base_metric(x); };
    return g;
}

JetVector ComplexHyperbolic::embedding(const JetVector& qin) const {
    const JetVector q = cone_slice(qin, cone_dim());
    const Jet s = one_minus_norm2(q, n_, q[0]);
    if (!(s.value() > 0.0)) throw DomainError("cone point outside the unit ball");
    if (!(q[r_index()].value() > 0.0)) throw DomainError("cone point needs r > 0");
    const Jet scale = q[r_index()] / sqrt(s);
    const CJet z0(scale * cos(q[theta_index()]), scale * sin(q[theta_index()]));
    JetVector z{z0.re, z0.im};
    for (int j = 0; j < n_; ++j) {
        const CJet zj = z0 * CJet(q[2 * j], q[2 * j + 1]);
        z.push_back(zj.re);
        z.push_back(zj.im);
    }
    return z;
}

Eigen::MatrixXd ComplexHyperbolic::flat_metric() const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(cone_dim(), cone_dim());
    g(0, 0) = g(1, 1) = -1.0;
    return g;
}

JetMatrix ComplexHyperbolic::cone_metric(const JetVector& qin) const {
    const JetVector q = cone_slice(qin, cone_dim());
    const int d = cone_dim();
    const Jet& r = q[r_index()];
    if (!(r.value() > 0.0)) throw DomainError("cone point needs r > 0");
    const Jet r2 = r * r;
    JetMatrix g(d, d, r.zero_like());
    if (n_ > 0) {
        const JetMatrix gm = base_metric(q);
        const JetVector A = potential(q);
        for (int a = 0; a < 2 * n_; ++a) {
            for (int b = 0; b < 2 * n_; ++b) g(a, b) = r2 * (gm(a, b) - A[a] * A[b]);
            g(a, theta_index()) = r2 * A[a];
            g(theta_index(), a) = g(a, theta_index());
        }
    }
    g(r_index(), r_index()) = r.constant_like(-1.0);
    g(theta_index(), theta_index()) = -r2;
    return g;
}

JetMatrix ComplexHyperbolic::cone_metric_pullback(const JetVector& qin) const {
    const JetVector y = embedding(qin);
    const Eigen::MatrixXd f = flat_metric();
    JetMatrix flat(cone_dim(), cone_dim(), y[0].zero_like());
    for (int a = 0; a < cone_dim(); ++a) flat(a, a) = y[0].constant_like(f(a, a));
    return geometry::pullback(flat, geometry::jacobian(y));
}

namespace {

// Vector fields and endomorphisms transported from flat coordinates.
struct Transported {
    JetVector z;  // order o - 1
    JetMatrix J, Jinv;
};

Transported transport(const JetVector& y) {
    Transported t;
    t.J = geometry::jacobian(y);
    t.Jinv = inverse(t.J);
    t.z = truncate(y, t.J(0, 0).order());
    return t;
}

JetVector times_i(const JetVector& v) {
    JetVector r(v.size(), v[0].zero_like());
    for (std::size_t c = 0; c + 1 < v.size(); c += 2) {
        r[c] = -v[c + 1];
        r[c + 1] = v[c];
    }
    return r;
}

}  // namespace

JetMatrix ComplexHyperbolic::cone_complex_structure(const JetVector& q) const {
    const Transported t = transport(embedding(q));
    const int d = cone_dim();
    JetMatrix IJ(d, d, t.J(0, 0).zero_like());
    for (int c = 0; c < d; c += 2)
        for (int i = 0; i < d; ++i) {
            IJ(c, i) = -t.J(c + 1, i);
            IJ(c + 1, i) = t.J(c, i);
        }
    return multiply(t.Jinv, IJ);
}

JetVector ComplexHyperbolic::euler_field(const JetVector& q) const {
    const Transported t = transport(embedding(q));
    return mat_vec(t.Jinv, t.z);
}

JetVector ComplexHyperbolic::rotation_field(const JetVector& q) const {
    const Transported t = transport(embedding(q));
    return mat_vec(t.Jinv, times_i(t.z));
}

CJetVector ComplexHyperbolic::connection_form(const JetVector& q) const {
    const JetVector xi = euler_field(q);
    const JetVector ixi = rotation_field(q);
    const int o = xi[0].order();
    const JetMatrix g = truncate(cone_metric(q), o);
    const JetVector gx = geometry::contract(g, xi);
    const JetVector gix = geometry::contract(g, ixi);
    Jet norm = gx[0].zero_like();
    for (int a = 0; a < cone_dim(); ++a) norm += gx[a] * xi[a];
    const Jet inv = 1.0 / norm;
    CJetVector chi;
    for (int a = 0; a < cone_dim(); ++a) chi.emplace_back(gx[a] * inv, gix[a] * inv);
    return chi;
}

JetVector ComplexHyperbolic::phi_tilde(const JetVector& qin) const {
    const JetVector q = cone_slice(qin, cone_dim());
    JetVector phi;
    for (const Jet& a : potential(q)) phi.push_back(-a);
    phi.push_back(q[0].zero_like());
    phi.push_back(q[0].constant_like(1.0));
    return phi;
}

MetricField ComplexHyperbolic::cone_metric_field() const {
    MetricField g;
    g.dim = cone_dim();
    g.signature = {2 * n_, 2, 0};
    g.eval = [*this](const JetVector& q) { return cone_metric(q); };
    return g;
}

geometry::ChartMap ComplexHyperbolic::embedding_map() const {
    geometry::ChartMap f;
    f.source_dim = f.target_dim = cone_dim();
    f.eval = [*this](const JetVector& q) { return embedding(q); };
    return f;
}

VectorField ComplexHyperbolic::horizontal_lift(const VectorField& base) const {
    if (base.dim != base_dim()) throw ArgumentError("horizontal lift needs a base vector field");
    VectorField v;
    v.dim = cone_dim();
    v.eval = [*this, base](const JetVector& q) {
        const JetVector x(q.begin(), q.begin() + base_dim());
        JetVector b = base.eval(x);
        const JetVector A = potential(x);
        Jet th = q[0].zero_like();
        for (int a = 0; a < base_dim(); ++a) th += A[a] * b[a];
        b.push_back(q[0].zero_like());
        b.push_back(th);
        return b;
    };
    return v;
}

Tensor4 ComplexHyperbolic::projective_curvature(const Point& x, double scale) const {
    check_base_point(x);
    const int d = base_dim();
    Tensor4 r(d);
    if (d == 0) return r;
    const Eigen::MatrixXd g = geometry::values(base_metric(geometry::seed(x, 1)));
    const Eigen::MatrixXd I = base_complex_structure();
    const Eigen::MatrixXd gI = I.transpose() * g;  // gI(k, i) = g(I d_k, d_i)
    const Eigen::MatrixXd gjI = g * I;             // gjI(j, k) = g(d_j, I d_k)
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double v = g(k, i) * (l == j) - g(j, i) * (l == k) + gI(k, i) * I(l, j) - gI(j, i) * I(l, k) +
                               2.0 * gjI(j, k) * I(l, i);
                    r(l, i, j, k) = scale * v;
                }
    return r;
}

double CskResidual::max() const {
    return std::max({levi_civita_xi, levi_civita_ixi, flat_xi, flat_ixi, flat_curvature, flat_torsion,
                     flat_vs_levi_civita, parallel_complex_structure});
}

CskResidual verify_csk_axioms(const ComplexHyperbolic& m, const Point& q) {
    m.check_cone_point(q);
    const int d = m.cone_dim();
    const JetVector s = geometry::seed(q, 3);
    const JetVector y = m.embedding(s);
    const Connection lc = geometry::levi_civita(m.cone_metric(s));
    const Connection flat = geometry::flat_pullback_connection(y);
    const JetVector xi = m.euler_field(s);
    const JetVector ixi = m.rotation_field(s);
    const JetMatrix I = m.cone_complex_structure(s);
    const Eigen::MatrixXd Iv = geometry::values(I);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);

    CskResidual r;
    r.levi_civita_xi = (geometry::values(geometry::covariant_derivative(lc, xi)) - id).cwiseAbs().maxCoeff();
    r.levi_civita_ixi = (geometry::values(geometry::covariant_derivative(lc, ixi)) - Iv).cwiseAbs().maxCoeff();
    r.flat_xi = (geometry::values(geometry::covariant_derivative(flat, xi)) - id).cwiseAbs().maxCoeff();
    r.flat_ixi = (geometry::values(geometry::covariant_derivative(flat, ixi)) - Iv).cwiseAbs().maxCoeff();
    r.flat_curvature = geometry::curvature(flat).max_abs();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                r.flat_torsion = std::max(r.flat_torsion, std::abs(flat(i, j, k).value() - flat(i, k, j).value()));
                r.flat_vs_levi_civita =
                    std::max(r.flat_vs_levi_civita, std::abs(flat(i, j, k).value() - lc(i, j, k).value()));
            }
    // (nabla_j I)(a, b) = d_j I(a, b) + Gamma(a, j, m) I(m, b) - Gamma(m, j, b) I(a, m)
    for (int j = 0; j < d; ++j)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                double v = I(a, b).d(j);
                for (int mm = 0; mm < d; ++mm) v += lc(a, j, mm).value() * Iv(mm, b) - lc(mm, j, b).value() * Iv(a, mm);
                r.parallel_complex_structure = std::max(r.parallel_complex_structure, std::abs(v));
            }
    return r;
}

double verify_chi_derivative(const ComplexHyperbolic& m, const Point& q) {
    m.check_cone_point(q);
    const int d = m.cone_dim();
    const JetVector s = geometry::seed(q, 2);
    const CJetVector chi = m.connection_form(s);
    JetVector cre, cim;
    for (const CJet& c : chi) {
        cre.push_back(c.re);
        cim.push_back(c.im);
    }
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) target(i, j) = -chi[i].value() * chi[j].value();
    if (m.n() > 0) {
        const Eigen::MatrixXd gm = geometry::values(m.base_metric(s));
        const Eigen::MatrixXd wm = geometry::values(m.base_kahler_form(s));
        for (int a = 0; a < m.base_dim(); ++a)
            for (int b = 0; b < m.base_dim(); ++b) target(a, b) -= std::complex<double>(gm(a, b), wm(a, b));
    }
    double res = 0.0;
    const Connection lc = geometry::levi_civita(m.cone_metric(s));
    const Connection flat = geometry::flat_pullback_connection(m.embedding(s));
    for (const Connection* c : {&lc, &flat}) {
        const Eigen::MatrixXd re = geometry::values(geometry::covariant_derivative_form(*c, cre));
        const Eigen::MatrixXd im = geometry::values(geometry::covariant_derivative_form(*c, cim));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                res = std::max(res, cabs(re(i, j) - target(i, j).real(), im(i, j) - target(i, j).imag()));
    }
    return res;
}

double verify_lc_difference(const ComplexHyperbolic& m, const VectorField& xf, const VectorField& yf, const Point& q) {
    m.check_cone_point(q);
    if (xf.dim != m.cone_dim() || yf.dim != m.cone_dim()) throw ArgumentError("vector fields must live on the cone");
    const int d = m.cone_dim();
    const int b = m.base_dim();
    if (b == 0) return 0.0;
    const JetVector s = geometry::seed(q, 2);
    const JetVector X = xf.eval(s);
    const JetVector Y = yf.eval(s);
    const Connection lc = geometry::levi_civita(m.cone_metric(s));
    const Eigen::MatrixXd nablaY = geometry::values(geometry::covariant_derivative(lc, Y));
    const Eigen::VectorXd Xv = geometry::values(X);
    const Eigen::VectorXd Yv = geometry::values(Y);
    const Eigen::VectorXd lhs_cone = nablaY * Xv;  // nabla_X Y

    const Point x(q.begin(), q.begin() + b);
    const geometry::Tensor3 gb = geometry::christoffel(m.base_metric_field(), x);
    Eigen::VectorXd lhs_base(b);
    for (int a = 0; a < b; ++a) {
        double v = 0.0;
        for (int j = 0; j < d; ++j) v += Xv[j] * Y[a].d(j);
        for (int c = 0; c < b; ++c)
            for (int e = 0; e < b; ++e) v += gb(a, c, e) * Xv[c] * Yv[e];
        lhs_base[a] = v;
    }

    const CJetVector chi = m.connection_form(s);
    std::complex<double> cx = 0, cy = 0;
    for (int j = 0; j < d; ++j) {
        cx += chi[j].value() * Xv[j];
        cy += chi[j].value() * Yv[j];
    }
    const Eigen::MatrixXd I = geometry::values(m.cone_complex_structure(s));
    const Eigen::VectorXd rhs = cx.real() * Yv + cx.imag() * (I * Yv) + cy.real() * Xv + cy.imag() * (I * Xv);
    double res = 0.0;
    for (int a = 0; a < b; ++a) res = std::max(res, std::abs(lhs_cone[a] - lhs_base[a] - rhs[a]));
    return res;
}

double verify_d1(const ComplexHyperbolic& m, const Point& x, double scale) {
    m.check_base_point(x);
    if (m.n() == 0) return 0.0;
    const Tensor4 r = geometry::riemann(m.base_metric_field(), x);
    const Tensor4 p = m.projective_curvature(x, scale);
    double res = 0.0;
    for (std::size_t i = 0; i < r.a.size(); ++i) res = std::max(res, std::abs(r.a[i] + p.a[i]));
    return res;
}

double calibrate_projective_curvature(const Point& x) {
    const ComplexHyperbolic m(1);
    m.check_base_point(x);
    const Tensor4 r = geometry::riemann(m.base_metric_field(), x);
    const Tensor4 p = m.projective_curvature(x, 1.0);
    double rp = 0.0, pp = 0.0;
    for (std::size_t i = 0; i < r.a.size(); ++i) {
        rp += r.a[i] * p.a[i];
        pp += p.a[i] * p.a[i];
    }
    return -rp / pp;
}

double verify_homogeneity(const ComplexHyperbolic& m, const Point& q) {
    m.check_cone_point(q);
    const int d = m.cone_dim();
    const JetVector s = geometry::seed(q, 2);
    const JetMatrix g = m.cone_metric(s);
    const JetVector xi = m.euler_field(s);
    const JetVector ixi = m.rotation_field(s);
    const Eigen::MatrixXd gv = geometry::values(g);
    const Eigen::MatrixXd Iv = geometry::values(m.cone_complex_structure(s));
    const Eigen::MatrixXd omega = Iv.transpose() * gv;  // omega(i, j) = g(I d_i, d_j)
    double res = 0.0;
    res = std::max(res, (geometry::values(geometry::lie_derivative(xi, g)) - 2.0 * gv).cwiseAbs().maxCoeff());
    res = std::max(res, geometry::values(geometry::lie_derivative(ixi, g)).cwiseAbs().maxCoeff());
    const JetMatrix g1 = truncate(g, 1);
    res = std::max(res, geometry::values(geometry::exterior_derivative(geometry::contract(g1, xi))).cwiseAbs().maxCoeff());
    res = std::max(res, (geometry::values(geometry::exterior_derivative(geometry::contract(g1, ixi))) - 2.0 * omega)
                            .cwiseAbs()
                            .maxCoeff());
    (void)d;
    return res;
}

double verify_chern_curvature(const ComplexHyperbolic& m, const Point& q) {
    m.check_cone_point(q);
    const JetVector s = geometry::seed(q, 2);
    const CJetVector chi = m.connection_form(s);
    JetVector cre, cim;
    for (const CJet& c : chi) {
        cre.push_back(c.re);
        cim.push_back(c.im);
    }
    const Eigen::MatrixXd dre = geometry::values(geometry::exterior_derivative(cre));
    Eigen::MatrixXd dim = geometry::values(geometry::exterior_derivative(cim));
    if (m.n() > 0) {
        const Eigen::MatrixXd wm = geometry::values(m.base_kahler_form(s));
        dim.topLeftCorner(m.base_dim(), m.base_dim()) += 2.0 * wm;
    }
    return std::max(dre.cwiseAbs().maxCoeff(), dim.cwiseAbs().maxCoeff());
}

double verify_connection_form(const ComplexHyperbolic& m, const Point& q) {
    m.check_cone_point(q);
    const JetVector s = geometry::seed(q, 1);
    const CJetVector chi = m.connection_form(s);
    const JetVector phi = m.phi_tilde(s);
    double res = 0.0;
    for (int a = 0; a < m.cone_dim(); ++a) {
        const double re = (a == m.r_index()) ? 1.0 / q[m.r_index()] : 0.0;
        res = std::max(res, cabs(chi[a].value().real() - re, chi[a].value().imag() - phi[a].value()));
    }
    return res;
}

}  // namespace sugra::psk
