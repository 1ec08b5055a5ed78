#include "sugra/twist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sugra::twist {

using cd = std::complex<double>;
using geometry::values;

namespace {

Jet at(const Jet& a, int o) { return a.order() > o ? a.truncated(o) : a; }

CJet cat(const CJet& c, int o) { return {at(c.re, o), at(c.im, o)}; }

// u^T M v for complex jets, truncated to a common order.
CJet bilinear(const CJetVector& u, const CJetMatrix& m, const CJetVector& v) {
    int o = Jet::kMaxOrder;
    for (const CJet& c : u) o = std::min(o, c.re.order());
    for (const CJet& c : v) o = std::min(o, c.re.order());
    o = std::min(o, m(0, 0).re.order());
    CJet s = cat(u[0], o).zero_like();
    for (int i = 0; i < m.rows(); ++i) {
        CJet row = s.zero_like();
        for (int j = 0; j < m.cols(); ++j) {
            row = row + cat(m(i, j), o) * cat(v[j], o);
        }
        s = s + cat(u[i], o) * row;
    }
    return s;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

JetMatrix constant_matrix(const Eigen::MatrixXd& m, const Jet& like) {
    JetMatrix r(m.rows(), m.cols(), like.zero_like());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) r(i, j) = like.constant_like(m(i, j));
    return r;
}

}  // namespace

RigidChart::RigidChart(int n) : n_(n), bundle_(n) {}

void RigidChart::check_point(const Point& p) const {
    if (static_cast<int>(p.size()) != dim())
        throw ArgumentError("rigid chart point needs " + std::to_string(dim()) + " coordinates");
    Point q(p.begin(), p.begin() + 2 * n_ + 1);
    q.push_back(p[fibre_index()]);
    cone().check_cone_point(q);
}

JetVector RigidChart::cone_part(const JetVector& p) const {
    if (static_cast<int>(p.size()) < dim()) throw ArgumentError("rigid chart point has too few coordinates");
    JetVector q(p.begin(), p.begin() + 2 * n_ + 1);
    q.push_back(p[fibre_index()]);
    return q;
}

JetVector RigidChart::flat_embedding(const JetVector& p) const {
    JetVector y = cone().embedding(cone_part(p));
    for (int i = 0; i <= n_; ++i) {
        y.push_back(p[w_index(i, 0)]);
        y.push_back(p[w_index(i, 1)]);
    }
    return y;
}

Eigen::MatrixXd RigidChart::flat_metric() const {
    const int m = cone().cone_dim();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim(), dim());
    g.topLeftCorner(m, m) = cone().flat_metric();
    g.bottomRightCorner(m, m) = cone().flat_metric();
    return g;
}

std::array<Eigen::MatrixXd, 3> RigidChart::flat_complex_structures() const {
    const int m = cone().cone_dim();
    Eigen::MatrixXd I = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < m; c += 2) {
        I(c, c + 1) = -1.0;
        I(c + 1, c) = 1.0;
    }
    Eigen::MatrixXd I1 = Eigen::MatrixXd::Zero(dim(), dim());
    I1.topLeftCorner(m, m) = I;
    I1.bottomRightCorner(m, m) = -I;
    Eigen::MatrixXd I2 = Eigen::MatrixXd::Zero(dim(), dim());
    I2.bottomLeftCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
    I2.topRightCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
    return {I1, I2, I1 * I2};
}

JetMatrix RigidChart::metric(const JetVector& p) const {
    const JetVector y = flat_embedding(p);
    return geometry::pullback(constant_matrix(flat_metric(), y[0]), geometry::jacobian(y));
}

std::vector<CJetVector> RigidChart::section_derivative(const JetVector& p) const {
    const JetVector x(p.begin(), p.begin() + 2 * n_);
    const CJetMatrix P = bundle_.parallel_frame(n_ == 0 ? JetVector{} : x);
    const Jet zero = p[0].zero_like();
    const int N = bundle_.rank();
    const int n1 = n_ + 1;
    auto lift = [&](const CJet& c) {
        // frame entries are constant when n = 0; give them the chart's jet shape
        if (c.re.dim() == zero.dim()) return c;
        return CJet::constant_like(zero, c.value());
    };
    std::vector<CJetVector> u(dim(), CJetVector(N, CJet(zero)));
    for (int i = 0; i < n1; ++i)
        for (int c = 0; c < N; ++c) {
            const CJet s = lift(P(c, i));
            const CJet sb = lift(P(c, n1 + i));
            u[w_index(i, 0)][c] = s + sb;
            u[w_index(i, 1)][c] = (s - sb) * cd(0.0, 1.0);
        }
    return u;
}

CJetVector RigidChart::section(const JetVector& p) const {
    const JetVector x(p.begin(), p.begin() + 2 * n_);
    const CJetMatrix P = bundle_.parallel_frame(n_ == 0 ? JetVector{} : x);
    const Jet zero = p[0].zero_like();
    const int N = bundle_.rank();
    const int n1 = n_ + 1;
    CJetVector phi(N, CJet(zero));
    for (int i = 0; i < n1; ++i) {
        const CJet w(p[w_index(i, 0)], p[w_index(i, 1)]);
        for (int c = 0; c < N; ++c) {
            const CJet s = P(c, i).re.dim() == zero.dim() ? P(c, i) : CJet::constant_like(zero, P(c, i).value());
            const CJet sb = P(c, n1 + i).re.dim() == zero.dim() ? P(c, n1 + i)
                                                                 : CJet::constant_like(zero, P(c, n1 + i).value());
            phi[c] = phi[c] + w * s + w.conj() * sb;
        }
    }
    return phi;
}

namespace {

CJetMatrix shaped(const CJetMatrix& m, const Jet& zero) {
    if (m.rows() == 0 || m(0, 0).re.dim() == zero.dim()) return m;
    CJetMatrix r(m.rows(), m.cols(), CJet(zero));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = CJet::constant_like(zero, m(i, j).value());
    return r;
}

JetVector base_x(const RigidChart& c, const JetVector& p) { return JetVector(p.begin(), p.begin() + 2 * c.n()); }

// Embeds a cone-chart tensor into the rigid chart.
int cone_to_rigid(const RigidChart& c, int i) { return i < 2 * c.n() + 1 ? i : c.fibre_index(); }

}  // namespace

JetMatrix RigidChart::section_form(const CJetMatrix& b, const JetVector& p) const {
    const auto u = section_derivative(p);
    const CJetMatrix bb = shaped(b, p[0].zero_like());
    JetMatrix r(dim(), dim(), p[0].zero_like());
    for (int a = 0; a < dim(); ++a) {
        if (a <= r_index() || a == fibre_index()) continue;
        for (int d = 0; d < dim(); ++d) {
            if (d <= r_index() || d == fibre_index()) continue;
            r(a, d) = bilinear(u[a], bb, u[d]).re;
        }
    }
    return r;
}

JetVector RigidChart::section_pairing(const CJetMatrix& b, const JetVector& p) const {
    const CJetVector phi = section(p);
    const auto u = section_derivative(p);
    const CJetMatrix bb = shaped(b, p[0].zero_like());
    JetVector out;
    for (int a = 0; a < dim(); ++a) {
        if (a <= r_index() || a == fibre_index())
            out.push_back(p[0].zero_like());
        else
            out.push_back(bilinear(phi, bb, u[a]).re);
    }
    return out;
}

CJet RigidChart::flat_section_pairing(const Eigen::VectorXcd& a, const CJetMatrix& b, const JetVector& p) const {
    if (a.size() != n_ + 1) throw ArgumentError("flat section needs n + 1 complex coefficients");
    const Jet zero = p[0].zero_like();
    const CJetMatrix P = shaped(bundle_.parallel_frame(base_x(*this, p)), zero);
    const int N = bundle_.rank();
    const int n1 = n_ + 1;
    CJetVector sec(N, CJet(zero));
    for (int i = 0; i < n1; ++i)
        for (int r = 0; r < N; ++r) sec[r] = sec[r] + P(r, i) * a[i] + P(r, n1 + i) * std::conj(a[i]);
    return bilinear(sec, shaped(b, zero), section(p));
}

JetMatrix RigidChart::metric_closed_form(const JetVector& p) const {
    const JetMatrix gc = cone().cone_metric(cone_part(p));
    JetMatrix g = section_form(bundle_.hermitian_griffiths(base_x(*this, p)), p);
    const int m = cone().cone_dim();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(cone_to_rigid(*this, i), cone_to_rigid(*this, j)) = gc(i, j);
    return g;
}

std::array<JetMatrix, 3> RigidChart::complex_structures(const JetVector& p) const {
    const JetMatrix J = geometry::jacobian(flat_embedding(p));
    const JetMatrix Jinv = inverse(J);
    const auto flat = flat_complex_structures();
    std::array<JetMatrix, 3> out;
    for (int j = 0; j < 3; ++j) out[j] = multiply(Jinv, multiply(constant_matrix(flat[j], J(0, 0)), J));
    return out;
}

JetMatrix RigidChart::cone_kahler_form(const JetVector& p) const {
    // pull back the flat Kaehler form I^T G along the cone embedding
    const int m = cone().cone_dim();
    const Eigen::MatrixXd I = flat_complex_structures()[0].topLeftCorner(m, m);
    const JetVector z = cone().embedding(cone_part(p));
    return geometry::pullback(constant_matrix(I.transpose() * cone().flat_metric(), z[0]), geometry::jacobian(z));
}

JetMatrix RigidChart::vertical_form(const JetVector& p) const {
    return section_form(bundle_.polarization(base_x(*this, p)), p);
}

TwistData::TwistData(int n, double k_) : chart(n), k(k_) {
    if (!(k_ >= 0.0)) throw ArgumentError("deformation parameter must be non-negative");
}

JetVector TwistData::z_field(const JetVector& p) const {
    JetVector z(chart.dim(), p[0].zero_like());
    z[chart.fibre_index()] = p[0].constant_like(-1.0);
    return z;
}

Jet TwistData::hamiltonian(const JetVector& p) const {
    const Jet& r = p[chart.r_index()];
    return (r * r + 2.0 * k) * -0.5;
}

JetVector TwistData::horizontal_potential(const JetVector& p) const {
    JetVector a(chart.base_dim(), p[0].zero_like());
    const JetVector A = chart.cone().potential(p);
    for (int i = 0; i < 2 * chart.n(); ++i) a[i] = A[i];
    return a;
}

JetVector TwistData::connection(const JetVector& p) const {
    JetVector phi = horizontal_potential(p);
    phi.push_back(p[0].constant_like(-1.0));
    return phi;
}

JetVector TwistData::beta(const JetVector& p) const {
    JetVector b = chart.section_pairing(chart.bundle().polarization(base_x(chart, p)), p);
    for (Jet& x : b) x *= -0.5;
    return b;
}

JetMatrix TwistData::omega_h(const JetVector& p) const {
    const JetMatrix w = chart.cone_kahler_form(p);
    const JetMatrix v = chart.vertical_form(p);
    const int o = w(0, 0).order();
    JetMatrix r = w;
    for (int i = 0; i < chart.dim(); ++i)
        for (int j = 0; j < chart.dim(); ++j) r(i, j) = -w(i, j) - at(v(i, j), o);
    return r;
}

namespace {

void require_deformation_domain(const TwistData& d, double r) {
    if (!(r * r > 2.0 * d.k))
        throw DomainError("elementary deformation needs r^2 > 2k (r = " + std::to_string(r) +
                          ", k = " + std::to_string(d.k) + ")");
}

}  // namespace

JetMatrix horizontal_z_part(const TwistData& d, const JetVector& p) {
    const RigidChart& c = d.chart;
    const Jet& r = p[c.r_index()];
    JetMatrix g = c.section_form(c.bundle().hermitian_l(base_x(c, p)), p);
    JetVector phit(c.dim(), r.zero_like());
    const JetVector A = c.cone().potential(p);
    for (int a = 0; a < 2 * c.n(); ++a) phit[a] = -A[a];
    phit[c.fibre_index()] = r.constant_like(1.0);
    const Jet r2 = r * r;
    for (int i = 0; i < c.dim(); ++i)
        for (int j = 0; j < c.dim(); ++j) g(i, j) = -g(i, j) - r2 * phit[i] * phit[j];
    g(c.r_index(), c.r_index()) -= 1.0;
    return g;
}

JetMatrix orthogonal_part(const TwistData& d, const JetVector& p) {
    const RigidChart& c = d.chart;
    const Jet& r = p[c.r_index()];
    JetMatrix g = c.section_form(c.bundle().hermitian_lm(base_x(c, p)), p);
    if (c.n() > 0) {
        const JetMatrix gm = c.cone().base_metric(p);
        const Jet r2 = r * r;
        for (int a = 0; a < 2 * c.n(); ++a)
            for (int b = 0; b < 2 * c.n(); ++b) g(a, b) += r2 * gm(a, b);
    }
    return g;
}

JetMatrix elementary_deformation(const TwistData& d, const JetVector& p) {
    const Jet& r = p[d.chart.r_index()];
    require_deformation_domain(d, r.value());
    const Jet rho = r * r - 2.0 * d.k;
    const Jet sig = r * r + 2.0 * d.k;
    const Jet a = 1.0 / rho;
    const Jet b = sig / (rho * rho);
    const JetMatrix hz = horizontal_z_part(d, p);
    const JetMatrix orth = orthogonal_part(d, p);
    JetMatrix g = orth;
    for (int i = 0; i < d.chart.dim(); ++i)
        for (int j = 0; j < d.chart.dim(); ++j) g(i, j) = a * orth(i, j) - b * hz(i, j);
    return g;
}

Split project_rigid_metric(const TwistData& d, const Point& p) {
    d.chart.check_point(p);
    const JetVector s = geometry::seed(p, 1);
    const Eigen::MatrixXd g = values(d.chart.metric(s));
    const auto I = d.chart.complex_structures(s);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(d.chart.dim());
    z[d.chart.fibre_index()] = -1.0;
    Eigen::MatrixXd B(d.chart.dim(), 4);
    B.col(0) = z;
    for (int j = 0; j < 3; ++j) B.col(j + 1) = values(I[j]) * z;
    const Eigen::MatrixXd G4 = B.transpose() * g * B;
    const Eigen::MatrixXd P = B * G4.inverse() * B.transpose() * g;
    const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(d.chart.dim(), d.chart.dim()) - P;
    return {P.transpose() * g * P, Q.transpose() * g * Q};
}

Eigen::MatrixXd elementary_deformation_projected(const TwistData& d, const Point& p) {
    const double r = p[d.chart.r_index()];
    require_deformation_domain(d, r);
    const Split s = project_rigid_metric(d, p);
    const double rho = r * r - 2.0 * d.k;
    const double sig = r * r + 2.0 * d.k;
    return (s.orthogonal - (sig / rho) * s.along) / rho;
}

TwistPoint twist_point(const TwistData& d, const Point& p) {
    d.chart.check_point(p);
    const JetVector s = geometry::seed(p, 1);
    TwistPoint tp;
    tp.k = d.k;
    tp.f = d.hamiltonian(s).value();
    tp.horizontal = values(d.horizontal_potential(s));
    tp.beta = values(d.beta(s)).head(d.chart.base_dim());
    return tp;
}

DecomposedVector decompose_vector(const Eigen::VectorXd& v, const Eigen::VectorXd& phi, const Eigen::VectorXd& z) {
    const int b = static_cast<int>(v.size()) - 1;
    // v = sum v^a (d_a - phi_a Z / phi(Z)) + (phi(v) / phi(Z)) Z, Z vertical
    DecomposedVector r;
    r.base = v.head(b);
    r.z = phi.dot(v) / phi.dot(z);
    return r;
}

DecomposedForm decompose_form(const Eigen::VectorXd& alpha, const Eigen::VectorXd& phi, const Eigen::VectorXd& z) {
    const int b = static_cast<int>(alpha.size()) - 1;
    DecomposedForm r;
    r.phi = alpha.dot(z);
    r.base = alpha.head(b) - (r.phi / phi.dot(z)) * phi.head(b);
    r.phi /= phi.dot(z);
    return r;
}

DecomposedSymmetric decompose_symmetric(const Eigen::MatrixXd& t, const Eigen::VectorXd& phi,
                                        const Eigen::VectorXd& z) {
    const int b = static_cast<int>(t.rows()) - 1;
    const double pz = phi.dot(z);
    Eigen::MatrixXd H(t.rows(), b);
    for (int a = 0; a < b; ++a) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(t.rows());
        e[a] = 1.0;
        H.col(a) = e - (phi[a] / pz) * z;
    }
    DecomposedSymmetric r;
    r.base = H.transpose() * t * H;
    r.mixed = H.transpose() * t * z / pz;
    r.fibre = z.dot(t * z) / (pz * pz);
    return r;
}

Eigen::VectorXd twisted_connection(const TwistPoint& tp) {
    const int b = static_cast<int>(tp.horizontal.size());
    Eigen::VectorXd phik(b + 1);
    phik.head(b) = tp.k * tp.horizontal;
    phik[b] = 1.0;
    return phik;
}

namespace {

Eigen::VectorXd twisted_phi(const TwistPoint& tp) {
    const int b = static_cast<int>(tp.horizontal.size());
    Eigen::VectorXd beta(b + 1);
    beta.head(b) = tp.beta;
    beta[b] = 0.0;
    return -(twisted_connection(tp) + beta) / tp.f;
}

Eigen::VectorXd pad(const Eigen::VectorXd& v) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(v.size() + 1);
    r.head(v.size()) = v;
    return r;
}

}  // namespace

Eigen::VectorXd twist_vector(const DecomposedVector& v, const TwistPoint& tp) {
    const int b = static_cast<int>(v.base.size());
    Eigen::VectorXd r = pad(v.base);
    r[b] = -tp.k * tp.horizontal.dot(v.base) - tp.beta.dot(v.base) - tp.f * v.z;
    return r;
}

Eigen::VectorXd twist_form(const DecomposedForm& a, const TwistPoint& tp) {
    return pad(a.base) + a.phi * twisted_phi(tp);
}

Eigen::MatrixXd twist_symmetric(const DecomposedSymmetric& t, const TwistPoint& tp) {
    const int b = static_cast<int>(t.base.rows());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(b + 1, b + 1);
    r.topLeftCorner(b, b) = t.base;
    const Eigen::VectorXd tau = twisted_phi(tp);
    const Eigen::VectorXd m = pad(t.mixed);
    r += m * tau.transpose() + tau * m.transpose() + t.fibre * tau * tau.transpose();
    return r;
}

Eigen::MatrixXd twist_elementary_deformation(const TwistData& d, const Point& tpnt) {
    if (static_cast<int>(tpnt.size()) != d.chart.dim()) throw ArgumentError("twisted chart point has wrong dimension");
    Point p = tpnt;
    p[d.chart.fibre_index()] = 0.0;
    d.chart.check_point(p);
    const Eigen::MatrixXd gh = elementary_deformation_projected(d, p);
    const JetVector s = geometry::seed(p, 1);
    const Eigen::VectorXd phi = values(d.connection(s));
    const Eigen::VectorXd z = values(d.z_field(s));
    return twist_symmetric(decompose_symmetric(gh, phi, z), twist_point(d, p));
}

HamiltonianResult hamiltonian_of_section(const TwistData& d, const Eigen::VectorXcd& a, const Point& p) {
    const RigidChart& c = d.chart;
    c.check_point(p);
    if (a.size() != c.n() + 1) throw ArgumentError("flat section needs n + 1 complex coefficients");
    const JetVector s = geometry::seed(p, 1);
    const Jet f = c.flat_section_pairing(a, c.bundle().polarization(base_x(c, s)), s).re;
    const int n1 = c.n() + 1;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(c.dim());
    for (int i = 0; i < n1; ++i) {
        v[c.w_index(i, 0)] = a[i].real();
        v[c.w_index(i, 1)] = a[i].imag();
    }
    const Eigen::MatrixXd w = values(d.omega_h(s));
    const Eigen::VectorXd iv = w.transpose() * v;
    HamiltonianResult h;
    h.value = f.value();
    for (int b = 0; b < c.dim(); ++b) h.residual = std::max(h.residual, std::abs(iv[b] + f.d(b)));
    return h;
}

SymmetryTwist symmetry_twist(const TwistData& d, const geometry::VectorField& yf, const Point& p, double tol) {
    const RigidChart& c = d.chart;
    c.check_point(p);
    if (yf.dim != c.dim()) throw ArgumentError("symmetry must be a vector field on the rigid chart");
    const JetVector s = geometry::seed(p, 2);
    const JetVector Y = yf.eval(s);
    const Jet fh = d.hamiltonian(s);
    const JetVector phi = d.connection(s);
    const JetVector beta = d.beta(s);
    SymmetryTwist out;
    out.invariance_residual = std::abs(geometry::directional(Y, fh).value());
    out.invariance_residual =
        std::max(out.invariance_residual, max_abs(values(geometry::lie_derivative_form(Y, phi))));
    out.invariance_residual =
        std::max(out.invariance_residual, max_abs(values(geometry::lie_derivative_form(Y, beta))));
    if (out.invariance_residual > tol)
        throw PreconditionError("vector field does not preserve the twist data (residual " +
                                std::to_string(out.invariance_residual) + ")");
    const int o = 1;
    Jet fy = Jet(s[0].dim(), o);
    for (int a = 0; a < c.dim(); ++a)
        fy += at(Y[a], o) * ((at(fh, o) + d.k) * at(phi[a], o) + at(beta[a], o));
    out.f = fy.value();
    const Eigen::MatrixXd w = values(d.omega_h(s));
    const Eigen::VectorXd Yv = values(Y);
    const Eigen::VectorXd iy = w.transpose() * Yv;
    for (int b = 0; b < c.dim(); ++b)
        out.hamiltonian_residual = std::max(out.hamiltonian_residual, std::abs(iy[b] + fy.d(b)));

    const int b = c.base_dim();
    const Eigen::VectorXd A = values(d.horizontal_potential(s));
    const Eigen::VectorXd yb = Yv.head(b);
    const double phiy = values(phi).dot(Yv);
    out.twisted = pad(yb);
    out.twisted[b] = -d.k * A.dot(yb) + d.k * phiy - out.f;
    out.pushforward = out.twisted;
    out.pushforward[b] += out.f;
    return out;
}

geometry::VectorField complete_lift(const RigidChart& chart, const Eigen::MatrixXcd& B) {
    const int n1 = chart.n() + 1;
    if (B.rows() != n1 || B.cols() != n1) throw ArgumentError("generator must be (n+1) x (n+1)");
    geometry::VectorField v;
    v.dim = chart.dim();
    v.eval = [chart, B, n1](const JetVector& p) {
        const JetVector z = chart.cone().embedding(chart.cone_part(p));
        const JetMatrix Jfull = geometry::jacobian(z);
        const int m = 2 * n1;
        JetMatrix J(m, m, Jfull(0, 0));
        for (int a = 0; a < m; ++a)
            for (int i = 0; i < m; ++i) J(a, i) = Jfull(a, cone_to_rigid(chart, i));
        const int o = J(0, 0).order();
        auto linear = [&](auto get) {
            JetVector out;
            for (int i = 0; i < n1; ++i) {
                Jet re = Jet(p[0].dim(), o), im = Jet(p[0].dim(), o);
                for (int j = 0; j < n1; ++j) {
                    const Jet zr = at(get(j, 0), o), zi = at(get(j, 1), o);
                    re += zr * B(i, j).real() - zi * B(i, j).imag();
                    im += zr * B(i, j).imag() + zi * B(i, j).real();
                }
                out.push_back(re);
                out.push_back(im);
            }
            return out;
        };
        const JetVector bz = linear([&](int j, int part) { return z[2 * j + part]; });
        const JetVector bw = linear([&](int j, int part) { return p[chart.w_index(j, part)]; });
        const JetVector cone = mat_vec(inverse(J), bz);
        JetVector y(chart.dim(), Jet(p[0].dim(), o));
        for (int i = 0; i < 2 * n1; ++i) y[cone_to_rigid(chart, i)] = cone[i];
        for (int i = 0; i < n1; ++i) {
            y[chart.w_index(i, 0)] = bw[2 * i];
            y[chart.w_index(i, 1)] = bw[2 * i + 1];
        }
        return y;
    };
    return v;
}

HyperkahlerResidual verify_hyperkahler(const TwistData& d, const Point& p) {
    const RigidChart& c = d.chart;
    c.check_point(p);
    const int m = c.dim();
    const JetVector s = geometry::seed(p, 2);
    const JetMatrix g = c.metric(s);
    const auto I = c.complex_structures(s);
    const Eigen::MatrixXd gv = values(g);
    std::array<Eigen::MatrixXd, 3> Iv;
    for (int j = 0; j < 3; ++j) Iv[j] = values(I[j]);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
    HyperkahlerResidual r;
    for (int j = 0; j < 3; ++j) {
        r.algebra = std::max(r.algebra, max_abs(Iv[j] * Iv[j] + id));
        r.compatibility = std::max(r.compatibility, max_abs(Iv[j].transpose() * gv * Iv[j] - gv));
        const JetMatrix w = multiply(transpose(I[j]), g);
        for (const Jet& x : geometry::exterior_derivative(w)) r.closedness = std::max(r.closedness, std::abs(x.value()));
    }
    r.algebra = std::max(r.algebra, max_abs(Iv[0] * Iv[1] - Iv[2]));
    const Eigen::MatrixXd w1 = Iv[0].transpose() * gv;
    const Eigen::MatrixXd wt = values(c.cone_kahler_form(s));
    const Eigen::MatrixXd wh = values(d.omega_h(s));
    r.decomposition = max_abs(w1 - 2.0 * wt - wh);
    r.metric_routes = max_abs(gv - values(c.metric_closed_form(s)));
    return r;
}

double verify_twist_data(const TwistData& d, const Point& p) {
    const RigidChart& c = d.chart;
    c.check_point(p);
    const JetVector s = geometry::seed(p, 2);
    const Jet fh = d.hamiltonian(s);
    const JetVector phi = d.connection(s);
    const JetVector beta = d.beta(s);
    JetVector alpha;
    for (int a = 0; a < c.dim(); ++a) alpha.push_back((fh + d.k) * phi[a] + beta[a]);
    const Eigen::MatrixXd wh = values(d.omega_h(s));
    double res = max_abs(values(geometry::exterior_derivative(alpha)) - wh);
    const Eigen::VectorXd z = values(d.z_field(s));
    const Eigen::VectorXd iz = wh.transpose() * z;
    for (int b = 0; b < c.dim(); ++b) res = std::max(res, std::abs(iz[b] + fh.d(b)));
    const JetVector Z = d.z_field(s);
    res = std::max(res, std::abs(geometry::directional(Z, fh).value()));
    res = std::max(res, max_abs(values(geometry::lie_derivative_form(Z, phi))));
    res = std::max(res, max_abs(values(geometry::lie_derivative_form(Z, beta))));
    res = std::max(res, std::abs(values(phi).dot(z) - 1.0));
    return res;
}


std::array<double, 8> contraction_identities(const TwistPoint& tp, const Eigen::VectorXd& alpha,
                                             const Eigen::VectorXd& x) {
    const int b = static_cast<int>(tp.horizontal.size());
    if (alpha.size() != b || x.size() != b) throw ArgumentError("contraction check needs base-dimensional data");
    // untwisted side: phi = A - d theta, Z = -d_theta
    Eigen::VectorXd phi = pad(tp.horizontal);
    phi[b] = -1.0;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(b + 1);
    z[b] = -1.0;
    const Eigen::VectorXd xh = pad(x) - phi.dot(pad(x)) / phi.dot(z) * z;
    const Eigen::VectorXd pa = pad(alpha);
    // twisted side through the substitution rules
    const Eigen::VectorXd tw_pa = twist_form({alpha, 0.0}, tp);
    const Eigen::VectorXd tw_phi = twist_form({Eigen::VectorXd::Zero(b), 1.0}, tp);
    const Eigen::VectorXd tw_xh = twist_vector({x, 0.0}, tp);
    const Eigen::VectorXd tw_z = twist_vector({Eigen::VectorXd::Zero(b), 1.0}, tp);
    const double ax = alpha.dot(x);
    return {std::abs(pa.dot(xh) - ax),   std::abs(tw_pa.dot(tw_xh) - ax),
            std::abs(phi.dot(xh)),       std::abs(tw_phi.dot(tw_xh)),
            std::abs(pa.dot(z)),         std::abs(tw_pa.dot(tw_z)),
            std::abs(phi.dot(z) - 1.0),  std::abs(tw_phi.dot(tw_z) - 1.0)};
}

}  // namespace sugra::twist
