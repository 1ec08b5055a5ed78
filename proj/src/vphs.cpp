#include "sugra/vphs.hpp"

#include <algorithm>
#include <cmath>

namespace sugra::vphs {

using cd = std::complex<double>;

namespace {

const cd I1(0.0, 1.0);

Jet like_of(const JetVector& x) { return x.empty() ? Jet(0, 0) : x[0].zero_like(); }

CJet ctrunc(const CJet& c, int o) {
    return {c.re.order() > o ? c.re.truncated(o) : c.re, c.im.order() > o ? c.im.truncated(o) : c.im};
}

Eigen::MatrixXcd cvalues(const CJetMatrix& m) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).value();
    return r;
}

Eigen::MatrixXcd cpartial(const CJetMatrix& m, int a) {
    Eigen::MatrixXcd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = cd(m(i, j).re.d(a), m(i, j).im.d(a));
    return r;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

int hodge_p(HodgeType t) {
    switch (t) {
        case HodgeType::p3q0: return 3;
        case HodgeType::p2q1: return 2;
        case HodgeType::p1q2: return 1;
        case HodgeType::p0q3: return 0;
    }
    return -1;
}

HodgeBundle::HodgeBundle(int n) : n_(n), base_(n) {}

int HodgeBundle::index(HodgeType t, int j) const {
    switch (t) {
        case HodgeType::p3q0: return 0;
        case HodgeType::p2q1:
            if (j < 0 || j >= n_) throw ArgumentError("Hodge component index out of range");
            return 1 + j;
        case HodgeType::p1q2:
            if (j < 0 || j >= n_) throw ArgumentError("Hodge component index out of range");
            return 1 + n_ + j;
        case HodgeType::p0q3: return 2 * n_ + 1;
    }
    throw ArgumentError("unknown Hodge type");
}

HodgeType HodgeBundle::type_of(int i) const {
    if (i < 0 || i >= rank()) throw ArgumentError("frame index out of range");
    if (i == 0) return HodgeType::p3q0;
    if (i <= n_) return HodgeType::p2q1;
    if (i <= 2 * n_) return HodgeType::p1q2;
    return HodgeType::p0q3;
}

Eigen::MatrixXd HodgeBundle::projector(HodgeType t) const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rank(), rank());
    for (int i = 0; i < rank(); ++i)
        if (type_of(i) == t) p(i, i) = 1.0;
    return p;
}

Eigen::MatrixXd HodgeBundle::conjugation() const {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(rank(), rank());
    k(0, rank() - 1) = k(rank() - 1, 0) = 1.0;
    for (int j = 0; j < n_; ++j) k(1 + j, 1 + n_ + j) = k(1 + n_ + j, 1 + j) = 1.0;
    return k;
}

CJetMatrix HodgeBundle::hermitian_l(const JetVector& x) const {
    const Jet like = like_of(x);
    CJetMatrix m(rank(), rank(), CJet(like));
    m(rank() - 1, 0) = CJet::constant_like(like, 1.0);
    return m;
}

CJetMatrix HodgeBundle::hermitian_l_bar(const JetVector& x) const {
    const Jet like = like_of(x);
    CJetMatrix m(rank(), rank(), CJet(like));
    m(0, rank() - 1) = CJet::constant_like(like, 1.0);
    return m;
}

CJetMatrix HodgeBundle::hermitian_lm(const JetVector& x) const {
    const Jet like = like_of(x);
    CJetMatrix m(rank(), rank(), CJet(like));
    const CJetMatrix h = base_.base_hermitian(x);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(1 + n_ + i, 1 + j) = h(i, j);
    return m;
}

CJetMatrix HodgeBundle::polarization(const JetVector& x) const {
    const CJetMatrix a = hermitian_l(x);
    const CJetMatrix b = hermitian_lm(x);
    CJetMatrix q(rank(), rank(), CJet(like_of(x)));
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) {
            const CJet alt = (a(i, j) - b(i, j)) - (a(j, i) - b(j, i));
            q(i, j) = alt * cd(0.0, 0.5);
        }
    return q;
}

Eigen::VectorXcd HodgeBundle::griffiths_structure() const {
    Eigen::VectorXcd v(rank());
    for (int i = 0; i < rank(); ++i) {
        const int p = hodge_p(type_of(i));
        v[i] = (2 * p - 3 > 0) ? I1 : -I1;
    }
    return v;
}

Eigen::VectorXcd HodgeBundle::weil_structure() const {
    Eigen::VectorXcd v(rank());
    for (int i = 0; i < rank(); ++i) {
        const int p = hodge_p(type_of(i));
        v[i] = std::pow(I1, 2 * p - 3);
    }
    return v;
}

namespace {

CJetMatrix hodge_metric(const CJetMatrix& q, const Eigen::VectorXcd& s) {
    CJetMatrix h = q;
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j) h(i, j) = q(i, j) * s[j] + q(i, j) * I1;
    return h;
}

}  // namespace

CJetMatrix HodgeBundle::hermitian_griffiths(const JetVector& x) const {
    return hodge_metric(polarization(x), griffiths_structure());
}

CJetMatrix HodgeBundle::hermitian_weil(const JetVector& x) const {
    return hodge_metric(polarization(x), weil_structure());
}

CJetMatrix HodgeBundle::connection_matrix(const JetVector& x, int a) const {
    if (a < 0 || a >= base_dim()) throw ArgumentError("base direction out of range");
    const int o = geometry::min_order(JetVector(x.begin(), x.begin() + base_dim())) - 1;
    if (o < 0) throw ArgumentError("Gauss-Manin connection needs base jets of order >= 1");
    const geometry::Connection lc = geometry::levi_civita(base_.base_metric(x));
    const CJetMatrix h = base_.base_hermitian(x);
    const JetVector pot = base_.potential(x);
    const Jet zero = x[0].zero_like().truncated(o);
    const int m = a / 2;
    const cd c = (a % 2 == 0) ? cd(1.0, 0.0) : I1;  // d_a = c d_{X_m} + conj(c) d_{bar X_m}
    const CJet A = CJet(zero, -(pot[a].truncated(o)));  // sigma connection form
    const CJet Abar = A.conj();

    CJetMatrix w(rank(), rank(), CJet(zero));
    const int f = 0, e = rank() - 1;
    auto g = [&](int j) { return 1 + j; };
    auto hh = [&](int j) { return 1 + n_ + j; };
    w(f, f) = A;
    w(e, e) = Abar;
    for (int j = 0; j < n_; ++j) {
        w(f, g(j)) = ctrunc(h(m, j), o) * std::conj(c);
        w(e, hh(j)) = ctrunc(h(j, m), o) * c;
    }
    w(g(m), f) = CJet::constant_like(zero, c);
    w(hh(m), e) = CJet::constant_like(zero, std::conj(c));
    for (int k = 0; k < n_; ++k)
        for (int j = 0; j < n_; ++j) {
            // (1,0) part of nabla_{d_a} d_{X_j}, component along d_{X_k}
            const Jet re = (lc(2 * k, a, 2 * j) + lc(2 * k + 1, a, 2 * j + 1)) * 0.5;
            const Jet im = (lc(2 * k + 1, a, 2 * j) - lc(2 * k, a, 2 * j + 1)) * 0.5;
            CJet coef(re, im);
            if (k == j) coef = coef + A;
            w(g(k), g(j)) = coef;
            CJet cbar = coef.conj();
            w(hh(k), hh(j)) = cbar;
        }
    return w;
}

CJetMatrix HodgeBundle::parallel_frame(const JetVector& x) const {
    const Jet like = like_of(x);
    Jet s2 = like.constant_like(1.0);
    for (int a = 0; a < base_dim(); ++a) s2 -= x[a] * x[a];
    if (!(s2.value() > 0.0)) throw DomainError("base point outside the unit ball");
    const Jet S = sqrt(s2);
    const Jet invS = 1.0 / S;
    const int N = rank();
    const int e = N - 1;
    CJetMatrix p(N, N, CJet(like));
    // s_0 and conj(s_0)
    p(0, 0) = CJet(invS);
    p(e, n_ + 1) = CJet(invS);
    for (int j = 0; j < n_; ++j) {
        const CJet X(x[2 * j], x[2 * j + 1]);
        p(1 + j, 0) = -(X * S);
        p(1 + n_ + j, n_ + 1) = -(X.conj() * S);
        // s_j and conj(s_j)
        p(0, 1 + j) = -(X.conj() * invS);
        p(1 + j, 1 + j) = CJet(S);
        p(e, n_ + 2 + j) = -(X * invS);
        p(1 + n_ + j, n_ + 2 + j) = CJet(S);
    }
    return p;
}

namespace {

std::vector<Eigen::MatrixXcd> connection_values(const HodgeBundle& e, const JetVector& s) {
    std::vector<Eigen::MatrixXcd> w;
    for (int a = 0; a < e.base_dim(); ++a) w.push_back(cvalues(e.connection_matrix(s, a)));
    return w;
}

}  // namespace

double check_parallel_frame(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    if (e.n() == 0) return 0.0;
    const JetVector s = geometry::seed(x, 1);
    const CJetMatrix P = e.parallel_frame(s);
    const Eigen::MatrixXcd Pv = cvalues(P);
    const auto w = connection_values(e, s);
    double res = 0.0;
    for (int a = 0; a < e.base_dim(); ++a) res = std::max(res, max_abs(cpartial(P, a) + w[a] * Pv));
    return res;
}

double check_flatness(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    if (e.n() == 0) return 0.0;
    const JetVector s = geometry::seed(x, 2);
    std::vector<CJetMatrix> w;
    for (int a = 0; a < e.base_dim(); ++a) w.push_back(e.connection_matrix(s, a));
    double res = 0.0;
    for (int a = 0; a < e.base_dim(); ++a)
        for (int b = a + 1; b < e.base_dim(); ++b) {
            const Eigen::MatrixXcd wa = cvalues(w[a]), wb = cvalues(w[b]);
            const Eigen::MatrixXcd f = cpartial(w[b], a) - cpartial(w[a], b) + wa * wb - wb * wa;
            res = std::max(res, max_abs(f));
        }
    return res;
}

double check_polarization_parallel(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    if (e.n() == 0) return 0.0;
    const JetVector s = geometry::seed(x, 1);
    const CJetMatrix Q = e.polarization(s);
    const Eigen::MatrixXcd Qv = cvalues(Q);
    const auto w = connection_values(e, s);
    double res = 0.0;
    for (int a = 0; a < e.base_dim(); ++a)
        res = std::max(res, max_abs(cpartial(Q, a) - w[a].transpose() * Qv - Qv * w[a]));
    return res;
}

double check_transversality(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    if (e.n() == 0) return 0.0;
    const JetVector s = geometry::seed(x, 1);
    const auto w = connection_values(e, s);
    double res = 0.0;
    for (int m = 0; m < e.n(); ++m) {
        const Eigen::MatrixXcd holo = 0.5 * (w[2 * m] - I1 * w[2 * m + 1]);
        const Eigen::MatrixXcd anti = 0.5 * (w[2 * m] + I1 * w[2 * m + 1]);
        for (int i = 0; i < e.rank(); ++i)
            for (int j = 0; j < e.rank(); ++j) {
                const int pin = hodge_p(e.type_of(j));
                const int pout = hodge_p(e.type_of(i));
                if (pout != pin && pout != pin - 1) res = std::max(res, std::abs(holo(i, j)));
                if (pout != pin && pout != pin + 1) res = std::max(res, std::abs(anti(i, j)));
            }
    }
    return res;
}

double check_frame_pairings(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    const JetVector s = e.n() == 0 ? JetVector{} : geometry::seed(x, 1);
    const Eigen::MatrixXcd P = cvalues(e.parallel_frame(s));
    const Eigen::MatrixXcd Q = cvalues(e.polarization(s));
    const Eigen::MatrixXcd H = cvalues(e.hermitian_griffiths(s));
    const int n1 = e.n() + 1;
    double res = 0.0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
            const Eigen::VectorXcd si = P.col(i), sj = P.col(j), sbi = P.col(n1 + i);
            const double eps = (i == 0) ? -1.0 : 1.0;
            const cd qexp = (i == j) ? eps / (2.0 * I1) : cd(0.0);
            const cd hexp = (i == j) ? cd(eps) : cd(0.0);
            res = std::max(res, std::abs((sbi.transpose() * Q * sj).value() - qexp));
            res = std::max(res, std::abs((si.transpose() * Q * sj).value()));
            res = std::max(res, std::abs((sbi.transpose() * H * sj).value() - hexp));
        }
    return res;
}

double check_reality(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    const Eigen::MatrixXd K = e.conjugation();
    double res = 0.0;
    const JetVector s = e.n() == 0 ? JetVector{} : geometry::seed(x, 1);
    for (const auto& w : connection_values(e, s)) res = std::max(res, max_abs(K * w.conjugate() * K - w));
    // the frame's second half is the conjugate of the first
    const Eigen::MatrixXcd P = cvalues(e.parallel_frame(s));
    const int n1 = e.n() + 1;
    res = std::max(res, max_abs(K * P.leftCols(n1).conjugate() - P.rightCols(n1)));
    // Q is real on real sections
    const Eigen::MatrixXcd Q = cvalues(e.polarization(s));
    res = std::max(res, max_abs(K * Q.conjugate() * K - Q));
    return res;
}

double check_connection_routes(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    if (e.n() == 0) return 0.0;
    const JetVector s = geometry::seed(x, 1);
    const CJetMatrix P = e.parallel_frame(s);
    const Eigen::MatrixXcd Pinv = cvalues(P).inverse();
    const auto w = connection_values(e, s);
    double res = 0.0;
    for (int a = 0; a < e.base_dim(); ++a) res = std::max(res, max_abs(w[a] + cpartial(P, a) * Pinv));
    return res;
}

double check_hodge_metrics(const HodgeBundle& e, const Point& x) {
    e.check_base_point(x);
    const JetVector s = e.n() == 0 ? JetVector{} : geometry::seed(x, 1);
    const Eigen::MatrixXcd Q = cvalues(e.polarization(s));
    const Eigen::MatrixXcd HG = cvalues(e.hermitian_griffiths(s));
    const Eigen::MatrixXcd HW = cvalues(e.hermitian_weil(s));
    const Eigen::MatrixXcd HL = cvalues(e.hermitian_l(s));
    const Eigen::MatrixXcd HLb = cvalues(e.hermitian_l_bar(s));
    const Eigen::MatrixXcd HLM = cvalues(e.hermitian_lm(s));
    const Eigen::MatrixXd K = e.conjugation();
    double res = 0.0;
    res = std::max(res, max_abs(HG - (-HL + HLM)));
    res = std::max(res, max_abs(HW - (HLb + HLM)));
    // Real sections: K conj(v) = v. Use the real and imaginary parts of frame vectors.
    const int N = e.rank();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXcd u = Eigen::VectorXcd::Zero(N), v = Eigen::VectorXcd::Zero(N);
            u[i] = cd(0.3 + 0.1 * i, -0.2 + 0.05 * j);
            v[j] = cd(-0.4 + 0.07 * j, 0.6 - 0.03 * i);
            u = u + K * u.conjugate();
            v = v + K * v.conjugate();
            const cd q = u.transpose() * Q * v;
            const cd hg = u.transpose() * HG * v;
            const cd hw = u.transpose() * HW * v;
            res = std::max(res, std::abs(q.imag()));
            res = std::max(res, std::abs(hg.imag() - q.real()));
            res = std::max(res, std::abs(hw.imag() - q.real()));
        }
    // positivity of the Hodge form on each summand
    for (int i = 0; i < N; ++i) {
        const int p = hodge_p(e.type_of(i));
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N);
        v[i] = 1.0;
        const Eigen::VectorXcd vb = K * v.conjugate();
        const cd val = std::pow(I1, 2 * p - 3) * cd(vb.transpose() * Q * v);
        if (!(val.real() > 0.0) || std::abs(val.imag()) > 1e-12) return -1.0;
    }
    return res;
}

}  // namespace sugra::vphs
