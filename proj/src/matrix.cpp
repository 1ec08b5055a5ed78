#include "sugra/matrix.hpp"

#include <cmath>
#include <utility>

namespace sugra {

namespace {

Jet at_order(const Jet& a, int o) { return a.order() > o ? a.truncated(o) : a; }

}  // namespace

JetMatrix inverse(const JetMatrix& a) {
    const int n = a.rows();
    if (n != a.cols()) throw ArgumentError("inverse of a non-square matrix");
    if (n == 0) return a;
    const Jet& like = a(0, 0);
    JetMatrix m = a;
    JetMatrix inv(n, n, like.zero_like());
    for (int i = 0; i < n; ++i) inv(i, i) = like.constant_like(1.0);

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j).value()));
    if (scale == 0.0) throw SingularityError("inverse of a zero matrix");

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m(r, col).value()) > std::abs(m(piv, col).value())) piv = r;
        if (std::abs(m(piv, col).value()) <= 1e-14 * scale)
            throw SingularityError("matrix is singular at the base point");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const Jet pinv = 1.0 / m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) = m(col, j) * pinv;
            inv(col, j) = inv(col, j) * pinv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet f = m(r, col);
            if (f.value() == 0.0 && f.order() == 0) continue;
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

JetMatrix multiply(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("matrix product shape mismatch");
    JetMatrix r(a.rows(), b.cols(), a(0, 0).zero_like());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            for (int j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

JetMatrix transpose(const JetMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return JetMatrix();
    JetMatrix r(a.cols(), a.rows(), a(0, 0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

JetVector mat_vec(const JetMatrix& a, const JetVector& v) {
    if (a.cols() != static_cast<int>(v.size())) throw ArgumentError("matrix-vector shape mismatch");
    JetVector r(a.rows(), v.empty() ? Jet() : v[0].zero_like());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

JetMatrix truncate(const JetMatrix& a, int order) {
    JetMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = at_order(a(i, j), order);
    return r;
}

JetVector truncate(const JetVector& v, int order) {
    JetVector r;
    r.reserve(v.size());
    for (const Jet& x : v) r.push_back(at_order(x, order));
    return r;
}

}  // namespace sugra
