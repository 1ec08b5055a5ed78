#include "sugra/jet.hpp"

#include <cmath>
#include <string>

#include "sugra/errors.hpp"

namespace sugra {

namespace {

void check_shape(int dim, int order) {
    if (dim < 0 || dim > Jet::kMaxDim)
        throw ArgumentError("jet dimension must lie in [0, 16], got " + std::to_string(dim));
    if (order < 0 || order > Jet::kMaxOrder)
        throw ArgumentError("jet order must lie in [0, 3], got " + std::to_string(order));
}

}  // namespace

int Jet::packed_size(int dim, int order) {
    int n = 1;
    if (order >= 1) n += dim;
    if (order >= 2) n += dim * (dim + 1) / 2;
    if (order >= 3) n += dim * (dim + 1) * (dim + 2) / 6;
    return n;
}

int Jet::idx2(int i, int j) { return j * (j + 1) / 2 + i; }
int Jet::idx3(int i, int j, int k) { return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i; }

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
    check_shape(dim, order);
    c_.assign(packed_size(dim, order), 0.0);
}

Jet Jet::constant(int dim, int order, double value) {
    Jet j(dim, order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int dim, int index, double value, int order) {
    if (dim < 1 || dim > kMaxDim)
        throw ArgumentError("jet dimension must lie in [1, 16], got " + std::to_string(dim));
    if (order < 1 || order > kMaxOrder)
        throw ArgumentError("jet order must be 1, 2 or 3, got " + std::to_string(order));
    if (index < 0 || index >= dim)
        throw ArgumentError("variable index " + std::to_string(index) + " outside [0, " +
                            std::to_string(dim) + ")");
    Jet j(dim, order);
    j.c_[0] = value;
    j.c_[1 + index] = 1.0;
    return j;
}

Jet Jet::constant_like(double v) const { return constant(dim_, order_, v); }

double Jet::d(int i) const {
    if (order_ < 1 || i < 0 || i >= dim_) throw ArgumentError("jet first derivative index out of range");
    return c_[1 + i];
}

double Jet::d(int i, int j) const {
    if (order_ < 2 || i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw ArgumentError("jet second derivative index out of range");
    if (i > j) std::swap(i, j);
    return c_[off2() + idx2(i, j)];
}

double Jet::d(int i, int j, int k) const {
    if (order_ < 3 || i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
        throw ArgumentError("jet third derivative index out of range");
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
    return c_[off3() + idx3(i, j, k)];
}

std::vector<double> Jet::gradient() const {
    std::vector<double> g(dim_, 0.0);
    if (order_ >= 1)
        for (int i = 0; i < dim_; ++i) g[i] = c_[1 + i];
    return g;
}

std::vector<double> Jet::hessian() const {
    std::vector<double> h(dim_ * dim_, 0.0);
    if (order_ >= 2)
        for (int j = 0; j < dim_; ++j)
            for (int i = 0; i <= j; ++i) h[i * dim_ + j] = h[j * dim_ + i] = c_[off2() + idx2(i, j)];
    return h;
}

Jet Jet::partial(int i) const {
    if (order_ < 1) throw ArgumentError("cannot differentiate an order-0 jet");
    if (i < 0 || i >= dim_) throw ArgumentError("partial derivative index out of range");
    Jet r(dim_, order_ - 1);
    r.c_[0] = c_[1 + i];
    if (order_ >= 2)
        for (int j = 0; j < dim_; ++j) r.c_[1 + j] = c_[off2() + (i <= j ? idx2(i, j) : idx2(j, i))];
    if (order_ >= 3) {
        const int ro2 = r.off2();
        for (int k = 0; k < dim_; ++k)
            for (int j = 0; j <= k; ++j) {
                int a = i, b = j, c = k;
                if (a > b) std::swap(a, b);
                if (b > c) std::swap(b, c);
                if (a > b) std::swap(a, b);
                r.c_[ro2 + idx2(j, k)] = c_[off3() + idx3(a, b, c)];
            }
    }
    return r;
}

Jet Jet::truncated(int order) const {
    if (order > order_) throw ArgumentError("cannot raise jet order by truncation");
    Jet r(dim_, order);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i];
    return r;
}

void check_compatible(const Jet& a, const Jet& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw ArgumentError("jet shape mismatch: (" + std::to_string(a.dim()) + "," +
                            std::to_string(a.order()) + ") vs (" + std::to_string(b.dim()) + "," +
                            std::to_string(b.order()) + ")");
}

Jet& Jet::operator+=(const Jet& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator+=(double s) {
    c_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s) {
    c_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Jet& Jet::operator/=(double s) {
    if (s == 0.0) throw SingularityError("division of a jet by zero");
    for (double& x : c_) x /= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const int d = a.dim_;
    Jet r(d, a.order_);
    const double* A = a.c_.data();
    const double* B = b.c_.data();
    double* R = r.c_.data();
    R[0] = A[0] * B[0];
    if (a.order_ >= 1)
        for (int i = 0; i < d; ++i) R[1 + i] = A[0] * B[1 + i] + A[1 + i] * B[0];
    if (a.order_ >= 2) {
        const double* A1 = A + 1;
        const double* B1 = B + 1;
        const double* A2 = A + a.off2();
        const double* B2 = B + a.off2();
        double* R2 = R + a.off2();
        for (int j = 0; j < d; ++j)
            for (int i = 0; i <= j; ++i) {
                const int p = Jet::idx2(i, j);
                R2[p] = A[0] * B2[p] + A2[p] * B[0] + A1[i] * B1[j] + A1[j] * B1[i];
            }
        if (a.order_ >= 3) {
            const double* A3 = A + a.off3();
            const double* B3 = B + a.off3();
            double* R3 = R + a.off3();
            int p = 0;
            for (int k = 0; k < d; ++k)
                for (int j = 0; j <= k; ++j) {
                    const int jk = Jet::idx2(j, k);
                    for (int i = 0; i <= j; ++i, ++p) {
                        const int ik = Jet::idx2(i, k);
                        const int ij = Jet::idx2(i, j);
                        R3[p] = A[0] * B3[p] + A3[p] * B[0] + A1[i] * B2[jk] + A1[j] * B2[ik] +
                                A1[k] * B2[ij] + A2[jk] * B1[i] + A2[ik] * B1[j] + A2[ij] * B1[k];
                    }
                }
        }
    }
    return r;
}

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
    const int d = dim_;
    Jet r(d, order_);
    const double* A = c_.data();
    double* R = r.c_.data();
    R[0] = f0;
    if (order_ >= 1)
        for (int i = 0; i < d; ++i) R[1 + i] = f1 * A[1 + i];
    if (order_ >= 2) {
        const double* A1 = A + 1;
        const double* A2 = A + off2();
        double* R2 = R + off2();
        for (int j = 0; j < d; ++j)
            for (int i = 0; i <= j; ++i) {
                const int p = idx2(i, j);
                R2[p] = f1 * A2[p] + f2 * A1[i] * A1[j];
            }
        if (order_ >= 3) {
            const double* A3 = A + off3();
            double* R3 = R + off3();
            int p = 0;
            for (int k = 0; k < d; ++k)
                for (int j = 0; j <= k; ++j)
                    for (int i = 0; i <= j; ++i, ++p) {
                        R3[p] = f1 * A3[p] +
                                f2 * (A2[idx2(i, j)] * A1[k] + A2[idx2(i, k)] * A1[j] + A2[idx2(j, k)] * A1[i]) +
                                f3 * A1[i] * A1[j] * A1[k];
                    }
        }
    }
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    r += b;
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    r -= b;
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const double v = b.value();
    if (v == 0.0) throw SingularityError("jet division by a function vanishing at the base point");
    const double inv = 1.0 / v;
    return a * b.compose(inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv);
}

Jet operator-(const Jet& a) { return a * -1.0; }
Jet operator+(const Jet& a, double s) { Jet r = a; r += s; return r; }
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { Jet r = a; r -= s; return r; }
Jet operator-(double s, const Jet& a) { return -a + s; }
Jet operator*(const Jet& a, double s) { Jet r = a; r *= s; return r; }
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) { Jet r = a; r /= s; return r; }
Jet operator/(double s, const Jet& a) { return a.constant_like(s) / a; }

Jet square(const Jet& a) { return a * a; }

Jet sqrt(const Jet& a) {
    const double x = a.value();
    if (!(x > 0.0)) throw SingularityError("sqrt of a jet with non-positive value " + std::to_string(x));
    const double s = std::sqrt(x);
    return a.compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

Jet exp(const Jet& a) {
    const double e = std::exp(a.value());
    return a.compose(e, e, e, e);
}

Jet log(const Jet& a) {
    const double x = a.value();
    if (!(x > 0.0)) throw SingularityError("log of a jet with non-positive value " + std::to_string(x));
    return a.compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Jet sin(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return a.compose(s, c, -s, -c);
}

Jet cos(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return a.compose(c, -s, -c, s);
}

Jet atan(const Jet& a) {
    const double x = a.value();
    const double q = 1.0 / (1.0 + x * x);
    return a.compose(std::atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q);
}

Jet atan2(const Jet& y, const Jet& x) {
    check_compatible(y, x);
    const double y0 = y.value(), x0 = x.value();
    const double rr = x0 * x0 + y0 * y0;
    if (rr == 0.0) throw SingularityError("atan2 of a jet at the origin");
    // Angle relative to the base direction; the ratio vanishes at the base point.
    const Jet ratio = (x0 * y - y0 * x) / (x0 * x + y0 * y);
    return atan(ratio) + std::atan2(y0, x0);
}

Jet pow(const Jet& a, double p) {
    const double x = a.value();
    if (!(x > 0.0)) throw SingularityError("pow of a jet with non-positive value " + std::to_string(x));
    const double f0 = std::pow(x, p);
    return a.compose(f0, p * f0 / x, p * (p - 1) * f0 / (x * x), p * (p - 1) * (p - 2) * f0 / (x * x * x));
}

CJet CJet::constant_like(const Jet& like, std::complex<double> v) {
    return {like.constant_like(v.real()), like.constant_like(v.imag())};
}

CJet operator+(const CJet& a, const CJet& b) { return {a.re + b.re, a.im + b.im}; }
CJet operator-(const CJet& a, const CJet& b) { return {a.re - b.re, a.im - b.im}; }
CJet operator-(const CJet& a) { return {-a.re, -a.im}; }
CJet operator*(const CJet& a, const CJet& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CJet operator/(const CJet& a, const CJet& b) {
    const Jet den = b.abs2();
    return CJet{a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im} / den;
}
CJet operator*(const CJet& a, const Jet& s) { return {a.re * s, a.im * s}; }
CJet operator*(const Jet& s, const CJet& a) { return a * s; }
CJet operator/(const CJet& a, const Jet& s) {
    const Jet inv = 1.0 / s;
    return a * inv;
}
CJet operator*(const CJet& a, std::complex<double> s) {
    return {a.re * s.real() - a.im * s.imag(), a.re * s.imag() + a.im * s.real()};
}
CJet operator*(std::complex<double> s, const CJet& a) { return a * s; }
CJet operator+(const CJet& a, std::complex<double> s) { return {a.re + s.real(), a.im + s.imag()}; }

}  // namespace sugra
