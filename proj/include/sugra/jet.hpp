#pragma once

#include <complex>
#include <vector>

namespace sugra {

// Truncated multivariate Taylor polynomial: the value of a function together with
// all partial derivatives up to `order` (at most 3) in `dim` (at most 16) variables.
// Derivatives are stored densely, symmetric tensors packed by sorted multi-index.
class Jet {
public:
    static constexpr int kMaxOrder = 3;
    static constexpr int kMaxDim = 16;

    Jet() = default;
    Jet(int dim, int order);  // zero jet

    static Jet constant(int dim, int order, double value);
    // The coordinate function x_index seeded at `value`. order must be 1, 2 or 3.
    static Jet variable(int dim, int index, double value, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    bool empty() const { return c_.empty(); }

    double value() const { return c_[0]; }
    double d(int i) const;
    double d(int i, int j) const;
    double d(int i, int j, int k) const;
    // Gradient and Hessian as dense arrays (Hessian row-major dim x dim).
    std::vector<double> gradient() const;
    std::vector<double> hessian() const;

    // Partial derivative along x_i; the result has order one less.
    Jet partial(int i) const;
    Jet truncated(int order) const;
    Jet zero_like() const { return Jet(dim_, order_); }
    Jet constant_like(double v) const;

    const std::vector<double>& coeffs() const { return c_; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    // Applies a univariate function given its first four derivatives at value().
    Jet compose(double f0, double f1, double f2, double f3) const;

    static int packed_size(int dim, int order);

private:
    friend Jet operator*(const Jet&, const Jet&);

    int off2() const { return 1 + dim_; }
    int off3() const { return 1 + dim_ + dim_ * (dim_ + 1) / 2; }
    static int idx2(int i, int j);          // i <= j
    static int idx3(int i, int j, int k);   // i <= j <= k

    int dim_ = 0;
    int order_ = 0;
    std::vector<double> c_;
};

void check_compatible(const Jet& a, const Jet& b);

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator+(const Jet& a, double s);
Jet operator+(double s, const Jet& a);
Jet operator-(const Jet& a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(const Jet& a, double s);
Jet operator*(double s, const Jet& a);
Jet operator/(const Jet& a, double s);
Jet operator/(double s, const Jet& a);

Jet square(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet atan(const Jet& a);
Jet atan2(const Jet& y, const Jet& x);
Jet pow(const Jet& a, double p);

// Complex-valued jet as a pair of real jets.
struct CJet {
    Jet re, im;

    CJet() = default;
    CJet(Jet r, Jet i) : re(std::move(r)), im(std::move(i)) {}
    explicit CJet(const Jet& r) : re(r), im(r.zero_like()) {}
    static CJet constant_like(const Jet& like, std::complex<double> v);

    std::complex<double> value() const { return {re.value(), im.value()}; }
    CJet partial(int i) const { return {re.partial(i), im.partial(i)}; }
    CJet conj() const { return {re, -im}; }
    Jet abs2() const { return re * re + im * im; }
    CJet zero_like() const { return {re.zero_like(), re.zero_like()}; }
};

CJet operator+(const CJet& a, const CJet& b);
CJet operator-(const CJet& a, const CJet& b);
CJet operator-(const CJet& a);
CJet operator*(const CJet& a, const CJet& b);
CJet operator/(const CJet& a, const CJet& b);
CJet operator*(const CJet& a, const Jet& s);
CJet operator*(const Jet& s, const CJet& a);
CJet operator/(const CJet& a, const Jet& s);
CJet operator*(const CJet& a, std::complex<double> s);
CJet operator*(std::complex<double> s, const CJet& a);
CJet operator+(const CJet& a, std::complex<double> s);

}  // namespace sugra
