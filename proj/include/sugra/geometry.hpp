#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sugra/matrix.hpp"

namespace sugra::geometry {

using Point = std::vector<double>;

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

using MatrixFn = std::function<JetMatrix(const JetVector&)>;
using VectorFn = std::function<JetVector(const JetVector&)>;

// Fields are functions of seeded coordinate jets. Composition with other jet
// maps therefore carries derivatives through automatically.
struct MetricField {
    int dim = 0;
    Signature signature;
    MatrixFn eval;
};

struct VectorField {
    int dim = 0;
    VectorFn eval;
};

struct OneForm {
    int dim = 0;
    VectorFn eval;
};

struct TwoForm {
    int dim = 0;
    MatrixFn eval;
};

struct ChartMap {
    int source_dim = 0;
    int target_dim = 0;
    VectorFn eval;
};

// Connection coefficients gamma(i, j, k) = (nabla_{d_j} d_k)^i.
struct Connection {
    int n = 0;
    std::vector<Jet> gamma;
    Jet& operator()(int i, int j, int k) { return gamma[(i * n + j) * n + k]; }
    const Jet& operator()(int i, int j, int k) const { return gamma[(i * n + j) * n + k]; }
};

using ConnectionFn = std::function<Connection(const JetVector&)>;

struct Tensor3 {
    int n = 0;
    std::vector<double> a;
    explicit Tensor3(int n_ = 0) : n(n_), a(n_ * n_ * n_, 0.0) {}
    double& operator()(int i, int j, int k) { return a[(i * n + j) * n + k]; }
    double operator()(int i, int j, int k) const { return a[(i * n + j) * n + k]; }
    double max_abs() const;
};

// r(l, i, j, k) = component l of R(d_j, d_k) d_i with
// R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X, Y].
struct Tensor4 {
    int n = 0;
    std::vector<double> a;
    explicit Tensor4(int n_ = 0) : n(n_), a(n_ * n_ * n_ * n_, 0.0) {}
    double& operator()(int l, int i, int j, int k) { return a[((l * n + i) * n + j) * n + k]; }
    double operator()(int l, int i, int j, int k) const { return a[((l * n + i) * n + j) * n + k]; }
    double max_abs() const;
};

JetVector seed(const Point& p, int order);
Eigen::MatrixXd values(const JetMatrix& m);
Eigen::VectorXd values(const JetVector& v);
int min_order(const JetVector& v);
int min_order(const JetMatrix& m);

// Jet-level kernels. Each derivative consumes one jet order.
Connection levi_civita(const JetMatrix& g);
// Coefficients of a connection transported from flat coordinates y(x): J^{-1} dJ.
Connection flat_pullback_connection(const JetVector& y);
Tensor4 curvature(const Connection& c);
Eigen::MatrixXd ricci_from_riemann(const Tensor4& r);
Tensor4 lower_first(const Tensor4& r, const Eigen::MatrixXd& g);

// (nabla Y)(i, j) = (nabla_{d_j} Y)^i.
JetMatrix covariant_derivative(const Connection& c, const JetVector& y);
// (nabla alpha)(i, j) = (nabla_{d_i} alpha)(d_j).
JetMatrix covariant_derivative_form(const Connection& c, const JetVector& alpha);
JetVector lie_bracket(const JetVector& x, const JetVector& y);
JetMatrix lie_derivative(const JetVector& x, const JetMatrix& t);
JetVector lie_derivative_form(const JetVector& x, const JetVector& alpha);
Jet directional(const JetVector& x, const Jet& f);
JetMatrix exterior_derivative(const JetVector& alpha);
std::vector<Jet> exterior_derivative(const JetMatrix& beta);
JetVector differential(const Jet& f);
// J(a, i) = d y^a / d x^i.
JetMatrix jacobian(const JetVector& y);
// J^T g J with g evaluated along the map.
JetMatrix pullback(const JetMatrix& g_along, const JetMatrix& jac);
JetVector contract(const JetMatrix& t, const JetVector& x);  // t(x, .)

// Point-level API.
Tensor3 christoffel(const MetricField& g, const Point& p);
Tensor4 riemann(const MetricField& g, const Point& p);
Eigen::MatrixXd ricci(const MetricField& g, const Point& p);
double scalar_curvature(const MetricField& g, const Point& p);
Eigen::MatrixXd lie_derivative_metric(const VectorField& x, const MetricField& g, const Point& p);
Eigen::VectorXd lie_bracket(const VectorField& x, const VectorField& y, const Point& p);
Eigen::MatrixXd exterior_derivative(const OneForm& alpha, const Point& p);
Tensor3 exterior_derivative(const TwoForm& beta, const Point& p);
Eigen::MatrixXd pullback_metric(const ChartMap& f, const MetricField& g, const Point& p);
// Residual of X^T = X^nabla + vert((nabla X) Phi) at the tangent vector v over x.
double complete_lift_residual(const VectorField& x, const ConnectionFn& nabla, const Point& base,
                              const Point& v);

Signature signature_of(const Eigen::MatrixXd& g, double tol = 1e-10);
void check_metric_value(const Eigen::MatrixXd& g, double tol = 1e-10);

}  // namespace sugra::geometry
