#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sugra/geometry.hpp"

namespace sugra::psk {

using geometry::Point;

// Complex hyperbolic space CH^n as a projective special Kaehler manifold, with its
// conical special Kaehler cone in C^{n+1} = {|z_1|^2 + ... + |z_n|^2 < |z_0|^2}
// carrying the flat metric sum |dz_i|^2 - |dz_0|^2.
//
// Base chart: X_j = z_j / z_0 as reals (x_1, y_1, ..., x_n, y_n).
// Cone chart: (X, r, theta) with z_0 = r e^{i theta} / sqrt(1 - |X|^2), z_j = z_0 X_j.
class ComplexHyperbolic {
public:
    explicit ComplexHyperbolic(int n);

    int n() const { return n_; }
    int base_dim() const { return 2 * n_; }
    int cone_dim() const { return 2 * n_ + 2; }
    int r_index() const { return 2 * n_; }
    int theta_index() const { return 2 * n_ + 1; }

    // Base geometry as jets of the base coordinates.
    CJetMatrix base_hermitian(const JetVector& x) const;  // h(i, j) = h_M(d_{bar X_i}, d_{X_j})
    JetMatrix base_metric(const JetVector& x) const;
    JetMatrix base_kahler_form(const JetVector& x) const;
    // A with Im(sum bar X_j dX_j) / (1 - |X|^2) = A_a dx^a.
    JetVector potential(const JetVector& x) const;
    Eigen::MatrixXd base_complex_structure() const;
    geometry::MetricField base_metric_field() const;

    // Cone geometry as jets of the cone chart coordinates. Inputs may also be
    // longer chart vectors whose leading entries are the cone chart.
    JetVector embedding(const JetVector& q) const;  // (Re z_0, Im z_0, Re z_1, ...)
    JetMatrix cone_metric(const JetVector& q) const;
    JetMatrix cone_metric_pullback(const JetVector& q) const;
    JetMatrix cone_complex_structure(const JetVector& q) const;  // I(a, b) = (I d_b)^a
    JetVector euler_field(const JetVector& q) const;
    JetVector rotation_field(const JetVector& q) const;  // I xi
    CJetVector connection_form(const JetVector& q) const;  // chi
    JetVector phi_tilde(const JetVector& q) const;  // Im chi, closed form
    geometry::MetricField cone_metric_field() const;
    geometry::ChartMap embedding_map() const;
    Eigen::MatrixXd flat_metric() const;

    void check_base_point(const Point& x) const;
    void check_cone_point(const Point& q) const;

    // Horizontal lift with respect to chi of a base vector field.
    geometry::VectorField horizontal_lift(const geometry::VectorField& base) const;

    // Parallel-curvature tensor of constant holomorphic sectional curvature,
    // normalised so that it equals minus the curvature of g_M when the scale is 1.
    geometry::Tensor4 projective_curvature(const Point& x, double scale) const;

private:
    int n_;
};

struct CskResidual {
    double levi_civita_xi = 0;     // |nabla^g xi - id|
    double levi_civita_ixi = 0;    // |nabla^g (I xi) - I|
    double flat_xi = 0;            // same with the flat connection
    double flat_ixi = 0;
    double flat_curvature = 0;
    double flat_torsion = 0;
    double flat_vs_levi_civita = 0;
    double parallel_complex_structure = 0;  // |nabla I|
    double max() const;
};

CskResidual verify_csk_axioms(const ComplexHyperbolic& m, const Point& q);
// nabla chi = -chi^2 - pi^* h_M, for the Levi-Civita and the flat connection.
double verify_chi_derivative(const ComplexHyperbolic& m, const Point& q);
// Difference of Levi-Civita connections of the cone and the base along pi.
double verify_lc_difference(const ComplexHyperbolic& m, const geometry::VectorField& x,
                            const geometry::VectorField& y, const Point& q);
// |R^{g_M} + scale * R_P| at a base point.
double verify_d1(const ComplexHyperbolic& m, const Point& x, double scale);
// Least-squares scale making R^{g_M} + scale * R_P vanish at a point of CH^1.
double calibrate_projective_curvature(const Point& x);
// L_xi g = 2 g, L_{I xi} g = 0, d(g(xi, .)) = 0, d(g(I xi, .)) = 2 omega.
double verify_homogeneity(const ComplexHyperbolic& m, const Point& q);
// d chi = -2i pi^* omega_M.
double verify_chern_curvature(const ComplexHyperbolic& m, const Point& q);
// chi recomputed from the metric agrees with the closed form.
double verify_connection_form(const ComplexHyperbolic& m, const Point& q);

}  // namespace sugra::psk
