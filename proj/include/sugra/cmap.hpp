#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sugra/twist.hpp"

namespace sugra::cmap {

using geometry::Point;

enum class Route { fs, assembled, twist };

// Ways of writing the w-block of the assembled metric.
enum class Rearrangement {
    primary,    // (1/rho) Re(h_L (x) h_M) + (sigma/rho^2) Re h_L
    griffiths,  // (1/rho) Re h_G + (2 r^2/rho^2) Re h_L
    weil,       // (1/rho) Re h_W + (4k/rho^2) Re h_L
};

const char* route_name(Route r);
Route parse_route(const std::string& s);

// Deformed c-map space on the chart
//   [x_1, y_1, ..., x_n, y_n, r, Re w_0, Im w_0, ..., Re w_n, Im w_n, t],
// rho = r^2 - 2k, sigma = r^2 + 2k, Z_k = d_t.
class CmapModel {
public:
    CmapModel(int n, int k);

    int n() const { return data_.chart.n(); }
    int k() const { return k_; }
    int dim() const { return data_.chart.dim(); }
    int r_index() const { return data_.chart.r_index(); }
    int w_index(int i, int part) const { return data_.chart.w_index(i, part); }
    int t_index() const { return data_.chart.fibre_index(); }
    const twist::TwistData& twist_data() const { return data_; }

    // ArgumentError on a wrong size, DomainError outside |X| < 1, r^2 - 2k > 1e-8.
    void check_point(const Point& p) const;

    JetMatrix metric_fs(const JetVector& p) const;
    JetMatrix metric_assembled(const JetVector& p, Rearrangement form = Rearrangement::primary) const;
    // tw(g_H) without the overall constant.
    Eigen::MatrixXd metric_twist(const Point& p) const;
    Eigen::MatrixXd metric(const Point& p, Route route, double c = 1.0) const;
    geometry::MetricField metric_field(Route route = Route::fs) const;

    // Flat sections s = sum a_i s_i + conj, a_i = s[2i] + i s[2i+1].
    Eigen::VectorXcd section_coefficients(const Eigen::VectorXd& s) const;
    double polarization(const Eigen::VectorXd& s1, const Eigen::VectorXd& s2) const;  // Q(s1, s2)
    Jet section_pairing(const Eigen::VectorXd& s, const JetVector& p) const;          // Q(s, Phi)

    geometry::VectorField z_field() const;
    // w_s = a . d_w + Q(s, Phi)/2 d_t
    geometry::VectorField heisenberg_field(const Eigen::VectorXd& s) const;
    geometry::ChartMap heisenberg_map(const Eigen::VectorXd& s) const;
    Point heisenberg_isometry(const Eigen::VectorXd& s, const Point& p) const;
    geometry::ChartMap t_shift(double dt) const;

    // Lift of A in U(n,1) (A^dagger J A = J, J = diag(-1, 1, ..., 1)).
    geometry::ChartMap lift_isometry_map(const Eigen::MatrixXcd& a) const;
    Point lift_isometry(const Eigen::MatrixXcd& a, const Point& p) const;
    Eigen::MatrixXd lift_isometry_jacobian(const Eigen::MatrixXcd& a, const Point& p) const;
    // Generator of the lifted action of exp(tau B), B in u(n,1).
    geometry::VectorField generator_field(const Eigen::MatrixXcd& b) const;

    // Corresponding point of the rigid chart (theta = 0).
    Point rigid_point(const Point& p) const;

private:
    int k_;
    twist::TwistData data_;
};

// Throws ArgumentError unless a is (n+1)x(n+1) with a^dagger J a = J within tol.
void check_unitary(const Eigen::MatrixXcd& a, int n, double tol = 1e-12);
void check_generator(const Eigen::MatrixXcd& b, int n, double tol = 1e-12);

// |a - b| / max|b|, componentwise.
double relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct RouteComparison {
    double fs_vs_assembled = 0;
    double fs_vs_twist = 0;              // against c * tw(g_H)
    double griffiths_vs_weil = 0;
    double assembled_forms = 0;          // primary vs Griffiths
    double twist_ratio = 0;              // pointwise least-squares c
};
RouteComparison compare_routes(const CmapModel& m, const Point& p, double c);

struct EinsteinPoint {
    double lambda = 0;
    double residual = 0;  // |Ric - lambda g| / |g|, Frobenius
};
EinsteinPoint einstein_at(const CmapModel& m, const Point& p);

double killing_residual(const CmapModel& m, const geometry::VectorField& v, const Point& p);

struct BracketResidual {
    double stated = 0;   // |[w_s1, w_s2] - Q(s1, s2) Z_k|
    double flipped = 0;  // |[w_s1, w_s2] + Q(s1, s2) Z_k|
};
BracketResidual heisenberg_bracket(const CmapModel& m, const Eigen::VectorXd& s1, const Eigen::VectorXd& s2,
                                   const Point& p);
double z_bracket(const CmapModel& m, const Eigen::VectorXd& s, const Point& p);
// psi_s1 o psi_s2 = psi_{s1 + s2} o (t -> t + Q(s1, s2)/2)
double heisenberg_composition(const CmapModel& m, const Eigen::VectorXd& s1, const Eigen::VectorXd& s2,
                              const Point& p);
// |F^* g - g| at p, absolute.
double isometry_residual(const CmapModel& m, const geometry::ChartMap& f, const Point& p);

struct GeneratorCheck {
    double hamiltonian = 0;   // iota_{X^T} omega_H + d f^T on the rigid chart
    double formula = 0;       // f^T against -(f_H + k) phi~(X) - Q(Phi, nabla_X Phi)/2
    double pushforward = 0;   // generator on N against tw(X^T) + f^T Z_k
};
GeneratorCheck generator_check(const CmapModel& m, const Eigen::MatrixXcd& b, const Point& p);


// Least-squares constant c with c tw(g_H) ~ g_fs over the given points.
double fit_twist_constant(const CmapModel& m, const std::vector<Point>& points);

}  // namespace sugra::cmap
