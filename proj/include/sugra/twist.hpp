#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "sugra/vphs.hpp"

namespace sugra::twist {

using geometry::Point;

// Chart on the tangent bundle of the cone, identified with the pull-back of the
// Hodge bundle: (X, r, w_0, ..., w_n, theta) with the fibre coordinates w_i defined by
// Phi = sum w_i s_i + conj, s_i the flat frame. Real layout:
//   [x_1, y_1, ..., x_n, y_n, r, Re w_0, Im w_0, ..., Re w_n, Im w_n, theta].
// The first 4n+3 coordinates are the base of the circle bundle generated by Z.
class RigidChart {
public:
    explicit RigidChart(int n);

    int n() const { return n_; }
    int dim() const { return 4 * n_ + 4; }
    int base_dim() const { return 4 * n_ + 3; }
    int r_index() const { return 2 * n_; }
    int w_index(int i, int part) const { return 2 * n_ + 1 + 2 * i + part; }
    int fibre_index() const { return 4 * n_ + 3; }

    const psk::ComplexHyperbolic& cone() const { return bundle_.base(); }
    const vphs::HodgeBundle& bundle() const { return bundle_; }

    JetVector cone_part(const JetVector& p) const;  // (X, r, theta)
    // Flat coordinates (Re z, Im z, Re w, Im w) on T C^{n+1}.
    JetVector flat_embedding(const JetVector& p) const;
    Eigen::MatrixXd flat_metric() const;
    std::array<Eigen::MatrixXd, 3> flat_complex_structures() const;

    // Rigid c-map metric as the pull-back of the flat metric, and the closed form
    // g~ + Re h_G(nabla Phi, nabla Phi).
    JetMatrix metric(const JetVector& p) const;
    JetMatrix metric_closed_form(const JetVector& p) const;
    std::array<JetMatrix, 3> complex_structures(const JetVector& p) const;

    // Phi and nabla_a Phi in the Hodge bundle working frame.
    CJetVector section(const JetVector& p) const;
    std::vector<CJetVector> section_derivative(const JetVector& p) const;

    // Cone Kaehler form pulled back along the projection.
    JetMatrix cone_kahler_form(const JetVector& p) const;
    // Q(nabla Phi, nabla Phi).
    JetMatrix vertical_form(const JetVector& p) const;
    // Re B(nabla_a Phi, nabla_b Phi) for a bilinear form on the Hodge bundle.
    JetMatrix section_form(const CJetMatrix& b, const JetVector& p) const;
    // Re B(Phi, nabla_a Phi).
    JetVector section_pairing(const CJetMatrix& b, const JetVector& p) const;
    // B(s, Phi) for the flat section s = sum a_i s_i + conj.
    CJet flat_section_pairing(const Eigen::VectorXcd& a, const CJetMatrix& b, const JetVector& p) const;

    void check_point(const Point& p) const;

private:
    int n_;
    vphs::HodgeBundle bundle_;
};

// Eight pairings from the twist correspondence, each evaluated before and after the twist:
// alpha(X^phi) = alpha(X), phi(X^phi) = 0, alpha(Z) = 0, phi(Z) = 1.
// Entries are |before - expected| and |after - expected| in that order.
struct TwistPoint;
std::array<double, 8> contraction_identities(const TwistPoint& tp, const Eigen::VectorXd& alpha,
                                             const Eigen::VectorXd& x);

// Hamiltonian data of the rotation field Z = -(I xi)^nabla for a deformation parameter k.
struct TwistData {
    RigidChart chart;
    double k;

    TwistData(int n, double k_);

    JetVector z_field(const JetVector& p) const;                // Z
    Jet hamiltonian(const JetVector& p) const;                  // f_H = -(r^2 + 2k)/2
    JetVector connection(const JetVector& p) const;             // phi = -phi~
    JetVector beta(const JetVector& p) const;                   // -Q(Phi, nabla Phi) / 2
    JetMatrix omega_h(const JetVector& p) const;                // -omega~ - Q(nabla Phi, nabla Phi)
    // Horizontal part A of phi = -d theta + A, in base coordinates.
    JetVector horizontal_potential(const JetVector& p) const;
};

// Elementary deformation g_H assembled from the Hodge-bundle expressions.
JetMatrix elementary_deformation(const TwistData& data, const JetVector& p);
// Parts along and orthogonal to span{Z, I_1 Z, I_2 Z, I_3 Z}, from the Hodge-bundle expressions.
JetMatrix horizontal_z_part(const TwistData& data, const JetVector& p);
JetMatrix orthogonal_part(const TwistData& data, const JetVector& p);

struct Split {
    Eigen::MatrixXd along;       // restriction of the rigid metric to the quaternionic span of Z
    Eigen::MatrixXd orthogonal;  // and to its orthogonal complement
};
// Same split computed by projecting the flat-pull-back metric.
Split project_rigid_metric(const TwistData& data, const Point& p);
Eigen::MatrixXd elementary_deformation_projected(const TwistData& data, const Point& p);

// Twist data at a base point, in base coordinates.
struct TwistPoint {
    double k = 0;
    double f = 0;
    Eigen::VectorXd horizontal;  // A
    Eigen::VectorXd beta;
};
TwistPoint twist_point(const TwistData& data, const Point& p);

// Invariant tensors written in the frame {horizontal lifts, Z} / coframe {dx^a, phi}.
struct DecomposedVector {
    Eigen::VectorXd base;
    double z = 0;
};
struct DecomposedForm {
    Eigen::VectorXd base;
    double phi = 0;
};
struct DecomposedSymmetric {
    Eigen::MatrixXd base;
    Eigen::VectorXd mixed;
    double fibre = 0;
};

DecomposedVector decompose_vector(const Eigen::VectorXd& v, const Eigen::VectorXd& phi, const Eigen::VectorXd& z);
DecomposedForm decompose_form(const Eigen::VectorXd& alpha, const Eigen::VectorXd& phi, const Eigen::VectorXd& z);
DecomposedSymmetric decompose_symmetric(const Eigen::MatrixXd& t, const Eigen::VectorXd& phi,
                                        const Eigen::VectorXd& z);

// Twist rules. Results live on the twisted chart (X, r, w, t), Z_k = d_t,
// phi_k = dt + k A.
Eigen::VectorXd twist_vector(const DecomposedVector& v, const TwistPoint& tp);
Eigen::VectorXd twist_form(const DecomposedForm& a, const TwistPoint& tp);
Eigen::MatrixXd twist_symmetric(const DecomposedSymmetric& t, const TwistPoint& tp);
Eigen::VectorXd twisted_connection(const TwistPoint& tp);  // phi_k

// Twist of the elementary deformation at a point of the twisted chart.
Eigen::MatrixXd twist_elementary_deformation(const TwistData& data, const Point& twisted_point);

struct HamiltonianResult {
    double value = 0;
    double residual = 0;  // |iota_X omega_H + df|
};
// Vertical field of a flat section with coefficients a (s = sum a_i s_i + conj).
HamiltonianResult hamiltonian_of_section(const TwistData& data, const Eigen::VectorXcd& a, const Point& p);

struct SymmetryTwist {
    double f = 0;                 // f_Y = ((f + k) phi + beta)(Y)
    Eigen::VectorXd twisted;      // tw(Y)
    Eigen::VectorXd pushforward;  // tw(Y) + f_Y Z_k
    double hamiltonian_residual = 0;
    double invariance_residual = 0;
};
// Y must preserve f_H, phi and beta; PreconditionError otherwise.
SymmetryTwist symmetry_twist(const TwistData& data, const geometry::VectorField& y, const Point& p,
                             double invariance_tol = 1e-8);

// Complete lift to the rigid chart of the linear field z -> B z, w -> B w.
geometry::VectorField complete_lift(const RigidChart& chart, const Eigen::MatrixXcd& b);

struct HyperkahlerResidual {
    double algebra = 0;         // I_j^2 = -1, I_1 I_2 = I_3
    double compatibility = 0;   // g(I_j ., I_j .) = g
    double closedness = 0;      // d omega_j = 0
    double decomposition = 0;   // omega_1 = 2 omega~ + omega_H
    double metric_routes = 0;   // flat pull-back vs closed form
};
HyperkahlerResidual verify_hyperkahler(const TwistData& data, const Point& p);

// omega_H = d((f_H + k) phi + beta), iota_Z omega_H = -df_H, and Z preserves the twist data.
double verify_twist_data(const TwistData& data, const Point& p);

}  // namespace sugra::twist
