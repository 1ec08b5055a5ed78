#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sugra/psk.hpp"

namespace sugra::vphs {

using geometry::Point;

enum class HodgeType { p3q0, p2q1, p1q2, p0q3 };

int hodge_p(HodgeType t);

// The weight-3 variation of polarised Hodge structure over CH^n,
// E = L + L (x) T^{1,0} + conj(L) (x) T^{0,1} + conj(L), written in the unitary
// working frame
//   sigma, sigma (x) d_{X_1}, ..., sigma (x) d_{X_n},
//   conj(sigma) (x) d_{bar X_1}, ..., conj(sigma) (x) d_{bar X_n}, conj(sigma)
// where sigma is the unit-norm section of L over the base chart.
// Sections are complex component vectors in this frame; bilinear forms B are
// matrices with B(u, v) = u^T B v.
class HodgeBundle {
public:
    explicit HodgeBundle(int n);

    int n() const { return n_; }
    int rank() const { return 2 * n_ + 2; }
    int base_dim() const { return 2 * n_; }
    const psk::ComplexHyperbolic& base() const { return base_; }

    int index(HodgeType t, int j = 0) const;
    HodgeType type_of(int index) const;
    Eigen::MatrixXd projector(HodgeType t) const;
    // Real structure: conj(v) has components K * conj(components of v).
    Eigen::MatrixXd conjugation() const;

    // Polarisation Q = i Alt(h_L - h_L (x) h_M).
    CJetMatrix polarization(const JetVector& x) const;
    CJetMatrix hermitian_l(const JetVector& x) const;       // h_L
    CJetMatrix hermitian_l_bar(const JetVector& x) const;   // conj(h_L)
    CJetMatrix hermitian_lm(const JetVector& x) const;      // h_L (x) h_M
    // h(u, v) = Q(u, I v) + i Q(u, v) with I = sign(p - q) i, resp. i^{p - q}.
    CJetMatrix hermitian_griffiths(const JetVector& x) const;
    CJetMatrix hermitian_weil(const JetVector& x) const;
    Eigen::VectorXcd griffiths_structure() const;
    Eigen::VectorXcd weil_structure() const;

    // Gauss-Manin connection along the real base direction a:
    // nabla_{d_a} s = d_a s + connection_matrix(x, a) s.
    CJetMatrix connection_matrix(const JetVector& x, int a) const;
    // Columns s_0, ..., s_n, conj(s_0), ..., conj(s_n): a flat frame.
    CJetMatrix parallel_frame(const JetVector& x) const;

    void check_base_point(const Point& x) const { base_.check_base_point(x); }

private:
    int n_;
    psk::ComplexHyperbolic base_;
};

// Point-level verification, all returning max absolute residuals.
double check_parallel_frame(const HodgeBundle& e, const Point& x);
double check_flatness(const HodgeBundle& e, const Point& x);
double check_polarization_parallel(const HodgeBundle& e, const Point& x);
double check_transversality(const HodgeBundle& e, const Point& x);
// Q(conj s_i, s_j) = (1/2i)(-1)^{delta_i0} delta_ij, Q(s_i, s_j) = 0, h_G(conj s_i, s_j) = (-1)^{delta_i0} delta_ij.
double check_frame_pairings(const HodgeBundle& e, const Point& x);
double check_reality(const HodgeBundle& e, const Point& x);
// Connection matrix agrees with -(d P) P^{-1} for the parallel frame P.
double check_connection_routes(const HodgeBundle& e, const Point& x);
// Hodge-metric identities: Im h_G = Im h_W = Q on real sections, the
// decompositions of h_G and h_W through h_L and h_M, and positivity of
// i^{p-q} Q(conj v, v). Returns a negative value if positivity fails.
double check_hodge_metrics(const HodgeBundle& e, const Point& x);

}  // namespace sugra::vphs
