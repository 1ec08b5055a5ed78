#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>

#include "sugra/geometry.hpp"

namespace sugra::sampling {

using geometry::Point;
using Rng = std::mt19937_64;

// Seed derived from the run seed and a stream name, so suites draw independent streams.
Rng make_rng(std::uint64_t seed, const std::string& stream);

// |X| <= 0.8
Point base_point(int n, Rng& rng);
// (X, r, theta), r in [0.5, 3]
Point cone_point(int n, Rng& rng);
// (X, r, w, t): r in [sqrt(2k) + 0.5, sqrt(2k) + 3], |w| <= 2, t in [0, 2 pi)
Point cmap_point(int n, int k, Rng& rng);

Eigen::VectorXd uniform_vector(int size, double lo, double hi, Rng& rng);
// Element of U(n,1): phases times boosts in the (0, j) planes.
Eigen::MatrixXcd unitary(int n, Rng& rng);
// Element of u(n,1): i J H with H Hermitian.
Eigen::MatrixXcd generator(int n, Rng& rng);

}  // namespace sugra::sampling
