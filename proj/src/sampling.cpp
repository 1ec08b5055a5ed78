#include "sugra/sampling.hpp"

#include <cmath>
#include <numbers>

namespace sugra::sampling {

namespace {

double uniform(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Uniform in the ball of the given radius.
Eigen::VectorXd ball(int d, double radius, Rng& rng) {
    Eigen::VectorXd v(d);
    if (d == 0) return v;
    std::normal_distribution<double> normal;
    for (int i = 0; i < d; ++i) v[i] = normal(rng);
    const double u = uniform(0.0, 1.0, rng);
    return v / v.norm() * radius * std::pow(u, 1.0 / d);
}

}  // namespace

Rng make_rng(std::uint64_t seed, const std::string& stream) {
    // FNV-1a keeps stream seeds stable across standard libraries
    std::uint32_t h = 2166136261u;
    for (unsigned char c : stream) h = (h ^ c) * 16777619u;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), h};
    return Rng(seq);
}

Point base_point(int n, Rng& rng) {
    const Eigen::VectorXd x = ball(2 * n, 0.8, rng);
    return Point(x.data(), x.data() + x.size());
}

Point cone_point(int n, Rng& rng) {
    Point p = base_point(n, rng);
    p.push_back(uniform(0.5, 3.0, rng));
    p.push_back(uniform(0.0, 2.0 * std::numbers::pi, rng));
    return p;
}

Point cmap_point(int n, int k, Rng& rng) {
    Point p = base_point(n, rng);
    const double r0 = std::sqrt(2.0 * k);
    p.push_back(uniform(r0 + 0.5, r0 + 3.0, rng));
    const Eigen::VectorXd w = ball(2 * n + 2, 2.0, rng);
    p.insert(p.end(), w.data(), w.data() + w.size());
    p.push_back(uniform(0.0, 2.0 * std::numbers::pi, rng));
    return p;
}

Eigen::VectorXd uniform_vector(int size, double lo, double hi, Rng& rng) {
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v[i] = uniform(lo, hi, rng);
    return v;
}

Eigen::MatrixXcd unitary(int n, Rng& rng) {
    using cd = std::complex<double>;
    const int m = n + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m, m);
    for (int i = 0; i < m; ++i) a(i, i) = std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi, rng));
    for (int j = 1; j < m; ++j) {
        const double u = uniform(-0.8, 0.8, rng);
        const double g = uniform(-std::numbers::pi, std::numbers::pi, rng);
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(m, m);
        b(0, 0) = b(j, j) = std::cosh(u);
        b(0, j) = std::polar(std::sinh(u), g);
        b(j, 0) = std::polar(std::sinh(u), -g);
        a = a * b;
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Identity(m, m);
        d(j, j) = cd(std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi, rng)));
        a = a * d;
    }
    return a;
}

Eigen::MatrixXcd generator(int n, Rng& rng) {
    using cd = std::complex<double>;
    const int m = n + 1;
    Eigen::MatrixXcd h(m, m);
    for (int i = 0; i < m; ++i) {
        h(i, i) = uniform(-0.5, 0.5, rng);
        for (int j = i + 1; j < m; ++j) {
            h(i, j) = cd(uniform(-0.5, 0.5, rng), uniform(-0.5, 0.5, rng));
            h(j, i) = std::conj(h(i, j));
        }
    }
    Eigen::MatrixXcd jm = Eigen::MatrixXcd::Identity(m, m);
    jm(0, 0) = -1.0;
    return cd(0.0, 1.0) * jm * h;
}

}  // namespace sugra::sampling
