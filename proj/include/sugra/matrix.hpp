#pragma once

#include <vector>

#include "sugra/errors.hpp"
#include "sugra/jet.hpp"

namespace sugra {

// Small dense row-major matrix over jets or complex jets.
template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int i, int j) { return data_[i * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[i * cols_ + j]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using JetVector = std::vector<Jet>;
using JetMatrix = Mat<Jet>;
using CJetVector = std::vector<CJet>;
using CJetMatrix = Mat<CJet>;

// Inverse by Gaussian elimination with partial pivoting on the base-point values.
JetMatrix inverse(const JetMatrix& a);
JetMatrix multiply(const JetMatrix& a, const JetMatrix& b);
JetMatrix transpose(const JetMatrix& a);
JetVector mat_vec(const JetMatrix& a, const JetVector& v);

// Drops one derivative order from every entry.
JetMatrix truncate(const JetMatrix& a, int order);
JetVector truncate(const JetVector& v, int order);

}  // namespace sugra
