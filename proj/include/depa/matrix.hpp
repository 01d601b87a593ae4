#pragma once

#include <optional>
#include <vector>

#include "depa/scalar.hpp"

namespace depa {

using Vec = std::vector<Scalar>;

/// Dense matrix over an exact field. Row-major.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), field_(0) {}
    Matrix(int rows, int cols, long long field)
        : rows_(rows), cols_(cols), field_(field),
          data_(static_cast<size_t>(rows) * cols, Scalar::zero(field)) {}

    static Matrix identity(int n, long long field) {
        Matrix m(n, n, field);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long field() const { return field_; }

    Scalar& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    Vec apply(const Vec& v) const;  // matrix * column vector

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref();
    int rank() const;
    std::optional<Matrix> inverse() const;
    /// Basis of the right nullspace (as rows of the returned matrix).
    Matrix nullspace() const;
    /// Solves M x = b; nullopt if inconsistent.
    std::optional<Vec> solve(const Vec& b) const;

private:
    int rows_, cols_;
    long long field_;
    std::vector<Scalar> data_;
};

/// Incremental row-space basis in reduced echelon form, for rank/span upkeep
/// without re-reducing from scratch.
class RowSpan {
public:
    explicit RowSpan(long long field) : field_(field) {}

    /// Reduces v against the current basis; if a nonzero remainder survives it
    /// is normalized and inserted. Returns true if the rank grew.
    bool insert(Vec v);
    /// Residue of v modulo the span (fully reduced against all pivots).
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    long long field_;
    std::vector<Vec> rows_;    // reduced echelon rows, pivot coefficient 1
    std::vector<int> pivots_;  // pivot column of each row
};

}  // namespace depa
