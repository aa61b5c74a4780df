#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nodal/scalar.hpp"

namespace nodal {

/// Dense matrix of exact scalars over one field. Row-major; rows may be
/// appended but all share the column count.
class Matrix {
public:
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), cols_(cols),
          rows_(rows, std::vector<Scalar>(cols, Scalar::zero(field))) {}

    static Matrix from_rows(FieldSpec field, std::vector<std::vector<Scalar>> rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    FieldSpec field() const { return field_; }

    Scalar& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<Scalar>& row(std::size_t i) const { return rows_[i]; }
    std::vector<Scalar>& row_mut(std::size_t i) { return rows_[i]; }

    void append_row(std::vector<Scalar> r);

private:
    FieldSpec field_;
    std::size_t cols_;
    std::vector<std::vector<Scalar>> rows_;
};

struct Echelon {
    Matrix mat;  // reduced row echelon form, pivots normalized to 1
    std::vector<std::size_t> pivot_cols;
    std::size_t rank;
};

/// Gauss-Jordan elimination. Over F_p pivots are the first nonzero entry;
/// over Q the candidate with the smallest numerator (then denominator) is
/// picked to limit coefficient growth.
Echelon reduced_row_echelon(Matrix m);

std::size_t rank_of(const Matrix& m);

/// Basis of { x : m x = 0 }.
std::vector<std::vector<Scalar>> right_kernel_basis(const Matrix& m);

/// One solution of m x = rhs with free variables set to zero, or nullopt if
/// inconsistent.
std::optional<std::vector<Scalar>> solve_any(const Matrix& m,
                                             const std::vector<Scalar>& rhs);

/// A nonzero row combination c with c^T m = 0, or nullopt if the rows are
/// independent.
std::optional<std::vector<Scalar>> dependency_combination(const Matrix& m);

/// Row-space accumulator for incidence loops: feed rows one at a time, ask
/// whether a candidate row lies in the span so far.
class IncrementalRank {
public:
    IncrementalRank(FieldSpec field, std::size_t cols)
        : field_(field), cols_(cols) {}

    /// Absorbs the row; returns true iff it enlarged the span.
    bool absorb(std::vector<Scalar> row);
    bool in_span(std::vector<Scalar> row) const;
    std::size_t rank() const { return echelon_.size(); }

private:
    void reduce(std::vector<Scalar>& row) const;

    FieldSpec field_;
    std::size_t cols_;
    // (pivot column, row normalized to leading 1), sorted by pivot column
    std::vector<std::pair<std::size_t, std::vector<Scalar>>> echelon_;
};

}  // namespace nodal
