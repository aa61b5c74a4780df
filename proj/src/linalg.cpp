#include "nodal/linalg.hpp"

#include <algorithm>

namespace nodal {

namespace {

// row_i -= f * row_r, skipping stored zeros of row_r.
void axpy_sub(std::vector<Scalar>& target, const Scalar& f,
              const std::vector<Scalar>& source, std::size_t from_col) {
    if (f.is_zero()) return;
    for (std::size_t j = from_col; j < source.size(); ++j) {
        if (source[j].is_zero()) continue;
        target[j] -= f * source[j];
    }
}

// Pivot row choice in column `col` among rows [start, n): first nonzero over
// F_p, smallest numerator (then denominator) over Q.
std::optional<std::size_t> pick_pivot(const Matrix& m, std::size_t col,
                                      std::size_t start,
                                      const std::vector<std::size_t>& order) {
    std::optional<std::size_t> best;
    for (std::size_t i = start; i < order.size(); ++i) {
        const Scalar& v = m.at(order[i], col);
        if (v.is_zero()) continue;
        if (m.field().kind == FieldSpec::Kind::PrimeField) return i;
        if (!best) {
            best = i;
            continue;
        }
        const mpq_class& a = v.rational();
        const mpq_class& b = m.at(order[*best], col).rational();
        const int num_cmp = mpz_cmpabs(a.get_num_mpz_t(), b.get_num_mpz_t());
        if (num_cmp < 0 ||
            (num_cmp == 0 &&
             mpz_cmpabs(a.get_den_mpz_t(), b.get_den_mpz_t()) < 0))
            best = i;
    }
    return best;
}

}  // namespace

Matrix Matrix::from_rows(FieldSpec field, std::vector<std::vector<Scalar>> rows) {
    if (rows.empty()) throw Error("Matrix::from_rows with no rows");
    Matrix m(field, 0, rows.front().size());
    for (auto& r : rows) m.append_row(std::move(r));
    return m;
}

void Matrix::append_row(std::vector<Scalar> r) {
    if (r.size() != cols_)
        throw DimensionMismatch("row length " + std::to_string(r.size()) +
                                " != " + std::to_string(cols_));
    rows_.push_back(std::move(r));
}

Echelon reduced_row_echelon(Matrix m) {
    std::vector<std::size_t> order(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<std::size_t> pivot_cols;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < m.cols() && next_row < m.rows(); ++col) {
        auto pick = pick_pivot(m, col, next_row, order);
        if (!pick) continue;
        std::swap(order[next_row], order[*pick]);
        const std::size_t pr = order[next_row];

        const Scalar inv = m.at(pr, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) {
            if (m.at(pr, j).is_zero()) continue;
            m.at(pr, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const std::size_t r = order[i];
            if (r == pr) continue;
            const Scalar f = m.at(r, col);
            if (f.is_zero()) continue;
            m.at(r, col) = Scalar::zero(m.field());
            axpy_sub(m.row_mut(r), f, m.row(pr), col + 1);
        }
        pivot_cols.push_back(col);
        ++next_row;
    }

    // Materialize the row order so pivots sit on the leading rows.
    Matrix out(m.field(), 0, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) out.append_row(m.row(order[i]));
    const std::size_t rank = pivot_cols.size();
    return Echelon{std::move(out), std::move(pivot_cols), rank};
}

std::size_t rank_of(const Matrix& m) {
    IncrementalRank acc(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) acc.absorb(m.row(i));
    return acc.rank();
}

std::vector<std::vector<Scalar>> right_kernel_basis(const Matrix& m) {
    const Echelon e = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
        v[free_col] = Scalar::one(m.field());
        for (std::size_t r = 0; r < e.rank; ++r)
            v[e.pivot_cols[r]] = -e.mat.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve_any(const Matrix& m,
                                             const std::vector<Scalar>& rhs) {
    if (rhs.size() != m.rows())
        throw DimensionMismatch("rhs length does not match row count");
    Matrix aug(m.field(), 0, m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Scalar> row = m.row(i);
        row.push_back(rhs[i]);
        aug.append_row(std::move(row));
    }
    const Echelon e = reduced_row_echelon(std::move(aug));
    for (std::size_t c : e.pivot_cols)
        if (c == m.cols()) return std::nullopt;  // pivot in the rhs column

    std::vector<Scalar> x(m.cols(), Scalar::zero(m.field()));
    for (std::size_t r = 0; r < e.rank; ++r)
        x[e.pivot_cols[r]] = e.mat.at(r, m.cols());
    return x;
}

std::optional<std::vector<Scalar>> dependency_combination(const Matrix& m) {
    // Eliminate [m | I]; a zero row in the m-part carries the combination.
    const std::size_t n = m.rows();
    Matrix aug(m.field(), 0, m.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Scalar> row = m.row(i);
        row.resize(m.cols() + n, Scalar::zero(m.field()));
        row[m.cols() + i] = Scalar::one(m.field());
        aug.append_row(std::move(row));
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < m.cols() && next_row < n; ++col) {
        std::optional<std::size_t> pivot;
        for (std::size_t i = next_row; i < n; ++i)
            if (!aug.at(order[i], col).is_zero()) {
                pivot = i;
                break;
            }
        if (!pivot) continue;
        std::swap(order[next_row], order[*pivot]);
        const std::size_t pr = order[next_row];
        const Scalar inv = aug.at(pr, col).inverse();
        for (std::size_t j = col; j < aug.cols(); ++j)
            if (!aug.at(pr, j).is_zero()) aug.at(pr, j) *= inv;
        for (std::size_t i = next_row + 1; i < n; ++i) {
            const std::size_t r = order[i];
            const Scalar f = aug.at(r, col);
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < aug.cols(); ++j) {
                if (aug.at(pr, j).is_zero()) continue;
                aug.at(r, j) -= f * aug.at(pr, j);
            }
        }
        ++next_row;
    }

    for (std::size_t i = next_row; i < n; ++i) {
        const std::size_t r = order[i];
        bool zero = true;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!aug.at(r, j).is_zero()) {
                zero = false;
                break;
            }
        if (!zero) continue;
        std::vector<Scalar> combo(n, Scalar::zero(m.field()));
        for (std::size_t j = 0; j < n; ++j) combo[j] = aug.at(r, m.cols() + j);
        return combo;
    }
    return std::nullopt;
}

void IncrementalRank::reduce(std::vector<Scalar>& row) const {
    for (const auto& [pc, er] : echelon_) {
        const Scalar f = row[pc];
        if (f.is_zero()) continue;
        row[pc] = Scalar::zero(field_);
        axpy_sub(row, f, er, pc + 1);
    }
}

bool IncrementalRank::absorb(std::vector<Scalar> row) {
    if (row.size() != cols_) throw DimensionMismatch("IncrementalRank row size");
    reduce(row);
    std::size_t pivot = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!row[j].is_zero()) {
            pivot = j;
            break;
        }
    if (pivot == cols_) return false;
    const Scalar inv = row[pivot].inverse();
    for (std::size_t j = pivot; j < cols_; ++j)
        if (!row[j].is_zero()) row[j] *= inv;
    auto pos = std::lower_bound(
        echelon_.begin(), echelon_.end(), pivot,
        [](const auto& e, std::size_t c) { return e.first < c; });
    echelon_.insert(pos, {pivot, std::move(row)});
    return true;
}

bool IncrementalRank::in_span(std::vector<Scalar> row) const {
    if (row.size() != cols_) throw DimensionMismatch("IncrementalRank row size");
    reduce(row);
    for (const Scalar& v : row)
        if (!v.is_zero()) return false;
    return true;
}

}  // namespace nodal
