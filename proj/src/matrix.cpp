#include "taugeo/matrix.hpp"

#include "taugeo/error.hpp"

#include <algorithm>

namespace taugeo {

Matrix::Matrix(std::size_t rows, std::size_t cols, ScalarField field)
    : rows_(rows), cols_(cols), field_(std::move(field)), data_(rows * cols, field_.zero()) {}

Matrix Matrix::identity(std::size_t n, const ScalarField& field) {
    Matrix m(n, n, field);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = field.one();
    return m;
}

Matrix Matrix::elementary(std::size_t n, std::size_t i, std::size_t j, const ScalarField& field) {
    Matrix m(n, n, field);
    m(i, j) = field.one();
    return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& entries, const ScalarField& field) {
    Matrix m(entries.size(), entries.size(), field);
    for (std::size_t k = 0; k < entries.size(); ++k) m(k, k) = field.promote(entries[k]);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, const ScalarField& field) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw RankMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = field.promote(rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries, const ScalarField& field) {
    Matrix m(entries.size(), 1, field);
    for (std::size_t k = 0; k < entries.size(); ++k) m(k, 0) = field.promote(entries[k]);
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j).conj();
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Scalar Matrix::trace() const {
    Scalar t = field_.zero();
    for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
}

namespace {

/// Index of the pivot row for column col among rows >= from, or rows when none.
std::size_t choose_pivot(const Matrix& m, std::size_t col, std::size_t from) {
    std::size_t best = m.rows();
    double best_mag = -1.0;
    for (std::size_t r = from; r < m.rows(); ++r) {
        if (m(r, col).is_zero()) continue;
        if (m.field().kind() != ScalarKind::Float) return r;
        double mag = m(r, col).magnitude();
        if (mag > best_mag) {
            best_mag = mag;
            best = r;
        }
    }
    return best;
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace

Scalar Matrix::determinant() const {
    if (!square()) throw RankMismatch("determinant of a non-square matrix");
    Matrix m = *this;
    Scalar det = field_.one();
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t p = choose_pivot(m, col, col);
        if (p == rows_) return field_.zero();
        if (p != col) {
            swap_rows(m, p, col);
            det = -det;
        }
        det *= m(col, col);
        Scalar inv = m(col, col).inverse();
        for (std::size_t r = col + 1; r < rows_; ++r) {
            if (m(r, col).is_zero()) continue;
            Scalar factor = m(r, col) * inv;
            for (std::size_t c = col; c < cols_; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

std::optional<Matrix> Matrix::try_inverse() const {
    if (!square()) return std::nullopt;
    std::size_t n = rows_;
    Matrix m = *this;
    Matrix inv = identity(n, field_);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = choose_pivot(m, col, col);
        if (p == n) return std::nullopt;
        swap_rows(m, p, col);
        swap_rows(inv, p, col);
        Scalar scale = m(col, col).inverse();
        for (std::size_t c = 0; c < n; ++c) {
            m(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col).is_zero()) continue;
            Scalar factor = m(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) -= factor * m(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

Matrix Matrix::inverse() const {
    auto inv = try_inverse();
    if (!inv) throw NotInvertible("matrix " + render(*this) + " is singular");
    return *inv;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (const auto& x : data_) best = std::max(best, x.magnitude());
    return best;
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw RankMismatch("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw RankMismatch("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw RankMismatch("matrix shapes do not compose");
    Matrix m(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    }
    return m;
}

Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix m = a;
    Scalar k = a.field_.promote(c);
    for (auto& x : m.data_) x = x * k;
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
        if (a.data_[k] != b.data_[k]) return false;
    return true;
}

std::string render(const Matrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += render(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix random_matrix(std::size_t rows, std::size_t cols, const ScalarField& field, std::mt19937_64& rng) {
    Matrix m(rows, cols, field);
    if (field.kind() == ScalarKind::Float) {
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.complex({d(rng), d(rng)});
        return m;
    }
    std::vector<Gaussian> pool{Gaussian(0), Gaussian(1), Gaussian(-1), Gaussian(Rational(1, 2)),
                               Gaussian(Rational(-1, 2)), Gaussian(2)};
    if (field.has_imaginary_unit()) {
        pool.push_back(Gaussian(0, 1));
        pool.push_back(Gaussian(0, -1));
        pool.push_back(Gaussian(1, 1));
        pool.push_back(Gaussian(1, -1));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.gaussian(pool[pick(rng)]);
    return m;
}

std::vector<Matrix> MatrixAlgebra::probes() const {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out.push_back(Matrix::elementary(n_, i, j, field_));
    return out;
}

Terms MatrixAlgebra::coordinates(const Matrix& e) const {
    Terms t;
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j)
            if (!e(i, j).is_zero())
                t.emplace(Word{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)}, e(i, j));
    return t;
}

}  // namespace taugeo
