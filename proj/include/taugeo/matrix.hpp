#pragma once

/** @file matrix.hpp
 *  Dense matrices over a ScalarField and the matrix algebra model Mat_N.
 */

#include "taugeo/algebra.hpp"
#include "taugeo/scalar.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace taugeo {

class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, ScalarField field);

    static Matrix identity(std::size_t n, const ScalarField& field);
    static Matrix elementary(std::size_t n, std::size_t i, std::size_t j, const ScalarField& field);
    static Matrix diagonal(const std::vector<Scalar>& entries, const ScalarField& field);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, const ScalarField& field);
    static Matrix column(const std::vector<Scalar>& entries, const ScalarField& field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    const ScalarField& field() const { return field_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool is_zero() const;
    Matrix adjoint() const;
    Matrix transpose() const;
    Scalar trace() const;
    Scalar determinant() const;
    std::optional<Matrix> try_inverse() const;
    /// Throws NotInvertible.
    Matrix inverse() const;
    /// Largest entry modulus; exact entries are converted to doubles.
    double max_abs() const;

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& c, const Matrix& a);
    friend Matrix operator*(const Matrix& a, const Scalar& c) { return c * a; }
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_;
    std::size_t cols_;
    ScalarField field_;
    std::vector<Scalar> data_;
};

std::string render(const Matrix& m);
/// Commutator ab − ba.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Random matrix with small entries: exact fields draw from {0, ±1, ±i, ±1/2, 1±i}, floats are uniform.
Matrix random_matrix(std::size_t rows, std::size_t cols, const ScalarField& field, std::mt19937_64& rng);

/// The algebra model Mat_N over a field.
class MatrixAlgebra {
public:
    using Element = Matrix;

    MatrixAlgebra(std::size_t n, ScalarField field) : n_(n), field_(std::move(field)) {}

    std::size_t dimension() const { return n_; }
    Element zero() const { return Matrix(n_, n_, field_); }
    Element one() const { return Matrix::identity(n_, field_); }
    Element lift(const Scalar& c) const { return field_.promote(c) * one(); }
    const ScalarField& field() const { return field_; }
    std::vector<Element> probes() const;
    Element random_element(std::mt19937_64& rng) const { return random_matrix(n_, n_, field_, rng); }
    bool has_star() const { return true; }
    Element star(const Element& e) const { return e.adjoint(); }
    std::string render(const Element& e) const { return taugeo::render(e); }
    Terms coordinates(const Element& e) const;
    std::optional<Element> try_inverse(const Element& e) const { return e.try_inverse(); }

private:
    std::size_t n_;
    ScalarField field_;
};

}  // namespace taugeo
