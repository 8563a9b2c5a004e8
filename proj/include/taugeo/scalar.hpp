#pragma once

/** @file scalar.hpp
 *  Tagged scalar union and the field context that creates and parses scalars.
 */

#include "taugeo/expr.hpp"
#include "taugeo/field.hpp"

#include <complex>
#include <string>
#include <string_view>
#include <variant>

namespace taugeo {

enum class ScalarKind { Rational, Gaussian, RationalFunction, Float };

std::string to_string(ScalarKind kind);

struct ComplexFloat {
    std::complex<double> value;
    double tolerance = 1e-9;
};

class Scalar {
public:
    using Storage = std::variant<Rational, Gaussian, RationalFunction, ComplexFloat>;

    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}          // NOLINT(google-explicit-constructor)
    Scalar(Gaussian g) : v_(std::move(g)) {}          // NOLINT(google-explicit-constructor)
    Scalar(RationalFunction f) : v_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
    Scalar(ComplexFloat c) : v_(c) {}                 // NOLINT(google-explicit-constructor)

    ScalarKind kind() const { return static_cast<ScalarKind>(v_.index()); }
    const Storage& storage() const { return v_; }
    template <class T>
    const T& get() const { return std::get<T>(v_); }

    bool is_zero() const;
    bool is_one() const;
    bool is_exact() const { return kind() != ScalarKind::Float; }
    /// Complex value; throws for non-constant rational functions.
    std::complex<double> to_complex() const;
    double magnitude() const { return std::abs(to_complex()); }

    Scalar conj() const;
    Scalar inverse() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    /// Structural for exact kinds, relative tolerance for floats.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    Storage v_;
};

std::string render(const Scalar& x);

/// Substitution s -> s0.
Scalar evaluate_at(const RationalFunction& f, const Gaussian& s0);
Scalar evaluate_at(const RationalFunction& f, std::complex<double> s0, double tolerance = 1e-9);

/// Coefficient field of an algebra: knows how to build, promote and parse scalars.
class ScalarField {
public:
    explicit ScalarField(ScalarKind kind = ScalarKind::RationalFunction, double tolerance = 1e-9);

    ScalarKind kind() const { return kind_; }
    double tolerance() const { return tolerance_; }
    bool has_imaginary_unit() const { return kind_ != ScalarKind::Rational; }
    bool has_s() const { return kind_ == ScalarKind::RationalFunction; }

    Scalar zero() const { return integer(0); }
    Scalar one() const { return integer(1); }
    Scalar integer(long n) const { return rational(Rational(n)); }
    Scalar rational(const Rational& r) const;
    Scalar gaussian(const Gaussian& g) const;
    Scalar complex(std::complex<double> z) const;
    Scalar imaginary_unit() const;
    /// s^k, i.e. q^(k/2).
    Scalar s_power(int k) const;
    Scalar q() const { return s_power(2); }
    Scalar q_int(int n) const;

    /// Lifts a scalar of a smaller exact kind into this field.
    Scalar promote(const Scalar& x) const;

    Scalar parse(std::string_view text) const;
    Scalar evaluate(const Expr& e) const;

    friend bool operator==(const ScalarField& a, const ScalarField& b) {
        return a.kind_ == b.kind_ && a.tolerance_ == b.tolerance_;
    }

private:
    ScalarKind kind_;
    double tolerance_;
};

}  // namespace taugeo
