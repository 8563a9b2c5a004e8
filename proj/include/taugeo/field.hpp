#pragma once

/** @file field.hpp
 *  Exact coefficient fields: rationals, Gaussian rationals, and rational
 *  functions in a formal variable s over the Gaussian rationals.
 */

#include <complex>
#include <gmpxx.h>
#include <string>
#include <vector>

namespace taugeo {

using Rational = mpq_class;

std::string render(const Rational& r);

/// Parses a decimal literal such as "3", "1.25" or "2e-3" exactly.
Rational parse_decimal(const std::string& text);

class Gaussian {
public:
    Gaussian() = default;
    Gaussian(Rational re, Rational im = 0);  // NOLINT(google-explicit-constructor)
    Gaussian(long n) : Gaussian(Rational(n)) {}  // NOLINT(google-explicit-constructor)

    static Gaussian i() { return Gaussian(0, 1); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gaussian conj() const { return Gaussian(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Gaussian inverse() const;
    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    Gaussian operator-() const { return Gaussian(-re_, -im_); }
    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

private:
    Rational re_ = 0;
    Rational im_ = 0;
};

std::string render(const Gaussian& g);

/// Polynomial in s with Gaussian coefficients, lowest degree first, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Gaussian c);  // NOLINT(google-explicit-constructor)
    explicit Polynomial(std::vector<Gaussian> coeffs);

    static Polynomial monomial(Gaussian c, int degree);
    static Polynomial s() { return monomial(1, 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    /// Lowest power of s with a nonzero coefficient; 0 for the zero polynomial.
    int valuation() const;
    bool is_monomial() const;
    const Gaussian& lead() const { return c_.back(); }
    Gaussian coeff(int k) const;
    const std::vector<Gaussian>& coeffs() const { return c_; }

    Polynomial conj() const;
    Polynomial monic() const;
    Polynomial scaled(const Gaussian& g) const;
    /// Multiplies by s^k; k may be negative when the valuation allows it.
    Polynomial shifted(int k) const;
    Gaussian eval(const Gaussian& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Euclidean division; throws DivisionByZero for a zero divisor.
    static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& quot, Polynomial& rem);
    /// Monic gcd; gcd(0, 0) = 0.
    static Polynomial gcd(Polynomial a, Polynomial b);

private:
    void trim();
    std::vector<Gaussian> c_;
};

std::string render(const Polynomial& p);

/// Reduced fraction of polynomials in s; the denominator is monic.
class RationalFunction {
public:
    RationalFunction() : den_(Gaussian(1)) {}
    RationalFunction(Gaussian c) : num_(std::move(c)), den_(Gaussian(1)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(Gaussian(1)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction s() { return RationalFunction(Polynomial::s()); }
    static RationalFunction q() { return RationalFunction(Polynomial::monomial(1, 2)); }
    /// s^k for any integer k, so q^(k/2) is s_power(k).
    static RationalFunction s_power(int k);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Gaussian constant_value() const;

    RationalFunction conj() const;
    RationalFunction inverse() const;
    Gaussian eval(const Gaussian& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

std::string render(const RationalFunction& f);

/// [n]_q = 1 + q + ... + q^(n-1) with q = s^2.
RationalFunction q_integer(int n);

/// Exact square root when one exists in Q(s): numerator and denominator must be
/// perfect squares with rational-square leading coefficients. Returns false otherwise.
bool try_sqrt(const RationalFunction& f, RationalFunction& root);

}  // namespace taugeo
