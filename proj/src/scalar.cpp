#include "taugeo/scalar.hpp"

#include "taugeo/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace taugeo {

std::string to_string(ScalarKind kind) {
    switch (kind) {
    case ScalarKind::Rational: return "rational";
    case ScalarKind::Gaussian: return "gaussian";
    case ScalarKind::RationalFunction: return "rational-function";
    case ScalarKind::Float: return "float";
    }
    return "?";
}

namespace {

void require_same(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind())
        throw VariantMismatch("scalar kinds differ: " + to_string(a.kind()) + " vs " + to_string(b.kind()));
}

ComplexFloat make_float(std::complex<double> v, const ComplexFloat& a, const ComplexFloat& b) {
    return {v, std::max(a.tolerance, b.tolerance)};
}

template <class Op>
Scalar binary(const Scalar& a, const Scalar& b, Op op) {
    require_same(a, b);
    return std::visit(
        [&](const auto& x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.storage());
            if constexpr (std::is_same_v<T, ComplexFloat>)
                return make_float(op(x.value, y.value), x, y);
            else
                return T(op(x, y));
        },
        a.storage());
}

std::string render_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

bool Scalar::is_zero() const {
    return std::visit(
        [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return sgn(x) == 0;
            else if constexpr (std::is_same_v<T, ComplexFloat>)
                return std::abs(x.value) <= x.tolerance;
            else
                return x.is_zero();
        },
        v_);
}

bool Scalar::is_one() const {
    return std::visit(
        [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return x == 1;
            else if constexpr (std::is_same_v<T, ComplexFloat>)
                return std::abs(x.value - 1.0) <= x.tolerance;
            else
                return x.is_one();
        },
        v_);
}

std::complex<double> Scalar::to_complex() const {
    return std::visit(
        [](const auto& x) -> std::complex<double> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return x.get_d();
            else if constexpr (std::is_same_v<T, Gaussian>)
                return x.to_complex();
            else if constexpr (std::is_same_v<T, RationalFunction>)
                return x.constant_value().to_complex();
            else
                return x.value;
        },
        v_);
}

Scalar Scalar::conj() const {
    return std::visit(
        [](const auto& x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return x;
            else if constexpr (std::is_same_v<T, ComplexFloat>)
                return ComplexFloat{std::conj(x.value), x.tolerance};
            else
                return x.conj();
        },
        v_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return std::visit(
        [](const auto& x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return Rational(1 / x);
            else if constexpr (std::is_same_v<T, ComplexFloat>)
                return ComplexFloat{1.0 / x.value, x.tolerance};
            else
                return x.inverse();
        },
        v_);
}

Scalar Scalar::operator-() const {
    return std::visit(
        [](const auto& x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return Rational(-x);
            else if constexpr (std::is_same_v<T, ComplexFloat>)
                return ComplexFloat{-x.value, x.tolerance};
            else
                return -x;
        },
        v_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (b.is_zero()) throw DivisionByZero();
    return binary(a, b, [](const auto& x, const auto& y) { return x / y; });
}

bool operator==(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (a.kind() == ScalarKind::Float) {
        const auto& x = a.get<ComplexFloat>();
        const auto& y = b.get<ComplexFloat>();
        double tol = std::max(x.tolerance, y.tolerance);
        double scale = std::max({1.0, std::abs(x.value), std::abs(y.value)});
        return std::abs(x.value - y.value) <= tol * scale;
    }
    return a.storage() == b.storage();
}

std::string render(const Scalar& x) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ComplexFloat>) {
                double re = v.value.real();
                double im = v.value.imag();
                if (im == 0.0) return render_double(re);
                std::string imag = render_double(std::abs(im)) + "*i";
                if (re == 0.0) return im < 0 ? "-" + imag : imag;
                return render_double(re) + (im < 0 ? "-" : "+") + imag;
            } else {
                return render(v);
            }
        },
        x.storage());
}

Scalar evaluate_at(const RationalFunction& f, const Gaussian& s0) { return f.eval(s0); }

Scalar evaluate_at(const RationalFunction& f, std::complex<double> s0, double tolerance) {
    std::complex<double> d = f.den().eval(s0);
    if (std::abs(d) <= tolerance) throw PoleError("denominator " + render(f.den()) + " vanishes at the evaluation point");
    return ComplexFloat{f.num().eval(s0) / d, tolerance};
}

ScalarField::ScalarField(ScalarKind kind, double tolerance) : kind_(kind), tolerance_(tolerance) {
    if (!(tolerance > 0)) throw Error("tolerance must be positive");
}

Scalar ScalarField::rational(const Rational& r) const {
    switch (kind_) {
    case ScalarKind::Rational: return r;
    case ScalarKind::Gaussian: return Gaussian(r);
    case ScalarKind::RationalFunction: return RationalFunction(Gaussian(r));
    case ScalarKind::Float: return ComplexFloat{r.get_d(), tolerance_};
    }
    return r;
}

Scalar ScalarField::gaussian(const Gaussian& g) const {
    switch (kind_) {
    case ScalarKind::Rational:
        if (!g.is_real()) throw VariantMismatch("imaginary value in a rational field");
        return g.re();
    case ScalarKind::Gaussian: return g;
    case ScalarKind::RationalFunction: return RationalFunction(g);
    case ScalarKind::Float: return ComplexFloat{g.to_complex(), tolerance_};
    }
    return g;
}

Scalar ScalarField::complex(std::complex<double> z) const {
    if (kind_ != ScalarKind::Float) throw VariantMismatch("floating value in an exact field");
    return ComplexFloat{z, tolerance_};
}

Scalar ScalarField::imaginary_unit() const {
    if (!has_imaginary_unit()) throw VariantMismatch("the rational field has no imaginary unit");
    return gaussian(Gaussian::i());
}

Scalar ScalarField::s_power(int k) const {
    if (!has_s()) throw VariantMismatch("the " + to_string(kind_) + " field has no variable s");
    return RationalFunction::s_power(k);
}

Scalar ScalarField::q_int(int n) const {
    if (!has_s()) throw VariantMismatch("the " + to_string(kind_) + " field has no variable s");
    return q_integer(n);
}

Scalar ScalarField::promote(const Scalar& x) const {
    if (x.kind() == kind_) {
        if (kind_ == ScalarKind::Float) return ComplexFloat{x.get<ComplexFloat>().value, tolerance_};
        return x;
    }
    switch (x.kind()) {
    case ScalarKind::Rational: return rational(x.get<Rational>());
    case ScalarKind::Gaussian: return gaussian(x.get<Gaussian>());
    case ScalarKind::RationalFunction: {
        const auto& f = x.get<RationalFunction>();
        if (f.is_constant()) return gaussian(f.constant_value());
        break;
    }
    case ScalarKind::Float: break;
    }
    throw VariantMismatch("cannot convert a " + to_string(x.kind()) + " scalar into the " + to_string(kind_) +
                          " field");
}

namespace {

struct ScalarCtx {
    const ScalarField& field;

    Scalar number(const std::string& text) const {
        if (field.kind() == ScalarKind::Float) return field.complex(std::strtod(text.c_str(), nullptr));
        return field.rational(parse_decimal(text));
    }
    Scalar symbol(const std::string& name) const {
        if (name == "i") return field.imaginary_unit();
        if (name == "s") return field.s_power(1);
        if (name == "q") return field.q();
        throw ParseError("unknown scalar symbol '" + name + "'");
    }
    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar div(const Scalar& a, const Scalar& b) const { return a / b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar pow(const Scalar& a, long n) const {
        Scalar base = n < 0 ? a.inverse() : a;
        Scalar acc = field.one();
        for (long k = 0; k < (n < 0 ? -n : n); ++k) acc = acc * base;
        return acc;
    }
    Scalar star(const Scalar& a) const { return a.conj(); }
};

}  // namespace

Scalar ScalarField::evaluate(const Expr& e) const { return fold(e, ScalarCtx{*this}); }

Scalar ScalarField::parse(std::string_view text) const { return evaluate(*parse_expr(text)); }

}  // namespace taugeo
