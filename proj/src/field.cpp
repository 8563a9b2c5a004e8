#include "taugeo/field.hpp"

#include "taugeo/error.hpp"
#include "taugeo/text.hpp"

#include <algorithm>
#include <cctype>

namespace taugeo {

std::string render(const Rational& r) { return r.get_str(); }

Rational parse_decimal(const std::string& text) {
    std::size_t pos = 0;
    std::string digits;
    int scale = 0;
    bool seen_point = false;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
        if (text[pos] == '.') {
            if (seen_point) throw ParseError("malformed number '" + text + "'");
            seen_point = true;
        } else {
            digits.push_back(text[pos]);
            if (seen_point) ++scale;
        }
        ++pos;
    }
    if (digits.empty()) throw ParseError("malformed number '" + text + "'");
    long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E') throw ParseError("malformed number '" + text + "'");
        try {
            std::size_t used = 0;
            exponent = std::stol(text.substr(pos + 1), &used);
            if (pos + 1 + used != text.size()) throw ParseError("malformed number '" + text + "'");
        } catch (const std::logic_error&) {
            throw ParseError("malformed number '" + text + "'");
        }
    }
    mpz_class mantissa(digits, 10);
    long power = exponent - scale;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
    Rational result = power < 0 ? Rational(mantissa, ten_pow) : Rational(mantissa * ten_pow);
    result.canonicalize();
    return result;
}

Gaussian::Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Gaussian Gaussian::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Rational n = norm();
    return Gaussian(re_ / n, -im_ / n);
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
    if (o.is_zero()) throw DivisionByZero();
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string render(const Gaussian& g) {
    if (g.is_real()) return render(g.re());
    std::string imag;
    Rational mag = abs(g.im());
    imag = mag == 1 ? "i" : render(mag) + "*i";
    if (sgn(g.re()) == 0) return sgn(g.im()) < 0 ? "-" + imag : imag;
    return render(g.re()) + (sgn(g.im()) < 0 ? "-" : "+") + imag;
}

Polynomial::Polynomial(Gaussian c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
}

Polynomial::Polynomial(std::vector<Gaussian> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(Gaussian c, int degree) {
    Polynomial p;
    if (c.is_zero()) return p;
    p.c_.assign(static_cast<std::size_t>(degree) + 1, Gaussian());
    p.c_.back() = std::move(c);
    return p;
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Polynomial::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return 0;
}

bool Polynomial::is_monomial() const {
    if (c_.empty()) return false;
    return std::all_of(c_.begin(), c_.end() - 1, [](const Gaussian& g) { return g.is_zero(); });
}

Gaussian Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return {};
    return c_[static_cast<std::size_t>(k)];
}

Polynomial Polynomial::conj() const {
    Polynomial r = *this;
    for (auto& g : r.c_) g = g.conj();
    return r;
}

Polynomial Polynomial::monic() const {
    if (c_.empty() || lead().is_one()) return *this;
    return scaled(lead().inverse());
}

Polynomial Polynomial::scaled(const Gaussian& g) const {
    if (g.is_zero()) return {};
    Polynomial r = *this;
    for (auto& c : r.c_) c *= g;
    return r;
}

Polynomial Polynomial::shifted(int k) const {
    if (c_.empty() || k == 0) return *this;
    Polynomial r;
    if (k > 0) {
        r.c_.assign(static_cast<std::size_t>(k), Gaussian());
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    } else {
        if (-k > valuation()) throw Error("polynomial shift below valuation");
        r.c_.assign(c_.begin() + (-k), c_.end());
    }
    return r;
}

Gaussian Polynomial::eval(const Gaussian& x) const {
    Gaussian acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

Polynomial Polynomial::operator-() const { return scaled(Gaussian(-1)); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k) {
        if (k < a.c_.size()) r.c_[k] += a.c_[k];
        if (k < b.c_.size()) r.c_[k] += b.c_[k];
    }
    r.trim();
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Polynomial r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Gaussian());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& quot, Polynomial& rem) {
    if (b.is_zero()) throw DivisionByZero();
    quot = Polynomial();
    rem = a;
    if (a.degree() < b.degree()) return;
    quot.c_.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Gaussian());
    Gaussian inv_lead = b.lead().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Gaussian factor = rem.lead() * inv_lead;
        quot.c_[static_cast<std::size_t>(shift)] = factor;
        for (std::size_t k = 0; k < b.c_.size(); ++k)
            rem.c_[k + static_cast<std::size_t>(shift)] -= factor * b.c_[k];
        rem.trim();
    }
    quot.trim();
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(Gaussian(1));
    if (b.is_monomial() || a.is_monomial()) return monomial(1, std::min(a.valuation(), b.valuation()));
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Polynomial q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::string render(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const Gaussian c = p.coeff(k);
        if (c.is_zero()) continue;
        std::string term;
        if (k == 0) {
            term = render(c);
        } else {
            std::string mono = k == 1 ? "s" : "s^" + std::to_string(k);
            if (c.is_one())
                term = mono;
            else if (c == Gaussian(-1))
                term = "-" + mono;
            else if (c.is_real() || sgn(c.re()) == 0)
                term = render(c) + "*" + mono;
            else
                term = "(" + render(c) + ")*" + mono;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

RationalFunction RationalFunction::s_power(int k) {
    if (k >= 0) return RationalFunction(Polynomial::monomial(1, k));
    return RationalFunction(Polynomial(Gaussian(1)), Polynomial::monomial(1, -k));
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(Gaussian(1));
        return;
    }
    if (den_.is_constant()) {
        if (!den_.is_one()) {
            num_ = num_.scaled(den_.lead().inverse());
            den_ = Polynomial(Gaussian(1));
        }
        return;
    }
    if (den_.is_monomial()) {
        int strip = std::min(den_.degree(), num_.valuation());
        num_ = num_.shifted(-strip).scaled(den_.lead().inverse());
        den_ = Polynomial::monomial(1, den_.degree() - strip);
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_one()) {
        Polynomial q, r;
        Polynomial::divmod(num_, g, q, r);
        num_ = q;
        Polynomial::divmod(den_, g, q, r);
        den_ = q;
    }
    if (!den_.lead().is_one()) {
        Gaussian inv = den_.lead().inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Gaussian RationalFunction::constant_value() const {
    if (!is_constant()) throw Error("rational function is not constant");
    return num_.coeff(0);
}

RationalFunction RationalFunction::conj() const {
    RationalFunction r;
    r.num_ = num_.conj();
    r.den_ = den_.conj();
    return r;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RationalFunction(den_, num_);
}

Gaussian RationalFunction::eval(const Gaussian& x) const {
    Gaussian d = den_.eval(x);
    if (d.is_zero()) throw PoleError("denominator " + render(den_) + " vanishes at s = " + render(x));
    return num_.eval(x) / d;
}

std::complex<double> RationalFunction::eval(std::complex<double> x) const {
    std::complex<double> d = den_.eval(x);
    if (std::abs(d) == 0.0) throw PoleError("denominator " + render(den_) + " vanishes at the evaluation point");
    return num_.eval(x) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -num_;
    return r;
}

namespace {

// Laurent case: both denominators are powers of s, so reduction is a shift.
RationalFunction laurent(Polynomial num, int den_degree) {
    if (num.is_zero()) return {};
    int strip = std::min(den_degree, num.valuation());
    return RationalFunction(num.shifted(-strip), Polynomial::monomial(1, den_degree - strip));
}

}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_monomial() && b.den_.is_monomial()) {
        int da = a.den_.degree(), db = b.den_.degree(), d = std::max(da, db);
        return laurent(a.num_.shifted(d - da) + b.num_.shifted(d - db), d);
    }
    if (a.den_ == b.den_) {
        if (a.den_.is_one()) return RationalFunction(a.num_ + b.num_);
        return RationalFunction(a.num_ + b.num_, a.den_);
    }
    // Common factors of the sum and the new denominator divide gcd(ad, bd).
    Polynomial g = Polynomial::gcd(a.den_, b.den_), ad = a.den_, bd = b.den_, q, r;
    if (!g.is_one()) {
        Polynomial::divmod(ad, g, q, r);
        ad = std::move(q);
        Polynomial::divmod(bd, g, q, r);
        bd = std::move(q);
    }
    RationalFunction out;
    out.num_ = a.num_ * bd + b.num_ * ad;
    out.den_ = ad * b.den_;
    if (out.num_.is_zero()) {
        out.den_ = Polynomial(Gaussian(1));
        return out;
    }
    if (!g.is_one()) {
        Polynomial h = Polynomial::gcd(out.num_, g);
        if (!h.is_one()) {
            Polynomial::divmod(out.num_, h, q, r);
            out.num_ = std::move(q);
            Polynomial::divmod(out.den_, h, q, r);
            out.den_ = std::move(q);
        }
    }
    return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return RationalFunction(a.num_ * b.num_);
    if (a.den_.is_monomial() && b.den_.is_monomial()) return laurent(a.num_ * b.num_, a.den_.degree() + b.den_.degree());
    // Both factors are reduced, so cancelling across is enough.
    Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_, q, r;
    Polynomial g = Polynomial::gcd(an, bd);
    if (!g.is_one()) {
        Polynomial::divmod(an, g, q, r);
        an = std::move(q);
        Polynomial::divmod(bd, g, q, r);
        bd = std::move(q);
    }
    g = Polynomial::gcd(bn, ad);
    if (!g.is_one()) {
        Polynomial::divmod(bn, g, q, r);
        bn = std::move(q);
        Polynomial::divmod(ad, g, q, r);
        ad = std::move(q);
    }
    RationalFunction out;
    out.num_ = an * bn;
    out.den_ = ad * bd;
    return out;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

std::string render(const RationalFunction& f) {
    std::string n = render(f.num());
    if (f.den().is_one()) return n;
    std::string d = render(f.den());
    if (has_top_level_sum(n)) n = "(" + n + ")";
    if (has_top_level_sum(d) || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

RationalFunction q_integer(int n) {
    std::vector<Gaussian> coeffs;
    for (int k = 0; k < n; ++k) {
        coeffs.resize(static_cast<std::size_t>(2 * k) + 1);
        coeffs[static_cast<std::size_t>(2 * k)] = Gaussian(1);
    }
    return RationalFunction(Polynomial(std::move(coeffs)));
}

namespace {

bool sqrt_rational(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

bool sqrt_polynomial(const Polynomial& p, Polynomial& root) {
    if (p.is_zero()) {
        root = Polynomial();
        return true;
    }
    if (p.degree() % 2 != 0) return false;
    const Gaussian& lead = p.lead();
    Rational r;
    Gaussian top;
    if (lead.is_real() && sqrt_rational(lead.re(), r))
        top = Gaussian(r);
    else if (lead.is_real() && sqrt_rational(-lead.re(), r))
        top = Gaussian(0, r);
    else
        return false;
    int d = p.degree() / 2;
    std::vector<Gaussian> b(static_cast<std::size_t>(d) + 1);
    b[static_cast<std::size_t>(d)] = top;
    Gaussian inv_two_top = (Gaussian(2) * top).inverse();
    for (int k = d - 1; k >= 0; --k) {
        Gaussian acc = p.coeff(d + k);
        for (int i = k + 1; i <= d - 1; ++i) {
            int j = d + k - i;
            if (j > k && j < d) acc -= b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
        b[static_cast<std::size_t>(k)] = acc * inv_two_top;
    }
    root = Polynomial(std::move(b));
    return root * root == p;
}

}  // namespace

bool try_sqrt(const RationalFunction& f, RationalFunction& root) {
    Polynomial n, d;
    if (!sqrt_polynomial(f.num(), n) || !sqrt_polynomial(f.den(), d)) return false;
    root = RationalFunction(n, d);
    return true;
}

}  // namespace taugeo
