#include "doctest.h"
#include "support.hpp"

#include "taugeo/error.hpp"

#include <cmath>

using namespace taugeo;

TEST_SUITE("scalar") {

TEST_CASE("rational and gaussian arithmetic") {
    ScalarField qf(ScalarKind::Rational);
    CHECK(qf.parse("1/2") + qf.parse("1/3") == Scalar(Rational(5, 6)));
    CHECK(render(qf.parse("1/2") + qf.parse("1/3")) == "5/6");

    ScalarField gf(ScalarKind::Gaussian);
    CHECK(gf.parse("(1+i)/2") * gf.parse("(1-i)/2") == gf.parse("1/2"));
    CHECK(gf.imaginary_unit().conj() == -gf.imaginary_unit());
    CHECK(parse_decimal("1.25") == Rational(5, 4));
    CHECK(parse_decimal("2e-3") == Rational(1, 500));
}

TEST_CASE("rational function inverse is reduced") {
    ScalarField f;
    Scalar inv = f.parse("s^2").inverse();
    CHECK(render(inv) == "1/s^2");
    const auto& rf = inv.get<RationalFunction>();
    CHECK(rf.num() == Polynomial(Gaussian(1)));
    CHECK(rf.den() == Polynomial::monomial(1, 2));
}

TEST_CASE("conjugation fixes s and negates i") {
    ScalarField f;
    CHECK(f.parse("s^3 + i*s").conj() == f.parse("s^3 - i*s"));
    CHECK(f.parse("i").conj() == f.parse("-i"));
}

TEST_CASE("q-integers") {
    CHECK(q_integer(0).is_zero());
    CHECK(q_integer(1).is_one());
    ScalarField f;
    CHECK(Scalar(q_integer(3)) == f.parse("1 + s^2 + s^4"));
}

TEST_CASE("evaluation at a point") {
    ScalarField f;
    CHECK(evaluate_at(f.parse("1+q").get<RationalFunction>(), Gaussian(1)) == Scalar(Gaussian(2)));
    Scalar seven = evaluate_at(q_integer(3), std::complex<double>(std::sqrt(2.0), 0.0));
    CHECK(seven == Scalar(ComplexFloat{7.0, 1e-9}));
    CHECK_THROWS_AS(evaluate_at(f.parse("1/(q-1)").get<RationalFunction>(), Gaussian(1)), PoleError);
}

TEST_CASE("errors") {
    ScalarField f;
    CHECK_THROWS_AS(f.zero().inverse(), DivisionByZero);
    CHECK_THROWS_AS(Scalar(Rational(1)) + Scalar(Gaussian(1)), VariantMismatch);
    CHECK_THROWS_AS(ScalarField(ScalarKind::Rational).parse("i"), VariantMismatch);
    CHECK_THROWS_AS(f.parse("1 +"), ParseError);
    CHECK_THROWS_AS(f.parse("w"), ParseError);
}

TEST_CASE("canonical rendering") {
    ScalarField f;
    CHECK(render(f.parse("(1+2*i)*s^3/(s^2-1)")) == "(1+2*i)*s^3/(s^2-1)");
    CHECK(render(f.parse("s^4 - 2*s + i")) == "s^4-2*s+i");
    CHECK(render(f.parse("-i*s/(2*s+2)")) == "-1/2*i*s/(s+1)");
    CHECK(render(f.parse("0")) == "0");
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (ScalarKind kind : {ScalarKind::Rational, ScalarKind::Gaussian, ScalarKind::RationalFunction}) {
        ScalarField field(kind);
        for (int trial = 0; trial < 60; ++trial) {
            Scalar x = testing::random_scalar(rng, kind);
            Scalar y = testing::random_scalar(rng, kind);
            Scalar z = testing::random_scalar(rng, kind);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x + y == y + x);
            CHECK(x * y == y * x);
            CHECK(x * (y + z) == x * y + x * z);
            CHECK((x + (-x)).is_zero());
            CHECK(x + (-x) == field.zero());
            if (!x.is_zero()) CHECK(x * x.inverse() == field.one());
        }
    }
}

TEST_CASE("reduced fractions are coprime with monic denominators") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 80; ++trial) {
        RationalFunction a = testing::small_rational_function(rng);
        RationalFunction b = testing::small_rational_function(rng);
        for (const RationalFunction& r : {a + b, a * b, a - b}) {
            CHECK(r.den().lead().is_one());
            // Coprimality oracle: a common root would show up as a nonconstant remainder chain.
            Polynomial g = r.den();
            Polynomial h = r.num();
            while (!h.is_zero()) {
                Polynomial q, rem;
                Polynomial::divmod(g, h, q, rem);
                g = h;
                h = rem;
            }
            CHECK(g.degree() <= 0);
        }
    }
}

TEST_CASE("conjugation is an involutive automorphism") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        Scalar x = testing::random_scalar(rng, ScalarKind::RationalFunction);
        Scalar y = testing::random_scalar(rng, ScalarKind::RationalFunction);
        CHECK(x.conj().conj() == x);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(5);
    Gaussian s0(Rational(7, 3), Rational(1, 5));
    for (int trial = 0; trial < 60; ++trial) {
        RationalFunction x = testing::small_rational_function(rng);
        RationalFunction y = testing::small_rational_function(rng);
        try {
            CHECK(evaluate_at(x * y, s0) == evaluate_at(x, s0) * evaluate_at(y, s0));
            CHECK(evaluate_at(x + y, s0) == evaluate_at(x, s0) + evaluate_at(y, s0));
        } catch (const PoleError&) {
        }
    }
}

TEST_CASE("render and parse round-trip") {
    std::mt19937_64 rng(13);
    for (ScalarKind kind : {ScalarKind::Rational, ScalarKind::Gaussian, ScalarKind::RationalFunction,
                            ScalarKind::Float}) {
        ScalarField field(kind);
        for (int trial = 0; trial < 60; ++trial) {
            Scalar x = testing::random_scalar(rng, kind);
            Scalar back = field.parse(render(x));
            if (kind == ScalarKind::Float)
                CHECK(back.to_complex() == x.to_complex());
            else
                CHECK(back == x);
        }
    }
}

TEST_CASE("float equality is relative") {
    ScalarField f(ScalarKind::Float, 1e-9);
    CHECK(f.complex(1e6) == f.complex(1e6 + 1e-4));
    CHECK(f.complex(1.0) != f.complex(1.0 + 1e-6));
}

TEST_CASE("square roots") {
    ScalarField f;
    RationalFunction root;
    REQUIRE(try_sqrt(f.parse("s^4").get<RationalFunction>(), root));
    CHECK(root == f.parse("s^2").get<RationalFunction>());
    REQUIRE(try_sqrt(f.parse("(1+s)^2/(4*s^2)").get<RationalFunction>(), root));
    CHECK(root * root == f.parse("(1+s)^2/(4*s^2)").get<RationalFunction>());
    CHECK_FALSE(try_sqrt(f.parse("2").get<RationalFunction>(), root));
}

}
