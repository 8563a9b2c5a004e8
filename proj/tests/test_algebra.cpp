#include "doctest.h"

#include "taugeo/error.hpp"
#include "taugeo/presets.hpp"

#include <string>

using namespace taugeo;

namespace {

/// ℂ_q[x,y] with y x = q x y: a small noncommutative test presentation.
PresentationPtr quantum_plane() {
    PresentationSpec spec;
    spec.name = "quantum-plane";
    spec.generators = {"x", "y"};
    spec.relations = {{"y*x", "q*x*y"}};
    return Presentation::create(spec);
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("normal form in the commutative plane") {
    auto qp = build_qplane();
    CHECK(parse_element(qp.pres, "y*x") == parse_element(qp.pres, "x*y"));
    CHECK(render(parse_element(qp.pres, "y*x*y")) == "x*y^2");
    CHECK_THROWS_AS(parse_element(qp.pres, "z*x"), UnknownGenerator);
}

TEST_CASE("normal form in a noncommutative presentation") {
    auto pres = quantum_plane();
    CHECK(parse_element(pres, "y*x") == parse_element(pres, "q*x*y"));
    CHECK(parse_element(pres, "y^2*x") == parse_element(pres, "q^2*x*y^2"));
}

TEST_CASE("non-confluent rules are rejected at construction") {
    PresentationSpec spec;
    spec.name = "broken";
    spec.generators = {"x", "y"};
    spec.relations = {{"x*y", "x"}, {"y*x", "y"}};
    CHECK_THROWS_AS(Presentation::create(spec), StructuralError);
}

TEST_CASE("non-terminating orientation is rejected") {
    PresentationSpec spec;
    spec.name = "backwards";
    spec.generators = {"x", "y"};
    spec.relations = {{"x*y", "y*x"}};
    CHECK_THROWS_AS(Presentation::create(spec), StructuralError);
}

TEST_CASE("normal form is idempotent and multiplication associative") {
    auto pres = quantum_plane();
    auto qp = build_qplane();
    for (const auto& p : {pres, qp.pres}) {
        for (std::uint64_t k = 0; k < 100; ++k) {
            auto rng = sample_rng(7, k);
            auto f = random_element(p, rng);
            auto g = random_element(p, rng);
            auto h = random_element(p, rng);
            CHECK(AlgebraElement(p, f.terms()) == f);
            CHECK((f * g) * h == f * (g * h));
            CHECK(f * (g + h) == f * g + f * h);
        }
    }
}

TEST_CASE("star is an anti-multiplicative involution") {
    auto qp = build_qplane();
    for (std::uint64_t k = 0; k < 100; ++k) {
        auto rng = sample_rng(11, k);
        auto f = random_element(qp.pres, rng);
        auto g = random_element(qp.pres, rng);
        CHECK(f.star().star() == f);
        CHECK((f * g).star() == g.star() * f.star());
    }
    auto scalar = AlgebraElement::scalar(qp.pres, qp.pres->field().parse("i*s"));
    CHECK(scalar.star() == AlgebraElement::scalar(qp.pres, qp.pres->field().parse("-i*s")));
}

TEST_CASE("mixing presentations throws") {
    auto a = parse_element(build_qplane().pres, "x");
    auto b = parse_element(quantum_plane(), "x");
    CHECK_THROWS_AS((void)(a + b), PresentationMismatch);
}

TEST_CASE("endomorphisms") {
    auto qp = build_qplane();
    const auto& f = qp.pres->field();
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            auto mono = power(parse_element(qp.pres, "x"), n) * power(parse_element(qp.pres, "y"), m);
            CHECK(qp.sigma1(mono) == f.s_power(2 * n) * mono);
        }
    CHECK(qp.sigma1(AlgebraElement::scalar(qp.pres, f.one())) == AlgebraElement::scalar(qp.pres, f.one()));

    // The swap x <-> y does not respect y x = q x y.
    auto pres = quantum_plane();
    auto x = AlgebraElement::generator(pres, 0);
    auto y = AlgebraElement::generator(pres, 1);
    CHECK_THROWS_AS(Endomorphism::create(pres, "swap", {y, x}), IllDefinedMap);
    auto scale = Endomorphism::diagonal(pres, "scale", {pres->field().q(), pres->field().one()});
    CHECK(scale(y * x) == pres->field().q() * (y * x));
}

TEST_CASE("star of maps") {
    auto qp = build_qplane();
    auto alg = qp.algebra();
    auto id = as_map(qp.identity);
    CHECK(compare_maps(alg, star_of_map(alg, id), id, 20, 3, "id*").passed());
    auto x1 = as_twisted(qp.x1);
    auto twice = star_of_derivation(alg, star_of_derivation(alg, x1));
    CHECK(compare_maps(alg, twice.apply, x1.apply, 20, 3, "X**").passed());
    CHECK(leibniz_check(alg, star_of_derivation(alg, x1), 50, 5).passed());
    CHECK(qp.x1.star().equals_on_generators(qp.x1));
    CHECK_THROWS_AS(star_of_map(PresentedAlgebra(quantum_plane()), id), NoStarStructure);
}

TEST_CASE("derivation extension") {
    auto qp = build_qplane();
    auto x = parse_element(qp.pres, "x");
    auto zero = AlgebraElement(qp.pres);
    auto xzero = Derivation::extend("Z", qp.sigma1, qp.identity, {zero, zero});
    CHECK(xzero(parse_element(qp.pres, "x^3*y + 2*y")) == zero);
    CHECK(qp.x1(x * x) == AlgebraElement::scalar(qp.pres, qp.pres->field().q_int(2)) * x);

    auto pres = quantum_plane();
    auto id = Endomorphism::identity(pres);
    auto one = AlgebraElement::scalar(pres, pres->field().one());
    try {
        Derivation::extend("D", id, id, {one, AlgebraElement(pres)});
        FAIL("ill-defined derivation accepted");
    } catch (const IllDefinedDerivation& e) {
        CHECK(std::string(e.what()).find("y*x") != std::string::npos);
    }
}

TEST_CASE("inner derivations satisfy both orderings") {
    auto qp = build_qplane();
    auto alg = qp.algebra();
    auto inner = as_twisted(Derivation::inner("I", qp.sigma1, qp.sigma2));
    CHECK(leibniz_check(alg, inner, 100, 1).passed());
    CHECK(leibniz_check(alg, inner, 100, 1, as_map(qp.sigma2), as_map(qp.sigma1)).passed());
    auto same = Derivation::inner("0", qp.sigma1, qp.sigma1);
    CHECK(same(parse_element(qp.pres, "x^2*y")) == AlgebraElement(qp.pres));
}

TEST_CASE("leibniz check finds the counterexample for a wrong sigma") {
    auto qp = build_qplane();
    auto alg = qp.algebra();
    auto v = leibniz_check(alg, as_twisted(qp.x1), 10, 1, as_map(qp.identity), {});
    REQUIRE(v.failed());
    CHECK(v.witness.find("f = x, g = x") != std::string::npos);
    // Oracle: X₁(x²) = [2]_q x while x·1 + 1·x = 2x.
    auto x = parse_element(qp.pres, "x");
    CHECK(qp.x1(x * x) - qp.pres->field().integer(2) * x == parse_element(qp.pres, "(s^2-1)*x"));
}

TEST_CASE("star structure and morphisms") {
    auto qp = build_qplane();
    auto doubled = qp.doubled();
    CHECK(st_star_structure_check(doubled).passed());
    CHECK_THROWS_AS(PresentedSigma(qp.algebra(), qp.sigma.derivations, std::vector<std::size_t>{1, 1}),
                    StructuralError);

    const auto& f = qp.pres->field();
    ScalarMatrix identity = {{f.one(), f.zero()}, {f.zero(), f.one()}};
    ScalarMatrix swap = {{f.zero(), f.one()}, {f.one(), f.zero()}};
    std::function<AlgebraElement(const AlgebraElement&)> id = [](const AlgebraElement& e) { return e; };
    CHECK(st_morphism_check<PresentedAlgebra, PresentedAlgebra>(id, identity, qp.sigma, qp.sigma).passed());

    auto x = parse_element(qp.pres, "x");
    auto y = parse_element(qp.pres, "y");
    auto flip = Endomorphism::create(qp.pres, "swap", {y, x});
    std::function<AlgebraElement(const AlgebraElement&)> phi = as_map(flip);
    CHECK(st_morphism_check<PresentedAlgebra, PresentedAlgebra>(phi, swap, qp.sigma, qp.sigma).passed());
    CHECK(st_morphism_check<PresentedAlgebra, PresentedAlgebra>(phi, identity, qp.sigma, qp.sigma).failed());

    auto psi = derive_tangent_map<PresentedAlgebra>(phi, phi, qp.sigma, qp.sigma);
    REQUIRE(psi);
    CHECK(*psi == swap);
}

}  // TEST_SUITE
