#include "doctest.h"

#include "taugeo/error.hpp"
#include "taugeo/sphere.hpp"

#include <string>

using namespace taugeo;

namespace {

using Vec = std::vector<AlgebraElement>;

AlgebraElement el(const std::string& text) { return parse_element(sphere_presentation(), text); }

const SolveReport& solved() {
    static const SolveReport report = solve_x_table();
    return report;
}

const Sphere& sphere() {
    static const Sphere s = build_sphere(solved().table);
    return s;
}

/// Independent oracle for the X table: with u = [[a, -q cs], [c, as]] and
/// Δu = u ⊗ u, h ▷ u = u ρ(h), where ρ is the 2x2 representation given by the
/// pairing: ρ(K) = diag(s⁻¹, s), ρ(E) = E21, ρ(F) = E12.
struct PairingOracle {
    std::array<std::array<AlgebraElement, 2>, 2> u;
    // ρ(X₊) = √q ρ(E)ρ(K), ρ(X₋) = ρ(F)ρ(K)/√q, ρ(X_z) = (1 − ρ(K)⁴)/(1 − q⁻²).
    std::array<std::array<Scalar, 2>, 2> plus, minus, z;

    PairingOracle() : u{{{el("a"), el("-s^2*cs")}, {el("c"), el("as")}}} {
        const ScalarField& f = sphere_presentation()->field();
        Scalar s = f.s_power(1), k1 = f.s_power(-1), k2 = f.s_power(1), zero = f.zero();
        plus = {{{zero, zero}, {s * k1, zero}}};
        minus = {{{zero, k2 / s}, {zero, zero}}};
        Scalar denom = f.one() - f.s_power(-4);
        z = {{{(f.one() - f.s_power(-4)) / denom, zero}, {zero, (f.one() - f.s_power(4)) / denom}}};
    }

    /// Value of h on u_ij: (u ρ(h))_ij.
    AlgebraElement apply(const std::array<std::array<Scalar, 2>, 2>& rho, int i, int j) const {
        return rho[0][j] * u[i][0] + rho[1][j] * u[i][1];
    }
};

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

}  // namespace

TEST_SUITE("sphere") {

TEST_CASE("presentation relations and PBW count") {
    CHECK(el("as*a + cs*c") == el("1"));
    CHECK(el("a*as + q^2*c*cs") == el("1"));
    CHECK(el("a*c") == el("q*c*a"));
    CHECK(el("a*cs") == el("q*cs*a"));
    CHECK(el("c*cs") == el("cs*c"));
    auto pres = sphere_presentation();
    // Classical count: polynomials of degree ≤ d in four variables modulo one quadric.
    for (int d = 0; d <= 5; ++d)
        CHECK(pres->normal_words(d).size() == static_cast<std::size_t>(binomial(d + 4, 4) - binomial(d + 2, 4)));
}

TEST_CASE("K action") {
    KAction k(sphere_presentation());
    CHECK(k(1, el("a")) == el("s^-1*a"));
    CHECK(k(1, el("cs")) == el("s*cs"));
    CHECK(k(2, el("a*c")) == el("s^-4*a*c"));
    CHECK(k(-3, k(3, el("as*c*cs"))) == el("as*c*cs"));
    auto alg = PresentedAlgebra(sphere_presentation());
    for (std::uint64_t n = 0; n < 50; ++n) {
        auto rng = sample_rng(3, n);
        auto f = alg.random_element(rng);
        CHECK(k(1, f.star()).star() == k(-1, f));
    }
    CHECK(KAction::weight(Word{0, 2, 3}) == -1);
}

TEST_CASE("solver reproduces the pairing table") {
    const auto& r = solved();
    CHECK(r.dimension == 1);
    CHECK(r.unknowns == 4);
    CHECK(r.modulus_squared == Scalar(RationalFunction(Gaussian(1))));
    PairingOracle oracle;
    // Generator g sits at u-entry: a = u11, as = u22, c = u21, cs = -u12/q.
    struct Entry {
        std::size_t g;
        int i, j;
        const char* scale;
    };
    const Entry entries[] = {{0, 0, 0, "1"}, {1, 1, 1, "1"}, {2, 1, 0, "1"}, {3, 0, 1, "-s^-2"}};
    for (const auto& e : entries) {
        auto scale = el(e.scale);
        CHECK(r.table.plus[e.g] == scale * oracle.apply(oracle.plus, e.i, e.j));
        CHECK(r.table.minus[e.g] == scale * oracle.apply(oracle.minus, e.i, e.j));
        CHECK(r.table.z[e.g] == scale * oracle.apply(oracle.z, e.i, e.j));
    }
    CHECK(sphere().x_z(el("1")) == el("0"));
    CHECK(r.note.find("phase") != std::string::npos);
}

TEST_CASE("solver phase freedom and bounds") {
    auto rotated = solve_x_table(2, Scalar(Gaussian(0, 1)));
    CHECK(rotated.table.plus[0] == el("i") * solved().table.plus[0]);
    CHECK(rotated.table.minus[1] == el("-i") * solved().table.minus[1]);
    CHECK(rotated.table.z[0] == solved().table.z[0]);
    CHECK_NOTHROW(build_sphere(rotated.table));
    CHECK(solve_x_table(1).dimension == 1);
    CHECK_THROWS_AS(solve_x_table(0), PreconditionFailed);
    CHECK_THROWS_AS(solve_x_table(2, Scalar(Gaussian(2))), PreconditionFailed);
}

TEST_CASE("twisted commutators on generators") {
    const auto& s = sphere();
    CHECK(twisted_commutator_check(s.x_plus, s.x_minus, s.x_z).passed());
    auto a = el("a");
    CHECK(s.x_minus(s.x_plus(a)) - el("q^2") * s.x_plus(s.x_minus(a)) == s.x_z(a));
}

TEST_CASE("invalid tables are rejected with the failing rule") {
    auto broken = solved().table;
    broken.plus[0] = el("c");
    try {
        build_sphere(broken);
        FAIL("ill-defined X+ accepted");
    } catch (const InvalidActionTable& e) {
        CHECK(std::string(e.what()).find("X+") != std::string::npos);
    }
    auto scaled = solved().table;
    for (auto& v : scaled.z) v = el("2") * v;
    try {
        build_sphere(scaled);
        FAIL("wrong commutator accepted");
    } catch (const InvalidActionTable& e) {
        CHECK(std::string(e.what()).find("X-X+ - q^2 X+X- = Xz") != std::string::npos);
    }
    auto short_table = solved().table;
    short_table.minus.pop_back();
    CHECK_THROWS_AS(build_sphere(short_table), InvalidActionTable);
}

TEST_CASE("Y derivations form a star structure") {
    const auto& s = sphere();
    CHECK(st_star_structure_check(s.sigma).passed());
    auto alg = s.algebra();
    for (const auto& y : s.sigma.derivations) CHECK(leibniz_check(alg, y, 200, 42).passed());
    // σ₁*(f) = K⁻¹(f*)* = K(f) = τ₁(f).
    for (std::uint64_t n = 0; n < 20; ++n) {
        auto rng = sample_rng(8, n);
        auto f = alg.random_element(rng);
        CHECK(s.y1.sigma()(f.star()).star() == s.k(1, f));
        CHECK(s.y3.sigma()(f.star()).star() == s.y3.tau()(f));
    }
    auto id = Endomorphism::identity(s.pres);
    CHECK(leibniz_check(alg, s.sigma.derivations[0], 10, 1, as_map(id), as_map(id)).failed());
}

TEST_CASE("bimodule relations of one-forms") {
    const auto& s = sphere();
    const auto& m = s.omega;
    CHECK(m.equal(m.basis_times(2, el("a")), m.left(el("q^-2*a"), m.basis(2))));
    CHECK(m.equal(m.basis_times(0, el("cs")), m.left(el("q*cs"), m.basis(0))));
    CHECK(m.equal(m.basis_times(1, el("1")), m.basis(1)));
    CHECK(bimodule_relation_check(s, 200, 42).passed());

    // η₃ twisted by K instead of K⁴ breaks the listed relations.
    std::vector<Map<AlgebraElement>> wrong = {as_map(s.k.power(2)), as_map(s.k.power(2)), as_map(s.k.power(1))};
    Sphere bad = s;
    bad.omega = free_sigma_module(s.sigma, 3).with_right_twist(wrong).with_star();
    auto v = bimodule_relation_check(bad, 5, 1);
    CHECK(v.failed());
    CHECK(v.witness.find("η3") != std::string::npos);
}

TEST_CASE("K hat") {
    const auto& s = sphere();
    const auto& m = s.omega;
    CHECK(m.equal(k_hat(s, 1, m.left(el("a"), m.basis(0))), m.left(el("s^-1*a"), m.basis(0))));
    CHECK(k_hat_check(s, 100, 42).passed());
    for (std::size_t a = 0; a < 3; ++a) CHECK(m.equal(m.star(m.basis(a)), m.basis(a)));
    CHECK_THROWS_AS(k_hat(s, 1, Vec{el("a")}), RankMismatch);
}

TEST_CASE("one-forms are a star bimodule") {
    const auto& s = sphere();
    CHECK(module_law_check(s.omega, 200, 42).passed());
}

TEST_CASE("differential") {
    const auto& s = sphere();
    const auto& m = s.omega;
    CHECK(m.equal(differential_d(s, el("1")), m.zero()));
    auto dc = differential_d(s, el("c"));
    CHECK(dc[0] == s.x_plus(el("c")));
    CHECK(dc[0] == el("as"));
    CHECK(differential_leibniz_check(s, 100, 42).passed());
    for (std::uint64_t n = 0; n < 20; ++n) {
        auto rng = sample_rng(12, n);
        auto v = m.random_element(rng);
        CHECK(m.equal(eta_to_omega(s.pres, omega_to_eta(s.pres, v)), v));
    }
    // η₁ = i(ω₊ + ω₋).
    auto eta1 = omega_to_eta(s.pres, Vec{el("i"), el("i"), el("0")});
    CHECK(m.equal(eta1, m.basis(0)));
}

}  // TEST_SUITE
