#include "doctest.h"

#include "taugeo/error.hpp"
#include "taugeo/matrix_geometry.hpp"

#include <string>

using namespace taugeo;

namespace {

const ScalarField exact(ScalarKind::Gaussian);

Scalar g(long re, long im = 0) { return exact.gaussian(Gaussian(Rational(re), Rational(im))); }

Matrix diag(std::vector<Scalar> d) { return Matrix::diagonal(d, exact); }

Matrix e1(std::size_t n, const ScalarField& field = exact) {
    Matrix v(n, 1, field);
    v(0, 0) = field.one();
    return v;
}

std::vector<Matrix> random_gammas(std::size_t n, std::size_t count, const ScalarField& field, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < count; ++a) out.push_back(random_matrix(n, n, field, rng));
    return out;
}

/// Projector for instance k: identity, a rank-one v v†, or its complement.
MatrixGeometry with_instance_projector(const MatrixGeometry& geo, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = geo.dimension();
    Matrix one = Matrix::identity(n, geo.field());
    switch (k % 3) {
    case 0: return geo.with_projector(one);
    case 1: return geo.with_vector(random_unit_vector(n, geo.field(), rng));
    default: {
        Matrix v = random_unit_vector(n, geo.field(), rng);
        return geo.with_projector(one - v * v.adjoint());
    }
    }
}

/// Diagonal U's have e1 as a common eigenvector; conjugating by a signed permutation keeps it at P e1.
MatrixGeometry eigen_geometry() {
    auto p = signed_permutation({2, 0, 1}, {1, 0, 3}, exact);
    std::vector<Matrix> u{p * phase_diagonal({1, 2, 0}, exact) * p.adjoint(),
                          p * phase_diagonal({3, 0, 0}, exact) * p.adjoint()};
    return build_matrix_geometry(u, exact).with_vector(p * e1(3));
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("projectors and the vector isomorphism") {
    auto geo = build_matrix_geometry({diag({g(1), g(0, 1)})}, exact);
    CHECK_THROWS_AS(geo.p(), MissingProjector);
    CHECK_THROWS_AS(geo.with_vector(Matrix::column({g(1), g(1)}, exact)), PreconditionFailed);
    CHECK_THROWS_AS(geo.with_projector(diag({g(2), g(0)})), NotAProjection);
    auto skew = Matrix::from_rows({{g(1), g(1)}, {g(0), g(0)}}, exact);
    CHECK(skew * skew == skew);
    CHECK_THROWS_AS(geo.with_projector(skew), NotAProjection);

    Matrix v0 = Matrix::column({exact.rational(Rational(3, 5)), exact.rational(Rational(4, 5)) * g(0, 1)}, exact);
    auto withv = geo.with_vector(v0);
    const Matrix& p = withv.p();
    CHECK(p * p == p);
    CHECK(p.adjoint() == p);
    CHECK_FALSE(withv.mu.has_value());
    for (std::uint64_t k = 0; k < 50; ++k) {
        auto rng = sample_rng(5, k);
        Matrix v = random_matrix(2, 1, exact, rng);
        Matrix a = random_matrix(2, 2, exact, rng) * p;
        CHECK(phi_inverse(withv, phi(withv, v)) == v);
        CHECK(phi(withv, phi_inverse(withv, a)) == a);
    }
    auto eig = geo.with_vector(e1(2));
    REQUIRE(eig.mu.has_value());
    CHECK((*eig.mu)[0] == g(1));
    CHECK(eigenvalue_at(diag({g(1), g(0, 1)}), Matrix::column({g(0), g(1)}, exact)) == g(0, 1));
}

TEST_CASE("projective connection") {
    auto u1 = diag({g(1), g(0, 1), g(-1)});
    auto u2 = diag({g(2), g(1), g(1, 1)});
    auto geo = build_matrix_geometry({u1, u2}, exact);
    std::vector<Matrix> zero(2, Matrix(3, 3, exact));
    CHECK_THROWS_AS(projective_connection(geo, zero), MissingProjector);
    auto pg = geo.with_vector(e1(3));
    auto flat = projective_connection(pg, zero);
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto rng = sample_rng(6, k);
        Matrix a = random_matrix(3, 3, exact, rng) * pg.p();
        CHECK(flat(0, {a})[0] == a);
        CHECK(flat(1, {a})[0] == a);
    }
    auto rng = sample_rng(7, 0);
    auto gamma = random_gammas(3, 2, exact, rng);
    auto nabla = projective_connection(pg, gamma);
    CHECK(connection_leibniz_check(nabla, Side::Left, 100, 42).passed());
    // Diagonal U, Γ: γ_a = (U_a⁻¹Γ_a)₁₁.
    auto gd = diag({g(3), g(1, 2), g(5)});
    CHECK(vector_gamma(pg, gd, 1) == g(3) / g(2));
    for (std::uint64_t k = 0; k < 30; ++k) {
        auto r = sample_rng(8, k);
        Matrix v = random_matrix(3, 1, exact, r);
        for (std::size_t a = 0; a < 2; ++a)
            CHECK(phi_inverse(pg, nabla(a, {phi(pg, v)})[0]) == vector_connection_apply(pg, gamma, a, v));
    }
}

TEST_CASE("closed-form curvature matches the definition, exact") {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t k = 0; k < 50; ++k) {
            auto rng = sample_rng(100 + n, k);
            auto us = random_commuting_invertibles(n, 2, exact, rng);
            auto geo = with_instance_projector(build_matrix_geometry(us, exact), k, rng);
            auto gamma = random_gammas(n, 2, exact, rng);
            Matrix a = random_matrix(n, n, exact, rng);
            std::uniform_int_distribution<std::size_t> idx(0, 1);
            std::size_t x = idx(rng), y = idx(rng);
            CHECK(curvature_closed_form(geo, gamma, x, y, a) == curvature_direct(geo, gamma, x, y, a));
        }
    }
}

TEST_CASE("closed-form curvature matches the definition, float") {
    const ScalarField fl(ScalarKind::Float);
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t k = 0; k < 50; ++k) {
            auto rng = sample_rng(200 + n, k);
            auto us = random_commuting_unitaries(n, 2, fl, rng);
            auto geo = with_instance_projector(build_matrix_geometry(us, fl), k, rng);
            auto gamma = random_gammas(n, 2, fl, rng);
            Matrix a = random_matrix(n, n, fl, rng);
            std::uniform_int_distribution<std::size_t> idx(0, 1);
            std::size_t x = idx(rng), y = idx(rng);
            double diff = (curvature_closed_form(geo, gamma, x, y, a) - curvature_direct(geo, gamma, x, y, a)).max_abs();
            worst = std::max(worst, diff);
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("rank-one projectors give flat connections") {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t k = 0; k < 50; ++k) {
            auto rng = sample_rng(300 + n, k);
            auto us = random_commuting_invertibles(n, 2, exact, rng);
            auto geo = build_matrix_geometry(us, exact).with_vector(random_unit_vector(n, exact, rng));
            auto gamma = random_gammas(n, 2, exact, rng);
            Matrix a = random_matrix(n, n, exact, rng);
            CHECK(curvature_closed_form(geo, gamma, 0, 1, a).is_zero());
            CHECK(curvature_direct(geo, gamma, 0, 1, a).is_zero());
            // v₀†A v₀ is a scalar, so p[A₁p, A₂p] = 0.
            const Matrix& p = geo.p();
            Matrix a1 = random_matrix(n, n, exact, rng), a2 = random_matrix(n, n, exact, rng);
            CHECK((p * commutator(a1 * p, a2 * p)).is_zero());
        }
    }
}

TEST_CASE("curvature identities for general projectors") {
    const std::size_t n = 3;
    for (std::uint64_t k = 0; k < 30; ++k) {
        auto rng = sample_rng(400, k);
        auto us = random_commuting_invertibles(n, 2, exact, rng);
        auto base = build_matrix_geometry(us, exact);
        auto geo = with_instance_projector(base, 2, rng);
        auto gamma = random_gammas(n, 2, exact, rng);
        Matrix a = random_matrix(n, n, exact, rng) * geo.p();
        Matrix b = random_matrix(n, n, exact, rng);
        // Curv(BA) = σ_a(σ_b(B)) Curv(A).
        Matrix sab = us[0] * us[1] * b * geo.preset.u_inverse[1] * geo.preset.u_inverse[0];
        CHECK(curvature_direct(geo, gamma, 0, 1, b * a) == sab * curvature_direct(geo, gamma, 0, 1, a));
        // Γ_a equal and commuting with the U's: the commutator vanishes.
        Matrix z = us[0] * us[1] + Matrix::identity(n, exact);
        std::vector<Matrix> same{z, z};
        auto unit = base.with_projector(Matrix::identity(n, exact));
        CHECK(curvature_closed_form(unit, same, 0, 1, a).is_zero());
        CHECK(curvature_direct(unit, same, 0, 1, a).is_zero());
        // Curv(a, a) = 0 under the flip.
        CHECK(curvature_direct(geo, gamma, 1, 1, a).is_zero());
    }
    // A non-rank-one projector can carry curvature.
    auto rng = sample_rng(401, 0);
    bool nonzero = false;
    for (std::uint64_t k = 0; k < 10 && !nonzero; ++k) {
        auto us = random_commuting_invertibles(n, 2, exact, rng);
        auto geo = build_matrix_geometry(us, exact).with_projector(Matrix::identity(n, exact));
        auto gamma = random_gammas(n, 2, exact, rng);
        nonzero = !curvature_direct(geo, gamma, 0, 1, Matrix::identity(n, exact)).is_zero();
    }
    CHECK(nonzero);
}

TEST_CASE("torsion-free choice of Γ") {
    auto u1 = diag({g(1), g(0, 1), g(-1)});
    auto u2 = diag({g(0, -1), g(1), g(1)});
    auto geo = build_matrix_geometry({u1, u2}, exact);

    auto plain = torsion_free_gamma_choice(geo, {u1, u2});
    CHECK(plain.torsion.passed());
    CHECK(plain.vector_formula.status == Status::Skipped);
    CHECK(plain.gamma[0] == Matrix::identity(3, exact) - u1);
    // E_b − E_a − E_b(1 − E_a) + E_a(1 − E_b) = 0 for commuting E's.
    const Matrix one = Matrix::identity(3, exact);
    CHECK((u2 - u1 - u2 * (one - u1) + u1 * (one - u2)).is_zero());

    // Eigen case with v₀ = e1: E_a v₀ = λ_a v₀.
    auto e_a = diag({g(2), g(1), g(0, 1)});
    auto e_b = diag({g(1, 1), g(3), g(0)});
    auto pg = geo.with_vector(e1(3));
    auto eig = torsion_free_gamma_choice(pg, {e_a, e_b}, 50, 3);
    CHECK(eig.torsion.passed());
    CHECK(eig.vector_formula.passed());
    REQUIRE(eig.lambda.has_value());
    Scalar la = (*eig.lambda)[0], lb = (*eig.lambda)[1];
    CHECK(la == g(2));
    const Matrix& p = pg.p();
    CHECK((lb * p - la * p - lb * (g(1) - la) * p + la * (g(1) - lb) * p).is_zero());

    // The same on a conjugated geometry with a nontrivial v₀.
    auto cg = eigen_geometry();
    auto conj = torsion_free_gamma_choice(cg, cg.preset.u, 50, 4);
    CHECK(conj.torsion.passed());
    CHECK(conj.vector_formula.passed());

    auto swap = Matrix::from_rows({{g(0), g(1), g(0)}, {g(1), g(0), g(0)}, {g(0), g(0), g(1)}}, exact);
    try {
        torsion_free_gamma_choice(geo, {swap, u2});
        FAIL("non-commuting E accepted");
    } catch (const CommutationViolation& e) {
        CHECK(std::string(e.what()).find("[E1,") != std::string::npos);
    }
    auto pv = geo.with_vector(Matrix::column({exact.rational(Rational(3, 5)), exact.rational(Rational(4, 5)), g(0)},
                                             exact));
    CHECK_THROWS_AS(torsion_free_gamma_choice(pv, {u1, u2}), NotEigenvector);
    CHECK_THROWS_AS(torsion_free_gamma_choice(geo, {u1}), RankMismatch);
}

TEST_CASE("doubled star structure") {
    auto single = build_matrix_geometry({diag({g(1), g(0, 1)})}, exact);
    auto sigma = doubled_star_algebra(single);
    CHECK(sigma.size() == 2);
    CHECK(sigma.iota_of(0) == 1);
    CHECK(st_star_structure_check(sigma).passed());
    for (const auto& x : sigma.derivations) CHECK(leibniz_check(sigma.algebra, x, 100, 42).passed());

    auto rng = sample_rng(9, 0);
    auto us = random_commuting_unitaries(3, 2, exact, rng);
    auto geo = build_matrix_geometry(us, exact);
    auto doubled = doubled_star_algebra(geo);
    CHECK(st_star_structure_check(doubled).passed());
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto r = sample_rng(10, k);
        Matrix a = random_matrix(3, 3, exact, r);
        for (std::size_t i = 0; i < 2; ++i) {
            // σ_a*(A) = σ_a(A) and X_a* = X_a, so the tangent space is unchanged.
            CHECK(doubled.derivations[i].sigma(a.adjoint()).adjoint() == doubled.derivations[i].sigma(a));
            CHECK(doubled.derivations[i](a.adjoint()).adjoint() == doubled.derivations[i](a));
            CHECK(doubled.derivations[i + 2](a) == doubled.derivations[i](a));
        }
    }
    // Swapping ι breaks the star structure.
    MatrixSigma wrong(doubled.algebra, doubled.derivations, std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(st_star_structure_check(wrong).failed());

    auto non_unitary = build_matrix_geometry({diag({g(2), g(1)})}, exact);
    CHECK_THROWS_AS(doubled_star_algebra(non_unitary), NotUnitary);
}

TEST_CASE("regularity search") {
    auto geo = build_matrix_geometry({diag({g(1), g(-1)})}, exact);
    auto off = Matrix::from_rows({{g(0), g(1)}, {g(1), g(0)}}, exact);
    CHECK(geo.preset.sigma.derivations[0](off) == g(2) * off);
    CHECK(geo.preset.sigma.derivations[0](off).determinant() == g(-4));
    auto report = regularity_check(geo, 42);
    CHECK(report.regular());
    REQUIRE(report.witness[0].has_value());
    CHECK_FALSE(geo.preset.sigma.derivations[0](*report.witness[0]).determinant().is_zero());
    // Elementary matrices have rank one, so for N ≥ 2 the witness comes from the random stage.
    CHECK(report.source[0].rfind("random", 0) == 0);

    auto identity = build_matrix_geometry({Matrix::identity(2, exact)}, exact);
    auto none = regularity_check(identity, 42);
    CHECK_FALSE(none.regular());
    CHECK(none.summary().find("not found within budget") != std::string::npos);

    // Mat_1 is commutative, so every inner derivation vanishes.
    auto one = build_matrix_geometry({diag({g(0, 1)})}, exact);
    CHECK_FALSE(regularity_check(one).regular());

    for (std::uint64_t k = 0; k < 10; ++k) {
        auto rng = sample_rng(11, k);
        auto us = random_commuting_unitaries(3, 1, ScalarField(ScalarKind::Float), rng);
        CHECK(regularity_check(build_matrix_geometry(us, ScalarField(ScalarKind::Float)), k).regular());
    }
}

TEST_CASE("unique connection on a regular geometry") {
    auto u1 = diag({g(1), g(0, 1), g(-1)});
    auto u2 = diag({g(0, -1), g(-1), g(1)});
    auto geo = build_matrix_geometry({u1, u2}, exact);
    auto reg = regularity_check(geo, 1);
    REQUIRE(reg.regular());
    auto unique = unique_regular_connection(geo, reg, 100, 42);
    CHECK(unique.product_rules.passed());

    // Another witness gives the same connection.
    auto reg2 = regularity_check(geo, 77);
    REQUIRE(reg2.regular());
    auto other = unique_regular_connection(geo, reg2, 10, 1);
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto rng = sample_rng(12, k);
        Matrix a = random_matrix(3, 3, exact, rng);
        for (std::size_t i = 0; i < 4; ++i) CHECK(unique.connection(i, {a})[0] == other.connection(i, {a})[0]);
    }

    CHECK(injected_gamma_check(geo, reg, {Matrix(3, 3, exact), Matrix(3, 3, exact)}).passed());
    for (std::uint64_t k = 0; k < 20; ++k) {
        auto rng = sample_rng(13, k);
        Matrix gt(3, 3, exact);
        while (gt.is_zero()) gt = random_matrix(3, 3, exact, rng);
        auto v = injected_gamma_check(geo, reg, {Matrix(3, 3, exact), gt});
        CHECK(v.failed());
        CHECK(v.witness.find("X2") != std::string::npos);
        CHECK(v.witness.find("recovered") == std::string::npos);
    }

    // Torsion-free for φ(X_k) = E_k with [E_b, U_a] = 0.
    auto e1m = diag({g(2), g(1), g(3)});
    auto e2m = diag({g(1, 1), g(0), g(1)});
    AnchorMap<MatrixAlgebra> anchor{{{e1m}, {e2m}, {e1m}, {e2m}}};
    CHECK(torsion_check(unique.connection, LieStructure::flip(4, exact), anchor).passed());
    auto swap = Matrix::from_rows({{g(0), g(1), g(0)}, {g(1), g(0), g(0)}, {g(0), g(0), g(1)}}, exact);
    AnchorMap<MatrixAlgebra> bad{{{swap}, {e2m}, {swap}, {e2m}}};
    CHECK(torsion_check(unique.connection, LieStructure::flip(4, exact), bad).failed());

    auto identity = build_matrix_geometry({Matrix::identity(2, exact)}, exact);
    CHECK_THROWS_AS(unique_regular_connection(identity, regularity_check(identity)), NotRegular);
}

TEST_CASE("matrix Levi-Civita connections") {
    auto u1 = diag({g(1), g(0, 1), g(-1)});
    auto u2 = diag({g(0, -1), g(-1), g(1)});
    auto geo = build_matrix_geometry({u1, u2}, exact);
    auto one = Matrix::identity(3, exact);

    auto full = matrix_levi_civita(geo, one, LeviCivitaMode::Full, {}, 200, 42);
    CHECK(full.verdict.passed());
    auto h0 = diag({g(2), g(1), g(5)});
    CHECK(matrix_levi_civita(geo, h0, LeviCivitaMode::Full, {}, 50, 1).verdict.passed());

    auto pg = geo.with_vector(e1(3));
    auto vec = matrix_levi_civita(pg, one, LeviCivitaMode::Vector, {}, 200, 42);
    CHECK(vec.verdict.passed());
    CHECK(matrix_levi_civita(pg, h0, LeviCivitaMode::Vector, {diag({g(3), g(1), g(1)}), u2}, 50, 2).verdict.passed());

    auto cg = eigen_geometry();
    CHECK(matrix_levi_civita(cg, Matrix::identity(3, exact), LeviCivitaMode::Vector, {}, 100, 5).verdict.passed());
    CHECK(matrix_levi_civita(cg, Matrix::identity(3, exact), LeviCivitaMode::Full, {}, 100, 5).verdict.passed());

    auto mixing = Matrix::from_rows({{g(1), g(0, 1), g(0)}, {g(0, -1), g(1), g(0)}, {g(0), g(0), g(1)}}, exact);
    try {
        matrix_levi_civita(geo, mixing, LeviCivitaMode::Full);
        FAIL("non-invariant h0 accepted");
    } catch (const NonInvariantForm& e) {
        CHECK(std::string(e.what()).find("[U1,h0]") != std::string::npos);
    }
    auto geo2 = build_matrix_geometry({diag({g(1), g(1), g(-1)})}, exact);
    auto h_block = Matrix::from_rows({{g(1), g(0, 1), g(0)}, {g(0, -1), g(2), g(0)}, {g(0), g(0), g(1)}}, exact);
    try {
        matrix_levi_civita(geo2.with_vector(e1(3)), h_block, LeviCivitaMode::Vector);
        FAIL("[h0, p] ≠ 0 accepted");
    } catch (const CommutationViolation& e) {
        CHECK(std::string(e.what()).find("[h0,p]") != std::string::npos);
    }
    CHECK_THROWS_AS(matrix_levi_civita(geo, one, LeviCivitaMode::Vector), MissingProjector);
    CHECK_THROWS_AS(matrix_levi_civita(geo, diag({g(1), g(0, 1), g(1)}), LeviCivitaMode::Full), PreconditionFailed);
    auto nonu = build_matrix_geometry({diag({g(2), g(1), g(1)})}, exact);
    CHECK_THROWS_AS(matrix_levi_civita(nonu, one, LeviCivitaMode::Full), NotUnitary);

    // The compatibility half catches a connection that is not X̃.
    auto perturbed = MatrixConnection(full.connection.module(),
                                      {{{one}}, {{Matrix(3, 3, exact)}}, {{Matrix(3, 3, exact)}}, {{Matrix(3, 3, exact)}}});
    auto v = levi_civita_check(perturbed, full.lie, full.anchor, full.form, 20, 1);
    CHECK(v.failed());
}

TEST_CASE("float geometries run the same paths") {
    const ScalarField fl(ScalarKind::Float);
    auto rng = sample_rng(14, 0);
    auto us = random_commuting_unitaries(3, 2, fl, rng);
    auto geo = build_matrix_geometry(us, fl);
    auto one = Matrix::identity(3, fl);
    CHECK(st_star_structure_check(doubled_star_algebra(geo)).passed());
    CHECK(matrix_levi_civita(geo, one, LeviCivitaMode::Full, {}, 50, 1).verdict.passed());
    auto reg = regularity_check(geo, 3);
    REQUIRE(reg.regular());
    CHECK(unique_regular_connection(geo, reg, 50, 1).product_rules.passed());
}

}  // TEST_SUITE
