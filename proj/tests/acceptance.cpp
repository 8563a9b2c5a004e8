// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Oracles are written out here rather than taken from the library's closed forms.

#include "taugeo/error.hpp"
#include "taugeo/matrix_geometry.hpp"
#include "taugeo/sphere.hpp"
#include "taugeo/worked.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace taugeo;

namespace {

// Pinned tolerances and budgets.
constexpr double kFloatTolerance = 1e-9;
constexpr double kWorkedBudgetSeconds = 1.0;
constexpr double kMatrixBudgetSeconds = 10.0;
constexpr double kSphereBudgetSeconds = 60.0;
constexpr std::size_t kInstances = 50;
constexpr std::size_t kTables = 20;
constexpr std::size_t kSamples = 200;
constexpr std::uint64_t kSeed = 42;

using Vec = std::vector<AlgebraElement>;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void require(const Verdict& v, const std::string& what) {
        require(v.passed(), what + ": " + (v.witness.empty() ? to_string(v.status) : v.witness));
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && seconds > budget_seconds)
        out.require(false, "took " + std::to_string(seconds) + " s, budget " + std::to_string(budget_seconds) + " s");
    if (!out.ok) ++failures;
    std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", id, out.ok ? "PASS" : "FAIL", title.c_str(), seconds,
                out.detail.empty() ? "" : "  -- ", out.detail.c_str());
    std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// q-plane oracle: expected values assembled from element text and [k]_q = 1 + q + ... + q^(k-1).

AlgebraElement el(const QPlane& qp, const std::string& text) { return parse_element(qp.pres, text); }

AlgebraElement mono(const QPlane& qp, int n, int m) {
    return el(qp, "x^" + std::to_string(n) + "*y^" + std::to_string(m));
}

AlgebraElement q_power(const QPlane& qp, int k) { return el(qp, "q^" + std::to_string(k)); }

AlgebraElement q_bracket(const QPlane& qp, int k) {
    AlgebraElement out(qp.pres);
    for (int j = 0; j < k; ++j) out = out + q_power(qp, j);
    return out;
}

Outcome worked_values(bool extended) {
    Outcome out;
    auto qp = build_qplane();
    AlgebraElement zero(qp.pres);
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m) {
            auto module = free_sigma_module(qp.sigma, 2);
            PlaneConnection::Gamma gamma = {{{zero, mono(qp, 0, m)}, module.zero()},
                                            {module.zero(), {mono(qp, n, 0), zero}}};
            auto nabla = connection_from_gamma(module, gamma);
            std::string at = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
            if (!extended) {
                Vec e1{-(q_power(qp, m) * mono(qp, n, m)), -(q_bracket(qp, m) * mono(qp, 0, m - 1))};
                Vec e2{q_bracket(qp, n) * mono(qp, n - 1, 0), q_power(qp, n) * mono(qp, n, m)};
                out.require(module.equal(curvature(nabla, qp.lie, 0, 1, module.basis(0)), e1), "Curv e1" + at);
                out.require(module.equal(curvature(nabla, qp.lie, 0, 1, module.basis(1)), e2), "Curv e2" + at);
            } else {
                Vec xy{mono(qp, 1, 1), zero};
                Vec want{-(q_power(qp, m + 2) * mono(qp, n + 1, m + 1)),
                         -(q_power(qp, 2) * q_bracket(qp, m) * mono(qp, 1, m))};
                out.require(module.equal(curvature(nabla, qp.lie, 0, 1, xy), want), "Curv xy e1" + at);
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// matrix oracle: U_aU_b (Ap) [U_b⁻¹Γ_b p, U_a⁻¹Γ_a p], evaluated here.

Matrix oracle_closed_form(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a, std::size_t b,
                          const Matrix& m) {
    const Matrix& p = g.p();
    Matrix lb = g.u(b).inverse() * gamma[b] * p;
    Matrix la = g.u(a).inverse() * gamma[a] * p;
    return g.u(a) * g.u(b) * (m * p) * (lb * la - la * lb);
}

/// Definition: ∇_a∇_b − ∇_b∇_a under the flip structure, on the projective connection.
Matrix definition_curvature(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a, std::size_t b,
                            const Matrix& m) {
    auto nabla = projective_connection(g, gamma);
    return curvature(nabla, g.preset.lie, a, b, {m * g.p()})[0];
}

MatrixGeometry instance_projector(const MatrixGeometry& geo, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = geo.dimension();
    Matrix one = Matrix::identity(n, geo.field());
    if (k % 3 == 0) return geo.with_projector(one);
    Matrix v = random_unit_vector(n, geo.field(), rng);
    return k % 3 == 1 ? geo.with_vector(v) : geo.with_projector(one - v * v.adjoint());
}

Outcome matrix_oracle() {
    Outcome out;
    double worst = 0.0;
    for (auto kind : {ScalarKind::Gaussian, ScalarKind::Float}) {
        ScalarField field(kind, kFloatTolerance);
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t k = 0; k < kInstances; ++k) {
                auto rng = sample_rng(kSeed + n + (kind == ScalarKind::Float ? 100 : 0), k);
                auto us = kind == ScalarKind::Float ? random_commuting_unitaries(n, 2, field, rng)
                                                    : random_commuting_invertibles(n, 2, field, rng);
                auto geo = instance_projector(build_matrix_geometry(us, field), k, rng);
                std::vector<Matrix> gamma{random_matrix(n, n, field, rng), random_matrix(n, n, field, rng)};
                Matrix m = random_matrix(n, n, field, rng);
                std::uniform_int_distribution<std::size_t> idx(0, 1);
                std::size_t a = idx(rng), b = idx(rng);
                Matrix lhs = oracle_closed_form(geo, gamma, a, b, m);
                Matrix rhs = definition_curvature(geo, gamma, a, b, m);
                std::string at = "N=" + std::to_string(n) + " k=" + std::to_string(k);
                if (kind == ScalarKind::Float) {
                    double diff = (lhs - rhs).max_abs();
                    worst = std::max(worst, diff);
                    out.require(diff <= kFloatTolerance, "float difference " + std::to_string(diff) + " at " + at);
                } else {
                    out.require(lhs == rhs, "exact mismatch at " + at);
                }
            }
    }
    if (out.ok) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "300 instances, float max-abs %.2e", worst);
        out.detail = buf;
    }
    return out;
}

Outcome rank_one_flat() {
    Outcome out;
    ScalarField field(ScalarKind::Gaussian);
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t k = 0; k < kInstances; ++k) {
            auto rng = sample_rng(kSeed + 50 + n, k);
            auto us = random_commuting_invertibles(n, 2, field, rng);
            auto geo = build_matrix_geometry(us, field).with_vector(random_unit_vector(n, field, rng));
            std::vector<Matrix> gamma{random_matrix(n, n, field, rng), random_matrix(n, n, field, rng)};
            Matrix m = random_matrix(n, n, field, rng);
            out.require(definition_curvature(geo, gamma, 0, 1, m).is_zero(),
                        "nonzero curvature at N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    return out;
}

ScalarField exact_field() { return ScalarField(ScalarKind::Gaussian); }

MatrixGeometry phase_geometry() {
    auto f = exact_field();
    return build_matrix_geometry({phase_diagonal({0, 1, 2}, f), phase_diagonal({3, 2, 0}, f)}, f);
}

Outcome regular_uniqueness() {
    Outcome out;
    auto g = phase_geometry();
    auto reg = regularity_check(g, kSeed);
    out.require(reg.regular(), "regularity: " + reg.summary());
    if (!out.ok) return out;
    out.require(unique_regular_connection(g, reg, kSamples, kSeed).product_rules, "product rules for X~");
    const auto& alg = g.preset.algebra;
    out.require(injected_gamma_check(g, reg, {alg.zero(), alg.zero()}), "zero Γ~");
    for (std::size_t k = 0; k < kTables; ++k) {
        auto rng = sample_rng(kSeed + 5, k);
        std::vector<Matrix> gt{alg.zero(), alg.zero()};
        while (gt[k % 2].is_zero()) gt[k % 2] = alg.random_element(rng);
        auto v = injected_gamma_check(g, reg, gt);
        out.require(v.failed() && !v.witness.empty(), "injected Γ~ #" + std::to_string(k) + " not detected");
    }
    return out;
}

Outcome levi_civita() {
    Outcome out;
    auto g = phase_geometry();
    auto f = exact_field();
    Matrix one = Matrix::identity(3, f);
    out.require(matrix_levi_civita(g, one, LeviCivitaMode::Full, {}, kSamples, kSeed).verdict, "full mode");
    Matrix v0(3, 1, f);
    v0(0, 0) = f.one();
    auto gv = g.with_vector(v0);
    auto lc = matrix_levi_civita(gv, one, LeviCivitaMode::Vector, {}, kSamples, kSeed);
    out.require(lc.verdict, "vector mode");
    // ∇_a v = (1 − μ̄_a U_a)v with μ_a = (U_a)_11 for v0 = e1, on both index copies.
    for (std::size_t k = 0; k < kInstances; ++k) {
        auto rng = sample_rng(kSeed + 6, k);
        Matrix v = random_matrix(3, 1, f, rng);
        for (std::size_t a = 0; a < 2; ++a) {
            Matrix want = v - g.u(a)(0, 0).conj() * (g.u(a) * v);
            for (std::size_t idx : {a, a + 2})
                out.require(lc.connection(idx, {v * v0.adjoint()})[0] * v0 == want,
                            "vector formula at index " + std::to_string(idx));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

Outcome sphere_suite() {
    Outcome out;
    auto solved = solve_x_table();
    out.require(solved.dimension == 1, "solver space is not one-dimensional");
    auto s = build_sphere(solved.table);
    auto alg = s.algebra();
    out.require(st_star_structure_check(s.sigma), "Y_a* = Y_a");
    for (const auto& y : s.sigma.derivations) out.require(leibniz_check(alg, y, kSamples, kSeed), "Leibniz " + y.name);
    out.require(twisted_commutator_check(s.x_plus, s.x_minus, s.x_z), "twisted commutators");
    out.require(bimodule_relation_check(s, kSamples, kSeed), "η_a f = K^n(f) η_a");
    out.require(k_hat_check(s, kSamples, kSeed), "K̂");
    out.require(module_law_check(s.omega, kSamples, kSeed), "Ω¹ laws");
    return out;
}

Outcome closure() {
    Outcome out;
    auto qp = build_qplane();
    auto alg = qp.algebra();
    auto star_module = free_sigma_module(qp.doubled(), 2).with_star();
    HermitianForm<PresentedAlgebra> h(alg, {{el(qp, "2"), el(qp, "i")}, {el(qp, "-i"), el(qp, "1")}});
    auto plain = free_sigma_module(qp.sigma, 2);
    AnchorMap<PresentedAlgebra> phi{{plain.basis(0), Vec{el(qp, "x"), el(qp, "1")}}};
    for (std::size_t k = 0; k < kTables && out.ok; ++k) {
        auto rng = sample_rng(kSeed + 8, k);
        auto nabla = metric_connection_free(star_module, h, random_metric_gamma(star_module, rng));
        out.require(metric_compat_check(nabla, h, CompatMode::Generators, kSamples, k), "q-plane metric, generators");
        out.require(metric_compat_check(nabla, h, CompatMode::Random, kSamples, k), "q-plane metric, random");
        auto tf = torsion_free_construct(plain, qp.lie, phi, random_torsion_table(alg, 2, rng));
        out.require(torsion_check(tf, qp.lie, phi), "q-plane torsion-free");
    }
    auto g = phase_geometry();
    const auto& malg = g.preset.algebra;
    auto mstar = free_sigma_module(doubled_star_algebra(g), 2).with_star();
    auto mh = HermitianForm<MatrixAlgebra>::identity(malg, 2);
    auto mplain = free_sigma_module(g.preset.sigma, 2);
    AnchorMap<MatrixAlgebra> mphi{{mplain.basis(0), mplain.basis(1)}};
    for (std::size_t k = 0; k < kTables && out.ok; ++k) {
        auto rng = sample_rng(kSeed + 9, k);
        auto nabla = metric_connection_free(mstar, mh, random_metric_gamma(mstar, rng));
        out.require(metric_compat_check(nabla, mh, CompatMode::Generators, kSamples, k), "matrix metric, generators");
        out.require(metric_compat_check(nabla, mh, CompatMode::Random, kSamples, k), "matrix metric, random");
        auto tf = torsion_free_construct(mplain, g.preset.lie, mphi, random_torsion_table(malg, 2, rng));
        out.require(torsion_check(tf, g.preset.lie, mphi), "matrix torsion-free");
    }
    return out;
}

void expect_detected(Outcome& out, const Verdict& v, const std::string& what) {
    out.require(v.failed() && !v.witness.empty(), "negative control not detected: " + what);
}

Outcome structural() {
    Outcome out;
    // q-plane
    auto qp = build_qplane();
    auto qalg = qp.algebra();
    for (const auto& x : qp.sigma.derivations) out.require(leibniz_check(qalg, x, kSamples, kSeed), "q-plane Leibniz");
    out.require(lie_structure_check(qp.sigma, qp.lie, kSamples, kSeed), "q-plane Lie");
    auto qmod = free_sigma_module(qp.doubled(), 2).with_star();
    out.require(module_law_check(qmod, kSamples, kSeed), "q-plane module");
    out.require(hermitian_axiom_check(HermitianForm<PresentedAlgebra>::identity(qalg, 2), qmod, kSamples, kSeed),
                "q-plane hermitian");
    auto qid = Endomorphism::identity(qp.pres);
    expect_detected(
        out, leibniz_check(qalg, qp.sigma.derivations[0], kSamples, kSeed, as_map(qid), as_map(qid)), "q-plane types");
    auto broken = qp.lie;
    broken.r(0, 1, 1, 0) = qp.pres->field().integer(2);
    expect_detected(out, lie_structure_check(qp.sigma, broken, kSamples, kSeed), "q-plane R");

    // shift line
    auto line = build_shift_line(Rational(3, 2));
    auto lalg = line.sigma_alg.algebra;
    const auto& d = line.sigma_alg.derivations[0];
    out.require(leibniz_check(lalg, d, kSamples, kSeed), "shift Leibniz");
    out.require(lie_structure_check(line.sigma_alg, LieStructure::flip(1, line.pres->field()), kSamples, kSeed),
                "shift Lie");
    auto lmod = free_sigma_module(line.sigma_alg, 2);
    out.require(module_law_check(lmod, kSamples, kSeed), "shift module");
    out.require(hermitian_axiom_check(HermitianForm<PresentedAlgebra>::identity(lalg, 2), lmod, kSamples, kSeed),
                "shift hermitian");
    auto lid = Endomorphism::identity(line.pres);
    expect_detected(out, leibniz_check(lalg, d, kSamples, kSeed, as_map(lid), as_map(lid)),
                                      "shift types");

    // matrices
    auto g = phase_geometry();
    const auto& malg = g.preset.algebra;
    for (const auto& x : g.preset.sigma.derivations) out.require(leibniz_check(malg, x, kSamples, kSeed), "matrix Leibniz");
    out.require(lie_structure_check(g.preset.sigma, g.preset.lie, kSamples, kSeed), "matrix Lie");
    auto mmod = free_sigma_module(doubled_star_algebra(g), 1).with_star();
    out.require(module_law_check(mmod, kSamples, kSeed), "matrix module");
    out.require(hermitian_axiom_check(HermitianForm<MatrixAlgebra>::identity(malg, 1), mmod, kSamples, kSeed),
                "matrix hermitian");
    Map<Matrix> mid = [](const Matrix& m) { return m; };
    expect_detected(
        out, leibniz_check(malg, g.preset.sigma.derivations[0], kSamples, kSeed, mid, mid), "matrix types");
    auto mbroken = g.preset.lie;
    mbroken.r(0, 1, 1, 0) = exact_field().integer(2);
    expect_detected(out, lie_structure_check(g.preset.sigma, mbroken, kSamples, kSeed), "matrix R");

    // sphere
    auto s = build_sphere(solve_x_table().table);
    auto salg = s.algebra();
    for (const auto& y : s.sigma.derivations) out.require(leibniz_check(salg, y, kSamples, kSeed), "sphere Leibniz");
    out.require(module_law_check(s.omega, kSamples, kSeed), "sphere module");
    out.require(hermitian_axiom_check(HermitianForm<PresentedAlgebra>::identity(salg, 3), s.omega, kSamples, kSeed),
                "sphere hermitian");
    auto sid = Endomorphism::identity(s.pres);
    expect_detected(
        out, leibniz_check(salg, s.sigma.derivations[0], kSamples, kSeed, as_map(sid), as_map(sid)), "sphere types");
    auto scaled = solve_x_table().table;
    for (auto& v : scaled.z) v = parse_element(s.pres, "2") * v;
    bool rejected = false;
    try {
        build_sphere(scaled);
    } catch (const InvalidActionTable&) {
        rejected = true;
    }
    out.require(rejected, "negative control not detected: scaled sphere table");
    return out;
}

}  // namespace

int main() {
    criterion(1, "q-plane worked curvature on e1, e2 for 1 <= n, m <= 4", kWorkedBudgetSeconds,
              [] { return worked_values(false); });
    criterion(2, "q-plane curvature on xy e1 for 1 <= n, m <= 4", 0, [] { return worked_values(true); });
    criterion(3, "matrix closed-form curvature equals the definition (exact and float <= 1e-9)", kMatrixBudgetSeconds,
              matrix_oracle);
    criterion(4, "rank-one projectors give zero curvature", 0, rank_one_flat);
    criterion(5, "regular uniqueness and injected Γ~ witnesses", 0, regular_uniqueness);
    criterion(6, "matrix Levi-Civita, full and vector modes", 0, levi_civita);
    criterion(7, "quantum sphere structure suite", kSphereBudgetSeconds, sphere_suite);
    criterion(8, "metric and torsion-free constructions pass their checkers (q-plane, matrix)", 0, closure);
    criterion(9, "structural laws at 200 samples per preset and negative controls", 0, structural);
    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
