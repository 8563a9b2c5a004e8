#include "suites.hpp"

#include "taugeo/error.hpp"
#include "taugeo/matrix_geometry.hpp"
#include "taugeo/sphere.hpp"
#include "taugeo/worked.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace taugeo::cli {

namespace {

using PlaneVec = std::vector<AlgebraElement>;
using MatrixVec = std::vector<Matrix>;
template <class E>
using Table3 = std::vector<std::vector<std::vector<E>>>;

constexpr std::size_t kClosureTables = 20;
constexpr std::size_t kOracleInstances = 50;

class Runner {
public:
    Runner(const RunConfig& cfg, Report& report) : cfg_(cfg), report_(report) {}

    const RunConfig& cfg() const { return cfg_; }
    bool injected(const std::string& what) const {
        return std::find(cfg_.inject.begin(), cfg_.inject.end(), what) != cfg_.inject.end();
    }

    void check(const std::string& name, const std::string& anchor, const std::function<Verdict()>& body) {
        run(name, anchor, body, false);
    }

    /// Passes when body fails (or throws a library error) with a witness.
    void negative(const std::string& name, const std::string& anchor, const std::function<Verdict()>& body) {
        run(name, anchor, body, true);
    }

    void skip(const std::string& name, const std::string& anchor, const std::string& note) {
        if (!selected(name)) return;
        report_.checks.push_back({name, anchor, "skipped", note, 0, 0.0});
    }

    void note(const std::string& line) { report_.notes.push_back(line); }

private:
    bool selected(const std::string& name) const {
        if (cfg_.suites.empty()) return true;
        for (const auto& prefix : cfg_.suites) {
            std::string full = prefix.rfind(cfg_.preset + ".", 0) == 0 ? prefix : cfg_.preset + "." + prefix;
            if (name == full || name.rfind(full + ".", 0) == 0) return true;
        }
        return false;
    }

    void run(const std::string& name, const std::string& anchor, const std::function<Verdict()>& body,
             bool expect_failure) {
        if (!selected(name)) return;
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = body();
        } catch (const Error& e) {
            v = Verdict::fail(std::string("error: ") + e.what(), 0);
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        CheckRecord rec{name, anchor, to_string(v.status), v.witness, v.cases, ms};
        if (expect_failure && v.status != Status::Skipped) {
            if (v.failed() && !v.witness.empty()) {
                rec.status = "pass";
                rec.witness = "detected: " + v.witness;
            } else {
                rec.status = "fail";
                rec.witness = "corrupted input was not detected";
            }
        }
        if (rec.status == "fail" && rec.witness.empty()) rec.witness = "(check failed without a witness)";
        report_.checks.push_back(std::move(rec));
    }

    const RunConfig& cfg_;
    Report& report_;
};

template <AlgebraModel Alg>
Connection<Alg> corrupt(const Connection<Alg>& nabla, const typename Alg::Element& delta) {
    auto gamma = nabla.gamma();
    gamma[0][0][0] = gamma[0][0][0] + delta;
    return Connection<Alg>(nabla.module(), gamma);
}

template <AlgebraModel Alg>
typename Connection<Alg>::Gamma random_gamma(const SigmaModule<Alg>& module, std::mt19937_64& rng) {
    typename Connection<Alg>::Gamma gamma(module.indices());
    for (auto& row : gamma)
        for (std::size_t i = 0; i < module.rank(); ++i) row.push_back(module.random_element(rng));
    return gamma;
}

std::string label(const std::string& base, std::size_t index) { return base + std::to_string(index + 1); }

// ---------------------------------------------------------------------------
// q-plane

HermitianForm<PresentedAlgebra> unimodular_plane_form(const QPlane& qp) {
    auto el = [&](const char* t) { return parse_element(qp.pres, t); };
    return HermitianForm<PresentedAlgebra>(qp.algebra(), {{el("2"), el("i")}, {el("-i"), el("1")}});
}

Verdict worked_curvature(const QPlane& qp, int max_n, int max_m, bool corrupted, bool extended) {
    std::size_t cases = 0;
    for (int n = 1; n <= max_n; ++n)
        for (int m = 1; m <= max_m; ++m) {
            auto nabla = qplane_worked_connection(qp, n, m);
            if (corrupted) nabla = corrupt(nabla, parse_element(qp.pres, "x"));
            const auto& module = nabla.module();
            auto expected = qplane_worked_expected(qp, n, m);
            std::vector<std::pair<std::string, std::pair<PlaneVec, PlaneVec>>> cmp;
            if (extended) {
                PlaneVec xy_e1{plane_monomial(qp, 1, 1), AlgebraElement(qp.pres)};
                cmp.push_back({"xy e1", {curvature(nabla, qp.lie, 0, 1, xy_e1), expected.on_xy_e1}});
            } else {
                cmp.push_back({"e1", {curvature(nabla, qp.lie, 0, 1, module.basis(0)), expected.on_e1}});
                cmp.push_back({"e2", {curvature(nabla, qp.lie, 0, 1, module.basis(1)), expected.on_e2}});
            }
            for (const auto& [where, values] : cmp) {
                ++cases;
                if (!module.equal(values.first, values.second))
                    return Verdict::fail("n = " + std::to_string(n) + ", m = " + std::to_string(m) + ": Curv(X1,X2)(" +
                                             where + ") = " + module.render(values.first) + ", expected " +
                                             module.render(values.second),
                                         cases);
            }
        }
    return Verdict::pass(cases);
}

void qplane_suite(Runner& r) {
    const auto& cfg = r.cfg();
    const std::size_t samples = cfg.samples;
    const std::uint64_t seed = cfg.seed;
    const bool inj = r.injected("gamma");
    auto qp = build_qplane();
    auto alg = qp.algebra();
    auto el = [&](const char* t) { return parse_element(qp.pres, t); };
    const std::string leibniz_anchor = "X(fg) = σ(f)X(g) + X(f)τ(g)";

    for (std::size_t a = 0; a < qp.sigma.size(); ++a)
        r.check(label("qplane.leibniz.X", a), leibniz_anchor,
                [&] { return leibniz_check(alg, qp.sigma.derivations[a], samples, seed); });
    r.check("qplane.lie_structure", "R² = id, R_ab^pq C_pq^r = −C_ab^r, X_aX_b − R_ab^pq X_pX_q = C_ab^c X_c",
            [&] { return lie_structure_check(qp.sigma, qp.lie, samples, seed); });
    auto doubled = qp.doubled();
    r.check("qplane.star_structure", "X_a* = X_ι(a), σ_ι(a) = τ_a*", [&] { return st_star_structure_check(doubled); });
    auto star_module = free_sigma_module(doubled, 2).with_star();
    r.check("qplane.module_laws", "σ̂_a(fm) = σ_a(f)σ̂_a(m), τ̂_a(fm) = τ_a(f)τ̂_a(m), (fmg)* = g*m*f*",
            [&] { return module_law_check(star_module, samples, seed); });
    auto h = unimodular_plane_form(qp);
    r.check("qplane.hermitian_axioms", "h(fm1, m2) = f h(m1, m2), h(m1, m2)* = h(m2, m1)",
            [&] { return hermitian_axiom_check(h, star_module, samples, seed); });

    r.check("qplane.curvature.worked",
            "Curv(X1,X2)e1 = −q^m x^n y^m e1 − [m]_q y^(m−1) e2, Curv(X1,X2)e2 = q^n x^n y^m e2 + [n]_q x^(n−1) e1",
            [&] { return worked_curvature(qp, cfg.n, cfg.m, inj, false); });
    r.check("qplane.curvature.extended", "Curv(X1,X2)(xy e1) = −q^(m+2) x^(n+1) y^(m+1) e1 − q² [m]_q x y^m e2",
            [&] { return worked_curvature(qp, cfg.n, cfg.m, inj, true); });

    auto plain = free_sigma_module(qp.sigma, 2);
    r.check("qplane.connection.leibniz", "∇_a(fm) = σ_a(f)∇_a m + X_a(f)τ̂_a(m)", [&] {
        auto rng = sample_rng(seed, 0);
        return connection_leibniz_check(connection_from_gamma(plain, random_gamma(plain, rng)), Side::Left, samples,
                                        seed);
    });

    AnchorMap<PresentedAlgebra> phi{{plain.basis(0), PlaneVec{el("x"), el("1")}}};
    r.check("qplane.closure.torsion_free", "T(X_a, X_b) = 0 for ∇φ(X_b) = (½C_ab^c + γ_ab^c)φ(X_c)", [&] {
        Verdict out = Verdict::pass(0);
        for (std::size_t k = 0; k < kClosureTables && !out.failed(); ++k) {
            auto rng = sample_rng(seed, 1000 + k);
            auto tilde = random_torsion_table(alg, 2, rng);
            out &= r_symmetry_check(alg, qp.lie, symmetrize_gamma(qp.lie, tilde));
            auto nabla = torsion_free_construct(plain, qp.lie, phi, tilde);
            if (inj) nabla = corrupt(nabla, el("x"));
            out &= torsion_check(nabla, qp.lie, phi);
        }
        return out;
    });
    r.check("qplane.closure.metric", "X_a h(m1, m2) = h(σ̂_a m1, ∇_ι(a) m2) + h(∇_a m1, σ̂_ι(a) m2)", [&] {
        Verdict out = Verdict::pass(0);
        for (std::size_t k = 0; k < kClosureTables && !out.failed(); ++k) {
            auto rng = sample_rng(seed, 2000 + k);
            auto nabla = metric_connection_free(star_module, h, random_metric_gamma(star_module, rng));
            if (inj) nabla = corrupt(nabla, el("x"));
            out &= metric_compat_check(nabla, h, CompatMode::Generators, samples, seed + k);
            out &= metric_compat_check(nabla, h, CompatMode::Random, samples, seed + k);
        }
        return out;
    });

    auto identity = Endomorphism::identity(qp.pres);
    r.negative("qplane.negative.wrong_types", "X1 with σ = τ = id is not a derivation", [&] {
        return leibniz_check(alg, qp.sigma.derivations[0], samples, seed, as_map(identity), as_map(identity));
    });
    r.negative("qplane.negative.broken_lie", "R with R_12^21 = 2 violates R² = id", [&] {
        auto broken = qp.lie;
        broken.r(0, 1, 1, 0) = qp.pres->field().integer(2);
        return lie_structure_check(qp.sigma, broken, samples, seed);
    });
    r.negative("qplane.negative.random_gamma_compat", "random Γ is not compatible with h", [&] {
        auto rng = sample_rng(seed, 3000);
        return metric_compat_check(connection_from_gamma(star_module, random_gamma(star_module, rng)), h,
                                   CompatMode::Generators, samples, seed);
    });
    r.negative("qplane.negative.asymmetric_torsion", "Γ_12 ≠ Γ_21 has torsion Γ_12 − Γ_21", [&] {
        auto rng = sample_rng(seed, 3001);
        auto gamma = random_gamma(plain, rng);
        gamma[1][0] = gamma[0][1];
        gamma[0][1] = gamma[0][1] + PlaneVec{el("x"), el("y^2")};
        AnchorMap<PresentedAlgebra> basis{{plain.basis(0), plain.basis(1)}};
        return torsion_check(connection_from_gamma(plain, gamma), qp.lie, basis);
    });
    r.negative("qplane.negative.corrupted_curvature", "corrupted Γ changes the worked curvature values",
               [&] { return worked_curvature(qp, cfg.n, cfg.m, true, false); });
}

// ---------------------------------------------------------------------------
// shift line

void shiftline_suite(Runner& r) {
    const auto& cfg = r.cfg();
    const std::size_t samples = cfg.samples;
    const std::uint64_t seed = cfg.seed;
    Scalar hbar = ScalarField(ScalarKind::Rational).parse(cfg.hbar);
    if (hbar.kind() != ScalarKind::Rational) throw ConfigError("shiftline.hbar must be rational");
    auto line = build_shift_line(hbar.get<Rational>());
    auto alg = line.sigma_alg.algebra;
    const auto& d = line.sigma_alg.derivations[0];

    r.check("shiftline.leibniz.d", "∂(fg) = f ∂g + ∂f τ(g)", [&] { return leibniz_check(alg, d, samples, seed); });
    r.check("shiftline.leibniz.swapped", "∂(fg) = τ(f) ∂g + ∂f g",
            [&] { return leibniz_check(alg, d, samples, seed, as_map(line.tau), as_map(line.sigma)); });
    r.check("shiftline.difference", "∂ = τ − σ, τ(t) = t + ℏ", [&] {
        Map<AlgebraElement> lhs = [&](const AlgebraElement& f) { return d(f); };
        Map<AlgebraElement> rhs = [&](const AlgebraElement& f) { return line.tau(f) - line.sigma(f); };
        return compare_maps(alg, lhs, rhs, samples, seed, "∂ vs τ − σ");
    });
    r.check("shiftline.lie_structure", "flip R with C = 0",
            [&] { return lie_structure_check(line.sigma_alg, LieStructure::flip(1, line.pres->field()), samples, seed); });
    auto module = free_sigma_module(line.sigma_alg, 2);
    r.check("shiftline.module_laws", "σ̂(fm) = σ(f)σ̂(m), τ̂(fm) = τ(f)τ̂(m)",
            [&] { return module_law_check(module, samples, seed); });
    auto h = HermitianForm<PresentedAlgebra>::identity(alg, 2);
    r.check("shiftline.hermitian_axioms", "h(fm1, m2) = f h(m1, m2), h(m1, m2)* = h(m2, m1)",
            [&] { return hermitian_axiom_check(h, module, samples, seed); });
    r.check("shiftline.connection.leibniz", "∇(fm) = σ(f)∇m + ∂f τ̂(m)", [&] {
        auto rng = sample_rng(seed, 0);
        return connection_leibniz_check(connection_from_gamma(module, random_gamma(module, rng)), Side::Left, samples,
                                        seed);
    });
    r.check("shiftline.connection.flat", "Γ = 0 gives ∇(f e_i) = ∂f e_i", [&] {
        auto nabla = zero_connection(module);
        if (r.injected("gamma")) nabla = corrupt(nabla, parse_element(line.pres, "t"));
        std::size_t cases = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            auto rng = sample_rng(seed, k);
            auto f = alg.random_element(rng);
            for (std::size_t i = 0; i < 2; ++i) {
                ++cases;
                auto lhs = nabla(0, module.left(f, module.basis(i)));
                auto rhs = module.left(d(f), module.basis(i));
                if (!module.equal(lhs, rhs))
                    return Verdict::fail("f = " + alg.render(f) + ": " + module.render(lhs) + " vs " + module.render(rhs),
                                         cases);
            }
        }
        return Verdict::pass(cases);
    });
    auto identity = Endomorphism::identity(line.pres);
    r.negative("shiftline.negative.wrong_types", "∂ with σ = τ = id is not a derivation",
               [&] { return leibniz_check(alg, d, samples, seed, as_map(identity), as_map(identity)); });
}

// ---------------------------------------------------------------------------
// matrices

Matrix parse_matrix(const MatrixText& text, const ScalarField& field) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& row : text) {
        rows.emplace_back();
        for (const auto& entry : row) rows.back().push_back(field.parse(entry));
    }
    return Matrix::from_rows(rows, field);
}

struct MatrixSetup {
    ScalarField field;
    MatrixGeometry geometry;
    MatrixGeometry with_v0;
    std::vector<Matrix> e;
    Matrix h0;
};

MatrixSetup matrix_setup(const RunConfig& cfg) {
    ScalarField field = cfg.scalar == "float" ? ScalarField(ScalarKind::Float, cfg.tolerance)
                                              : ScalarField(ScalarKind::Gaussian);
    try {
        std::vector<Matrix> u;
        if (cfg.matrix.u.empty()) {
            u = {phase_diagonal({0, 1, 2}, field), phase_diagonal({3, 2, 0}, field)};
        } else {
            for (const auto& m : cfg.matrix.u) u.push_back(parse_matrix(m, field));
        }
        auto geometry = build_matrix_geometry(u, field);
        const std::size_t n = geometry.dimension();
        Matrix v0(n, 1, field);
        if (cfg.matrix.v0.empty()) {
            v0(0, 0) = field.one();
        } else {
            if (cfg.matrix.v0.size() != n) throw ConfigError("matrix.v0 must have " + std::to_string(n) + " entries");
            for (std::size_t i = 0; i < n; ++i) v0(i, 0) = field.parse(cfg.matrix.v0[i]);
        }
        auto with_v0 = geometry.with_vector(v0);
        std::vector<Matrix> e;
        for (const auto& m : cfg.matrix.e) e.push_back(parse_matrix(m, field));
        Matrix h0 = cfg.matrix.h0.empty() ? Matrix::identity(n, field) : parse_matrix(cfg.matrix.h0, field);
        return {field, geometry, with_v0, e, h0};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("matrix configuration: ") + e.what());
    }
}

/// Projector for instance k: identity, rank one, or the complement of a rank-one projector.
MatrixGeometry instance_projector(const MatrixGeometry& geo, std::size_t k, std::mt19937_64& rng) {
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

std::vector<Matrix> random_matrices(std::size_t n, std::size_t count, const ScalarField& field, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < count; ++a) out.push_back(random_matrix(n, n, field, rng));
    return out;
}

bool close_enough(const Matrix& x, const Matrix& y, double tolerance, double& worst) {
    if (x.field().kind() != ScalarKind::Float) return x == y;
    double diff = (x - y).max_abs();
    worst = std::max(worst, diff);
    return diff <= tolerance;
}

Verdict curvature_oracle(const ScalarField& field, double tolerance, std::uint64_t seed, bool corrupted) {
    std::size_t cases = 0;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t k = 0; k < kOracleInstances; ++k) {
            auto rng = sample_rng(seed + n, k);
            auto us = field.kind() == ScalarKind::Float ? random_commuting_unitaries(n, 2, field, rng)
                                                        : random_commuting_invertibles(n, 2, field, rng);
            auto geo = instance_projector(build_matrix_geometry(us, field), k, rng);
            auto gamma = random_matrices(n, 2, field, rng);
            Matrix a = random_matrix(n, n, field, rng);
            std::uniform_int_distribution<std::size_t> idx(0, 1);
            std::size_t x = idx(rng), y = idx(rng);
            auto closed_gamma = gamma;
            if (corrupted) closed_gamma[0] = closed_gamma[0] + Matrix::identity(n, field);
            ++cases;
            Matrix closed = curvature_closed_form(geo, closed_gamma, x, y, a);
            Matrix direct = curvature_direct(geo, gamma, x, y, a);
            if (!close_enough(closed, direct, tolerance, worst))
                return Verdict::fail("N = " + std::to_string(n) + ", instance " + std::to_string(k) + ", (a,b) = (" +
                                         std::to_string(x + 1) + "," + std::to_string(y + 1) + "): closed form " +
                                         render(closed) + " vs direct " + render(direct),
                                     cases);
        }
    return Verdict::pass(cases);
}

Verdict rank_one_flatness(const ScalarField& field, double tolerance, std::uint64_t seed) {
    std::size_t cases = 0;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t k = 0; k < kOracleInstances; ++k) {
            auto rng = sample_rng(seed + 10 + n, k);
            auto us = field.kind() == ScalarKind::Float ? random_commuting_unitaries(n, 2, field, rng)
                                                        : random_commuting_invertibles(n, 2, field, rng);
            auto geo = build_matrix_geometry(us, field).with_vector(random_unit_vector(n, field, rng));
            auto gamma = random_matrices(n, 2, field, rng);
            Matrix a = random_matrix(n, n, field, rng);
            Matrix zero(n, n, field);
            for (const auto& value : {curvature_closed_form(geo, gamma, 0, 1, a), curvature_direct(geo, gamma, 0, 1, a)}) {
                ++cases;
                if (!close_enough(value, zero, tolerance, worst))
                    return Verdict::fail("N = " + std::to_string(n) + ", instance " + std::to_string(k) +
                                             ": Curv(X1,X2)A = " + render(value),
                                         cases);
            }
        }
    return Verdict::pass(cases);
}

void matrix_suite(Runner& r) {
    const auto& cfg = r.cfg();
    const std::size_t samples = cfg.samples;
    const std::uint64_t seed = cfg.seed;
    const bool inj = r.injected("gamma");
    auto setup = matrix_setup(cfg);
    const auto& g = setup.geometry;
    const auto& gv = setup.with_v0;
    const auto& field = setup.field;
    const auto& preset = g.preset;
    const auto& alg = preset.algebra;
    const std::size_t n_der = g.size();
    const auto& e = setup.e.empty() ? preset.u : setup.e;
    auto unitary_only = [](const std::function<Verdict()>& body) {
        return [body] {
            try {
                return body();
            } catch (const NotUnitary& e) {
                return Verdict::skipped(std::string("needs unitary U: ") + e.what());
            }
        };
    };

    for (std::size_t a = 0; a < n_der; ++a)
        r.check(label("matrix.leibniz.X", a), "X_a(AB) = U_aAU_a⁻¹ X_a(B) + X_a(A)B",
                [&] { return leibniz_check(alg, preset.sigma.derivations[a], samples, seed); });
    r.check("matrix.lie_structure", "flip R, C = 0: X_aX_b = X_bX_a",
            [&] { return lie_structure_check(preset.sigma, preset.lie, samples, seed); });
    r.check("matrix.star_structure", "X_a* = X_ι(a), σ_ι(a) = τ_a* on the doubled Σ*",
            unitary_only([&] { return st_star_structure_check(doubled_star_algebra(g)); }));
    r.check("matrix.module_laws.projective", "Mat_N p with σ̂_a = σ_a, τ̂_a = id",
            [&] { return module_law_check(matrix_module(gv), samples, seed); });
    r.check("matrix.module_laws.star", "free star module over the doubled Σ*", unitary_only([&] {
                return module_law_check(free_sigma_module(doubled_star_algebra(g), 1).with_star(), samples, seed);
            }));
    r.check("matrix.hermitian_axioms", "h(A, B) = A h0 B†", [&] {
        HermitianForm<MatrixAlgebra> h(alg, {{setup.h0}});
        if (auto defect = h.symmetry_defect()) return Verdict::fail("h0 is not hermitian", 0);
        return hermitian_axiom_check(h, free_sigma_module(preset.sigma, 1), samples, seed);
    });

    r.check("matrix.curvature.oracle", "Curv(X_a,X_b)A = U_aU_bA[U_b⁻¹Γ_b p, U_a⁻¹Γ_a p]",
            [&] { return curvature_oracle(field, cfg.tolerance, seed, inj); });
    r.check("matrix.curvature.rank_one_flat", "p = v0 v0† gives Curv(X_a,X_b)A = 0",
            [&] { return rank_one_flatness(field, cfg.tolerance, seed); });

    const MatrixGeometry& tf_geometry = gv.mu ? gv : g;
    r.check("matrix.torsion_free_choice", "Γ_a = 1 − E_a gives T(X_a, X_b) = 0 with φ(X_a) = E_a p", [&] {
        auto choice = torsion_free_gamma_choice(tf_geometry, e, samples, seed);
        if (!inj) return choice.torsion;
        return torsion_check(corrupt(choice.connection, alg.one()), preset.lie, choice.anchor);
    });
    r.check("matrix.torsion_free_choice.vector", "∇_a v = (1 − μ_a⁻¹(1 − λ_a)U_a)v", [&] {
        if (!gv.mu) return Verdict::skipped("v0 is not a common eigenvector of the U's");
        return torsion_free_gamma_choice(gv, e, samples, seed).vector_formula;
    });

    auto regularity = regularity_check(g, seed);
    r.check("matrix.regularity", "some B has det X_a(B) ≠ 0 for every a", [&] {
        return regularity.regular() ? Verdict::pass(n_der) : Verdict::fail(regularity.summary(), n_der);
    });
    r.check("matrix.unique_connection", "∇ = X̃ satisfies ∇_a(BA) = σ_a(B)∇_aA + X_a(B)A and B∇_aA + X_a(B)σ_a(A)",
            unitary_only([&] {
                if (!regularity.regular()) return Verdict::skipped("geometry is not regular");
                return unique_regular_connection(g, regularity, samples, seed).product_rules;
            }));
    auto nonzero_gamma = [&] {
        auto rng = sample_rng(seed, 4000);
        std::vector<Matrix> gamma(n_der, alg.zero());
        while (gamma.back().is_zero()) gamma.back() = alg.random_element(rng);
        return gamma;
    };
    r.check("matrix.unique_connection.gamma_zero", "X_a(B)Γ̃_a = 0 at a witness B forces Γ̃_a = 0", [&] {
        if (!regularity.regular()) return Verdict::skipped("geometry is not regular");
        return injected_gamma_check(g, regularity, inj ? nonzero_gamma() : std::vector<Matrix>(n_der, alg.zero()));
    });

    r.check("matrix.levi_civita.full", "∇ = X̃, φ(X_k) = E_k, h(A, B) = A h0 B†", unitary_only([&] {
                auto lc = matrix_levi_civita(g, setup.h0, LeviCivitaMode::Full, setup.e, samples, seed);
                if (!inj) return lc.verdict;
                return levi_civita_check(corrupt(lc.connection, alg.one()), lc.lie, lc.anchor, lc.form, samples, seed);
            }));
    r.check("matrix.levi_civita.vector", "∇_a v = (1 − μ̄_a U_a)v, φ(X_k) = λ_k p", unitary_only([&] {
                if (!gv.mu) return Verdict::skipped("v0 is not a common eigenvector of the U's");
                auto lc = matrix_levi_civita(gv, setup.h0, LeviCivitaMode::Vector, setup.e, samples, seed);
                if (!inj) return lc.verdict;
                return levi_civita_check(corrupt(lc.connection, gv.p()), lc.lie, lc.anchor, lc.form, samples, seed);
            }));

    r.check("matrix.closure.metric", "metric_connection_free output is compatible with h", unitary_only([&] {
                auto module = free_sigma_module(doubled_star_algebra(g), 2).with_star();
                auto h = HermitianForm<MatrixAlgebra>::identity(alg, 2);
                Verdict out = Verdict::pass(0);
                for (std::size_t k = 0; k < kClosureTables && !out.failed(); ++k) {
                    auto rng = sample_rng(seed, 2000 + k);
                    auto nabla = metric_connection_free(module, h, random_metric_gamma(module, rng));
                    if (inj) nabla = corrupt(nabla, alg.one());
                    out &= metric_compat_check(nabla, h, CompatMode::Generators, samples, seed + k);
                    out &= metric_compat_check(nabla, h, CompatMode::Random, samples, seed + k);
                }
                return out;
            }));
    r.check("matrix.closure.torsion_free", "torsion_free_construct output has zero torsion", [&] {
        auto module = free_sigma_module(preset.sigma, n_der);
        AnchorMap<MatrixAlgebra> phi;
        for (std::size_t i = 0; i < n_der; ++i) phi.images.push_back(module.basis(i));
        Verdict out = Verdict::pass(0);
        for (std::size_t k = 0; k < kClosureTables && !out.failed(); ++k) {
            auto rng = sample_rng(seed, 1000 + k);
            auto tilde = random_torsion_table(alg, n_der, rng);
            auto nabla = torsion_free_construct(module, preset.lie, phi, tilde);
            if (inj) nabla = corrupt(nabla, alg.one());
            out &= torsion_check(nabla, preset.lie, phi);
        }
        return out;
    });

    r.negative("matrix.negative.injected_gamma", "∇_aA = X_a(A) + σ_a(A)Γ̃_a with Γ̃ ≠ 0 breaks a product rule", [&] {
        if (!regularity.regular()) return Verdict::skipped("geometry is not regular");
        return injected_gamma_check(g, regularity, nonzero_gamma());
    });
    r.negative("matrix.negative.wrong_types", "X1 with σ = τ = id is not a derivation", [&] {
        Map<Matrix> id = [](const Matrix& m) { return m; };
        return leibniz_check(alg, preset.sigma.derivations[0], samples, seed, id, id);
    });
    r.negative("matrix.negative.broken_lie", "R with R_11^11 = 2 violates R² = id", [&] {
        auto broken = preset.lie;
        broken.r(0, 0, 0, 0) = field.integer(2);
        return lie_structure_check(preset.sigma, broken, samples, seed);
    });
    r.negative("matrix.negative.perturbed_levi_civita", "∇ ≠ X̃ fails the Levi-Civita conditions", unitary_only([&] {
                   auto lc = matrix_levi_civita(g, setup.h0, LeviCivitaMode::Full, setup.e, samples, seed);
                   return levi_civita_check(corrupt(lc.connection, alg.one()), lc.lie, lc.anchor, lc.form, samples,
                                            seed);
               }));
}

// ---------------------------------------------------------------------------
// sphere

struct SphereTable {
    std::optional<XActionTable> table;
    std::string source;
};

SphereTable sphere_table(const RunConfig& cfg) {
    auto pres = sphere_presentation();
    if (cfg.sphere.x_table) {
        const auto& t = *cfg.sphere.x_table;
        try {
            return {XActionTable::parse(pres, t[0], t[1], t[2]), "config"};
        } catch (const Error& e) {
            throw ConfigError(std::string("sphere.x_table: ") + e.what());
        }
    }
    if (cfg.sphere.solve) {
        Scalar phase = ScalarField(ScalarKind::Gaussian).parse(cfg.sphere.phase);
        auto report = solve_x_table(cfg.sphere.degree_bound, phase);
        return {report.table, "solver (dimension " + std::to_string(report.dimension) + ", |λ|² = " +
                                  render(report.modulus_squared) + ")"};
    }
    return {std::nullopt, ""};
}

XActionTable scaled_z(XActionTable table) {
    auto two = parse_element(sphere_presentation(), "2");
    for (auto& v : table.z) v = two * v;
    return table;
}

void sphere_suite(Runner& r) {
    const auto& cfg = r.cfg();
    const std::size_t samples = cfg.samples;
    const std::uint64_t seed = cfg.seed;
    const std::vector<std::pair<std::string, std::string>> checks = {
        {"sphere.x_table", "X tables respect every relation and the three twisted commutators"},
        {"sphere.star_structure", "Y_a* = Y_a, σ_a* = τ_a"},
        {"sphere.leibniz.Y1", "Y1(fg) = K⁻¹(f)Y1(g) + Y1(f)K(g)"},
        {"sphere.leibniz.Y2", "Y2(fg) = K⁻¹(f)Y2(g) + Y2(f)K(g)"},
        {"sphere.leibniz.Y3", "Y3(fg) = K⁻²(f)Y3(g) + Y3(f)K²(g)"},
        {"sphere.commutators", "X₋X₊ − q²X₊X₋ = X_z, q²X_zX₋ − q⁻²X₋X_z = (1+q²)X₋, q²X₊X_z − q⁻²X_zX₊ = (1+q²)X₊"},
        {"sphere.bimodule", "η_a f = K^(n_a)(f) η_a"},
        {"sphere.k_hat", "K̂(fmg) = K(f)K̂(m)K(g), K̂* = K̂⁻¹"},
        {"sphere.omega_laws", "Ω¹ is a Σ-*-bimodule"},
        {"sphere.differential_leibniz", "d(fg) = f dg + df g"},
        {"sphere.negative.broken_table", "X_z scaled by 2 violates X₋X₊ − q²X₊X₋ = X_z"},
        {"sphere.negative.wrong_types", "Y1 with σ = τ = id is not a derivation"},
    };
    auto skip_all = [&](std::size_t from, const std::string& note) {
        for (std::size_t i = from; i < checks.size(); ++i) r.skip(checks[i].first, checks[i].second, note);
    };
    auto source = sphere_table(cfg);
    if (!source.table) {
        skip_all(0, "no X table: set sphere.x_table or sphere.solve (--solve)");
        return;
    }
    XActionTable table = r.injected("table") ? scaled_z(*source.table) : *source.table;
    std::optional<Sphere> built;
    r.check(checks[0].first, checks[0].second, [&] {
        built = build_sphere(table);
        return Verdict::pass(1);
    });
    if (!built) {
        skip_all(1, "X table rejected");
        return;
    }
    const Sphere& s = *built;
    auto alg = s.algebra();
    r.check(checks[1].first, checks[1].second, [&] { return st_star_structure_check(s.sigma); });
    for (std::size_t a = 0; a < 3; ++a)
        r.check(checks[2 + a].first, checks[2 + a].second,
                [&] { return leibniz_check(alg, s.sigma.derivations[a], samples, seed); });
    r.check(checks[5].first, checks[5].second, [&] { return twisted_commutator_check(s.x_plus, s.x_minus, s.x_z); });
    r.check(checks[6].first, checks[6].second, [&] { return bimodule_relation_check(s, samples, seed); });
    r.check(checks[7].first, checks[7].second, [&] { return k_hat_check(s, samples, seed); });
    r.check(checks[8].first, checks[8].second, [&] { return module_law_check(s.omega, samples, seed); });
    r.check(checks[9].first, checks[9].second, [&] { return differential_leibniz_check(s, samples, seed); });
    r.negative(checks[10].first, checks[10].second, [&] {
        build_sphere(scaled_z(*source.table));
        return Verdict::pass(1);
    });
    auto identity = Endomorphism::identity(s.pres);
    r.negative(checks[11].first, checks[11].second, [&] {
        return leibniz_check(alg, s.sigma.derivations[0], samples, seed, as_map(identity), as_map(identity));
    });
}

Report start_report(const RunConfig& cfg) {
    Report report;
    report.config = cfg.echo();
    return report;
}

// ---------------------------------------------------------------------------
// demos

std::string power_text(const std::string& base, int k) {
    if (k == 0) return "";
    return k == 1 ? base : base + "^" + std::to_string(k);
}

/// Coefficient and monomial, e.g. term("-", 3, "", 2, 2) = "-q^3 x^2 y^2".
std::string term(const std::string& sign, int q_power, const std::string& qint, int x, int y) {
    std::vector<std::string> parts;
    if (!power_text("q", q_power).empty()) parts.push_back(power_text("q", q_power));
    if (!qint.empty()) parts.push_back(qint);
    if (!power_text("x", x).empty()) parts.push_back(power_text("x", x));
    if (!power_text("y", y).empty()) parts.push_back(power_text("y", y));
    std::string out = sign;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
    if (parts.empty()) out += "1";
    return out;
}

void qplane_demo(Runner& r) {
    const auto& cfg = r.cfg();
    const int n = cfg.n, m = cfg.m;
    auto qp = build_qplane();
    auto nabla = qplane_worked_connection(qp, n, m);
    const auto& module = nabla.module();
    auto expected = qplane_worked_expected(qp, n, m);
    const std::string mq = "[" + std::to_string(m) + "]_q", nq = "[" + std::to_string(n) + "]_q";
    r.note("q-plane, q = s^2, connection ∇_X1 e1 = " + term("", 0, "", 0, m) + " e2, ∇_X2 e2 = " + term("", 0, "", n, 0) +
           " e1 (n = " + std::to_string(n) + ", m = " + std::to_string(m) + ")");
    struct Line {
        std::string name, lhs, formula;
        PlaneVec arg, want;
    };
    std::vector<Line> lines = {
        {"demo.qplane.e1", "Curv(X1,X2)(e1)", term("-", m, "", n, m) + " e1 " + term("- ", 0, mq, 0, m - 1) + " e2",
         module.basis(0), expected.on_e1},
        {"demo.qplane.e2", "Curv(X1,X2)(e2)", term("", n, "", n, m) + " e2 " + term("+ ", 0, nq, n - 1, 0) + " e1",
         module.basis(1), expected.on_e2},
        {"demo.qplane.xy_e1", "Curv(X1,X2)(xy e1)",
         term("-", m + 2, "", n + 1, m + 1) + " e1 " + term("- ", 2, mq, 1, m) + " e2",
         PlaneVec{plane_monomial(qp, 1, 1), AlgebraElement(qp.pres)}, expected.on_xy_e1},
    };
    for (const auto& line : lines) {
        auto value = curvature(nabla, qp.lie, 0, 1, line.arg);
        bool ok = module.equal(value, line.want);
        r.note(line.lhs + " = " + line.formula);
        r.note("    computed: " + module.render(value) + (ok ? "  (matches)" : "  (MISMATCH)"));
        r.check(line.name, line.lhs + " = " + line.formula, [&] {
            return ok ? Verdict::pass(1) : Verdict::fail(module.render(value) + " vs " + module.render(line.want), 1);
        });
    }
}

void matrix_demo(Runner& r) {
    const auto& cfg = r.cfg();
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    ScalarField field = cfg.scalar == "float" ? ScalarField(ScalarKind::Float, cfg.tolerance)
                                              : ScalarField(ScalarKind::Gaussian);
    auto rng = sample_rng(cfg.seed, 0);
    auto us = random_commuting_unitaries(n, 2, field, rng);
    auto base = build_matrix_geometry(us, field);
    auto v0 = random_unit_vector(n, field, rng);
    auto gamma = random_matrices(n, 2, field, rng);
    Matrix a = random_matrix(n, n, field, rng);
    r.note("Mat_" + std::to_string(n) + ", ∇_a A = A − U_a A U_a⁻¹ Γ_a p, seed " + std::to_string(cfg.seed));
    r.note("U1 = " + render(us[0]));
    r.note("U2 = " + render(us[1]));
    r.note("Γ1 = " + render(gamma[0]));
    r.note("Γ2 = " + render(gamma[1]));
    r.note("A = " + render(a));
    double worst = 0.0;
    auto full = base.with_projector(Matrix::identity(n, field));
    Matrix closed = curvature_closed_form(full, gamma, 0, 1, a), direct = curvature_direct(full, gamma, 0, 1, a);
    r.note("p = 1:");
    r.note("  closed form U1U2A[U2⁻¹Γ2p, U1⁻¹Γ1p] = " + render(closed));
    r.note("  direct ∇1∇2A − ∇2∇1A            = " + render(direct));
    bool agree = close_enough(closed, direct, cfg.tolerance, worst);
    r.check("demo.matrix.closed_vs_direct", "closed form equals the definition", [&] {
        return agree ? Verdict::pass(1) : Verdict::fail(render(closed) + " vs " + render(direct), 1);
    });
    auto rank_one = base.with_vector(v0);
    r.note("p = v0 v0†, v0 = " + render(v0));
    Matrix closed1 = curvature_closed_form(rank_one, gamma, 0, 1, a),
           direct1 = curvature_direct(rank_one, gamma, 0, 1, a);
    r.note("  closed form = " + render(closed1));
    r.note("  direct      = " + render(direct1));
    r.check("demo.matrix.rank_one_flat", "p = v0 v0† gives Curv(X1,X2) = 0", [&] {
        Matrix zero(n, n, field);
        std::size_t cases = 0;
        for (std::size_t k = 0; k < cfg.samples; ++k) {
            auto local = sample_rng(cfg.seed, 1 + k);
            Matrix ak = random_matrix(n, n, field, local);
            auto gk = random_matrices(n, 2, field, local);
            Matrix c = curvature_direct(rank_one, gk, 0, 1, ak);
            ++cases;
            if (!close_enough(c, zero, cfg.tolerance, worst)) return Verdict::fail("Curv = " + render(c), cases);
        }
        return Verdict::pass(cases);
    });
    r.note("rank-one p: curvature is identically 0 on " + std::to_string(cfg.samples) + " random (Γ, A)");
}

void sphere_demo(Runner& r) {
    const auto& cfg = r.cfg();
    RunConfig local = cfg;
    if (!local.sphere.x_table) local.sphere.solve = true;
    auto source = sphere_table(local);
    const Sphere s = build_sphere(*source.table);
    const auto& pres = s.pres;
    const std::array<std::string, 4> gens = {"a", "as", "c", "cs"};
    r.note("quantum 3-sphere, q = s^2, X table from " + source.source);
    auto rendered = s.table.render();
    const std::array<std::string, 3> xnames = {"X+", "X-", "Xz"};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 4; ++i) r.note(xnames[k] + "(" + gens[i] + ") = " + rendered[k][i]);
    const std::array<const Derivation*, 3> ys = {&s.y1, &s.y2, &s.y3};
    for (std::size_t k = 0; k < 3; ++k)
        for (const auto& gname : gens)
            r.note("Y" + std::to_string(k + 1) + "(" + gname + ") = " + render((*ys[k])(parse_element(pres, gname))));
    auto omega_text = [&](const char* gname) {
        std::string text = s.omega.render(differential_d(s, parse_element(pres, gname)));
        const std::array<std::pair<std::string, std::string>, 3> names = {
            {{"*e1", " ω+"}, {"*e2", " ω-"}, {"*e3", " ωz"}}};
        for (const auto& [from, to] : names)
            for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos))
                text.replace(pos, from.size(), to);
        return text;
    };
    r.note("d(a) = " + omega_text("a"));
    r.note("d(c) = " + omega_text("c"));
    bool all = true;
    for (std::size_t k = 0; k < 3; ++k)
        for (const auto& gname : gens) {
            auto f = parse_element(pres, gname);
            auto lhs = s.omega.basis_times(k, f);
            auto kf = s.k(kOmegaExponents[k], f);
            bool ok = s.omega.equal(lhs, s.omega.left(kf, s.omega.basis(k)));
            all = all && ok;
            r.note("η" + std::to_string(k + 1) + " " + gname + " = K^" + std::to_string(kOmegaExponents[k]) + "(" +
                   gname + ") η" + std::to_string(k + 1) + " = (" + render(kf) + ") η" + std::to_string(k + 1) +
                   (ok ? "" : "  (MISMATCH)"));
        }
    r.check("demo.sphere.bimodule", "η_a f = K^(n_a)(f) η_a on generators",
            [&] { return all ? Verdict::pass(12) : Verdict::fail("a generator relation failed", 12); });
    r.check("demo.sphere.differential_leibniz", "d(fg) = f dg + df g",
            [&] { return differential_leibniz_check(s, std::min<std::size_t>(cfg.samples, 50), cfg.seed); });
}

void shiftline_demo(Runner& r) {
    const auto& cfg = r.cfg();
    Scalar hbar = ScalarField(ScalarKind::Rational).parse(cfg.hbar);
    if (hbar.kind() != ScalarKind::Rational) throw ConfigError("shiftline.hbar must be rational");
    auto line = build_shift_line(hbar.get<Rational>());
    r.note("shift line, τ(t) = t + " + cfg.hbar + ", ∂ = τ − id");
    for (const char* text : {"t", "t^2", "t^3", "t^2 + 3*t"})
        r.note(std::string("∂(") + text + ") = " + render(line.d(parse_element(line.pres, text))));
    auto alg = line.sigma_alg.algebra;
    r.check("demo.shiftline.leibniz", "∂(fg) = f ∂g + ∂f τ(g)",
            [&] { return leibniz_check(alg, line.sigma_alg.derivations[0], cfg.samples, cfg.seed); });
}

}  // namespace

Report run_verify(const RunConfig& cfg) {
    cfg.validate();
    Report report = start_report(cfg);
    Runner runner(cfg, report);
    if (cfg.preset == "qplane") qplane_suite(runner);
    else if (cfg.preset == "shiftline") shiftline_suite(runner);
    else if (cfg.preset == "matrix") matrix_suite(runner);
    else sphere_suite(runner);
    report.finalize();
    return report;
}

Report run_demo(const RunConfig& cfg) {
    cfg.validate();
    Report report = start_report(cfg);
    Runner runner(cfg, report);
    if (cfg.preset == "qplane") qplane_demo(runner);
    else if (cfg.preset == "shiftline") shiftline_demo(runner);
    else if (cfg.preset == "matrix") matrix_demo(runner);
    else sphere_demo(runner);
    report.finalize();
    return report;
}

}  // namespace taugeo::cli
