#include "taugeo/matrix_geometry.hpp"

#include "taugeo/error.hpp"

#include <cmath>
#include <numbers>

namespace taugeo {

namespace {

std::string index_name(const char* base, std::size_t a) { return base + std::to_string(a + 1); }

Scalar i_power(int k, const ScalarField& field) {
    switch (((k % 4) + 4) % 4) {
    case 0: return field.one();
    case 1: return field.imaginary_unit();
    case 2: return -field.one();
    default: return -field.imaginary_unit();
    }
}

Scalar entry(const Matrix& m) { return m(0, 0); }

MatrixModule free_matrix_module(const MatrixSigma& sigma) { return free_sigma_module(sigma, 1); }

MatrixModule::VecMap projection_map(const Matrix& p) {
    return [p](const MatrixModule::Vec& m) { return MatrixModule::Vec{m.at(0) * p}; };
}

/// Connection with ∇_a A = A − σ_a(A) Γ_a (then projected): ∇_a(1) = 1 − Γ_a.
MatrixConnection from_paper_gamma(const MatrixModule& module, const std::vector<Matrix>& gamma) {
    if (gamma.size() != module.indices()) throw RankMismatch("one Γ matrix per derivation index is required");
    const Matrix one = module.algebra().one();
    MatrixConnection::Gamma table;
    for (const auto& g : gamma) table.push_back({{one - g}});
    return MatrixConnection(module, std::move(table));
}

void require_commuting(const Matrix& x, const Matrix& y, const std::string& xname, const std::string& yname) {
    if (!commutator(x, y).is_zero()) throw CommutationViolation("[" + xname + "," + yname + "] ≠ 0");
}

std::vector<Scalar> eigenvalues_or_throw(const std::vector<Matrix>& ms, const Matrix& v0, const char* base) {
    std::vector<Scalar> out;
    for (std::size_t a = 0; a < ms.size(); ++a) {
        auto c = eigenvalue_at(ms[a], v0);
        if (!c) throw NotEigenvector("v0 is not an eigenvector of " + index_name(base, a));
        out.push_back(*c);
    }
    return out;
}

Matrix random_column(std::size_t n, const ScalarField& field, std::mt19937_64& rng) {
    return random_matrix(n, 1, field, rng);
}

/// (1 − c U_a) v for every a against φ⁻¹(∇_a φ(v)) on random vectors.
Verdict vector_formula_check(const MatrixGeometry& g, const MatrixConnection& nabla, const std::vector<Scalar>& c,
                             std::size_t samples, std::uint64_t seed, const std::string& label) {
    const std::size_t n = g.dimension();
    const Matrix one = Matrix::identity(n, g.field());
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        Matrix v = random_column(n, g.field(), rng);
        for (std::size_t a = 0; a < g.size(); ++a) {
            ++cases;
            Matrix lhs = phi_inverse(g, nabla(a, {phi(g, v)}).at(0));
            Matrix rhs = (one - c[a] * g.u(a)) * v;
            if (lhs != rhs)
                return Verdict::fail(label + " fails for X" + std::to_string(a + 1) + " at v = " + render(v) + ": " +
                                         render(lhs) + " vs " + render(rhs),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

}  // namespace

const Matrix& MatrixGeometry::p() const {
    if (!projector) throw MissingProjector("the geometry has no projector p");
    return *projector;
}

MatrixGeometry MatrixGeometry::with_vector(const Matrix& v) const {
    if (v.rows() != dimension() || v.cols() != 1) throw RankMismatch("v0 must be a column of length N");
    Matrix norm = v.adjoint() * v;
    if (!(entry(norm) == field().one())) throw PreconditionFailed("v0 is not a unit vector: |v0|² = " + render(entry(norm)));
    MatrixGeometry out = with_projector(v * v.adjoint());
    out.v0 = v;
    std::vector<Scalar> mu;
    for (const auto& ua : preset.u) {
        auto c = eigenvalue_at(ua, v);
        if (!c) {
            out.mu.reset();
            return out;
        }
        mu.push_back(*c);
    }
    out.mu = std::move(mu);
    return out;
}

MatrixGeometry MatrixGeometry::with_projector(const Matrix& p) const {
    if (!p.square() || p.rows() != dimension()) throw RankMismatch("p must be N×N");
    if (p * p != p) throw NotAProjection("p² ≠ p");
    if (p.adjoint() != p) throw NotAProjection("p† ≠ p");
    MatrixGeometry out = *this;
    out.projector = p;
    out.v0.reset();
    out.mu.reset();
    return out;
}

MatrixGeometry build_matrix_geometry(const std::vector<Matrix>& u, const ScalarField& field) {
    return MatrixGeometry{build_matrix_algebra(u, field), std::nullopt, std::nullopt, std::nullopt};
}

std::optional<Scalar> eigenvalue_at(const Matrix& m, const Matrix& v) {
    Matrix mv = m * v;
    Scalar norm = entry(v.adjoint() * v);
    if (norm.is_zero()) return std::nullopt;
    Scalar c = entry(v.adjoint() * mv) / norm;
    if (mv != c * v) return std::nullopt;
    return c;
}

Matrix phi(const MatrixGeometry& g, const Matrix& v) {
    if (!g.v0) throw MissingProjector("φ needs v0");
    return v * g.v0->adjoint();
}

Matrix phi_inverse(const MatrixGeometry& g, const Matrix& a) {
    if (!g.v0) throw MissingProjector("φ⁻¹ needs v0");
    return a * *g.v0;
}

MatrixModule matrix_module(const MatrixGeometry& g) { return matrix_module(g, g.preset.sigma); }

MatrixModule matrix_module(const MatrixGeometry& g, const MatrixSigma& sigma) {
    auto module = free_matrix_module(sigma);
    if (g.projector) module = module.with_post(projection_map(*g.projector));
    return module;
}

MatrixConnection projective_connection(const MatrixGeometry& g, const std::vector<Matrix>& gamma) {
    g.p();
    return from_paper_gamma(matrix_module(g), gamma);
}

Scalar vector_gamma(const MatrixGeometry& g, const Matrix& gamma_a, std::size_t a) {
    if (!g.v0) throw MissingProjector("γ_a needs v0");
    return entry(g.v0->adjoint() * g.u_inverse(a) * gamma_a * *g.v0);
}

Matrix vector_connection_apply(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a,
                               const Matrix& v) {
    Scalar c = vector_gamma(g, gamma.at(a), a);
    return v - c * (g.u(a) * v);
}

Matrix curvature_closed_form(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a,
                             std::size_t b, const Matrix& a_matrix) {
    const Matrix& p = g.p();
    Matrix za = g.u_inverse(a) * gamma.at(a) * p;
    Matrix zb = g.u_inverse(b) * gamma.at(b) * p;
    return g.u(a) * g.u(b) * a_matrix * p * commutator(zb, za);
}

Matrix curvature_direct(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a, std::size_t b,
                        const Matrix& a_matrix) {
    auto nabla = projective_connection(g, gamma);
    return curvature(nabla, g.preset.lie, a, b, {a_matrix * g.p()}).at(0);
}

TorsionFreeChoice torsion_free_gamma_choice(const MatrixGeometry& g, const std::vector<Matrix>& e,
                                            std::size_t samples, std::uint64_t seed) {
    const std::size_t n = g.size();
    if (e.size() != n) throw RankMismatch("one E matrix per derivation index is required");
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) require_commuting(e[a], e[b], index_name("E", a), index_name("E", b));
        for (std::size_t b = 0; b < n; ++b) require_commuting(e[a], g.u(b), index_name("E", a), index_name("U", b));
    }
    std::optional<std::vector<Scalar>> lambda;
    if (g.projector) {
        if (!g.v0) throw PreconditionFailed("the torsion-free choice on Mat_N p needs p = v0 v0†");
        lambda = eigenvalues_or_throw(e, *g.v0, "E");
        if (!g.mu) eigenvalues_or_throw(g.preset.u, *g.v0, "U");
    }
    const Matrix one = g.preset.algebra.one();
    std::vector<Matrix> gamma;
    for (const auto& ea : e) gamma.push_back(one - ea);
    auto nabla = from_paper_gamma(matrix_module(g), gamma);
    AnchorMap<MatrixAlgebra> anchor;
    for (const auto& ea : e) anchor.images.push_back({g.projector ? ea * *g.projector : ea});
    Verdict torsion = torsion_check(nabla, g.preset.lie, anchor);
    Verdict formula = Verdict::skipped("no v0");
    if (lambda) {
        std::vector<Scalar> c;
        for (std::size_t a = 0; a < n; ++a) c.push_back((*g.mu)[a].inverse() * (g.field().one() - (*lambda)[a]));
        formula = vector_formula_check(g, nabla, c, samples, seed, "∇_a v = (1 − μ_a⁻¹(1 − λ_a)U_a)v");
    }
    return {gamma, nabla, anchor, torsion, lambda, formula};
}

MatrixSigma doubled_star_algebra(const MatrixGeometry& g) {
    const std::size_t n = g.size();
    const Matrix one = g.preset.algebra.one();
    for (std::size_t a = 0; a < n; ++a)
        if (g.u(a) * g.u(a).adjoint() != one) throw NotUnitary(index_name("U", a) + " is not unitary");
    auto ders = g.preset.sigma.derivations;
    std::vector<std::size_t> iota;
    for (std::size_t a = 0; a < n; ++a) iota.push_back(a + n);
    for (std::size_t a = 0; a < n; ++a) {
        Matrix u = g.u(a);
        Matrix ud = u.adjoint();
        Map<Matrix> id = [](const Matrix& x) { return x; };
        Map<Matrix> sigma = [u, ud](const Matrix& x) { return u * x * ud; };
        Map<Matrix> apply = [u, ud](const Matrix& x) { return x - u * x * ud; };
        ders.push_back({index_name("X~", a), id, sigma, apply});
        iota.push_back(a);
    }
    return MatrixSigma(g.preset.algebra, std::move(ders), std::move(iota));
}

bool RegularityReport::regular() const {
    for (const auto& w : witness)
        if (!w) return false;
    return !witness.empty();
}

std::string RegularityReport::summary() const {
    std::string out;
    for (std::size_t a = 0; a < source.size(); ++a) {
        if (a) out += "; ";
        out += "X" + std::to_string(a + 1) + ": " + source[a];
    }
    return out;
}

RegularityReport regularity_check(const MatrixGeometry& g, std::uint64_t seed, std::size_t random_budget) {
    const std::size_t n = g.dimension();
    RegularityReport report;
    for (std::size_t a = 0; a < g.size(); ++a) {
        const auto& x = g.preset.sigma.derivations[a];
        auto invertible_image = [&](const Matrix& m) { return !x(m).determinant().is_zero(); };
        std::optional<Matrix> found;
        std::string source = "not found within budget";
        for (std::size_t i = 0; i < n && !found; ++i)
            for (std::size_t j = 0; j < n && !found; ++j) {
                Matrix e = Matrix::elementary(n, i, j, g.field());
                if (invertible_image(e)) {
                    found = e;
                    source = "E" + std::to_string(i + 1) + std::to_string(j + 1);
                }
            }
        for (std::size_t k = 0; k < random_budget && !found; ++k) {
            auto rng = sample_rng(seed, k);
            Matrix m = g.preset.algebra.random_element(rng);
            if (invertible_image(m)) {
                found = m;
                source = "random #" + std::to_string(k);
            }
        }
        report.witness.push_back(found);
        report.source.push_back(source);
    }
    return report;
}

UniqueConnection unique_regular_connection(const MatrixGeometry& g, const RegularityReport& regularity,
                                           std::size_t samples, std::uint64_t seed) {
    const std::size_t n = g.size();
    if (regularity.witness.size() != n) throw RankMismatch("regularity report does not match the geometry");
    for (std::size_t a = 0; a < n; ++a)
        if (!regularity.witness[a]) throw NotRegular("X" + std::to_string(a + 1) + ": no A with det X(A) ≠ 0");
    auto sigma = doubled_star_algebra(g);
    auto nabla = zero_connection(free_matrix_module(sigma));
    const auto& alg = g.preset.algebra;
    std::size_t cases = 0;
    Verdict rules = Verdict::pass(0);
    for (std::size_t k = 0; k < samples && rules.passed(); ++k) {
        auto rng = sample_rng(seed, k);
        Matrix a_m = alg.random_element(rng);
        Matrix b_m = alg.random_element(rng);
        for (std::size_t a = 0; a < n; ++a) {
            const auto& x = sigma.derivations[a];
            Matrix lhs = nabla(a, {b_m * a_m})[0];
            Matrix na = nabla(a, {a_m})[0];
            ++cases;
            Matrix rhs = x.sigma(b_m) * na + x(b_m) * a_m;
            if (lhs != rhs) {
                rules = Verdict::fail("∇_a(BA) = σ_a(B)∇_a A + X_a(B)A fails for " + x.name + " at A = " +
                                          render(a_m) + ", B = " + render(b_m),
                                      cases);
                break;
            }
            ++cases;
            rhs = b_m * na + x(b_m) * x.sigma(a_m);
            if (lhs != rhs) {
                rules = Verdict::fail("∇_a(BA) = B∇_a A + X_a(B)σ_a(A) fails for " + x.name + " at A = " +
                                          render(a_m) + ", B = " + render(b_m),
                                      cases);
                break;
            }
            ++cases;
            if (nabla(a + n, {a_m})[0] != na) {
                rules = Verdict::fail("∇ on " + x.name + " and " + sigma.derivations[a + n].name + " differ", cases);
                break;
            }
        }
    }
    if (rules.passed()) rules = Verdict::pass(cases);
    rules &= connection_leibniz_check(nabla, Side::Left, samples, seed);
    return {nabla, rules};
}

Verdict injected_gamma_check(const MatrixGeometry& g, const RegularityReport& regularity,
                             const std::vector<Matrix>& gamma_tilde) {
    const std::size_t n = g.size();
    if (gamma_tilde.size() != n) throw RankMismatch("one Γ̃ matrix per derivation index is required");
    const auto& sig = g.preset.sigma;
    MatrixConnection::Gamma table;
    for (const auto& gt : gamma_tilde) table.push_back({{gt}});
    MatrixConnection nabla(free_matrix_module(sig), std::move(table));
    const Matrix one = g.preset.algebra.one();
    std::size_t cases = 0;
    for (std::size_t a = 0; a < n; ++a) {
        if (gamma_tilde[a].is_zero()) continue;
        if (!regularity.witness.at(a)) throw NotRegular("X" + std::to_string(a + 1) + ": no regularity witness");
        const Matrix& b = *regularity.witness[a];
        const auto& x = sig.derivations[a];
        ++cases;
        // Second product rule at A = 1: ∇(B) − B∇(1) − X(B)σ(1) = −X(B)Γ̃.
        Matrix residual = nabla(a, {b})[0] - b * nabla(a, {one})[0] - x(b);
        if (residual.is_zero()) continue;
        Matrix recovered = -(x(b).inverse() * residual);
        std::string note = recovered == gamma_tilde[a] ? "" : " (recovered Γ̃ disagrees with the injected one)";
        return Verdict::fail("∇_a(BA) = B∇_a A + X_a(B)σ_a(A) fails for " + x.name + " at B = " + render(b) +
                                 ", A = 1: residual " + render(residual) + " = −X_a(B)Γ̃_a with Γ̃_a = " +
                                 render(recovered) + note,
                             cases);
    }
    return Verdict::pass(cases);
}

MatrixLeviCivita matrix_levi_civita(const MatrixGeometry& g, const Matrix& h0, LeviCivitaMode mode,
                                    const std::vector<Matrix>& e_in, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = g.size();
    const auto& field = g.field();
    if (h0.adjoint() != h0) throw PreconditionFailed("h0 is not hermitian");
    for (std::size_t a = 0; a < n; ++a)
        if (!commutator(g.u(a), h0).is_zero())
            throw NonInvariantForm("[" + index_name("U", a) + ",h0] ≠ 0, so σ_" + std::to_string(a + 1) +
                                   "(h0) ≠ h0");
    std::vector<Matrix> e = e_in.empty() ? g.preset.u : e_in;
    if (e.size() != n) throw RankMismatch("one E matrix per derivation index is required");
    auto sigma = doubled_star_algebra(g);
    auto lie = LieStructure::flip(2 * n, field);
    const auto& alg = g.preset.algebra;
    HermitianForm<MatrixAlgebra> form(alg, {{h0}});
    AnchorMap<MatrixAlgebra> anchor;
    if (mode == LeviCivitaMode::Full) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) require_commuting(e[a], g.u(b), index_name("E", a), index_name("U", b));
        auto nabla = zero_connection(free_matrix_module(sigma));
        for (std::size_t k = 0; k < 2 * n; ++k) anchor.images.push_back({e[k % n]});
        auto verdict = levi_civita_check(nabla, lie, anchor, form, samples, seed);
        return {nabla, anchor, form, lie, verdict};
    }
    if (!g.v0) throw MissingProjector("vector mode needs p = v0 v0†");
    require_commuting(h0, g.p(), "h0", "p");
    auto mu = eigenvalues_or_throw(g.preset.u, *g.v0, "U");
    auto lambda = eigenvalues_or_throw(e, *g.v0, "E");
    auto nabla = zero_connection(matrix_module(g, sigma));
    for (std::size_t k = 0; k < 2 * n; ++k) anchor.images.push_back({lambda[k % n] * g.p()});
    auto verdict = levi_civita_check(nabla, lie, anchor, form, samples, seed);
    std::vector<Scalar> conj_mu;
    for (const auto& m : mu) conj_mu.push_back(m.conj());
    verdict &= vector_formula_check(g, nabla, conj_mu, samples, seed, "∇_a v = (1 − μ̄_a U_a)v");
    return {nabla, anchor, form, lie, verdict};
}

Matrix signed_permutation(const std::vector<std::size_t>& perm, const std::vector<int>& powers,
                          const ScalarField& field) {
    if (perm.size() != powers.size()) throw RankMismatch("permutation and phases differ in length");
    const std::size_t n = perm.size();
    Matrix m(n, n, field);
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (perm[j] >= n || seen[perm[j]]) throw PreconditionFailed("not a permutation");
        seen[perm[j]] = true;
        m(perm[j], j) = i_power(powers[j], field);
    }
    return m;
}

Matrix phase_diagonal(const std::vector<int>& powers, const ScalarField& field) {
    std::vector<Scalar> d;
    for (int k : powers) d.push_back(i_power(k, field));
    return Matrix::diagonal(d, field);
}

namespace {

std::vector<int> random_powers(std::size_t n, const ScalarField& field, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<int> out;
    for (std::size_t k = 0; k < n; ++k) {
        int p = pick(rng);
        out.push_back(field.has_imaginary_unit() ? p : 2 * (p % 2));
    }
    return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    for (std::size_t k = n; k > 1; --k) {
        std::uniform_int_distribution<std::size_t> pick(0, k - 1);
        std::swap(perm[k - 1], perm[pick(rng)]);
    }
    return perm;
}

/// Gram–Schmidt on the columns of a random complex matrix.
Matrix random_float_unitary(std::size_t n, const ScalarField& field, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<std::vector<std::complex<double>>> cols(n, std::vector<std::complex<double>>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (auto& z : cols[j]) z = {d(rng), d(rng)};
        for (std::size_t k = 0; k < j; ++k) {
            std::complex<double> dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
            for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[k][i];
        }
        double norm = 0;
        for (const auto& z : cols[j]) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (auto& z : cols[j]) z /= norm;
    }
    Matrix q(n, n, field);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = field.complex(cols[j][i]);
    return q;
}

}  // namespace

std::vector<Matrix> random_commuting_unitaries(std::size_t n, std::size_t count, const ScalarField& field,
                                               std::mt19937_64& rng) {
    std::vector<Matrix> out;
    if (field.kind() == ScalarKind::Float) {
        Matrix q = random_float_unitary(n, field, rng);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        for (std::size_t a = 0; a < count; ++a) {
            std::vector<Scalar> d;
            for (std::size_t k = 0; k < n; ++k) d.push_back(field.complex(std::polar(1.0, angle(rng))));
            out.push_back(q * Matrix::diagonal(d, field) * q.adjoint());
        }
        return out;
    }
    Matrix p = signed_permutation(random_permutation(n, rng), random_powers(n, field, rng), field);
    for (std::size_t a = 0; a < count; ++a)
        out.push_back(p * phase_diagonal(random_powers(n, field, rng), field) * p.adjoint());
    return out;
}

std::vector<Matrix> random_commuting_invertibles(std::size_t n, std::size_t count, const ScalarField& field,
                                                 std::mt19937_64& rng) {
    if (field.kind() == ScalarKind::Float) return random_commuting_unitaries(n, count, field, rng);
    std::optional<Matrix> s_inv;
    Matrix s(n, n, field);
    while (!s_inv) {
        s = random_matrix(n, n, field, rng);
        s_inv = s.try_inverse();
    }
    std::vector<Gaussian> pool{Gaussian(1), Gaussian(-1), Gaussian(2), Gaussian(Rational(1, 2)),
                               Gaussian(Rational(-1, 3)), Gaussian(3)};
    if (field.has_imaginary_unit()) {
        pool.push_back(Gaussian(0, 1));
        pool.push_back(Gaussian(1, 1));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < count; ++a) {
        std::vector<Scalar> d;
        for (std::size_t k = 0; k < n; ++k) d.push_back(field.gaussian(pool[pick(rng)]));
        out.push_back(s * Matrix::diagonal(d, field) * *s_inv);
    }
    return out;
}

Matrix random_unit_vector(std::size_t n, const ScalarField& field, std::mt19937_64& rng) {
    Matrix v(n, 1, field);
    if (field.kind() == ScalarKind::Float) {
        std::normal_distribution<double> d(0.0, 1.0);
        std::vector<std::complex<double>> z(n);
        double norm = 0;
        for (auto& c : z) {
            c = {d(rng), d(rng)};
            norm += std::norm(c);
        }
        for (std::size_t k = 0; k < n; ++k) v(k, 0) = field.complex(z[k] / std::sqrt(norm));
        return v;
    }
    static const std::pair<Rational, Rational> triples[] = {{Rational(3, 5), Rational(4, 5)},
                                                            {Rational(5, 13), Rational(12, 13)},
                                                            {Rational(8, 17), Rational(15, 17)},
                                                            {Rational(1), Rational(0)}};
    std::uniform_int_distribution<std::size_t> pick_triple(0, 3);
    auto perm = random_permutation(n, rng);
    auto powers = random_powers(2, field, rng);
    const auto& [x, y] = triples[pick_triple(rng)];
    v(perm[0], 0) = field.rational(x) * i_power(powers[0], field);
    if (n > 1) v(perm[1], 0) = field.rational(y) * i_power(powers[1], field);
    else v(0, 0) = i_power(powers[0], field);
    return v;
}

}  // namespace taugeo
