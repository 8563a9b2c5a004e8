#pragma once

/** @file connection.hpp
 *  (σ,τ)-connections given by Γ_ai = ∇_a e_i, with curvature, torsion,
 *  metric compatibility and the metric, torsion-free and Levi-Civita
 *  constructions.
 *
 *  Evaluation follows ∇_a(m^i e_i) = σ_a(m^i) Γ_ai + X_a(m^i) τ̂⁰_a(e_i) and then
 *  applies the module's post map, so connections on image modules are the
 *  pushforwards T∘∇.
 */

#include "taugeo/hermitian.hpp"
#include "taugeo/lie.hpp"
#include "taugeo/module.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace taugeo {

template <AlgebraModel Alg>
class Connection {
public:
    using E = typename Alg::Element;
    using Vec = std::vector<E>;
    /// gamma[a][i] = ∇_a e_i.
    using Gamma = std::vector<std::vector<Vec>>;

    Connection(SigmaModule<Alg> module, Gamma gamma) : module_(std::move(module)), gamma_(std::move(gamma)) {
        if (gamma_.size() != module_.indices()) throw RankMismatch("Γ needs one row per derivation index");
        for (const auto& row : gamma_) {
            if (row.size() != module_.rank()) throw RankMismatch("Γ needs one entry per basis element");
            for (const auto& v : row) module_.check(v);
        }
    }

    const SigmaModule<Alg>& module() const { return module_; }
    const Gamma& gamma() const { return gamma_; }

    Vec operator()(std::size_t a, const Vec& m) const {
        module_.check(m);
        const auto& x = module_.sigma().derivations.at(a);
        const E zero = module_.algebra().zero();
        Vec out = module_.zero();
        for (std::size_t i = 0; i < module_.rank(); ++i) {
            if (m[i] == zero) continue;
            out = out + module_.left(x.sigma(m[i]), gamma_[a][i]);
            E xm = x(m[i]);
            if (!(xm == zero)) out = out + module_.left(xm, module_.tau_image(a, i));
        }
        return module_.project(out);
    }

private:
    SigmaModule<Alg> module_;
    Gamma gamma_;
};

template <AlgebraModel Alg>
Connection<Alg> connection_from_gamma(const SigmaModule<Alg>& module, typename Connection<Alg>::Gamma gamma) {
    return Connection<Alg>(module, std::move(gamma));
}

/// ∇⁰ with Γ = 0.
template <AlgebraModel Alg>
Connection<Alg> zero_connection(const SigmaModule<Alg>& module) {
    typename Connection<Alg>::Gamma gamma(module.indices(), std::vector<std::vector<typename Alg::Element>>(
                                                                module.rank(), module.zero()));
    return Connection<Alg>(module, std::move(gamma));
}

enum class Side { Left, Right, Bimodule };

/// Left: ∇_a(fm) = σ_a(f)∇_a m + X_a(f) τ̂_a(m). Right: ∇_a(mf) = σ̂_a(m) X_a(f) + ∇_a(m) τ_a(f).
template <AlgebraModel Alg>
Verdict connection_leibniz_check(const Connection<Alg>& nabla, Side side, std::size_t samples, std::uint64_t seed) {
    const auto& module = nabla.module();
    const Alg& alg = module.algebra();
    const bool left = side != Side::Right;
    const bool right = side != Side::Left;
    if (right && !module.has_right_action()) return Verdict::skipped("module has no right action");
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto f = alg.random_element(rng);
        auto m = module.random_element(rng);
        for (std::size_t a = 0; a < module.indices(); ++a) {
            const auto& x = module.sigma().derivations[a];
            if (left) {
                ++cases;
                auto lhs = nabla(a, module.left(f, m));
                auto rhs = module.left(x.sigma(f), nabla(a, m)) + module.left(x(f), module.tau_hat(a, m));
                if (!module.equal(lhs, rhs))
                    return Verdict::fail("left rule for ∇_" + x.name + " fails at f = " + alg.render(f) +
                                             ", m = " + module.render(m) + ": " + module.render(lhs) + " vs " +
                                             module.render(rhs),
                                         cases);
            }
            if (right) {
                ++cases;
                auto lhs = nabla(a, module.right(m, f));
                auto rhs = module.right(module.sigma_hat(a, m), x(f)) + module.right(nabla(a, m), x.tau(f));
                if (!module.equal(lhs, rhs))
                    return Verdict::fail("right rule for ∇_" + x.name + " fails at f = " + alg.render(f) +
                                             ", m = " + module.render(m) + ": " + module.render(lhs) + " vs " +
                                             module.render(rhs),
                                         cases);
            }
        }
    }
    return Verdict::pass(cases);
}

/// T∘∇ on T(M). Throws NonLinearMap unless T is left-linear on samples.
template <AlgebraModel Alg>
Connection<Alg> pushforward_connection(const Connection<Alg>& nabla, typename SigmaModule<Alg>::VecMap t,
                                       std::size_t samples = 50, std::uint64_t seed = 1) {
    auto image = image_sigma_module(nabla.module(), std::move(t), samples, seed);
    return Connection<Alg>(image, nabla.gamma());
}

/// (∇_a m)* = ∇_ι(a) m*; when that holds and the module has a right action, the
/// right rule is checked as well.
template <AlgebraModel Alg>
Verdict star_connection_check(const Connection<Alg>& nabla, std::size_t samples, std::uint64_t seed) {
    const auto& module = nabla.module();
    const auto& sig = module.sigma();
    if (!sig.starred()) return Verdict::skipped("Σ has no involution ι");
    if (!module.has_star()) return Verdict::skipped("module has no star structure");
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto m = module.random_element(rng);
        for (std::size_t a = 0; a < module.indices(); ++a) {
            ++cases;
            auto lhs = module.star(nabla(a, m));
            auto rhs = nabla(sig.iota_of(a), module.star(m));
            if (!module.equal(lhs, rhs))
                return Verdict::fail("(∇_" + sig.derivations[a].name + " m)* ≠ ∇_ι m* at m = " + module.render(m) +
                                         ": " + module.render(lhs) + " vs " + module.render(rhs),
                                     cases);
        }
    }
    Verdict out = Verdict::pass(cases);
    if (module.has_right_action()) out &= connection_leibniz_check(nabla, Side::Right, samples, seed);
    return out;
}

/// ∇_a∇_b m − R_ab^pq ∇_p∇_q m − C_ab^p ∇_p m.
template <AlgebraModel Alg>
std::vector<typename Alg::Element> curvature(const Connection<Alg>& nabla, const LieStructure& lie, std::size_t a,
                                             std::size_t b, const std::vector<typename Alg::Element>& m) {
    if (lie.size() != nabla.module().indices()) throw RankMismatch("Lie structure and Σ differ in size");
    auto out = nabla(a, nabla(b, m));
    for (std::size_t p = 0; p < lie.size(); ++p) {
        for (std::size_t q = 0; q < lie.size(); ++q)
            if (!lie.r(a, b, p, q).is_zero()) out = out - lie.r(a, b, p, q) * nabla(p, nabla(q, m));
        if (!lie.c(a, b, p).is_zero()) out = out - lie.c(a, b, p) * nabla(p, m);
    }
    return out;
}

/// φ(X_a) for each tangent basis index.
template <AlgebraModel Alg>
struct AnchorMap {
    std::vector<std::vector<typename Alg::Element>> images;

    const std::vector<typename Alg::Element>& operator()(std::size_t a) const { return images.at(a); }
    std::size_t size() const { return images.size(); }
};

/// ∇_a φ(X_b) − R_ab^pq ∇_p φ(X_q) − C_ab^c φ(X_c).
template <AlgebraModel Alg>
std::vector<typename Alg::Element> torsion(const Connection<Alg>& nabla, const LieStructure& lie,
                                           const AnchorMap<Alg>& phi, std::size_t a, std::size_t b) {
    if (lie.size() != nabla.module().indices() || phi.size() != lie.size())
        throw RankMismatch("anchor, Lie structure and Σ differ in size");
    auto out = nabla(a, phi(b));
    for (std::size_t p = 0; p < lie.size(); ++p) {
        for (std::size_t q = 0; q < lie.size(); ++q)
            if (!lie.r(a, b, p, q).is_zero()) out = out - lie.r(a, b, p, q) * nabla(p, phi(q));
        if (!lie.c(a, b, p).is_zero()) out = out - lie.c(a, b, p) * phi(p);
    }
    return out;
}

/// Torsion over all index pairs.
template <AlgebraModel Alg>
Verdict torsion_check(const Connection<Alg>& nabla, const LieStructure& lie, const AnchorMap<Alg>& phi) {
    const auto& module = nabla.module();
    std::size_t cases = 0;
    for (std::size_t a = 0; a < lie.size(); ++a)
        for (std::size_t b = 0; b < lie.size(); ++b) {
            ++cases;
            auto t = torsion(nabla, lie, phi, a, b);
            if (!module.equal(t, module.zero()))
                return Verdict::fail("torsion(" + module.sigma().derivations[a].name + "," +
                                         module.sigma().derivations[b].name + ") = " + module.render(t),
                                     cases);
        }
    return Verdict::pass(cases);
}

enum class CompatMode { Generators, Random };

/// X_a(h(m1, m2)) = h(σ̂_a m1, ∇_ι(a) m2) + h(∇_a m1, σ̂_ι(a) m2). Generator mode uses the
/// basis pairs p(e_i), p(e_j), which suffices for invariant forms; random mode samples
/// general pairs. Throws NonInvariantForm when h fails invariance.
template <AlgebraModel Alg>
Verdict metric_compat_check(const Connection<Alg>& nabla, const HermitianForm<Alg>& h, CompatMode mode,
                            std::size_t samples, std::uint64_t seed) {
    using Vec = std::vector<typename Alg::Element>;
    const auto& module = nabla.module();
    const auto& sig = module.sigma();
    const Alg& alg = module.algebra();
    if (!sig.starred()) throw NoStarStructure("metric compatibility needs an involution ι");
    // Invariance is semilinear in both slots, so basis pairs decide it; the
    // random pairs are a cross-check only.
    auto invariant = invariance_check(h, module, std::min<std::size_t>(samples, 8), seed);
    if (invariant.failed()) throw NonInvariantForm(invariant.witness);
    std::size_t cases = 0;
    auto test = [&](const Vec& m1, const Vec& m2) -> std::optional<Verdict> {
        const auto base = h.eval(m1, m2);
        for (std::size_t a = 0; a < module.indices(); ++a) {
            std::size_t b = sig.iota_of(a);
            ++cases;
            auto lhs = sig.derivations[a](base);
            auto rhs = h.eval(module.sigma_hat(a, m1), nabla(b, m2)) + h.eval(nabla(a, m1), module.sigma_hat(b, m2));
            if (!(lhs == rhs))
                return Verdict::fail("compatibility fails for " + sig.derivations[a].name + " at m1 = " +
                                         module.render(m1) + ", m2 = " + module.render(m2) + ": " + alg.render(lhs) +
                                         " vs " + alg.render(rhs),
                                     cases);
        }
        return std::nullopt;
    };
    if (mode == CompatMode::Generators) {
        for (std::size_t i = 0; i < module.rank(); ++i)
            for (std::size_t j = 0; j < module.rank(); ++j)
                if (auto v = test(module.project(module.basis(i)), module.project(module.basis(j)))) return *v;
    } else {
        for (std::size_t k = 0; k < samples; ++k) {
            auto rng = sample_rng(seed, k);
            auto m1 = module.random_element(rng);
            auto m2 = module.random_element(rng);
            if (auto v = test(m1, m2)) return *v;
        }
    }
    return Verdict::pass(cases);
}

/// gamma[a][i][j] = γ_a,ij.
template <class E>
using MetricGamma = std::vector<ElementMatrix<E>>;

/// ∇_a e_i = (½ X_a(h_ij) + i γ_a,ij) h_σι(a)^jk e_k. Requires γ_a,ij* = γ_ι(a),ji.
template <AlgebraModel Alg>
Connection<Alg> metric_connection_free(const SigmaModule<Alg>& module, const HermitianForm<Alg>& h,
                                       const MetricGamma<typename Alg::Element>& gamma) {
    using E = typename Alg::Element;
    const auto& sig = module.sigma();
    const Alg& alg = module.algebra();
    const std::size_t n = module.rank();
    if (!sig.starred()) throw NoStarStructure("metric connection needs an involution ι");
    if (h.rank() != n) throw RankMismatch("form and module differ in rank");
    if (gamma.size() != module.indices()) throw RankMismatch("γ needs one matrix per derivation index");
    for (std::size_t a = 0; a < gamma.size(); ++a) {
        if (gamma[a].size() != n) throw RankMismatch("γ_a must be square of the module rank");
        for (std::size_t i = 0; i < n; ++i) {
            if (gamma[a][i].size() != n) throw RankMismatch("γ_a must be square of the module rank");
            for (std::size_t j = 0; j < n; ++j)
                if (!(alg.star(gamma[a][i][j]) == gamma.at(sig.iota_of(a)).at(j).at(i)))
                    throw PreconditionFailed("γ_" + sig.derivations[a].name + "," + std::to_string(i + 1) +
                                             std::to_string(j + 1) + "* ≠ γ_ι(a)," + std::to_string(j + 1) +
                                             std::to_string(i + 1));
        }
    }
    const Scalar half = alg.field().rational(Rational(1, 2));
    const E unit_i = alg.lift(alg.field().imaginary_unit());
    typename Connection<Alg>::Gamma out(module.indices());
    for (std::size_t a = 0; a < module.indices(); ++a) {
        auto inverse = form_sigma_inverse(h, module, sig.iota_of(a));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<E> row = module.zero();
            for (std::size_t j = 0; j < n; ++j) {
                E coeff = half * sig.derivations[a](h(i, j)) + unit_i * gamma[a][i][j];
                if (coeff == alg.zero()) continue;
                for (std::size_t k = 0; k < n; ++k) row[k] = row[k] + coeff * inverse[j][k];
            }
            out[a].push_back(std::move(row));
        }
    }
    return Connection<Alg>(module, std::move(out));
}

template <AlgebraModel Alg>
struct ProjectedMetricConnection {
    Connection<Alg> connection;
    Verdict compatibility;
};

/// p∘∇̃ on p(M) for an h-orthogonal projection p commuting with σ̂_a, τ̂_a.
/// Throws PreconditionFailed with the witness h(p m1, m2) − h(m1, p m2) when p is not orthogonal.
template <AlgebraModel Alg>
ProjectedMetricConnection<Alg> orthogonal_projection_metric(const Connection<Alg>& ambient,
                                                            const HermitianForm<Alg>& h,
                                                            const typename SigmaModule<Alg>::VecMap& p,
                                                            std::size_t samples, std::uint64_t seed) {
    const auto& module = ambient.module();
    const Alg& alg = module.algebra();
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto m1 = module.random_element(rng);
        auto m2 = module.random_element(rng);
        auto defect = h.eval(p(m1), m2) - h.eval(m1, p(m2));
        if (!(defect == alg.zero()))
            throw PreconditionFailed("p is not orthogonal for h: h(p m1, m2) - h(m1, p m2) = " + alg.render(defect) +
                                     " at m1 = " + module.render(m1) + ", m2 = " + module.render(m2));
    }
    auto commutes = projective_commutation_check(module, p, samples, seed);
    if (commutes.failed()) throw PreconditionFailed(commutes.witness);
    auto projected = pushforward_connection(ambient, p, samples, seed);
    Verdict compat = metric_compat_check(projected, h, CompatMode::Generators, samples, seed);
    compat &= metric_compat_check(projected, h, CompatMode::Random, samples, seed);
    return {projected, compat};
}

/// γ_ab^c = γ̃_ab^c + R_ab^pq γ̃_pq^c, indexed gamma[a][b][c].
template <class E>
std::vector<std::vector<std::vector<E>>> symmetrize_gamma(const LieStructure& lie,
                                                          const std::vector<std::vector<std::vector<E>>>& tilde) {
    const std::size_t n = lie.size();
    auto out = tilde;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    if (lie.r(a, b, p, q).is_zero()) continue;
                    for (std::size_t c = 0; c < n; ++c)
                        out[a][b][c] = out[a][b][c] + lie.r(a, b, p, q) * tilde[p][q][c];
                }
    return out;
}

/// R_ab^pq γ_pq^c = γ_ab^c for all indices.
template <AlgebraModel Alg>
Verdict r_symmetry_check(const Alg& alg, const LieStructure& lie,
                         const std::vector<std::vector<std::vector<typename Alg::Element>>>& gamma) {
    const std::size_t n = lie.size();
    std::size_t cases = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                ++cases;
                auto sum = alg.zero();
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q)
                        if (!lie.r(a, b, p, q).is_zero()) sum = sum + lie.r(a, b, p, q) * gamma[p][q][c];
                if (!(sum == gamma[a][b][c]))
                    return Verdict::fail("R_ab^pq γ_pq^c ≠ γ_ab^c at (" + std::to_string(a) + "," + std::to_string(b) +
                                             "," + std::to_string(c) + ")",
                                         cases);
            }
    return Verdict::pass(cases);
}

/// Connection with ∇_a φ(X_b) = (½ C_ab^c + γ_ab^c) φ(X_c), γ the symmetrization of γ̃.
/// The anchor images must form a basis of the (free) module; the Γ on e_i is
/// recovered by inverting σ_a([φ(X_b)^j]) over 𝒜. Throws AnchorNotBasis otherwise.
template <AlgebraModel Alg>
Connection<Alg> torsion_free_construct(const SigmaModule<Alg>& module, const LieStructure& lie,
                                       const AnchorMap<Alg>& phi,
                                       const std::vector<std::vector<std::vector<typename Alg::Element>>>& gamma_tilde) {
    using E = typename Alg::Element;
    using Vec = std::vector<E>;
    const Alg& alg = module.algebra();
    const std::size_t n = lie.size();
    if (module.indices() != n || phi.size() != n) throw RankMismatch("anchor, Lie structure and Σ differ in size");
    if (module.has_post()) throw PreconditionFailed("torsion-free construction needs a free module");
    if (module.rank() != n)
        throw AnchorNotBasis("anchor has " + std::to_string(n) + " images but the module has rank " +
                             std::to_string(module.rank()));
    auto gamma = symmetrize_gamma(lie, gamma_tilde);
    const Scalar half = alg.field().rational(Rational(1, 2));
    const auto& sig = module.sigma();
    typename Connection<Alg>::Gamma out(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto& x = sig.derivations[a];
        ElementMatrix<E> shifted(n);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t j = 0; j < n; ++j) shifted[b].push_back(x.sigma(phi(b)[j]));
        auto inverse = left_inverse(alg, shifted);
        if (!inverse || identity_defect(alg, multiply(alg, *inverse, shifted)) ||
            identity_defect(alg, multiply(alg, shifted, *inverse)))
            throw AnchorNotBasis("σ_" + x.name + " of the anchor matrix is not invertible");
        // rhs_b = ∇_a φ(X_b) − X_a(φ(X_b)^j) τ̂⁰_a(e_j)
        std::vector<Vec> rhs;
        for (std::size_t b = 0; b < n; ++b) {
            Vec target = module.zero();
            for (std::size_t c = 0; c < n; ++c) {
                E coeff = half * lie.c(a, b, c) * alg.one() + gamma[a][b][c];
                if (!(coeff == alg.zero())) target = target + module.left(coeff, phi(c));
            }
            for (std::size_t j = 0; j < n; ++j) {
                E xphi = x(phi(b)[j]);
                if (!(xphi == alg.zero())) target = target - module.left(xphi, module.tau_image(a, j));
            }
            rhs.push_back(std::move(target));
        }
        for (std::size_t j = 0; j < n; ++j) {
            Vec row = module.zero();
            for (std::size_t b = 0; b < n; ++b)
                if (!((*inverse)[j][b] == alg.zero())) row = row + module.left((*inverse)[j][b], rhs[b]);
            out[a].push_back(std::move(row));
        }
    }
    return Connection<Alg>(module, std::move(out));
}

/// Torsion-free for all pairs and metric-compatible in generator and random modes.
template <AlgebraModel Alg>
Verdict levi_civita_check(const Connection<Alg>& nabla, const LieStructure& lie, const AnchorMap<Alg>& phi,
                          const HermitianForm<Alg>& h, std::size_t samples, std::uint64_t seed) {
    auto torsion_free = torsion_check(nabla, lie, phi);
    if (torsion_free.failed()) return Verdict::fail("torsion: " + torsion_free.witness, torsion_free.cases);
    Verdict compat;
    try {
        compat = metric_compat_check(nabla, h, CompatMode::Generators, samples, seed);
        compat &= metric_compat_check(nabla, h, CompatMode::Random, samples, seed);
    } catch (const NonInvariantForm& e) {
        return Verdict::fail(std::string("metric compatibility: form not invariant: ") + e.what(), torsion_free.cases);
    }
    if (compat.failed()) return Verdict::fail("metric compatibility: " + compat.witness, torsion_free.cases + compat.cases);
    return Verdict::pass(torsion_free.cases + compat.cases);
}

}  // namespace taugeo
