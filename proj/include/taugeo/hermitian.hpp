#pragma once

/** @file hermitian.hpp
 *  Hermitian forms h(m1, m2) = m1^i h_ij (m2^j)* on Σ-modules, their
 *  invariance check and the inverse h_σa of [h(e_j, σ̂_a e_k)].
 */

#include "taugeo/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace taugeo {

template <class E>
using ElementMatrix = std::vector<std::vector<E>>;

/// Left inverse of a square matrix over 𝒜 by Gauss–Jordan with left row operations.
/// Pivots must be units according to alg.try_inverse. Returns nullopt when no
/// unit pivot is found; the caller decides whether the inverse is two-sided.
template <AlgebraModel Alg>
std::optional<ElementMatrix<typename Alg::Element>> left_inverse(const Alg& alg,
                                                                 ElementMatrix<typename Alg::Element> m) {
    using E = typename Alg::Element;
    const std::size_t n = m.size();
    ElementMatrix<E> inv(n, std::vector<E>(n, alg.zero()));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw RankMismatch("left_inverse needs a square matrix");
        inv[i][i] = alg.one();
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<E> pivot_inv;
        std::size_t row = col;
        for (; row < n; ++row)
            if ((pivot_inv = alg.try_inverse(m[row][col]))) break;
        if (!pivot_inv) return std::nullopt;
        std::swap(m[row], m[col]);
        std::swap(inv[row], inv[col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = *pivot_inv * m[col][j];
            inv[col][j] = *pivot_inv * inv[col][j];
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == alg.zero()) continue;
            E factor = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] = m[r][j] - factor * m[col][j];
                inv[r][j] = inv[r][j] - factor * inv[col][j];
            }
        }
    }
    return inv;
}

template <AlgebraModel Alg>
ElementMatrix<typename Alg::Element> multiply(const Alg& alg, const ElementMatrix<typename Alg::Element>& x,
                                             const ElementMatrix<typename Alg::Element>& y) {
    ElementMatrix<typename Alg::Element> out(x.size(), std::vector<typename Alg::Element>(y.empty() ? 0 : y[0].size(), alg.zero()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < y.size(); ++k) {
            if (x[i][k] == alg.zero()) continue;
            for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = out[i][j] + x[i][k] * y[k][j];
        }
    return out;
}

/// Position of the first entry differing from the identity, if any.
template <AlgebraModel Alg>
std::optional<std::pair<std::size_t, std::size_t>> identity_defect(const Alg& alg,
                                                                    const ElementMatrix<typename Alg::Element>& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (!(m[i][j] == (i == j ? alg.one() : alg.zero()))) return std::make_pair(i, j);
    return std::nullopt;
}

template <AlgebraModel Alg>
class HermitianForm {
public:
    using E = typename Alg::Element;
    using Vec = std::vector<E>;

    HermitianForm(Alg alg, ElementMatrix<E> components) : alg_(std::move(alg)), h_(std::move(components)) {
        for (const auto& row : h_)
            if (row.size() != h_.size()) throw RankMismatch("hermitian form components must be square");
    }

    /// h_ij = δ_ij.
    static HermitianForm identity(const Alg& alg, std::size_t rank) {
        ElementMatrix<E> h(rank, std::vector<E>(rank, alg.zero()));
        for (std::size_t i = 0; i < rank; ++i) h[i][i] = alg.one();
        return HermitianForm(alg, std::move(h));
    }

    std::size_t rank() const { return h_.size(); }
    const ElementMatrix<E>& components() const { return h_; }
    const E& operator()(std::size_t i, std::size_t j) const { return h_.at(i).at(j); }

    E eval(const Vec& m1, const Vec& m2) const {
        if (m1.size() != rank() || m2.size() != rank())
            throw RankMismatch("hermitian form of rank " + std::to_string(rank()) + " applied to elements of rank " +
                               std::to_string(m1.size()) + " and " + std::to_string(m2.size()));
        const E zero = alg_.zero();
        E out = zero;
        for (std::size_t j = 0; j < rank(); ++j) {
            if (m2[j] == zero) continue;
            E row = zero;
            for (std::size_t i = 0; i < rank(); ++i)
                if (!(m1[i] == zero) && !(h_[i][j] == zero)) row = row + m1[i] * h_[i][j];
            if (!(row == zero)) out = out + row * alg_.star(m2[j]);
        }
        return out;
    }

    /// h_ij* = h_ji, or the first offending pair.
    std::optional<std::pair<std::size_t, std::size_t>> symmetry_defect() const {
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (!(alg_.star(h_[i][j]) == h_[j][i])) return std::make_pair(i, j);
        return std::nullopt;
    }

private:
    Alg alg_;
    ElementMatrix<E> h_;
};

template <AlgebraModel Alg>
typename Alg::Element hermitian_eval(const HermitianForm<Alg>& h, const std::vector<typename Alg::Element>& m1,
                                     const std::vector<typename Alg::Element>& m2) {
    return h.eval(m1, m2);
}

/// h(fm1, m2) = f h(m1, m2), h(m1, fm2) = h(m1, m2) f*, additivity, h(m1, m2)* = h(m2, m1),
/// on random module elements.
template <AlgebraModel Alg>
Verdict hermitian_axiom_check(const HermitianForm<Alg>& h, const SigmaModule<Alg>& module, std::size_t samples,
                              std::uint64_t seed) {
    using E = typename Alg::Element;
    const Alg& alg = module.algebra();
    if (h.rank() != module.rank()) throw RankMismatch("form and module differ in rank");
    if (auto d = h.symmetry_defect())
        return Verdict::fail("h_ij* ≠ h_ji at (" + std::to_string(d->first + 1) + "," + std::to_string(d->second + 1) +
                                 ")",
                             1);
    std::size_t cases = 1;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        E f = alg.random_element(rng);
        auto m1 = module.random_element(rng);
        auto m2 = module.random_element(rng);
        auto m3 = module.random_element(rng);
        std::string where = "m1 = " + module.render(m1) + ", m2 = " + module.render(m2);
        E base = h.eval(m1, m2);
        ++cases;
        E lhs = h.eval(module.left(f, m1), m2);
        E rhs = f * base;
        if (!(lhs == rhs)) return Verdict::fail("h(fm1, m2) ≠ f h(m1, m2) at " + where + ", f = " + alg.render(f), cases);
        ++cases;
        lhs = h.eval(m1, module.left(f, m2));
        rhs = base * alg.star(f);
        if (!(lhs == rhs)) return Verdict::fail("h(m1, fm2) ≠ h(m1, m2) f* at " + where + ", f = " + alg.render(f), cases);
        ++cases;
        lhs = h.eval(m1 + m3, m2);
        rhs = base + h.eval(m3, m2);
        if (!(lhs == rhs)) return Verdict::fail("h not additive at " + where, cases);
        ++cases;
        lhs = alg.star(base);
        rhs = h.eval(m2, m1);
        if (!(lhs == rhs))
            return Verdict::fail("h(m1, m2)* ≠ h(m2, m1) at " + where + ": " + alg.render(lhs) + " vs " + alg.render(rhs),
                                 cases);
        ++cases;
        E self = h.eval(m1, m1);
        if (!(alg.star(self) == self)) return Verdict::fail("h(m, m) not self-adjoint at m = " + module.render(m1), cases);
    }
    return Verdict::pass(cases);
}

/// σ_a(h(m1, m2)) = h(σ̂_a m1, τ̂_ι(a) m2) and τ_a(h(m1, m2)) = h(τ̂_a m1, σ̂_ι(a) m2).
/// Probes the basis pairs first, then random pairs.
template <AlgebraModel Alg>
Verdict invariance_check(const HermitianForm<Alg>& h, const SigmaModule<Alg>& module, std::size_t samples,
                         std::uint64_t seed) {
    using Vec = std::vector<typename Alg::Element>;
    const auto& sig = module.sigma();
    if (!sig.starred()) throw NoStarStructure("invariance needs an involution ι");
    if (h.rank() != module.rank()) throw RankMismatch("form and module differ in rank");
    const Alg& alg = module.algebra();
    std::size_t cases = 0;
    auto test = [&](const Vec& m1, const Vec& m2) -> std::optional<Verdict> {
        for (std::size_t a = 0; a < module.indices(); ++a) {
            const auto& x = sig.derivations[a];
            std::size_t b = sig.iota_of(a);
            auto base = h.eval(m1, m2);
            ++cases;
            auto lhs = x.sigma(base);
            auto rhs = h.eval(module.sigma_hat(a, m1), module.tau_hat(b, m2));
            if (!(lhs == rhs))
                return Verdict::fail("σ_" + x.name + "(h(m1, m2)) ≠ h(σ̂ m1, τ̂_ι m2) at m1 = " + module.render(m1) +
                                         ", m2 = " + module.render(m2) + ": " + alg.render(lhs) + " vs " +
                                         alg.render(rhs),
                                     cases);
            ++cases;
            lhs = x.tau(base);
            rhs = h.eval(module.tau_hat(a, m1), module.sigma_hat(b, m2));
            if (!(lhs == rhs))
                return Verdict::fail("τ_" + x.name + "(h(m1, m2)) ≠ h(τ̂ m1, σ̂_ι m2) at m1 = " + module.render(m1) +
                                         ", m2 = " + module.render(m2) + ": " + alg.render(lhs) + " vs " +
                                         alg.render(rhs),
                                     cases);
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < module.rank(); ++i)
        for (std::size_t j = 0; j < module.rank(); ++j)
            if (auto v = test(module.project(module.basis(i)), module.project(module.basis(j)))) return *v;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto m1 = module.random_element(rng);
        auto m2 = module.random_element(rng);
        if (auto v = test(m1, m2)) return *v;
    }
    return Verdict::pass(cases);
}

/// The matrix [h(e_j, σ̂_a e_k)]_jk.
template <AlgebraModel Alg>
ElementMatrix<typename Alg::Element> form_sigma_matrix(const HermitianForm<Alg>& h, const SigmaModule<Alg>& module,
                                                       std::size_t a) {
    const std::size_t n = module.rank();
    ElementMatrix<typename Alg::Element> m(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            m[j].push_back(h.eval(module.basis(j), module.sigma_hat(a, module.basis(k))));
    return m;
}

/// h_σa with h_σa^ij h(e_j, σ̂_a e_k) = δ_ik. Verified on both sides; throws NotInvertible otherwise.
template <AlgebraModel Alg>
ElementMatrix<typename Alg::Element> form_sigma_inverse(const HermitianForm<Alg>& h, const SigmaModule<Alg>& module,
                                                        std::size_t a) {
    const Alg& alg = module.algebra();
    auto m = form_sigma_matrix(h, module, a);
    auto inv = left_inverse(alg, m);
    const std::string label = "[h(e_j, σ̂_" + module.sigma().derivations.at(a).name + " e_k)]";
    if (!inv) throw NotInvertible(label + ": Gauss–Jordan found no unit pivot");
    if (auto d = identity_defect(alg, multiply(alg, *inv, m)))
        throw NotInvertible(label + ": left inverse fails at (" + std::to_string(d->first + 1) + "," +
                            std::to_string(d->second + 1) + ")");
    if (auto d = identity_defect(alg, multiply(alg, m, *inv)))
        throw NotInvertible(label + ": inverse is only one-sided, defect at (" + std::to_string(d->first + 1) + "," +
                            std::to_string(d->second + 1) + ")");
    return *inv;
}

}  // namespace taugeo
