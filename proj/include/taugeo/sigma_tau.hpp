#pragma once

/** @file sigma_tau.hpp
 *  Algebra-independent (σ,τ)-structures: twisted derivations as maps, the
 *  (σ,τ)-algebra Σ with optional involution ι, and their law checks.
 *
 *  An algebra model provides zero, one, lift, field, probes (a spanning set used
 *  for generator-level checks), random_element, star, render, coordinates and
 *  try_inverse. PresentedAlgebra adapts a Presentation; MatrixAlgebra lives in
 *  matrix.hpp.
 */

#include "taugeo/error.hpp"
#include "taugeo/linalg.hpp"
#include "taugeo/maps.hpp"
#include "taugeo/verdict.hpp"

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace taugeo {

template <class E>
using Map = std::function<E(const E&)>;

template <class E>
struct TwistedDerivation {
    std::string name;
    Map<E> sigma;
    Map<E> tau;
    Map<E> apply;

    E operator()(const E& f) const { return apply(f); }
};

template <class A>
concept AlgebraModel = requires(const A& alg, const typename A::Element& e, std::mt19937_64& rng, const Scalar& c) {
    { alg.zero() } -> std::convertible_to<typename A::Element>;
    { alg.one() } -> std::convertible_to<typename A::Element>;
    { alg.lift(c) } -> std::convertible_to<typename A::Element>;
    { alg.field() } -> std::convertible_to<const ScalarField&>;
    { alg.probes() } -> std::convertible_to<std::vector<typename A::Element>>;
    { alg.random_element(rng) } -> std::convertible_to<typename A::Element>;
    { alg.has_star() } -> std::convertible_to<bool>;
    { alg.star(e) } -> std::convertible_to<typename A::Element>;
    { alg.render(e) } -> std::convertible_to<std::string>;
    { alg.coordinates(e) } -> std::convertible_to<Terms>;
    { alg.try_inverse(e) } -> std::convertible_to<std::optional<typename A::Element>>;
};

class PresentedAlgebra {
public:
    using Element = AlgebraElement;

    explicit PresentedAlgebra(PresentationPtr pres, int random_degree = 3)
        : pres_(std::move(pres)), random_degree_(random_degree) {}

    const PresentationPtr& presentation() const { return pres_; }
    Element zero() const { return AlgebraElement(pres_); }
    Element one() const { return AlgebraElement::scalar(pres_, pres_->field().one()); }
    Element lift(const Scalar& c) const { return AlgebraElement::scalar(pres_, c); }
    const ScalarField& field() const { return pres_->field(); }
    std::vector<Element> probes() const {
        std::vector<Element> out;
        for (std::size_t g = 0; g < pres_->size(); ++g) out.push_back(AlgebraElement::generator(pres_, g));
        return out;
    }
    Element random_element(std::mt19937_64& rng) const { return taugeo::random_element(pres_, rng, random_degree_); }
    bool has_star() const { return pres_->has_star(); }
    Element star(const Element& e) const { return e.star(); }
    std::string render(const Element& e) const { return taugeo::render(e); }
    Terms coordinates(const Element& e) const { return e.terms(); }
    /// Only nonzero scalars are recognised as units.
    std::optional<Element> try_inverse(const Element& e) const {
        if (!e.is_scalar() || e.is_zero()) return std::nullopt;
        return lift(e.scalar_part().inverse());
    }

private:
    PresentationPtr pres_;
    int random_degree_;
};

inline Map<AlgebraElement> as_map(const Endomorphism& alpha) {
    return [alpha](const AlgebraElement& f) { return alpha(f); };
}

inline TwistedDerivation<AlgebraElement> as_twisted(const Derivation& x) {
    return {x.name(), as_map(x.sigma()), as_map(x.tau()), [x](const AlgebraElement& f) { return x(f); }};
}

template <AlgebraModel Alg>
struct SigmaTauAlgebra {
    using Element = typename Alg::Element;

    Alg algebra;
    std::vector<TwistedDerivation<Element>> derivations;
    std::optional<std::vector<std::size_t>> iota;

    SigmaTauAlgebra(Alg alg, std::vector<TwistedDerivation<Element>> ders,
                    std::optional<std::vector<std::size_t>> involution = std::nullopt)
        : algebra(std::move(alg)), derivations(std::move(ders)), iota(std::move(involution)) {
        if (!iota) return;
        if (iota->size() != derivations.size()) throw StructuralError("ι must be defined on every index");
        for (std::size_t a = 0; a < iota->size(); ++a) {
            std::size_t b = (*iota)[a];
            if (b >= iota->size() || (*iota)[b] != a) throw StructuralError("ι is not an involution on the index set");
        }
        if (!algebra.has_star()) throw NoStarStructure("ι given for an algebra without star structure");
    }

    std::size_t size() const { return derivations.size(); }
    bool starred() const { return iota.has_value(); }
    std::size_t iota_of(std::size_t a) const {
        if (!iota) throw NoStarStructure("Σ has no involution ι");
        return (*iota)[a];
    }
};

/// α*(f) = α(f*)*.
template <AlgebraModel Alg>
Map<typename Alg::Element> star_of_map(const Alg& alg, Map<typename Alg::Element> alpha) {
    if (!alg.has_star()) throw NoStarStructure();
    return [alg, alpha](const typename Alg::Element& f) { return alg.star(alpha(alg.star(f))); };
}

/// X* as a (τ*, σ*)-derivation.
template <AlgebraModel Alg>
TwistedDerivation<typename Alg::Element> star_of_derivation(const Alg& alg,
                                                            const TwistedDerivation<typename Alg::Element>& x) {
    return {x.name + "*", star_of_map(alg, x.tau), star_of_map(alg, x.sigma), star_of_map(alg, x.apply)};
}

/// Compares two maps on probes and then on random samples.
template <AlgebraModel Alg>
Verdict compare_maps(const Alg& alg, const Map<typename Alg::Element>& lhs, const Map<typename Alg::Element>& rhs,
                     std::size_t samples, std::uint64_t seed, const std::string& label) {
    std::size_t cases = 0;
    auto test = [&](const typename Alg::Element& f) -> std::optional<Verdict> {
        ++cases;
        auto x = lhs(f);
        auto y = rhs(f);
        if (x == y) return std::nullopt;
        return Verdict::fail(label + " at f = " + alg.render(f) + ": " + alg.render(x) + " vs " + alg.render(y),
                             cases);
    };
    for (const auto& f : alg.probes())
        if (auto v = test(f)) return *v;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        if (auto v = test(alg.random_element(rng))) return *v;
    }
    return Verdict::pass(cases);
}

/// X(fg) − σ(f)X(g) − X(f)τ(g) on probe pairs, then on random pairs; also X(1) = 0.
/// sigma and tau default to the derivation's own maps.
template <AlgebraModel Alg>
Verdict leibniz_check(const Alg& alg, const TwistedDerivation<typename Alg::Element>& x, std::size_t samples,
                      std::uint64_t seed, Map<typename Alg::Element> sigma = {}, Map<typename Alg::Element> tau = {}) {
    using E = typename Alg::Element;
    if (!sigma) sigma = x.sigma;
    if (!tau) tau = x.tau;
    E at_one = x(alg.one());
    if (!(at_one == alg.zero())) return Verdict::fail(x.name + "(1) = " + alg.render(at_one), 1);
    std::size_t cases = 1;
    auto test = [&](const E& f, const E& g) -> std::optional<Verdict> {
        ++cases;
        E residual = x(f * g) - sigma(f) * x(g) - x(f) * tau(g);
        if (residual == alg.zero()) return std::nullopt;
        return Verdict::fail(x.name + ": f = " + alg.render(f) + ", g = " + alg.render(g) +
                                 ", X(fg) - σ(f)X(g) - X(f)τ(g) = " + alg.render(residual),
                             cases);
    };
    auto probes = alg.probes();
    for (const auto& f : probes)
        for (const auto& g : probes)
            if (auto v = test(f, g)) return *v;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        E f = alg.random_element(rng);
        E g = alg.random_element(rng);
        if (auto v = test(f, g)) return *v;
    }
    return Verdict::pass(cases);
}

/// X_a* = X_ι(a) and σ_ι(a) = τ_a* on probes, for every a.
template <AlgebraModel Alg>
Verdict st_star_structure_check(const SigmaTauAlgebra<Alg>& sigma_alg) {
    if (!sigma_alg.starred()) return Verdict::skipped("no involution ι");
    const Alg& alg = sigma_alg.algebra;
    std::size_t cases = 0;
    for (std::size_t a = 0; a < sigma_alg.size(); ++a) {
        const auto& xa = sigma_alg.derivations[a];
        const auto& xi = sigma_alg.derivations[sigma_alg.iota_of(a)];
        auto xa_star = star_of_derivation(alg, xa);
        for (const auto& g : alg.probes()) {
            ++cases;
            auto lhs = xa_star(g);
            auto rhs = xi(g);
            if (!(lhs == rhs))
                return Verdict::fail(xa.name + "* ≠ " + xi.name + " at " + alg.render(g) + ": " + alg.render(lhs) +
                                         " vs " + alg.render(rhs),
                                     cases);
            auto s = xi.sigma(g);
            auto t = xa_star.sigma(g);
            if (!(s == t))
                return Verdict::fail("σ_ι(" + xa.name + ") ≠ τ_" + xa.name + "* at " + alg.render(g) + ": " +
                                         alg.render(s) + " vs " + alg.render(t),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

/// φ(ψ(Y_b)(f)) = Y_b(φ(f)) with ψ(Y_b) = Σ_a psi[b][a] X_a, on probes of the source algebra.
template <AlgebraModel A1, AlgebraModel A2>
Verdict st_morphism_check(const std::function<typename A2::Element(const typename A1::Element&)>& phi,
                          const ScalarMatrix& psi, const SigmaTauAlgebra<A1>& source,
                          const SigmaTauAlgebra<A2>& target) {
    if (psi.size() != target.size()) throw RankMismatch("ψ needs one row per target derivation");
    std::size_t cases = 0;
    for (std::size_t b = 0; b < target.size(); ++b) {
        if (psi[b].size() != source.size()) throw RankMismatch("ψ needs one column per source derivation");
        for (const auto& f : source.algebra.probes()) {
            ++cases;
            auto combo = source.algebra.zero();
            for (std::size_t a = 0; a < source.size(); ++a)
                if (!psi[b][a].is_zero()) combo = combo + psi[b][a] * source.derivations[a](f);
            auto lhs = phi(combo);
            auto rhs = target.derivations[b](phi(f));
            if (!(lhs == rhs))
                return Verdict::fail("φ(ψ(" + target.derivations[b].name + ")(" + source.algebra.render(f) +
                                         ")) = " + target.algebra.render(lhs) + " but " + target.derivations[b].name +
                                         "(φ(f)) = " + target.algebra.render(rhs),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

/// For invertible φ, solves ψ(Y) = φ⁻¹∘Y∘φ in the span of the source derivations,
/// using probe values. Returns nullopt when some φ⁻¹∘Y_b∘φ is outside the span.
template <AlgebraModel Alg>
std::optional<ScalarMatrix> derive_tangent_map(const Map<typename Alg::Element>& phi,
                                               const Map<typename Alg::Element>& phi_inverse,
                                               const SigmaTauAlgebra<Alg>& source, const SigmaTauAlgebra<Alg>& target) {
    const Alg& alg = source.algebra;
    const ScalarField& field = alg.field();
    ScalarMatrix psi;
    auto probes = alg.probes();
    for (std::size_t b = 0; b < target.size(); ++b) {
        ScalarMatrix rows;
        std::vector<Scalar> rhs;
        for (const auto& f : probes) {
            Terms target_coords = alg.coordinates(phi_inverse(target.derivations[b](phi(f))));
            std::vector<Terms> columns;
            for (std::size_t a = 0; a < source.size(); ++a) columns.push_back(alg.coordinates(source.derivations[a](f)));
            std::map<Word, bool> keys;
            for (const auto& [w, c] : target_coords) keys[w] = true;
            for (const auto& col : columns)
                for (const auto& [w, c] : col) keys[w] = true;
            for (const auto& [w, unused] : keys) {
                std::vector<Scalar> row;
                for (const auto& col : columns) {
                    auto it = col.find(w);
                    row.push_back(it == col.end() ? field.zero() : it->second);
                }
                rows.push_back(std::move(row));
                auto it = target_coords.find(w);
                rhs.push_back(it == target_coords.end() ? field.zero() : it->second);
            }
        }
        auto solution = solve_linear(rows, rhs, source.size(), field);
        if (!solution) return std::nullopt;
        psi.push_back(*solution);
    }
    return psi;
}

}  // namespace taugeo
