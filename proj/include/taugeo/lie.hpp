#pragma once

/** @file lie.hpp
 *  (σ,τ)-Lie structure (R, C) on a tangent basis and the R-twisted bracket.
 */

#include "taugeo/sigma_tau.hpp"

#include <vector>

namespace taugeo {

class LieStructure {
public:
    LieStructure(std::size_t n, const ScalarField& field);

    /// R(X_a ⊗ X_b) = X_b ⊗ X_a and C = 0.
    static LieStructure flip(std::size_t n, const ScalarField& field);

    std::size_t size() const { return n_; }
    const ScalarField& field() const { return field_; }
    const Scalar& r(std::size_t a, std::size_t b, std::size_t p, std::size_t q) const { return r_[idx4(a, b, p, q)]; }
    Scalar& r(std::size_t a, std::size_t b, std::size_t p, std::size_t q) { return r_[idx4(a, b, p, q)]; }
    const Scalar& c(std::size_t a, std::size_t b, std::size_t p) const { return c_[idx3(a, b, p)]; }
    Scalar& c(std::size_t a, std::size_t b, std::size_t p) { return c_[idx3(a, b, p)]; }
    bool is_flip() const;

private:
    std::size_t idx4(std::size_t a, std::size_t b, std::size_t p, std::size_t q) const {
        return ((a * n_ + b) * n_ + p) * n_ + q;
    }
    std::size_t idx3(std::size_t a, std::size_t b, std::size_t p) const { return (a * n_ + b) * n_ + p; }

    std::size_t n_;
    ScalarField field_;
    std::vector<Scalar> r_;
    std::vector<Scalar> c_;
};

/// (X_a∘X_b − R_ab^pq X_p∘X_q)(f).
template <AlgebraModel Alg>
typename Alg::Element bracket_apply(const SigmaTauAlgebra<Alg>& sigma_alg, const LieStructure& lie, std::size_t a,
                                    std::size_t b, const typename Alg::Element& f) {
    const auto& x = sigma_alg.derivations;
    auto out = x[a](x[b](f));
    for (std::size_t p = 0; p < lie.size(); ++p)
        for (std::size_t q = 0; q < lie.size(); ++q)
            if (!lie.r(a, b, p, q).is_zero()) out = out - lie.r(a, b, p, q) * x[p](x[q](f));
    return out;
}

/// R² = id, R-antisymmetry of C, and closure of the bracket on probes and random elements.
template <AlgebraModel Alg>
Verdict lie_structure_check(const SigmaTauAlgebra<Alg>& sigma_alg, const LieStructure& lie, std::size_t samples,
                            std::uint64_t seed) {
    const std::size_t n = lie.size();
    const ScalarField& field = lie.field();
    if (n != sigma_alg.size()) throw RankMismatch("Lie structure and tangent basis differ in size");
    std::size_t cases = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) {
                    ++cases;
                    Scalar sum = field.zero();
                    for (std::size_t p = 0; p < n; ++p)
                        for (std::size_t q = 0; q < n; ++q) sum += lie.r(a, b, p, q) * lie.r(p, q, r, s);
                    Scalar expected = (a == r && b == s) ? field.one() : field.zero();
                    if (sum != expected)
                        return Verdict::fail("R² ≠ id at (" + std::to_string(a) + "," + std::to_string(b) + ";" +
                                                 std::to_string(r) + "," + std::to_string(s) + "): " + render(sum),
                                             cases);
                }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t r = 0; r < n; ++r) {
                ++cases;
                Scalar sum = field.zero();
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q) sum += lie.r(a, b, p, q) * lie.c(p, q, r);
                if (sum != -lie.c(a, b, r))
                    return Verdict::fail("R_ab^pq C_pq^r ≠ −C_ab^r at (" + std::to_string(a) + "," +
                                             std::to_string(b) + "," + std::to_string(r) + ")",
                                         cases);
            }
    const Alg& alg = sigma_alg.algebra;
    std::vector<typename Alg::Element> elements = alg.probes();
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        elements.push_back(alg.random_element(rng));
    }
    for (const auto& f : elements)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                ++cases;
                auto lhs = bracket_apply(sigma_alg, lie, a, b, f);
                auto rhs = alg.zero();
                for (std::size_t p = 0; p < n; ++p)
                    if (!lie.c(a, b, p).is_zero()) rhs = rhs + lie.c(a, b, p) * sigma_alg.derivations[p](f);
                if (!(lhs == rhs))
                    return Verdict::fail("closure fails for [" + sigma_alg.derivations[a].name + "," +
                                             sigma_alg.derivations[b].name + "]_R at f = " + alg.render(f) + ": " +
                                             alg.render(lhs) + " vs C-term " + alg.render(rhs),
                                         cases);
            }
    return Verdict::pass(cases);
}

}  // namespace taugeo
