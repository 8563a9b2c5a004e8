#pragma once

/** @file module.hpp
 *  Σ-modules of coefficient tuples over a (σ,τ)-algebra.
 *
 *  A module of rank n stores σ̂_a(e_i), τ̂_a(e_i) ∈ 𝒜ⁿ and extends them by
 *  σ̂_a(m^i e_i) = σ_a(m^i) σ̂_a(e_i). An optional post map T realises image
 *  modules T(M) with maps T∘σ̂_a, T∘τ̂_a; projective modules are the case T = p.
 *  Bimodules carry a right twist θ_i with e_i f = θ_i(f) e_i, and the star is
 *  (m^i e_i)* = θ_i((m^i)*) e_i.
 */

#include "taugeo/sigma_tau.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace taugeo {

template <AlgebraModel Alg>
class SigmaModule {
public:
    using E = typename Alg::Element;
    using Vec = std::vector<E>;
    using VecMap = std::function<Vec(const Vec&)>;
    /// images[a][i] is the image of e_i under the a-th map.
    using Images = std::vector<std::vector<Vec>>;

    SigmaModule(SigmaTauAlgebra<Alg> sigma, std::size_t rank, std::optional<Images> sigma_images = std::nullopt,
                std::optional<Images> tau_images = std::nullopt)
        : sigma_(std::move(sigma)), rank_(rank) {
        sigma_images_ = sigma_images ? std::move(*sigma_images) : default_images();
        tau_images_ = tau_images ? std::move(*tau_images) : default_images();
        validate_images(sigma_images_, "σ̂");
        validate_images(tau_images_, "τ̂");
    }

    const SigmaTauAlgebra<Alg>& sigma() const { return sigma_; }
    const Alg& algebra() const { return sigma_.algebra; }
    std::size_t rank() const { return rank_; }
    std::size_t indices() const { return sigma_.size(); }
    const Images& sigma_images() const { return sigma_images_; }
    const Images& tau_images() const { return tau_images_; }

    bool has_post() const { return static_cast<bool>(post_); }
    bool has_right_action() const { return !twist_.empty(); }
    bool has_star() const { return starred_; }

    /// Module with maps T∘σ̂_a, T∘τ̂_a. The map is composed after any existing post map.
    SigmaModule with_post(VecMap t) const {
        SigmaModule out = *this;
        if (post_) {
            VecMap inner = post_;
            out.post_ = [inner, t](const Vec& m) { return t(inner(m)); };
        } else {
            out.post_ = std::move(t);
        }
        return out;
    }

    /// Right action e_i f = θ_i(f) e_i; an empty list means θ_i = id.
    SigmaModule with_right_twist(std::vector<Map<E>> theta = {}) const {
        SigmaModule out = *this;
        if (theta.empty()) theta.assign(rank_, [](const E& f) { return f; });
        if (theta.size() != rank_) throw RankMismatch("right twist needs one map per basis element");
        out.twist_ = std::move(theta);
        return out;
    }

    /// Enables (m^i e_i)* = θ_i((m^i)*) e_i. Requires a star on the algebra.
    SigmaModule with_star() const {
        if (!algebra().has_star()) throw NoStarStructure("module star needs a star on the algebra");
        SigmaModule out = has_right_action() ? *this : with_right_twist();
        out.starred_ = true;
        return out;
    }

    Vec zero() const { return Vec(rank_, algebra().zero()); }
    Vec basis(std::size_t i) const {
        Vec out = zero();
        out.at(i) = algebra().one();
        return out;
    }

    Vec project(const Vec& m) const { return post_ ? post_(m) : m; }

    Vec left(const E& f, const Vec& m) const {
        check(m);
        Vec out;
        out.reserve(rank_);
        for (const auto& c : m) out.push_back(f * c);
        return out;
    }

    Vec right(const Vec& m, const E& f) const {
        check(m);
        if (!has_right_action()) throw PreconditionFailed("module has no right action");
        Vec out;
        out.reserve(rank_);
        for (std::size_t i = 0; i < rank_; ++i) out.push_back(m[i] * twist_[i](f));
        return out;
    }

    /// e_i f as a tuple.
    Vec basis_times(std::size_t i, const E& f) const { return right(basis(i), f); }

    /// σ̂⁰_a(m) = σ_a(m^i) σ̂_a(e_i) before any post map.
    Vec ambient_sigma_hat(std::size_t a, const Vec& m) const {
        return extend(sigma_.derivations.at(a).sigma, sigma_images_.at(a), m);
    }
    Vec ambient_tau_hat(std::size_t a, const Vec& m) const {
        return extend(sigma_.derivations.at(a).tau, tau_images_.at(a), m);
    }
    Vec sigma_hat(std::size_t a, const Vec& m) const { return project(ambient_sigma_hat(a, m)); }
    Vec tau_hat(std::size_t a, const Vec& m) const { return project(ambient_tau_hat(a, m)); }

    /// The image of e_i under τ̂⁰_a, used by the connection formula.
    const Vec& tau_image(std::size_t a, std::size_t i) const { return tau_images_.at(a).at(i); }

    Vec star(const Vec& m) const {
        check(m);
        if (!starred_) throw NoStarStructure("module has no star structure");
        Vec out;
        out.reserve(rank_);
        for (std::size_t i = 0; i < rank_; ++i) out.push_back(twist_[i](algebra().star(m[i])));
        return out;
    }

    /// Random element of the module (projected when a post map is present).
    Vec random_element(std::mt19937_64& rng) const {
        Vec out;
        out.reserve(rank_);
        for (std::size_t i = 0; i < rank_; ++i) out.push_back(algebra().random_element(rng));
        return project(out);
    }

    std::string render(const Vec& m) const {
        std::string out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == algebra().zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + algebra().render(m[i]) + ")*e" + std::to_string(i + 1);
        }
        return out.empty() ? "0" : out;
    }

    bool equal(const Vec& x, const Vec& y) const {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(x[i] == y[i])) return false;
        return true;
    }

    void check(const Vec& m) const {
        if (m.size() != rank_)
            throw RankMismatch("module element has " + std::to_string(m.size()) + " components, rank is " +
                               std::to_string(rank_));
    }

private:
    Images default_images() const {
        Images out(sigma_.size());
        for (auto& row : out)
            for (std::size_t i = 0; i < rank_; ++i) row.push_back(basis(i));
        return out;
    }

    void validate_images(const Images& images, const char* label) const {
        if (images.size() != sigma_.size())
            throw RankMismatch(std::string(label) + " images needed for every derivation index");
        for (const auto& row : images) {
            if (row.size() != rank_) throw RankMismatch(std::string(label) + " images needed for every basis element");
            for (const auto& v : row) check(v);
        }
    }

    Vec extend(const Map<E>& alpha, const std::vector<Vec>& images, const Vec& m) const {
        check(m);
        Vec out = zero();
        for (std::size_t i = 0; i < rank_; ++i) {
            if (m[i] == algebra().zero()) continue;
            E c = alpha(m[i]);
            for (std::size_t j = 0; j < rank_; ++j)
                if (!(images[i][j] == algebra().zero())) out[j] = out[j] + c * images[i][j];
        }
        return out;
    }

    SigmaTauAlgebra<Alg> sigma_;
    std::size_t rank_;
    Images sigma_images_;
    Images tau_images_;
    VecMap post_;
    std::vector<Map<E>> twist_;
    bool starred_ = false;
};

template <class E>
std::vector<E> operator+(std::vector<E> x, const std::vector<E>& y) {
    if (x.size() != y.size()) throw RankMismatch("module elements of different rank");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + y[i];
    return x;
}

template <class E>
std::vector<E> operator-(std::vector<E> x, const std::vector<E>& y) {
    if (x.size() != y.size()) throw RankMismatch("module elements of different rank");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] - y[i];
    return x;
}

template <class E>
std::vector<E> operator*(const Scalar& c, std::vector<E> x) {
    for (auto& v : x) v = c * v;
    return x;
}

/// The free module 𝒜ⁿ; omitted images default to σ̂_a(e_i) = τ̂_a(e_i) = e_i.
template <AlgebraModel Alg>
SigmaModule<Alg> free_sigma_module(const SigmaTauAlgebra<Alg>& sigma, std::size_t rank,
                                   std::optional<typename SigmaModule<Alg>::Images> sigma_images = std::nullopt,
                                   std::optional<typename SigmaModule<Alg>::Images> tau_images = std::nullopt) {
    return SigmaModule<Alg>(sigma, rank, std::move(sigma_images), std::move(tau_images));
}

/// T(m1 + m2) = T(m1) + T(m2) and T(f m) = f T(m) on probes and random samples.
template <AlgebraModel Alg>
Verdict linearity_check(const SigmaModule<Alg>& module, const typename SigmaModule<Alg>::VecMap& t,
                        std::size_t samples, std::uint64_t seed) {
    const Alg& alg = module.algebra();
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto f = alg.random_element(rng);
        auto m1 = module.random_element(rng);
        auto m2 = module.random_element(rng);
        ++cases;
        if (!module.equal(t(m1 + m2), t(m1) + t(m2)))
            return Verdict::fail("T not additive at m1 = " + module.render(m1) + ", m2 = " + module.render(m2), cases);
        ++cases;
        auto lhs = t(module.left(f, m1));
        auto rhs = module.left(f, t(m1));
        if (!module.equal(lhs, rhs))
            return Verdict::fail("T(f m) ≠ f T(m) at f = " + alg.render(f) + ", m = " + module.render(m1) + ": " +
                                     module.render(lhs) + " vs " + module.render(rhs),
                                 cases);
    }
    return Verdict::pass(cases);
}

/// T(M) with maps T∘σ̂_a, T∘τ̂_a. Throws NonLinearMap unless T is left 𝒜-linear on samples.
template <AlgebraModel Alg>
SigmaModule<Alg> image_sigma_module(const SigmaModule<Alg>& module, typename SigmaModule<Alg>::VecMap t,
                                    std::size_t samples = 50, std::uint64_t seed = 1) {
    auto verdict = linearity_check(module, t, samples, seed);
    if (verdict.failed()) throw NonLinearMap(verdict.witness);
    return module.with_post(std::move(t));
}

/// Left laws, right laws when a right action is present, star axioms when starred
/// (including σ̂_ι(a) = τ̂_a*).
template <AlgebraModel Alg>
Verdict module_law_check(const SigmaModule<Alg>& module, std::size_t samples, std::uint64_t seed) {
    using E = typename Alg::Element;
    using Vec = std::vector<E>;
    const Alg& alg = module.algebra();
    const auto& sig = module.sigma();
    std::size_t cases = 0;
    auto mismatch = [&](const std::string& law, const std::string& where, const Vec& lhs, const Vec& rhs) {
        return Verdict::fail(law + " fails at " + where + ": " + module.render(lhs) + " vs " + module.render(rhs),
                             cases);
    };
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        E f = alg.random_element(rng);
        E g = alg.random_element(rng);
        Vec m = module.random_element(rng);
        std::string where = "f = " + alg.render(f) + ", m = " + module.render(m);
        for (std::size_t a = 0; a < module.indices(); ++a) {
            const auto& x = sig.derivations[a];
            ++cases;
            Vec lhs = module.sigma_hat(a, module.left(f, m));
            Vec rhs = module.left(x.sigma(f), module.sigma_hat(a, m));
            if (!module.equal(lhs, rhs)) return mismatch("σ̂_" + x.name + "(fm) = σ(f)σ̂(m)", where, lhs, rhs);
            ++cases;
            lhs = module.tau_hat(a, module.left(f, m));
            rhs = module.left(x.tau(f), module.tau_hat(a, m));
            if (!module.equal(lhs, rhs)) return mismatch("τ̂_" + x.name + "(fm) = τ(f)τ̂(m)", where, lhs, rhs);
            if (module.has_right_action()) {
                ++cases;
                lhs = module.sigma_hat(a, module.right(m, f));
                rhs = module.right(module.sigma_hat(a, m), x.sigma(f));
                if (!module.equal(lhs, rhs)) return mismatch("σ̂_" + x.name + "(mf) = σ̂(m)σ(f)", where, lhs, rhs);
                ++cases;
                lhs = module.tau_hat(a, module.right(m, f));
                rhs = module.right(module.tau_hat(a, m), x.tau(f));
                if (!module.equal(lhs, rhs)) return mismatch("τ̂_" + x.name + "(mf) = τ̂(m)τ(f)", where, lhs, rhs);
            }
            if (module.has_star() && sig.starred()) {
                ++cases;
                std::size_t b = sig.iota_of(a);
                lhs = module.sigma_hat(b, m);
                rhs = module.star(module.tau_hat(a, module.star(m)));
                if (!module.equal(lhs, rhs))
                    return mismatch("σ̂_ι(" + x.name + ") = τ̂_" + x.name + "*", "m = " + module.render(m), lhs, rhs);
            }
        }
        if (module.has_right_action()) {
            ++cases;
            Vec lhs = module.right(module.left(f, m), g);
            Vec rhs = module.left(f, module.right(m, g));
            if (!module.equal(lhs, rhs)) return mismatch("(fm)g = f(mg)", where, lhs, rhs);
            ++cases;
            lhs = module.right(module.right(m, f), g);
            rhs = module.right(m, f * g);
            if (!module.equal(lhs, rhs)) return mismatch("(mf)g = m(fg)", where, lhs, rhs);
        }
        if (module.has_star()) {
            ++cases;
            Vec lhs = module.star(module.star(m));
            if (!module.equal(lhs, m)) return mismatch("m** = m", where, lhs, m);
            ++cases;
            lhs = module.star(module.right(module.left(f, m), g));
            Vec rhs = module.right(module.left(alg.star(g), module.star(m)), alg.star(f));
            if (!module.equal(lhs, rhs)) return mismatch("(fmg)* = g*m*f*", where + ", g = " + alg.render(g), lhs, rhs);
        }
    }
    return Verdict::pass(cases);
}

/// [σ̂_a, p] = [τ̂_a, p] = 0 on random elements of the ambient module. Throws NotAProjection unless p² = p.
template <AlgebraModel Alg>
Verdict projective_commutation_check(const SigmaModule<Alg>& module, const typename SigmaModule<Alg>::VecMap& p,
                                     std::size_t samples, std::uint64_t seed) {
    std::size_t cases = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto rng = sample_rng(seed, k);
        auto m = module.random_element(rng);
        auto pm = p(m);
        if (!module.equal(p(pm), pm)) throw NotAProjection("p² ≠ p at m = " + module.render(m));
        for (std::size_t a = 0; a < module.indices(); ++a) {
            const auto& name = module.sigma().derivations[a].name;
            ++cases;
            auto lhs = module.sigma_hat(a, pm);
            auto rhs = p(module.sigma_hat(a, m));
            if (!module.equal(lhs, rhs))
                return Verdict::fail("[σ̂_" + name + ", p] ≠ 0 at m = " + module.render(m) + ": " + module.render(lhs) +
                                         " vs " + module.render(rhs),
                                     cases);
            ++cases;
            lhs = module.tau_hat(a, pm);
            rhs = p(module.tau_hat(a, m));
            if (!module.equal(lhs, rhs))
                return Verdict::fail("[τ̂_" + name + ", p] ≠ 0 at m = " + module.render(m) + ": " + module.render(lhs) +
                                         " vs " + module.render(rhs),
                                     cases);
        }
    }
    return Verdict::pass(cases);
}

}  // namespace taugeo
