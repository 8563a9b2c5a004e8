#pragma once

/** @file maps.hpp
 *  Algebra endomorphisms and (σ,τ)-derivations given by generator images.
 */

#include "taugeo/algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace taugeo {

class Endomorphism {
public:
    /// Validates that the images respect every relation; throws IllDefinedMap.
    static Endomorphism create(PresentationPtr pres, std::string name, std::vector<AlgebraElement> images,
                               bool unital = true);
    static Endomorphism identity(PresentationPtr pres);
    /// g -> factors[g] * g, checked like any other endomorphism.
    static Endomorphism diagonal(PresentationPtr pres, std::string name, const std::vector<Scalar>& factors);

    const std::string& name() const { return impl_->name; }
    const PresentationPtr& presentation() const { return impl_->pres; }
    const std::vector<AlgebraElement>& images() const { return impl_->images; }
    bool unital() const { return impl_->unital; }

    AlgebraElement operator()(const AlgebraElement& f) const;
    /// Multiplicative extension on a word, which need not be in normal form.
    AlgebraElement apply_word(const Word& w) const;

    /// (this ∘ other)(f) = this(other(f)).
    Endomorphism compose(const Endomorphism& other, std::string name = {}) const;
    /// n-fold composite; n >= 0.
    Endomorphism power(int n) const;
    /// α*(f) = α(f*)*; requires a star structure.
    Endomorphism star() const;
    bool equals_on_generators(const Endomorphism& other) const;

private:
    struct Impl {
        PresentationPtr pres;
        std::string name;
        std::vector<AlgebraElement> images;
        bool unital = true;
        mutable std::mutex mutex;
        mutable std::map<Word, AlgebraElement> cache;
    };
    explicit Endomorphism(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

class Derivation {
public:
    /// Extends generator images by the twisted Leibniz rule; throws IllDefinedDerivation
    /// naming the first relation it does not respect.
    static Derivation extend(std::string name, Endomorphism sigma, Endomorphism tau, std::vector<AlgebraElement> images);
    /// Same extension without the relation check; used for ansatz bases.
    static Derivation unchecked(std::string name, Endomorphism sigma, Endomorphism tau,
                                std::vector<AlgebraElement> images);
    /// X = τ − σ.
    static Derivation inner(std::string name, Endomorphism sigma, Endomorphism tau);
    static Derivation zero(std::string name, Endomorphism sigma, Endomorphism tau);

    const std::string& name() const { return impl_->name; }
    const PresentationPtr& presentation() const { return impl_->sigma.presentation(); }
    const Endomorphism& sigma() const { return impl_->sigma; }
    const Endomorphism& tau() const { return impl_->tau; }
    const std::vector<AlgebraElement>& images() const { return impl_->images; }

    AlgebraElement operator()(const AlgebraElement& f) const;
    /// Leibniz extension on a raw word.
    AlgebraElement apply_word(const Word& w) const;

    /// X*(f) = X(f*)*, a (τ*, σ*)-derivation.
    Derivation star() const;
    /// First relation violated by the Leibniz extension, or empty.
    std::string relation_violation() const;
    bool equals_on_generators(const Derivation& other) const;

private:
    struct Impl {
        Impl(std::string n, Endomorphism s, Endomorphism t, std::vector<AlgebraElement> i)
            : name(std::move(n)), sigma(std::move(s)), tau(std::move(t)), images(std::move(i)) {}
        std::string name;
        Endomorphism sigma;
        Endomorphism tau;
        std::vector<AlgebraElement> images;
        mutable std::mutex mutex;
        mutable std::map<Word, AlgebraElement> cache;
    };
    explicit Derivation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace taugeo
