#include "taugeo/maps.hpp"

#include "taugeo/error.hpp"

#include <functional>

namespace taugeo {

namespace {

void require_images(const PresentationPtr& pres, const std::vector<AlgebraElement>& images, const std::string& name) {
    if (images.size() != pres->size())
        throw RankMismatch(name + ": expected " + std::to_string(pres->size()) + " generator images, got " +
                           std::to_string(images.size()));
    for (const auto& img : images)
        if (img.presentation() != pres) throw PresentationMismatch(name + ": image from another presentation");
}

AlgebraElement apply_linear(const AlgebraElement& f, const std::function<AlgebraElement(const Word&)>& on_word) {
    AlgebraElement out(f.presentation());
    for (const auto& [w, c] : f.terms()) out += c * on_word(w);
    return out;
}

}  // namespace

Endomorphism Endomorphism::create(PresentationPtr pres, std::string name, std::vector<AlgebraElement> images,
                                  bool unital) {
    require_images(pres, images, name);
    if (!unital) {
        for (const auto& img : images)
            if (!img.is_zero()) throw IllDefinedMap(name + ": a non-unital endomorphism must vanish on generators");
    }
    auto impl = std::make_shared<Impl>();
    impl->pres = pres;
    impl->name = std::move(name);
    impl->images = std::move(images);
    impl->unital = unital;
    Endomorphism alpha(impl);
    for (const Rule& r : pres->rules()) {
        AlgebraElement lhs = alpha.apply_word(r.lhs);
        AlgebraElement rhs(pres);
        for (const auto& [w, c] : r.rhs) rhs += c * alpha.apply_word(w);
        if (lhs != rhs)
            throw IllDefinedMap(alpha.name() + " does not respect relation " + r.text + ": " + render(lhs) +
                                " vs " + render(rhs));
    }
    return alpha;
}

Endomorphism Endomorphism::identity(PresentationPtr pres) {
    std::vector<AlgebraElement> images;
    for (std::size_t g = 0; g < pres->size(); ++g) images.push_back(AlgebraElement::generator(pres, g));
    return create(pres, "id", std::move(images));
}

Endomorphism Endomorphism::diagonal(PresentationPtr pres, std::string name, const std::vector<Scalar>& factors) {
    if (factors.size() != pres->size()) throw RankMismatch(name + ": factor table size");
    std::vector<AlgebraElement> images;
    for (std::size_t g = 0; g < pres->size(); ++g)
        images.push_back(factors[g] * AlgebraElement::generator(pres, g));
    return create(pres, std::move(name), std::move(images));
}

AlgebraElement Endomorphism::apply_word(const Word& w) const {
    const PresentationPtr& pres = impl_->pres;
    if (w.empty()) return AlgebraElement::scalar(pres, impl_->unital ? pres->field().one() : pres->field().zero());
    if (w.size() == 1) return impl_->images[w[0]];
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->cache.find(w);
        if (it != impl_->cache.end()) return it->second;
    }
    Word prefix(w.begin(), w.end() - 1);
    AlgebraElement result = apply_word(prefix) * impl_->images[w.back()];
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->cache.emplace(w, result);
    return result;
}

AlgebraElement Endomorphism::operator()(const AlgebraElement& f) const {
    if (f.presentation() != impl_->pres) throw PresentationMismatch();
    return apply_linear(f, [this](const Word& w) { return apply_word(w); });
}

Endomorphism Endomorphism::compose(const Endomorphism& other, std::string name) const {
    if (other.presentation() != presentation()) throw PresentationMismatch();
    std::vector<AlgebraElement> images;
    for (const auto& img : other.images()) images.push_back((*this)(img));
    if (name.empty()) name = this->name() + "∘" + other.name();
    return create(presentation(), std::move(name), std::move(images), unital() && other.unital());
}

Endomorphism Endomorphism::power(int n) const {
    if (n < 0) throw Error("negative power of an endomorphism");
    Endomorphism acc = identity(presentation());
    for (int k = 0; k < n; ++k) acc = compose(acc);
    return create(presentation(), name() + "^" + std::to_string(n), acc.images(), unital() || n == 0);
}

Endomorphism Endomorphism::star() const {
    const PresentationPtr& pres = presentation();
    if (!pres->has_star()) throw NoStarStructure();
    std::vector<AlgebraElement> images;
    for (std::size_t g = 0; g < pres->size(); ++g)
        images.push_back((*this)(AlgebraElement::generator(pres, pres->star_of(g))).star());
    return create(pres, name() + "*", std::move(images), unital());
}

bool Endomorphism::equals_on_generators(const Endomorphism& other) const {
    if (other.presentation() != presentation()) return false;
    for (std::size_t g = 0; g < images().size(); ++g)
        if (images()[g] != other.images()[g]) return false;
    return unital() == other.unital();
}

Derivation Derivation::unchecked(std::string name, Endomorphism sigma, Endomorphism tau,
                                 std::vector<AlgebraElement> images) {
    if (sigma.presentation() != tau.presentation()) throw PresentationMismatch();
    require_images(sigma.presentation(), images, name);
    auto impl = std::make_shared<Impl>(std::move(name), std::move(sigma), std::move(tau), std::move(images));
    return Derivation(impl);
}

Derivation Derivation::extend(std::string name, Endomorphism sigma, Endomorphism tau,
                              std::vector<AlgebraElement> images) {
    Derivation x = unchecked(std::move(name), std::move(sigma), std::move(tau), std::move(images));
    std::string violation = x.relation_violation();
    if (!violation.empty())
        throw IllDefinedDerivation("derivation " + x.name() + " does not respect relation " + violation);
    return x;
}

Derivation Derivation::inner(std::string name, Endomorphism sigma, Endomorphism tau) {
    std::vector<AlgebraElement> images;
    for (std::size_t g = 0; g < sigma.images().size(); ++g) images.push_back(tau.images()[g] - sigma.images()[g]);
    return extend(std::move(name), std::move(sigma), std::move(tau), std::move(images));
}

Derivation Derivation::zero(std::string name, Endomorphism sigma, Endomorphism tau) {
    std::vector<AlgebraElement> images(sigma.images().size(), AlgebraElement(sigma.presentation()));
    return extend(std::move(name), std::move(sigma), std::move(tau), std::move(images));
}

AlgebraElement Derivation::apply_word(const Word& w) const {
    const PresentationPtr& pres = presentation();
    if (w.empty()) return AlgebraElement(pres);
    if (w.size() == 1) return impl_->images[w[0]];
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->cache.find(w);
        if (it != impl_->cache.end()) return it->second;
    }
    Word prefix(w.begin(), w.end() - 1);
    std::uint8_t last = w.back();
    AlgebraElement result =
        impl_->sigma.apply_word(prefix) * impl_->images[last] + apply_word(prefix) * impl_->tau.images()[last];
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->cache.emplace(w, result);
    return result;
}

AlgebraElement Derivation::operator()(const AlgebraElement& f) const {
    if (f.presentation() != presentation()) throw PresentationMismatch();
    return apply_linear(f, [this](const Word& w) { return apply_word(w); });
}

std::string Derivation::relation_violation() const {
    const PresentationPtr& pres = presentation();
    for (const Rule& r : pres->rules()) {
        AlgebraElement residual = apply_word(r.lhs);
        for (const auto& [w, c] : r.rhs) residual -= c * apply_word(w);
        if (!residual.is_zero()) return r.text + " (residual " + render(residual) + ")";
    }
    return {};
}

Derivation Derivation::star() const {
    const PresentationPtr& pres = presentation();
    if (!pres->has_star()) throw NoStarStructure();
    std::vector<AlgebraElement> images;
    for (std::size_t g = 0; g < pres->size(); ++g)
        images.push_back((*this)(AlgebraElement::generator(pres, pres->star_of(g))).star());
    return extend(name() + "*", tau().star(), sigma().star(), std::move(images));
}

bool Derivation::equals_on_generators(const Derivation& other) const {
    if (other.presentation() != presentation()) return false;
    for (std::size_t g = 0; g < images().size(); ++g)
        if (images()[g] != other.images()[g]) return false;
    return true;
}

}  // namespace taugeo
