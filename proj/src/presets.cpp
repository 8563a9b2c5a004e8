#include "taugeo/presets.hpp"

#include "taugeo/error.hpp"

namespace taugeo {

namespace {

PresentationPtr qplane_presentation() {
    PresentationSpec spec;
    spec.name = "qplane";
    spec.generators = {"x", "y"};
    spec.star = {0, 1};
    spec.field = ScalarField(ScalarKind::RationalFunction);
    spec.commutative = true;
    return Presentation::create(spec);
}

}  // namespace

QPlane build_qplane() {
    PresentationPtr pres = qplane_presentation();
    const ScalarField& f = pres->field();
    Endomorphism id = Endomorphism::identity(pres);
    Endomorphism s1 = Endomorphism::diagonal(pres, "σ1", {f.q(), f.one()});
    Endomorphism s2 = Endomorphism::diagonal(pres, "σ2", {f.one(), f.q()});
    AlgebraElement one = AlgebraElement::scalar(pres, f.one());
    AlgebraElement zero(pres);
    Derivation x1 = Derivation::extend("X1", s1, id, {one, zero});
    Derivation x2 = Derivation::extend("X2", s2, id, {zero, one});
    PresentedSigma sigma(PresentedAlgebra(pres), {as_twisted(x1), as_twisted(x2)});
    return QPlane{pres, id, s1, s2, x1, x2, sigma, LieStructure::flip(2, f)};
}

PresentedSigma QPlane::doubled() const {
    Derivation y1 = Derivation::extend("X1~", identity, sigma1, x1.images());
    Derivation y2 = Derivation::extend("X2~", identity, sigma2, x2.images());
    return PresentedSigma(PresentedAlgebra(pres), {as_twisted(x1), as_twisted(x2), as_twisted(y1), as_twisted(y2)},
                          std::vector<std::size_t>{2, 3, 0, 1});
}

ShiftLine build_shift_line(const Rational& hbar) {
    PresentationSpec spec;
    spec.name = "shiftline";
    spec.generators = {"t"};
    spec.star = {0};
    spec.field = ScalarField(ScalarKind::Gaussian);
    PresentationPtr pres = Presentation::create(spec);
    const ScalarField& f = pres->field();
    AlgebraElement t = AlgebraElement::generator(pres, 0);
    Endomorphism sigma = Endomorphism::identity(pres);
    Endomorphism tau = Endomorphism::create(pres, "shift", {t + AlgebraElement::scalar(pres, f.rational(hbar))});
    Derivation d = Derivation::inner("∂", sigma, tau);
    return ShiftLine{pres, hbar, sigma, tau, d, PresentedSigma(PresentedAlgebra(pres), {as_twisted(d)})};
}

TwistedDerivation<Matrix> matrix_inner_derivation(const std::string& name, const Matrix& u, const Matrix& u_inverse) {
    Map<Matrix> sigma = [u, u_inverse](const Matrix& a) { return u * a * u_inverse; };
    Map<Matrix> tau = [](const Matrix& a) { return a; };
    Map<Matrix> apply = [u, u_inverse](const Matrix& a) { return a - u * a * u_inverse; };
    return {name, sigma, tau, apply};
}

MatrixPreset build_matrix_algebra(const std::vector<Matrix>& u, const ScalarField& field) {
    if (u.empty()) throw PreconditionFailed("at least one matrix U_a is required");
    std::size_t n = u[0].rows();
    std::vector<Matrix> us, inverses;
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (!u[a].square() || u[a].rows() != n) throw RankMismatch("U matrices must be square of equal size");
        const Matrix& ua = u[a];
        if (!(ua.field() == field)) throw VariantMismatch("U" + std::to_string(a + 1) + " is over another field");
        auto inv = ua.try_inverse();
        if (!inv) throw NotInvertible("U" + std::to_string(a + 1) + " is singular");
        us.push_back(ua);
        inverses.push_back(*inv);
    }
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = a + 1; b < us.size(); ++b)
            if (!commutator(us[a], us[b]).is_zero())
                throw PreconditionFailed("U" + std::to_string(a + 1) + " and U" + std::to_string(b + 1) +
                                         " do not commute");
    MatrixAlgebra alg(n, field);
    std::vector<TwistedDerivation<Matrix>> ders;
    for (std::size_t a = 0; a < us.size(); ++a)
        ders.push_back(matrix_inner_derivation("X" + std::to_string(a + 1), us[a], inverses[a]));
    return MatrixPreset{alg, us, inverses, MatrixSigma(alg, ders), LieStructure::flip(us.size(), field)};
}

}  // namespace taugeo
