#pragma once

/** @file presets.hpp
 *  Ready-made (σ,τ)-algebras: the Jackson q-plane, the shift line and inner
 *  derivations on matrix algebras.
 */

#include "taugeo/lie.hpp"
#include "taugeo/matrix.hpp"
#include "taugeo/sigma_tau.hpp"

#include <vector>

namespace taugeo {

using PresentedSigma = SigmaTauAlgebra<PresentedAlgebra>;
using MatrixSigma = SigmaTauAlgebra<MatrixAlgebra>;

/// ℂ[x,y] over Q(i)(s) with x* = x, y* = y, Jackson derivatives X₁, X₂.
struct QPlane {
    PresentationPtr pres;
    Endomorphism identity;
    Endomorphism sigma1;  // x -> q x
    Endomorphism sigma2;  // y -> q y
    Derivation x1;
    Derivation x2;
    PresentedSigma sigma;
    LieStructure lie;

    PresentedAlgebra algebra() const { return sigma.algebra; }
    /// Σ* with derivations (X₁, X₂) of type (σ_a, id) followed by the same maps of
    /// type (id, σ_a), and ι(k) = k ± 2.
    PresentedSigma doubled() const;
};

QPlane build_qplane();

/// ℂ[t] over Q(i) with τ(t) = t + ℏ, σ = id and ∂ = τ − σ.
struct ShiftLine {
    PresentationPtr pres;
    Rational hbar;
    Endomorphism sigma;
    Endomorphism tau;
    Derivation d;
    PresentedSigma sigma_alg;
};

ShiftLine build_shift_line(const Rational& hbar);

/// Mat_N with σ_a(A) = U_a A U_a⁻¹, τ_a = id and X_a = A − σ_a(A).
struct MatrixPreset {
    MatrixAlgebra algebra;
    std::vector<Matrix> u;
    std::vector<Matrix> u_inverse;
    MatrixSigma sigma;
    LieStructure lie;
};

/// Throws NotInvertible for a singular U_a and PreconditionFailed for non-commuting U's.
MatrixPreset build_matrix_algebra(const std::vector<Matrix>& u, const ScalarField& field);

/// The inner derivation A ↦ A − U A U⁻¹ as a twisted derivation of type (σ, id).
TwistedDerivation<Matrix> matrix_inner_derivation(const std::string& name, const Matrix& u, const Matrix& u_inverse);

}  // namespace taugeo
