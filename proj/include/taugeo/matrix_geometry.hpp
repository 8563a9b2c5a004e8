#pragma once

/** @file matrix_geometry.hpp
 *  Geometry of inner-derivation algebras on Mat_N: projector modules Mat_N p,
 *  the vector model C^N ≅ Mat_N p, closed-form curvature, the doubled star
 *  structure, regular uniqueness and Levi-Civita connections.
 *
 *  Gamma conventions: the matrices Γ_a passed to projective_connection enter as
 *  ∇_a A = A − U_a A U_a⁻¹ Γ_a p. The generic Connection stores ∇_a(1), which
 *  is 1 − Γ_a before projection.
 */

#include "taugeo/connection.hpp"
#include "taugeo/presets.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace taugeo {

using MatrixModule = SigmaModule<MatrixAlgebra>;
using MatrixConnection = Connection<MatrixAlgebra>;

struct MatrixGeometry {
    MatrixPreset preset;
    /// Orthogonal projector; p = v₀v₀† when v0 is set.
    std::optional<Matrix> projector;
    /// Unit column vector.
    std::optional<Matrix> v0;
    /// μ_a with U_a v₀ = μ_a v₀, when v₀ is a common eigenvector.
    std::optional<std::vector<Scalar>> mu;

    std::size_t size() const { return preset.u.size(); }
    std::size_t dimension() const { return preset.algebra.dimension(); }
    const ScalarField& field() const { return preset.algebra.field(); }
    const Matrix& u(std::size_t a) const { return preset.u.at(a); }
    const Matrix& u_inverse(std::size_t a) const { return preset.u_inverse.at(a); }
    /// Throws MissingProjector.
    const Matrix& p() const;

    /// Copy with p = v₀v₀†; throws PreconditionFailed unless v₀†v₀ = 1.
    MatrixGeometry with_vector(const Matrix& v0) const;
    /// Copy with a general projector; throws NotAProjection unless p² = p and p† = p.
    MatrixGeometry with_projector(const Matrix& p) const;
};

MatrixGeometry build_matrix_geometry(const std::vector<Matrix>& u, const ScalarField& field);

/// c with m v = c v, computed as v†mv and verified; nullopt when v is not an eigenvector.
std::optional<Scalar> eigenvalue_at(const Matrix& m, const Matrix& v);

/// φ(v) = v v₀† and φ⁻¹(A) = A v₀.
Matrix phi(const MatrixGeometry& g, const Matrix& v);
Matrix phi_inverse(const MatrixGeometry& g, const Matrix& a);

/// Mat_N with σ̂_a = σ_a, τ̂_a = id, projected by p when one is set.
MatrixModule matrix_module(const MatrixGeometry& g);
MatrixModule matrix_module(const MatrixGeometry& g, const MatrixSigma& sigma);

/// ∇_a A = A − U_a A U_a⁻¹ Γ_a p on Mat_N p. Throws MissingProjector.
MatrixConnection projective_connection(const MatrixGeometry& g, const std::vector<Matrix>& gamma);

/// γ_a = v₀† U_a⁻¹ Γ_a v₀.
Scalar vector_gamma(const MatrixGeometry& g, const Matrix& gamma_a, std::size_t a);

/// ∇_a v = (1 − γ_a U_a) v on C^N.
Matrix vector_connection_apply(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a,
                               const Matrix& v);

/// U_a U_b A [U_b⁻¹ Γ_b p, U_a⁻¹ Γ_a p] for A in Mat_N p (A is replaced by Ap).
Matrix curvature_closed_form(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a,
                             std::size_t b, const Matrix& a_matrix);

/// The same value from ∇_a∇_b A − ∇_b∇_a A with the flip Lie structure.
Matrix curvature_direct(const MatrixGeometry& g, const std::vector<Matrix>& gamma, std::size_t a, std::size_t b,
                        const Matrix& a_matrix);

struct TorsionFreeChoice {
    /// Γ_a = 1 − E_a.
    std::vector<Matrix> gamma;
    MatrixConnection connection;
    /// φ(X_a) = E_a p.
    AnchorMap<MatrixAlgebra> anchor;
    Verdict torsion;
    /// λ_a with E_a v₀ = λ_a v₀ (vector case only).
    std::optional<std::vector<Scalar>> lambda;
    /// ∇_a v = (1 − μ_a⁻¹(1 − λ_a) U_a) v on random vectors (vector case only).
    Verdict vector_formula;
};

/// Γ_a = 1 − E_a. Without a projector the module is Mat_N itself. Throws
/// CommutationViolation for [E_a, E_b] ≠ 0 or [E_a, U_b] ≠ 0, NotEigenvector when
/// v₀ is not a common eigenvector, and PreconditionFailed for a projector
/// without v₀.
TorsionFreeChoice torsion_free_gamma_choice(const MatrixGeometry& g, const std::vector<Matrix>& e,
                                            std::size_t samples = 50, std::uint64_t seed = 1);

/// Σ* on 2n indices: X_k of type (σ_k, id) for k < n and X̃_k(A) = A − U A U† of
/// type (id, σ_{k−n}) for k ≥ n, ι(k) = k ± n. Throws NotUnitary.
MatrixSigma doubled_star_algebra(const MatrixGeometry& g);

struct RegularityReport {
    /// witness[a] has det X_a(witness) ≠ 0.
    std::vector<std::optional<Matrix>> witness;
    /// "E_ij" or "random #k", or "not found within budget".
    std::vector<std::string> source;

    bool regular() const;
    std::string summary() const;
};

/// Searches the N² elementary matrices, then `random_budget` seeded random matrices.
RegularityReport regularity_check(const MatrixGeometry& g, std::uint64_t seed = 1, std::size_t random_budget = 100);

struct UniqueConnection {
    /// ∇_k = X̃_k on the free module over the doubled Σ*.
    MatrixConnection connection;
    /// ∇_a(BA) = σ_a(B)∇_a A + X_a(B)A and ∇_a(BA) = B∇_a A + X_a(B)σ_a(A).
    Verdict product_rules;
};

/// Throws NotRegular naming the first index without a witness, and NotUnitary.
UniqueConnection unique_regular_connection(const MatrixGeometry& g, const RegularityReport& regularity,
                                           std::size_t samples = 50, std::uint64_t seed = 1);

/// For ∇_a A = X_a(A) + σ_a(A)Γ̃_a, checks the second product rule at the
/// regularity witness B and A = 1, where it reads X_a(B)Γ̃_a = 0. Passes iff
/// every Γ̃_a is zero; otherwise fails with the violation and the recovered Γ̃_a.
Verdict injected_gamma_check(const MatrixGeometry& g, const RegularityReport& regularity,
                             const std::vector<Matrix>& gamma_tilde);

enum class LeviCivitaMode { Full, Vector };

struct MatrixLeviCivita {
    MatrixConnection connection;
    AnchorMap<MatrixAlgebra> anchor;
    HermitianForm<MatrixAlgebra> form;
    LieStructure lie;
    Verdict verdict;
};

/// h(A, B) = A h₀ B†. Full mode: ∇ = X̃ with φ(X_k) = E_k. Vector mode: ∇ = p∘X̃ on
/// Mat_N p, i.e. ∇_a v = (1 − μ̄_a U_a) v, with φ(X_k) = λ_k p. An empty E list
/// means E_a = U_a. Throws NonInvariantForm for [U_a, h₀] ≠ 0, CommutationViolation
/// for [E_a, U_b] ≠ 0 or [h₀, p] ≠ 0, NotEigenvector, NotUnitary, MissingProjector.
MatrixLeviCivita matrix_levi_civita(const MatrixGeometry& g, const Matrix& h0, LeviCivitaMode mode,
                                    const std::vector<Matrix>& e = {}, std::size_t samples = 50,
                                    std::uint64_t seed = 1);

// Instance generators. Exact fields use Gaussian rationals throughout.

/// P with P(perm[j], j) = i^powers[j].
Matrix signed_permutation(const std::vector<std::size_t>& perm, const std::vector<int>& powers,
                          const ScalarField& field);
/// diag(i^k).
Matrix phase_diagonal(const std::vector<int>& powers, const ScalarField& field);
/// Commuting unitaries P D_a P⁻¹ (exact) or Q D_a Q† (float).
std::vector<Matrix> random_commuting_unitaries(std::size_t n, std::size_t count, const ScalarField& field,
                                               std::mt19937_64& rng);
/// Commuting invertible S D_a S⁻¹; unitary in float mode to keep conditioning.
std::vector<Matrix> random_commuting_invertibles(std::size_t n, std::size_t count, const ScalarField& field,
                                                 std::mt19937_64& rng);
/// Unit column vector, exact via Pythagorean pairs.
Matrix random_unit_vector(std::size_t n, const ScalarField& field, std::mt19937_64& rng);

}  // namespace taugeo
