#pragma once

/** @file sphere.hpp
 *  The quantum 3-sphere S³_q over Q(i)(s), q = s², with generators a, a*, c, c*
 *  (named a, as, c, cs), the K action, the twisted derivations X₊, X₋, X_z and
 *  Y₁, Y₂, Y₃, and the bimodule Ω¹ of one-forms.
 *
 *  Normal words are a^k c^l cs^m and as^k c^l cs^m.
 */

#include "taugeo/module.hpp"
#include "taugeo/presets.hpp"

#include <array>
#include <map>
#include <string>

namespace taugeo {

using SphereModule = SigmaModule<PresentedAlgebra>;

/// S³_q with star a ↔ as, c ↔ cs.
PresentationPtr sphere_presentation();

/// K(a) = s⁻¹a, K(as) = s·as, K(c) = s⁻¹c, K(cs) = s·cs; powers are cached.
class KAction {
public:
    explicit KAction(PresentationPtr pres);

    /// K^n for any integer n.
    Endomorphism power(int n) const;
    AlgebraElement operator()(int n, const AlgebraElement& f) const { return power(n)(f); }
    /// Exponent e with K(w) = s^e w for a word w.
    static int weight(const Word& w);

private:
    PresentationPtr pres_;
    std::map<int, Endomorphism> cache_;
};

/// Images of X₊, X₋, X_z on (a, as, c, cs).
struct XActionTable {
    std::vector<AlgebraElement> plus;
    std::vector<AlgebraElement> minus;
    std::vector<AlgebraElement> z;

    /// Parses element text for each slot; throws ParseError or UnknownGenerator.
    static XActionTable parse(const PresentationPtr& pres, const std::array<std::string, 4>& plus,
                              const std::array<std::string, 4>& minus, const std::array<std::string, 4>& z);
    std::array<std::array<std::string, 4>, 3> render() const;
};

struct Sphere {
    PresentationPtr pres;
    KAction k;
    XActionTable table;
    Derivation x_plus;   // (id, K²)
    Derivation x_minus;  // (id, K²)
    Derivation x_z;      // (id, K⁴)
    Derivation y1;       // (K⁻¹, K)
    Derivation y2;       // (K⁻¹, K)
    Derivation y3;       // (K⁻², K²)
    PresentedSigma sigma;  // ι = id
    /// η₁, η₂, η₃ with η_a f = K^{n_a}(f) η_a and the star η_a* = η_a.
    SphereModule omega;

    PresentedAlgebra algebra() const { return sigma.algebra; }
};

/// n₁ = n₂ = 2, n₃ = 4.
inline constexpr std::array<int, 3> kOmegaExponents = {2, 2, 4};

/// Validates the table, then builds Σ* and Ω¹. Throws InvalidActionTable naming
/// the relation or commutator that fails.
Sphere build_sphere(const XActionTable& table);

/// The three twisted commutators on every generator:
/// X₋X₊ − q²X₊X₋ = X_z, q²X_zX₋ − q⁻²X₋X_z = (1+q²)X₋, q²X₊X_z − q⁻²X_zX₊ = (1+q²)X₊.
Verdict twisted_commutator_check(const Derivation& plus, const Derivation& minus, const Derivation& z);

struct SolveReport {
    XActionTable table;
    /// Dimension of the linear solution space for X₊ before normalization.
    std::size_t dimension = 0;
    /// Number of unknowns in the ansatz for X₊.
    std::size_t unknowns = 0;
    /// |λ|² fixed by the commutators, for X₊ = λB with B the spanning solution.
    Scalar modulus_squared;
    /// The unit phase used; any λ with the same modulus solves the system.
    Scalar phase;
    std::string note;
};

/// Solves for the X table with images of degree at most degree_bound. X₊ is the
/// K-covariant ansatz (K X₊ K⁻¹ = q X₊) constrained by every relation; X₋ follows
/// from X₊* = −K⁻²X₋ and X_z from the first commutator; the other two commutators
/// fix |λ|². Throws NoSolution when any stage is inconsistent or the linear space
/// is not one-dimensional.
SolveReport solve_x_table(int degree_bound = 2, const Scalar& phase = Scalar(Gaussian(1)));

/// η_a f = K^{n_a}(f) η_a for every basis element, each generator and random f.
Verdict bimodule_relation_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed);

/// K̂ⁿ(m^a η_a) = Kⁿ(m^a) η_a.
SphereModule::Vec k_hat(const Sphere& sphere, int n, const SphereModule::Vec& m);

/// K̂(fmg) = K(f)K̂(m)K(g) and K̂*(m) = K̂⁻¹(m) on random inputs.
Verdict k_hat_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed);

/// df = X₊(f)ω₊ + X₋(f)ω₋ + X_z(f)ω_z, as coefficients in the ω basis.
SphereModule::Vec differential_d(const Sphere& sphere, const AlgebraElement& f);

/// η₁ = i(ω₊ + ω₋), η₂ = ω₋ − ω₊, η₃ = iω_z.
SphereModule::Vec omega_to_eta(const PresentationPtr& pres, const SphereModule::Vec& m);
SphereModule::Vec eta_to_omega(const PresentationPtr& pres, const SphereModule::Vec& m);

/// d(fg) = f·dg + df·g on random pairs, with the right action of Ω¹.
Verdict differential_leibniz_check(const Sphere& sphere, std::size_t samples, std::uint64_t seed);

}  // namespace taugeo
