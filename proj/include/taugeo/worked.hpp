#pragma once

/** @file worked.hpp
 *  The q-plane curvature example and random table generators shared by the CLI
 *  and the acceptance harness.
 */

#include "taugeo/connection.hpp"
#include "taugeo/presets.hpp"

#include <random>
#include <vector>

namespace taugeo {

using PlaneConnection = Connection<PresentedAlgebra>;

inline AlgebraElement plane_monomial(const QPlane& qp, int n, int m) {
    return power(AlgebraElement::generator(qp.pres, 0), n) * power(AlgebraElement::generator(qp.pres, 1), m);
}

/// ∇_{X₁}e₁ = y^m e₂, ∇_{X₂}e₂ = x^n e₁, all other Γ zero.
inline PlaneConnection qplane_worked_connection(const QPlane& qp, int n, int m) {
    auto module = free_sigma_module(qp.sigma, 2);
    auto zero = module.zero();
    AlgebraElement z(qp.pres);
    PlaneConnection::Gamma gamma = {{{z, plane_monomial(qp, 0, m)}, zero}, {zero, {plane_monomial(qp, n, 0), z}}};
    return connection_from_gamma(module, gamma);
}

struct PlaneCurvatureValues {
    std::vector<AlgebraElement> on_e1;
    std::vector<AlgebraElement> on_e2;
    std::vector<AlgebraElement> on_xy_e1;
};

/// Curv(X₁,X₂) on e₁, e₂ and xy e₁ for the worked connection, written out in closed form:
/// −q^m x^n y^m e₁ − [m]_q y^{m−1} e₂, q^n x^n y^m e₂ + [n]_q x^{n−1} e₁ and
/// −q^{m+2} x^{n+1} y^{m+1} e₁ − q²[m]_q x y^m e₂.
inline PlaneCurvatureValues qplane_worked_expected(const QPlane& qp, int n, int m) {
    const auto& f = qp.pres->field();
    return {{-(f.s_power(2 * m) * plane_monomial(qp, n, m)), -(f.q_int(m) * plane_monomial(qp, 0, m - 1))},
            {f.q_int(n) * plane_monomial(qp, n - 1, 0), f.s_power(2 * n) * plane_monomial(qp, n, m)},
            {-(f.s_power(2 * m + 4) * plane_monomial(qp, n + 1, m + 1)),
             -(f.s_power(4) * f.q_int(m) * plane_monomial(qp, 1, m))}};
}

/// Random γ with γ_a,ij* = γ_ι(a),ji, as metric_connection_free requires.
template <AlgebraModel Alg>
MetricGamma<typename Alg::Element> random_metric_gamma(const SigmaModule<Alg>& module, std::mt19937_64& rng) {
    const Alg& alg = module.algebra();
    const auto& sig = module.sigma();
    const std::size_t n = module.rank();
    MetricGamma<typename Alg::Element> gamma(
        module.indices(), ElementMatrix<typename Alg::Element>(n, std::vector<typename Alg::Element>(n, alg.zero())));
    for (std::size_t a = 0; a < module.indices(); ++a) {
        std::size_t b = sig.iota_of(a);
        if (b < a) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (a == b && j < i) continue;
                auto g = alg.random_element(rng);
                if (a == b && i == j) g = g + alg.star(g);
                gamma[a][i][j] = g;
                gamma[b][j][i] = alg.star(g);
            }
    }
    return gamma;
}

/// Random γ̃_ab^c for torsion_free_construct.
template <AlgebraModel Alg>
std::vector<std::vector<std::vector<typename Alg::Element>>> random_torsion_table(const Alg& alg, std::size_t n,
                                                                                  std::mt19937_64& rng) {
    std::vector<std::vector<std::vector<typename Alg::Element>>> table(
        n, std::vector<std::vector<typename Alg::Element>>(n));
    for (auto& ab : table)
        for (auto& b : ab)
            for (std::size_t c = 0; c < n; ++c) b.push_back(alg.random_element(rng));
    return table;
}

}  // namespace taugeo
