#pragma once

#include "taugeo/scalar.hpp"

#include <random>

namespace taugeo::testing {

inline Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline Gaussian small_gaussian(std::mt19937_64& rng) { return Gaussian(small_rational(rng), small_rational(rng)); }

inline Polynomial small_polynomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Gaussian> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& g : c) g = small_gaussian(rng);
    return Polynomial(c);
}

inline RationalFunction small_rational_function(std::mt19937_64& rng) {
    Polynomial den;
    while (den.is_zero()) den = small_polynomial(rng, 2);
    return RationalFunction(small_polynomial(rng, 3), den);
}

inline Scalar random_scalar(std::mt19937_64& rng, ScalarKind kind) {
    switch (kind) {
    case ScalarKind::Rational: return small_rational(rng);
    case ScalarKind::Gaussian: return small_gaussian(rng);
    case ScalarKind::RationalFunction: return small_rational_function(rng);
    case ScalarKind::Float: {
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        return ComplexFloat{{d(rng), d(rng)}, 1e-9};
    }
    }
    return Rational(0);
}

}  // namespace taugeo::testing
