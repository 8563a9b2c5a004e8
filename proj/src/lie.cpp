#include "taugeo/lie.hpp"

namespace taugeo {

LieStructure::LieStructure(std::size_t n, const ScalarField& field)
    : n_(n), field_(field), r_(n * n * n * n, field.zero()), c_(n * n * n, field.zero()) {}

LieStructure LieStructure::flip(std::size_t n, const ScalarField& field) {
    LieStructure l(n, field);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) l.r(a, b, b, a) = field.one();
    return l;
}

bool LieStructure::is_flip() const {
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
            for (std::size_t p = 0; p < n_; ++p) {
                if (!c(a, b, p).is_zero()) return false;
                for (std::size_t q = 0; q < n_; ++q) {
                    bool one = p == b && q == a;
                    if (one ? !r(a, b, p, q).is_one() : !r(a, b, p, q).is_zero()) return false;
                }
            }
        }
    return true;
}

}  // namespace taugeo
