#pragma once

/** @file linalg.hpp
 *  Dense Gaussian elimination over a ScalarField.
 */

#include "taugeo/scalar.hpp"

#include <optional>
#include <vector>

namespace taugeo {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

struct RowEchelon {
    ScalarMatrix rows;                // reduced row echelon form, zero rows removed
    std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon row_reduce(ScalarMatrix m, std::size_t cols, const ScalarField& field);

/// Basis of {v : m v = 0}; each vector has a 1 at its free column.
std::vector<std::vector<Scalar>> nullspace(const ScalarMatrix& m, std::size_t cols, const ScalarField& field);

/// One solution of a x = b, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const ScalarMatrix& a, const std::vector<Scalar>& b,
                                                std::size_t cols, const ScalarField& field);

}  // namespace taugeo
