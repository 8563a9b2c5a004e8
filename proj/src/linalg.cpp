#include "taugeo/linalg.hpp"

namespace taugeo {

RowEchelon row_reduce(ScalarMatrix m, std::size_t cols, const ScalarField& field) {
    RowEchelon out;
    std::size_t row = 0;
    bool floating = field.kind() == ScalarKind::Float;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t best = m.size();
        double best_mag = -1.0;
        for (std::size_t r = row; r < m.size(); ++r) {
            if (m[r][col].is_zero()) continue;
            if (!floating) {
                best = r;
                break;
            }
            double mag = m[r][col].magnitude();
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best == m.size()) continue;
        std::swap(m[row], m[best]);
        Scalar inv = m[row][col].inverse();
        for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        m[row][col] = field.one();
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar factor = m[r][col];
            for (std::size_t c = col; c < cols; ++c) {
                if (!m[row][c].is_zero()) m[r][c] = m[r][c] - factor * m[row][c];
            }
            m[r][col] = field.zero();
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::vector<std::vector<Scalar>> nullspace(const ScalarMatrix& m, std::size_t cols, const ScalarField& field) {
    RowEchelon e = row_reduce(m, cols, field);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, field.zero());
        v[free] = field.one();
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve_linear(const ScalarMatrix& a, const std::vector<Scalar>& b,
                                                std::size_t cols, const ScalarField& field) {
    ScalarMatrix aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r) {
        aug[r].resize(cols, field.zero());
        aug[r].push_back(b[r]);
    }
    RowEchelon e = row_reduce(aug, cols + 1, field);
    std::vector<Scalar> x(cols, field.zero());
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == cols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][cols];
    }
    return x;
}

}  // namespace taugeo
