#pragma once

#include <random>

#include "rtepr/types.hpp"

namespace rtepr::testing {

inline Matrix random_matrix(int n, std::mt19937& rng)
{
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    return m;
}

inline Matrix random_hermitian(int n, std::mt19937& rng)
{
    const Matrix m = random_matrix(n, rng);
    return 0.5 * (m + m.adjoint());
}

inline Matrix random_density(int n, std::mt19937& rng)
{
    const Matrix m = random_matrix(n, rng);
    Matrix rho = m * m.adjoint();
    rho /= rho.trace();
    return rho;
}

inline double max_abs(const Matrix& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace rtepr::testing
