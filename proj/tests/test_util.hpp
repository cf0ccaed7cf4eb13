#pragma once

#include <random>

#include "qmc/linalg.hpp"

namespace qmc::testutil {

inline std::mt19937_64 rng(unsigned seed = 20240601) { return std::mt19937_64(seed); }

inline Complex random_complex(std::mt19937_64& gen, double lo = 0.3, double hi = 2.0,
                              double max_arg = 0.6) {
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> arg(-max_arg, max_arg);
    return std::polar(mag(gen), arg(gen));
}

inline CMatrix random_matrix(std::mt19937_64& gen, int rows, int cols) {
    std::normal_distribution<double> nd;
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(nd(gen), nd(gen));
    return m;
}

inline CVector random_vector(std::mt19937_64& gen, int n) {
    std::normal_distribution<double> nd;
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(nd(gen), nd(gen));
    return v;
}

// Brute-force infinite q-Pochhammer product, independent of the library path.
inline Complex brute_qpoch(Complex a, Complex q, int factors = 200) {
    Complex prod(1, 0), qa = a;
    for (int k = 0; k < factors; ++k) {
        prod *= Complex(1, 0) - qa;
        qa *= q;
    }
    return prod;
}

}  // namespace qmc::testutil
