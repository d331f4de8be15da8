#ifndef HODGEKIT_TEST_SUPPORT_HPP
#define HODGEKIT_TEST_SUPPORT_HPP

#include <hodgekit/linalg.hpp>
#include <hodgekit/matrix.hpp>

#include <random>
#include <string>
#include <vector>

namespace test_support {

using hodgekit::Rat;
using hodgekit::RatMatrix;
using hodgekit::RatVec;

/**
 * Independent rank oracle: textbook Gauss-Jordan over Q, sharing no code
 * with the library's fraction-free elimination.
 */
inline std::size_t oracle_rank(RatMatrix m)
{
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = m.rows();
        for (std::size_t r = rank; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot == m.rows())
            continue;
        m.swap_rows(rank, pivot);
        Rat inv = 1 / m(rank, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(rank, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, col) == 0)
                continue;
            Rat f = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(r, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline RatMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                               int lo = -5, int hi = 5)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = dist(rng);
    return m;
}

inline Rat random_positive_rational(std::mt19937& rng, int max_num = 9, int max_den = 9)
{
    std::uniform_int_distribution<int> num(1, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rat(num(rng), den(rng));
}

inline RatVec random_vector(std::mt19937& rng, std::size_t n, int lo = -9, int hi = 9)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    RatVec v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

} // namespace test_support

#endif // HODGEKIT_TEST_SUPPORT_HPP
