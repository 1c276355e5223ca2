#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "bohr/bohr.hpp"

namespace bohr::testing {

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return max_abs_norm(a - b);
}

inline ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<cplx> data;
    std::size_t r = rows.size(), c = rows.begin()->size();
    for (const auto& row : rows)
        for (double v : row) data.emplace_back(v, 0.0);
    return ComplexMatrix(r, c, std::move(data));
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed, double scale = 1.0) {
    return random_matrix(MatrixKind::Hermitian, dim, seed, scale);
}

inline ComplexMatrix random_general(std::size_t dim, std::uint64_t seed, double scale = 1.0) {
    return random_matrix(MatrixKind::General, dim, seed, scale);
}

inline ComplexMatrix random_psd(std::size_t dim, std::uint64_t seed, double scale = 1.0) {
    return random_matrix(MatrixKind::Psd, dim, seed, scale);
}

inline ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    return random_matrix(MatrixKind::Unitary, dim, seed);
}

} // namespace bohr::testing
