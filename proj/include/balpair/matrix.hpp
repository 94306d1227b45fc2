#pragma once

#include "balpair/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace balpair {

/// Dense square-or-rectangular matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Integer trace() const;
    bool is_zero() const;
    bool is_positive() const;
    IntMatrix transpose() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const Integer& s, const IntMatrix& m);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::vector<Integer> apply(const std::vector<Integer>& v) const;
    /// Row vector times matrix.
    std::vector<Integer> left_apply(const std::vector<Integer>& v) const;

    std::vector<std::vector<long>> to_long() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

IntMatrix matrix_power(const IntMatrix& a, unsigned k);

}  // namespace balpair
