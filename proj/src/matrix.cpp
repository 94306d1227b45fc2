#include "balpair/matrix.hpp"

#include <cassert>

namespace balpair {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        assert(r.size() == cols_);
        for (long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Integer IntMatrix::trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
}

bool IntMatrix::is_zero() const {
    for (const auto& v : a_)
        if (sgn(v) != 0) return false;
    return true;
}

bool IntMatrix::is_positive() const {
    for (const auto& v : a_)
        if (sgn(v) <= 0) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    assert(a.cols_ == b.rows_);
    IntMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
        }
    return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    IntMatrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
}

IntMatrix operator*(const Integer& s, const IntMatrix& m) {
    IntMatrix out = m;
    for (auto& v : out.a_) v *= s;
    return out;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
    assert(v.size() == cols_);
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<Integer> IntMatrix::left_apply(const std::vector<Integer>& v) const {
    assert(v.size() == rows_);
    std::vector<Integer> out(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
    return out;
}

std::vector<std::vector<long>> IntMatrix::to_long() const {
    std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).get_si();
    return out;
}

IntMatrix matrix_power(const IntMatrix& a, unsigned k) {
    IntMatrix result = IntMatrix::identity(a.rows());
    IntMatrix base = a;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

}  // namespace balpair
