#pragma once

#include "drg/rational.hpp"

#include <initializer_list>
#include <vector>

namespace drg {

using Vec = std::vector<Rat>;

// Dense matrix over the exact rationals. Dimensions are fixed at
// construction; entries are mutable.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Mat(std::initializer_list<std::initializer_list<Rat>> rows);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Mat transpose() const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(const Rat& s) const;
    Vec operator*(const Vec& v) const;

    void swap_rows(std::size_t i, std::size_t j);

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

Rat dot(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Rat& s);
bool vec_is_zero(const Vec& a);

} // namespace drg
