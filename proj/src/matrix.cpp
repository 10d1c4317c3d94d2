#include "drg/matrix.hpp"

#include <stdexcept>

namespace drg {

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        DRG_CHECK(r.size() == cols_, "ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::operator+(const Mat& o) const {
    DRG_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "dimension mismatch in +");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    DRG_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "dimension mismatch in -");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Rat& y = o(k, j);
                if (y != 0) r(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::operator*(const Rat& s) const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    DRG_CHECK(v.size() == cols_, "dimension mismatch in matrix-vector product");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& x = (*this)(i, j);
            if (x != 0 && v[j] != 0) s += x * v[j];
        }
        r[i] = s;
    }
    return r;
}

void Mat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

Rat dot(const Vec& a, const Vec& b) {
    DRG_CHECK(a.size() == b.size(), "dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    DRG_CHECK(a.size() == b.size(), "vec_sub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Vec& a, const Rat& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

} // namespace drg
