#pragma once

#include <initializer_list>
#include <vector>

#include "adl/arith.hpp"

namespace adl {

// Minimal dense matrix over an exact scalar type. Everything in the sector
// layer is tiny (cohomology ranks of model surfaces), so clarity wins over
// cache tricks.
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, T(0)) {
        require(rows >= 0 && cols >= 0, "Mat: negative dimensions");
    }
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        a_.reserve(size_t(rows_) * cols_);
        for (const auto& row : init) {
            require(int(row.size()) == cols_, "Mat: ragged initializer");
            for (const auto& v : row) a_.push_back(v);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        require(cols_ == o.rows_, "Mat: dimension mismatch in product");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (v == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "Mat: dimension mismatch in sum");
        Mat r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }

    std::vector<T> mul_vec(const std::vector<T>& x) const {
        require(int(x.size()) == cols_, "Mat: dimension mismatch in mat*vec");
        std::vector<T> y(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == T(0))) return false;
        return true;
    }

  private:
    int rows_, cols_;
    std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

inline QMat to_rational(const IMat& m) {
    QMat q(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

// Exact determinant by fraction-free elimination.
Int det_integer(IMat m);
Rat det_rational(QMat m);

// Exact inverse by Gauss-Jordan; fails on singular input.
QMat inverse_rational(QMat m);

}  // namespace adl
