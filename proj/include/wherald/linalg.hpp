#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wherald {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Dense row-major complex matrix, sized for mode counts up to a few thousand.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Outer product a b^dagger.
    static CMat outer(const cvec& a, const cvec& b) {
        CMat m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                m(i, j) = a[i] * std::conj(b[j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMat adjoint() const {
        CMat m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    CMat& operator+=(const CMat& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    CMat& operator*=(cplx s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("CMat: dimension mismatch in product");
        CMat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    cvec mul(const cvec& v) const {
        if (v.size() != cols_) throw std::invalid_argument("CMat: dimension mismatch in mat-vec");
        cvec out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    /// max_ij |a_ij - b_ij|
    double max_abs_diff(const CMat& o) const {
        require_same_shape(o);
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i)
            m = std::max(m, std::abs(data_[i] - o.data_[i]));
        return m;
    }

    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    /// max entrywise |U^dagger U - I|
    double unitarity_error() const {
        if (rows_ != cols_) return 1.0;
        double m = 0.0;
        for (std::size_t i = 0; i < cols_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                cplx acc = 0.0;
                for (std::size_t k = 0; k < rows_; ++k)
                    acc += std::conj((*this)(k, i)) * (*this)(k, j);
                if (i == j) acc -= 1.0;
                m = std::max(m, std::abs(acc));
            }
        return m;
    }

private:
    void require_same_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMat: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    cvec data_;
};

inline double norm_sq(const cvec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

inline cplx inner(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Compensated (Kahan) accumulator; keeps long reductions reproducible and tight.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

}  // namespace wherald
