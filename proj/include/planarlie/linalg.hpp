#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "planarlie/scalar.hpp"

namespace planarlie {

// Dense matrix over the Gaussian rationals.
struct QMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<GaussianRational> a;

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    GaussianRational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static QMatrix identity(std::size_t n);
    bool is_zero() const;
    bool is_square() const { return rows == cols; }
    GaussianRational trace() const;
    QMatrix scaled(const GaussianRational& c) const;
    friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator+(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator-(const QMatrix& x, const QMatrix& y);
    friend bool operator==(const QMatrix& x, const QMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    QMatrix pow(unsigned e) const;
};

// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t matrix_rank(QMatrix m);
// Echelon-canonical basis of the right kernel; each vector has length m.cols.
std::vector<std::vector<GaussianRational>> kernel(const QMatrix& m);

// Monic characteristic polynomial of a square matrix via Faddeev-LeVerrier;
// returned ascending: c[0] + c[1] t + ... + c[n] t^n with c[n] = 1.
std::vector<GaussianRational> char_poly(const QMatrix& m);

// Univariate polynomial over the Gaussian rationals, ascending coefficients.
struct QPoly {
    std::vector<GaussianRational> c;

    void normalize();
    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    GaussianRational eval(const GaussianRational& t) const;
    QPoly deflate(const GaussianRational& root) const;  // exact division by (t - root)
    QPoly monic() const;
    std::string str() const;  // rendered in the variable t
};

struct RootSearchResult {
    // Gaussian-rational roots with multiplicities, sorted by (re, im).
    std::vector<std::pair<GaussianRational, int>> roots;
    // Remaining factor after deflation; degree 0 when the polynomial splits.
    QPoly residual;
};

// Complete Gaussian-rational root search (rational root theorem over Z[i],
// candidates verified by exact evaluation, then deflation).
RootSearchResult gaussian_rational_roots(const QPoly& p);

}  // namespace planarlie
