#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

namespace planarlie {

// Exact complex scalar with rational real and imaginary parts.
// mpq_class keeps fractions reduced with positive denominators.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRational of(long num, long den, long inum = 0, long iden = 1) {
        mpq_class r(num, den), i(inum, iden);
        r.canonicalize();
        i.canonicalize();
        return {r, i};
    }
    static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_integer() const {
        return im == 0 && re.get_den() == 1;
    }

    GaussianRational operator-() const { return {mpq_class(-re), mpq_class(-im)}; }
    GaussianRational conj() const { return {re, mpq_class(-im)}; }
    mpq_class norm2() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Lexicographic on (re, im); used for canonical orderings everywhere.
    int cmp(const GaussianRational& o) const {
        int c = ::cmp(re, o.re);
        if (c != 0) return c;
        return ::cmp(im, o.im);
    }
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) { return a.cmp(b) < 0; }

    GaussianRational inverse() const;

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    // Canonical rendering, e.g. "0", "-3/2", "i", "-i", "2*i", "1/2-1/3*i".
    std::string str() const;
};

inline GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::string rational_str(const mpq_class& q);

}  // namespace planarlie
