#pragma once

#include <complex>
#include <map>
#include <string>

#include "planarlie/scalar.hpp"

namespace planarlie {

enum class Var { x, y };

// x^xdeg * y^ydeg * exp(xfreq*x + yfreq*y)
struct ExpMonomial {
    int xdeg = 0, ydeg = 0;
    GaussianRational xfreq, yfreq;

    int cmp(const ExpMonomial& o) const {
        if (xdeg != o.xdeg) return xdeg < o.xdeg ? -1 : 1;
        if (ydeg != o.ydeg) return ydeg < o.ydeg ? -1 : 1;
        int c = xfreq.cmp(o.xfreq);
        if (c != 0) return c;
        return yfreq.cmp(o.yfreq);
    }
    friend bool operator<(const ExpMonomial& a, const ExpMonomial& b) { return a.cmp(b) < 0; }
    friend bool operator==(const ExpMonomial& a, const ExpMonomial& b) { return a.cmp(b) == 0; }

    bool depends_on_x() const { return xdeg != 0 || !xfreq.is_zero(); }
    bool depends_on_y() const { return ydeg != 0 || !yfreq.is_zero(); }
    bool is_unit() const { return !depends_on_x() && !depends_on_y(); }
};

// Exact finite sum of terms c * x^a y^b e^{lambda*x + mu*y} over the
// Gaussian rationals; canonical form stores no zero coefficients.
class ExpPoly {
  public:
    using TermMap = std::map<ExpMonomial, GaussianRational>;

    ExpPoly() = default;
    explicit ExpPoly(const GaussianRational& c) {
        if (!c.is_zero()) terms_[ExpMonomial{}] = c;
    }

    static ExpPoly zero() { return ExpPoly(); }
    static ExpPoly one() { return ExpPoly(GaussianRational(1)); }
    static ExpPoly constant(const GaussianRational& c) { return ExpPoly(c); }
    static ExpPoly variable(Var v, int deg = 1);
    static ExpPoly term(const ExpMonomial& m, const GaussianRational& c);
    // exp(lx*x + ly*y)
    static ExpPoly exponential(const GaussianRational& lx, const GaussianRational& ly);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    GaussianRational constant_value() const {
        return terms_.empty() ? GaussianRational() : terms_.begin()->second;
    }
    bool depends_on_x() const;
    bool depends_on_y() const;
    GaussianRational coefficient(const ExpMonomial& m) const;
    std::size_t term_count() const { return terms_.size(); }

    ExpPoly operator-() const;
    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
    ExpPoly scaled(const GaussianRational& c) const;
    ExpPoly pow(int e) const;

    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }
    // Total order compatible with the term order; used for deterministic output.
    int cmp(const ExpPoly& o) const;

    // Exact partial derivative (power rule + frequency rule).
    ExpPoly diff(Var v) const;

    // Replaces x by (x - f(y))/alpha.  Throws RingEscape if the polynomial has a
    // monomial with xfreq != 0; requires alpha != 0 and f free of x.
    ExpPoly substitute_x_affine(const GaussianRational& alpha, const ExpPoly& f) const;

    // Replaces y by (y - c)/beta.  Throws RingEscape if c != 0 and the
    // polynomial has a monomial with yfreq != 0 (the shifted exponential would
    // pick up a transcendental constant).  Requires beta != 0.
    ExpPoly substitute_y_affine(const GaussianRational& beta, const GaussianRational& c) const;

    ExpPoly swap_xy() const;

    // Antiderivative in y of an x-free polynomial, integration constant 0.
    ExpPoly antiderivative_y() const;

    // Approximate evaluation; test-oracle use only.
    std::complex<double> eval(const GaussianRational& x0, const GaussianRational& y0) const;

    // Canonical rendering, e.g. "y^2*exp(2*y) + 3*x".  "0" for the zero polynomial.
    std::string str() const;

    void add_term(const ExpMonomial& m, const GaussianRational& c);

  private:
    TermMap terms_;
};

// Renders one term body (no sign), given |coeff|; helper shared with field printing.
std::string term_body_str(const ExpMonomial& m, const GaussianRational& coeff_abs);

}  // namespace planarlie
