#pragma once

#include <string>

#include "planarlie/expoly.hpp"

namespace planarlie {

// Planar vector field P(x,y)*Dx + Q(x,y)*Dy over the exponential-polynomial ring.
struct VectorField {
    ExpPoly p, q;

    VectorField() = default;
    VectorField(ExpPoly p, ExpPoly q) : p(std::move(p)), q(std::move(q)) {}

    static VectorField dx() { return {ExpPoly::one(), ExpPoly::zero()}; }
    static VectorField dy() { return {ExpPoly::zero(), ExpPoly::one()}; }
    // G(y)*Dx
    static VectorField horizontal(ExpPoly g) { return {std::move(g), ExpPoly::zero()}; }

    bool is_zero() const { return p.is_zero() && q.is_zero(); }

    VectorField operator-() const { return {-p, -q}; }
    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        return {a.p + b.p, a.q + b.q};
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        return {a.p - b.p, a.q - b.q};
    }
    VectorField scaled(const GaussianRational& c) const { return {p.scaled(c), q.scaled(c)}; }

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }
    int cmp(const VectorField& o) const {
        int c = p.cmp(o.p);
        return c != 0 ? c : q.cmp(o.q);
    }

    VectorField swap_xy() const { return {q.swap_xy(), p.swap_xy()}; }

    // true iff the Dy component depends only on y.
    bool is_triangular() const { return !q.depends_on_x(); }

    std::string str() const;
};

// Lie bracket [v, w] = v(w) - w(v) acting on components.
VectorField bracket(const VectorField& v, const VectorField& w);

// Pi(xi*Dx + eta(y)*Dy) = eta(y) d/dy; requires is_triangular.
ExpPoly project_y(const VectorField& v);

// Bracket of eta1 d/dy, eta2 d/dy as fields on the line: eta1*eta2' - eta2*eta1'.
ExpPoly line_bracket(const ExpPoly& eta1, const ExpPoly& eta2);

}  // namespace planarlie
