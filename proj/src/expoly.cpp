#include "planarlie/expoly.hpp"

#include <cassert>
#include <vector>

#include "planarlie/errors.hpp"

namespace planarlie {

ExpPoly ExpPoly::variable(Var v, int deg) {
    ExpMonomial m;
    if (v == Var::x) m.xdeg = deg;
    else m.ydeg = deg;
    return term(m, GaussianRational(1));
}

ExpPoly ExpPoly::term(const ExpMonomial& m, const GaussianRational& c) {
    ExpPoly p;
    p.add_term(m, c);
    return p;
}

ExpPoly ExpPoly::exponential(const GaussianRational& lx, const GaussianRational& ly) {
    ExpMonomial m;
    m.xfreq = lx;
    m.yfreq = ly;
    return term(m, GaussianRational(1));
}

void ExpPoly::add_term(const ExpMonomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool ExpPoly::depends_on_x() const {
    for (const auto& [m, c] : terms_)
        if (m.depends_on_x()) return true;
    return false;
}

bool ExpPoly::depends_on_y() const {
    for (const auto& [m, c] : terms_)
        if (m.depends_on_y()) return true;
    return false;
}

GaussianRational ExpPoly::coefficient(const ExpMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            ExpMonomial m;
            m.xdeg = ma.xdeg + mb.xdeg;
            m.ydeg = ma.ydeg + mb.ydeg;
            m.xfreq = ma.xfreq + mb.xfreq;
            m.yfreq = ma.yfreq + mb.yfreq;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

ExpPoly ExpPoly::scaled(const GaussianRational& c) const {
    ExpPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

ExpPoly ExpPoly::pow(int e) const {
    assert(e >= 0);
    ExpPoly r = one();
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

int ExpPoly::cmp(const ExpPoly& o) const {
    auto a = terms_.begin(), b = o.terms_.begin();
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        int c = a->first.cmp(b->first);
        if (c != 0) return c;
        c = a->second.cmp(b->second);
        if (c != 0) return c;
    }
    if (a != terms_.end()) return 1;
    if (b != o.terms_.end()) return -1;
    return 0;
}

ExpPoly ExpPoly::diff(Var v) const {
    ExpPoly r;
    for (const auto& [m, c] : terms_) {
        int deg = (v == Var::x) ? m.xdeg : m.ydeg;
        const GaussianRational& freq = (v == Var::x) ? m.xfreq : m.yfreq;
        if (deg > 0) {
            ExpMonomial lower = m;
            (v == Var::x ? lower.xdeg : lower.ydeg) -= 1;
            r.add_term(lower, c * GaussianRational(deg));
        }
        if (!freq.is_zero()) r.add_term(m, c * freq);
    }
    return r;
}

ExpPoly ExpPoly::substitute_x_affine(const GaussianRational& alpha, const ExpPoly& f) const {
    if (alpha.is_zero()) throw Error("substitute_x_affine: alpha must be nonzero");
    if (f.depends_on_x()) throw Error("substitute_x_affine: offset must depend only on y");
    // base = (x - f(y)) / alpha
    ExpPoly base = (variable(Var::x) - f).scaled(alpha.inverse());
    std::vector<ExpPoly> base_pow{one()};
    ExpPoly r;
    for (const auto& [m, c] : terms_) {
        if (!m.xfreq.is_zero())
            throw RingEscape("substitution into exp(" + m.xfreq.str() +
                             "*x) leaves the coefficient ring");
        while ((int)base_pow.size() <= m.xdeg) base_pow.push_back(base_pow.back() * base);
        ExpMonomial rest = m;
        rest.xdeg = 0;
        r += base_pow[m.xdeg] * term(rest, c);
    }
    return r;
}

ExpPoly ExpPoly::substitute_y_affine(const GaussianRational& beta, const GaussianRational& c0) const {
    if (beta.is_zero()) throw Error("substitute_y_affine: beta must be nonzero");
    ExpPoly base = (variable(Var::y) - constant(c0)).scaled(beta.inverse());
    std::vector<ExpPoly> base_pow{one()};
    ExpPoly r;
    GaussianRational binv = beta.inverse();
    for (const auto& [m, c] : terms_) {
        if (!m.yfreq.is_zero() && !c0.is_zero())
            throw RingEscape("translating y inside exp(" + m.yfreq.str() +
                             "*y) leaves the coefficient ring");
        while ((int)base_pow.size() <= m.ydeg) base_pow.push_back(base_pow.back() * base);
        ExpMonomial rest = m;
        rest.ydeg = 0;
        rest.yfreq = m.yfreq * binv;
        r += base_pow[m.ydeg] * term(rest, c);
    }
    return r;
}

ExpPoly ExpPoly::swap_xy() const {
    ExpPoly r;
    for (const auto& [m, c] : terms_) {
        ExpMonomial s;
        s.xdeg = m.ydeg;
        s.ydeg = m.xdeg;
        s.xfreq = m.yfreq;
        s.yfreq = m.xfreq;
        r.terms_.emplace(s, c);
    }
    return r;
}

ExpPoly ExpPoly::antiderivative_y() const {
    if (depends_on_x()) throw Error("antiderivative_y: input must depend only on y");
    ExpPoly r;
    for (const auto& [m, c] : terms_) {
        if (m.yfreq.is_zero()) {
            ExpMonomial up = m;
            up.ydeg += 1;
            r.add_term(up, c / GaussianRational(up.ydeg));
        } else {
            // integral of y^b e^{mu y} = e^{mu y} (y^b/mu - (b/mu) * integral of y^{b-1})
            GaussianRational minv = m.yfreq.inverse();
            GaussianRational coeff = c * minv;
            for (int b = m.ydeg; b >= 0; --b) {
                ExpMonomial t = m;
                t.ydeg = b;
                r.add_term(t, coeff);
                if (b > 0) coeff = -coeff * GaussianRational(b) * minv;
            }
        }
    }
    return r;
}

std::complex<double> ExpPoly::eval(const GaussianRational& x0, const GaussianRational& y0) const {
    std::complex<double> xs = x0.to_complex(), ys = y0.to_complex();
    std::complex<double> sum = 0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < m.xdeg; ++i) t *= xs;
        for (int i = 0; i < m.ydeg; ++i) t *= ys;
        t *= std::exp(m.xfreq.to_complex() * xs + m.yfreq.to_complex() * ys);
        sum += t;
    }
    return sum;
}

namespace {

// Appends "c*var" (or "var", "i*var", "(..)*var") with sign folded into sep.
void append_linear_term(std::string& out, const GaussianRational& c, const char* var, bool first) {
    bool neg = false;
    std::string body;
    if (c.is_real()) {
        neg = c.re < 0;
        mpq_class a = abs(c.re);
        body = (a == 1) ? var : rational_str(a) + "*" + var;
    } else if (c.re == 0) {
        neg = c.im < 0;
        mpq_class a = abs(c.im);
        body = (a == 1) ? std::string("i*") + var : rational_str(a) + "*i*" + var;
    } else {
        body = "(" + c.str() + ")*" + var;
    }
    if (first) out += (neg ? "-" : "") + body;
    else out += (neg ? "-" : "+") + body;
}

std::string exp_argument_str(const GaussianRational& lx, const GaussianRational& ly) {
    std::string out;
    bool first = true;
    if (!lx.is_zero()) {
        append_linear_term(out, lx, "x", first);
        first = false;
    }
    if (!ly.is_zero()) append_linear_term(out, ly, "y", first);
    return out;
}

}  // namespace

std::string term_body_str(const ExpMonomial& m, const GaussianRational& coeff_abs) {
    std::vector<std::string> factors;
    if (!coeff_abs.is_one() || m.is_unit()) {
        if (coeff_abs.re == 0 && !coeff_abs.is_zero()) {
            if (coeff_abs.im != 1) factors.push_back(rational_str(coeff_abs.im));
            factors.push_back("i");
        } else if (coeff_abs.is_real()) {
            factors.push_back(rational_str(coeff_abs.re));
        } else {
            factors.push_back("(" + coeff_abs.str() + ")");
        }
    }
    if (m.xdeg == 1) factors.push_back("x");
    else if (m.xdeg > 1) factors.push_back("x^" + std::to_string(m.xdeg));
    if (m.ydeg == 1) factors.push_back("y");
    else if (m.ydeg > 1) factors.push_back("y^" + std::to_string(m.ydeg));
    if (!m.xfreq.is_zero() || !m.yfreq.is_zero())
        factors.push_back("exp(" + exp_argument_str(m.xfreq, m.yfreq) + ")");
    if (factors.empty()) return "1";
    std::string out = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) out += "*" + factors[i];
    return out;
}

std::string ExpPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = false;
        GaussianRational body = c;
        if (c.is_real()) {
            neg = c.re < 0;
            if (neg) body = -c;
        } else if (c.re == 0) {
            neg = c.im < 0;
            if (neg) body = -c;
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += term_body_str(m, body);
    }
    return out;
}

}  // namespace planarlie
