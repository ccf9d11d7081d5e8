#include "planarlie/field.hpp"

#include "planarlie/errors.hpp"

namespace planarlie {

VectorField bracket(const VectorField& v, const VectorField& w) {
    ExpPoly p = v.p * w.p.diff(Var::x) + v.q * w.p.diff(Var::y) -
                w.p * v.p.diff(Var::x) - w.q * v.p.diff(Var::y);
    ExpPoly q = v.p * w.q.diff(Var::x) + v.q * w.q.diff(Var::y) -
                w.p * v.q.diff(Var::x) - w.q * v.q.diff(Var::y);
    return {std::move(p), std::move(q)};
}

ExpPoly project_y(const VectorField& v) {
    if (!v.is_triangular())
        throw NotTriangular("projection needs a field of the form xi(x,y)*Dx + eta(y)*Dy, got " +
                            v.str());
    return v.q;
}

ExpPoly line_bracket(const ExpPoly& eta1, const ExpPoly& eta2) {
    return eta1 * eta2.diff(Var::y) - eta2 * eta1.diff(Var::y);
}

std::string VectorField::str() const {
    if (is_zero()) return "0*Dx";
    std::string out;
    bool first = true;
    auto emit = [&](const ExpPoly& comp, const char* basis) {
        for (const auto& [m, c] : comp.terms()) {
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
            if (body.is_one() && m.is_unit()) {
                out += basis;
            } else {
                out += term_body_str(m, body) + "*" + basis;
            }
        }
    };
    emit(p, "Dx");
    emit(q, "Dy");
    return out;
}

}  // namespace planarlie
