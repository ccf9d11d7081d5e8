#include "planarlie/transform.hpp"

#include "planarlie/errors.hpp"

namespace planarlie {

PointTransform PointTransform::shear_x(const GaussianRational& alpha, ExpPoly f) {
    if (alpha.is_zero()) throw Error("ShearX: alpha must be nonzero");
    if (f.depends_on_x()) throw Error("ShearX: offset must depend only on y");
    return PointTransform(Move(ShearX{alpha, std::move(f)}));
}

PointTransform PointTransform::affine_y(const GaussianRational& beta, const GaussianRational& c) {
    if (beta.is_zero()) throw Error("AffineY: beta must be nonzero");
    return PointTransform(Move(AffineY{beta, c}));
}

PointTransform PointTransform::inverse() const {
    std::vector<Move> inv;
    for (std::size_t i = moves_.size(); i-- > 0;) {
        const Move& m = moves_[i];
        if (const ShearX* s = std::get_if<ShearX>(&m)) {
            inv.push_back(ShearX{s->alpha.inverse(), s->f.scaled(-s->alpha.inverse())});
        } else if (const AffineY* a = std::get_if<AffineY>(&m)) {
            inv.push_back(AffineY{a->beta.inverse(), -(a->c / a->beta)});
        } else {
            inv.push_back(SwapXY{});
        }
    }
    return PointTransform(std::move(inv));
}

std::string PointTransform::str() const {
    if (moves_.empty()) return "identity";
    std::string out;
    for (const Move& m : moves_) {
        if (!out.empty()) out += "; ";
        if (const ShearX* s = std::get_if<ShearX>(&m)) {
            out += "x -> " + (s->alpha.is_one() ? std::string("x") : s->alpha.str() + "*x");
            std::string fs = s->f.str();
            if (fs != "0") out += " + (" + fs + ")";
        } else if (const AffineY* a = std::get_if<AffineY>(&m)) {
            out += "y -> " + (a->beta.is_one() ? std::string("y") : a->beta.str() + "*y");
            if (!a->c.is_zero()) out += " + (" + a->c.str() + ")";
        } else {
            out += "swap x and y";
        }
    }
    return out;
}

VectorField pushforward(const Move& m, const VectorField& v) {
    if (const ShearX* s = std::get_if<ShearX>(&m)) {
        // Dx = alpha Dx~, Dy = f'(y~) Dx~ + Dy~; then rewrite x via the inverse map.
        ExpPoly fprime = s->f.diff(Var::y);
        ExpPoly p = v.p.scaled(s->alpha) + fprime * v.q;
        return {p.substitute_x_affine(s->alpha, s->f), v.q.substitute_x_affine(s->alpha, s->f)};
    }
    if (const AffineY* a = std::get_if<AffineY>(&m)) {
        return {v.p.substitute_y_affine(a->beta, a->c),
                v.q.scaled(a->beta).substitute_y_affine(a->beta, a->c)};
    }
    return v.swap_xy();
}

VectorField pushforward(const PointTransform& t, const VectorField& v) {
    VectorField r = v;
    for (const Move& m : t.moves()) r = pushforward(m, r);
    return r;
}

AlgebraSpan pushforward_algebra(const PointTransform& t, const AlgebraSpan& g) {
    std::vector<VectorField> pushed;
    pushed.reserve(g.dim());
    for (const VectorField& f : g.basis()) pushed.push_back(pushforward(t, f));
    AlgebraSpan out = AlgebraSpan::make_span_allow_empty(pushed);
    if (out.dim() != g.dim())
        throw Error("pushforward collapsed the span; transform is not invertible on it");
    return out;
}

ExpPoly solve_antiderivative(const ExpPoly& h) { return h.antiderivative_y(); }

}  // namespace planarlie
