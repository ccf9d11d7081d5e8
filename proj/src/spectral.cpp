#include "planarlie/spectral.hpp"

#include <algorithm>

#include "planarlie/errors.hpp"

namespace planarlie {

AdMatrix ad_matrix(const VectorField& x, const AlgebraSpan& target) {
    std::size_t n = target.dim();
    QMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        VectorField b = bracket(x, target.basis()[j]);
        auto coords = target.member(b);
        if (!coords) throw NotInvariant(j, b.str());
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = (*coords)[i];
    }
    return {x, target, std::move(m)};
}

SpectralData spectral_decompose(const AdMatrix& ad) {
    std::size_t n = ad.m.rows;
    SpectralData data;
    data.op = ad.op;
    if (n == 0) return data;
    QPoly chi;
    chi.c = char_poly(ad.m);
    RootSearchResult rs = gaussian_rational_roots(chi);
    if (rs.residual.degree() > 0) throw IrrationalSpectrum(rs.residual.str());
    for (const auto& [lambda, mult] : rs.roots) {
        QMatrix shifted = ad.m - QMatrix::identity(n).scaled(lambda);
        QMatrix power = shifted.pow((unsigned)mult);
        SpectralBlock block;
        block.lambda = lambda;
        block.multiplicity = mult;
        block.basis = kernel(power);
        if ((int)block.basis.size() != mult)
            throw Error("generalized eigenspace dimension mismatch for eigenvalue " +
                        lambda.str());
        data.blocks.push_back(std::move(block));
    }
    return data;
}

namespace {

// X is Dy or x*Dx + Dy, exactly.
enum class OpKind { Dy, XDxPlusDy, Other };

OpKind op_kind(const VectorField& x) {
    if (x == VectorField::dy()) return OpKind::Dy;
    VectorField xdxdy{ExpPoly::variable(Var::x), ExpPoly::one()};
    if (x == xdxdy) return OpKind::XDxPlusDy;
    return OpKind::Other;
}

}  // namespace

std::vector<std::pair<GaussianRational, int>> eigenfunction_form(const SpectralData& d,
                                                                 const AlgebraSpan& target) {
    OpKind kind = op_kind(d.op);
    if (kind == OpKind::Other)
        throw FormMismatch("operator must be Dy or x*Dx + Dy, got " + d.op.str());
    for (const VectorField& f : target.basis()) {
        if (!f.q.is_zero() || f.p.depends_on_x())
            throw FormMismatch("target contains a field not of the form G(y)*Dx: " + f.str());
    }
    std::vector<std::pair<GaussianRational, int>> out;
    for (const SpectralBlock& block : d.blocks) {
        GaussianRational freq = block.lambda;
        if (kind == OpKind::XDxPlusDy) freq += GaussianRational(1);
        for (const auto& coords : block.basis) {
            VectorField v = target.from_coords(coords);
            for (const auto& [m, c] : v.p.terms()) {
                if (m.xdeg != 0 || !m.xfreq.is_zero() || !(m.yfreq == freq) ||
                    m.ydeg >= block.multiplicity)
                    throw FormMismatch("eigenvector " + v.str() + " is not of the form exp(" +
                                       freq.str() + "*y)*P(y)*Dx with degree(P) < " +
                                       std::to_string(block.multiplicity));
            }
        }
        out.push_back({block.lambda, block.multiplicity});
    }
    return out;
}

}  // namespace planarlie
