#include "planarlie/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "planarlie/errors.hpp"
#include "planarlie/expr.hpp"
#include "planarlie/funcspan.hpp"
#include "planarlie/spectral.hpp"

namespace planarlie {

namespace {

// ---------------------------------------------------------------- helpers

// p must be a*x + H(y); returns (a, H).
std::optional<std::pair<GaussianRational, ExpPoly>> split_x_linear(const ExpPoly& p) {
    GaussianRational a;
    ExpPoly h;
    for (const auto& [m, c] : p.terms()) {
        if (m.xdeg == 1 && m.ydeg == 0 && m.xfreq.is_zero() && m.yfreq.is_zero()) {
            a = c;
            continue;
        }
        if (m.xdeg == 0 && m.xfreq.is_zero()) {
            h.add_term(m, c);
            continue;
        }
        return std::nullopt;
    }
    return std::make_pair(a, h);
}

bool is_horizontal_y(const VectorField& v) { return v.q.is_zero() && !v.p.depends_on_x(); }

bool all_horizontal_y(const AlgebraSpan& s) {
    for (const VectorField& v : s.basis())
        if (!is_horizontal_y(v)) return false;
    return true;
}

std::optional<GaussianRational> constant_value_of(const ExpPoly& p) {
    if (p.is_zero()) return GaussianRational();
    if (p.is_constant()) return p.constant_value();
    return std::nullopt;
}

FunctionSpan horizontal_functions(const AlgebraSpan& s) {
    std::vector<ExpPoly> funcs;
    for (const VectorField& v : s.basis()) funcs.push_back(v.p);
    return FunctionSpan(funcs);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

// Square root in Q(i), when it exists; lexicographically positive choice.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
    if (z.is_zero()) return GaussianRational();
    if (z.im == 0) {
        if (auto r = rational_sqrt(z.re)) return GaussianRational(*r);
        if (auto r = rational_sqrt(mpq_class(-z.re)))
            return GaussianRational(mpq_class(0), *r);  // sqrt(-s) = i sqrt(s)
        return std::nullopt;
    }
    // (u + iv)^2 = s + it:  u^2 = (s + |z|)/2, v = t/(2u), |z| must be rational
    auto nrm = rational_sqrt(z.norm2());
    if (!nrm) return std::nullopt;
    auto u2 = rational_sqrt(mpq_class((z.re + *nrm) / 2));
    if (!u2) return std::nullopt;
    mpq_class u = *u2;
    if (u == 0) return std::nullopt;
    mpq_class v = z.im / (2 * u);
    GaussianRational root(u, v);
    if (root.cmp(GaussianRational()) < 0) root = -root;
    return root;
}

int zero_multiplicity(const std::vector<std::pair<GaussianRational, int>>& spec) {
    for (const auto& [l, n] : spec)
        if (l.is_zero()) return n;
    return 0;
}

// ---------------------------------------------------------------- basics

struct Basics {
    std::vector<int> ds_dims, lcs_dims;
    AlgebraSpan gp;
    bool solvable = false, nilpotent = false, abelian = false;
    int rank_g = 0, rank_gp = 0, center_dim = 0;
    bool gp_abelian = false;
};

Basics compute_basics(const AlgebraSpan& g) {
    g.closed();  // throws NotClosed before anything else
    std::vector<AlgebraSpan> ds = derived_series(g);
    std::vector<AlgebraSpan> lcs = lower_central_series(g);
    Basics b{.gp = ds.size() > 1 ? ds[1] : derived(g)};
    for (const AlgebraSpan& s : ds) b.ds_dims.push_back((int)s.dim());
    for (const AlgebraSpan& s : lcs) b.lcs_dims.push_back((int)s.dim());
    b.solvable = ds.back().dim() == 0;
    b.nilpotent = lcs.back().dim() == 0;
    b.abelian = b.gp.dim() == 0;
    b.rank_g = rank(g);
    b.rank_gp = rank(b.gp);
    b.center_dim = (int)center(g).dim();
    b.gp_abelian = b.gp.dim() == 0 || is_abelian(b.gp);
    return b;
}

InvariantFingerprint basics_to_fp(const AlgebraSpan& g, const Basics& b) {
    InvariantFingerprint fp;
    fp.dim = (int)g.dim();
    fp.derived_dims = b.ds_dims;
    fp.lcs_dims = b.lcs_dims;
    fp.abelian = b.abelian;
    fp.nilpotent = b.nilpotent;
    fp.solvable = b.solvable;
    fp.center_dim = b.center_dim;
    fp.rank_g = b.rank_g;
    fp.rank_derived = b.rank_gp;
    fp.derived_abelian = b.gp_abelian;
    fp.quotient_dim = (int)(g.dim() - b.gp.dim());
    return fp;
}

// ----------------------------------- rank 2 with abelian rank-1 commutator

// Analysis of the branch where g has rank 2 and g' is abelian of rank 1:
// the distinguished complement element, its ad-spectrum on g', and the
// resulting spectral family.
struct SpectralBranch {
    bool swapped = false;
    AlgebraSpan g;   // working frame (swapped when needed)
    AlgebraSpan gp;  // derived algebra in the working frame
    bool x_route = false;
    VectorField Z;  // normalized distinguished element (working frame)
    std::optional<VectorField> U;
    GaussianRational aZ;
    ExpPoly HZ;
    std::optional<GaussianRational> eta_c;  // value of Z.q when constant
    SpectralData spec;
    SpectralType family;
};

AlgebraSpan swap_span(const AlgebraSpan& s) {
    std::vector<VectorField> out;
    for (const VectorField& v : s.basis()) out.push_back(v.swap_xy());
    return AlgebraSpan::make_span_allow_empty(out);
}

SpectralBranch analyze_spectral_branch(const AlgebraSpan& g0) {
    SpectralBranch r{.g = g0, .gp = derived(g0)};
    if (!all_horizontal_y(r.gp)) {
        r.g = swap_span(g0);
        r.gp = derived(r.g);
        r.swapped = true;
        if (!all_horizontal_y(r.gp))
            throw UnclassifiableForm(
                "the commutator is not a line of G(y)*Dx fields in either orientation");
    }
    FunctionSpan gp_funcs = horizontal_functions(r.gp);

    std::vector<VectorField> reps;
    for (const VectorField& b : r.g.basis()) {
        VectorField red = r.gp.reduce_mod(b);
        if (!red.is_zero()) reps.push_back(red);
    }
    AlgebraSpan comp = AlgebraSpan::make_span_allow_empty(reps);
    std::size_t m = comp.dim();
    if (m < 1 || m > 2)
        throw UnclassifiableForm("complement of the commutator has dimension " +
                                 std::to_string(m) + ", expected 1 or 2");
    std::vector<VectorField> ech = comp.echelon_fields();
    VectorField Z = ech[0];
    if (Z.q.is_zero())
        throw UnclassifiableForm("no complement element with a nonzero Dy component");
    if (Z.q.depends_on_x())
        throw UnclassifiableForm("complement element " + Z.str() + " is not triangular");

    std::optional<VectorField> U;
    GaussianRational aU;
    enum class UType { none, null, scaling } utype = UType::none;
    if (m == 2) {
        U = ech[1];
        if (!U->q.is_zero())
            throw UnclassifiableForm(
                "the projection of the algebra on Dy fields is two-dimensional");
        auto su = split_x_linear(U->p);
        if (!su)
            throw UnclassifiableForm("complement element " + U->str() +
                                     " is not of the form (a*x + H(y))*Dx");
        aU = su->first;
        QMatrix adU = ad_matrix(*U, r.gp).m;
        if (adU.is_zero()) {
            utype = UType::null;
            if (!aU.is_zero())
                throw UnclassifiableForm("inconsistent scalar action of " + U->str());
        } else if (adU == QMatrix::identity(r.gp.dim()).scaled(-aU) && !aU.is_zero()) {
            utype = UType::scaling;
        } else {
            throw UnclassifiableForm("complement element " + U->str() +
                                     " does not act on the commutator by a scalar");
        }
    }

    auto sz = split_x_linear(Z.p);
    if (!sz)
        throw UnclassifiableForm("complement element " + Z.str() +
                                 " is not of the form (a*x + H(y))*Dx + eta(y)*Dy");
    r.aZ = sz->first;
    r.HZ = sz->second;

    int variant = 0;
    if (m == 1) {
        r.x_route = !r.aZ.is_zero();
        variant = r.x_route ? 4 : 1;
    } else if (utype == UType::null) {
        r.x_route = !r.aZ.is_zero();
        variant = r.x_route ? 5 : 3;
    } else {
        // scaling complement: the algebra admits a Dy presentation; ties are
        // broken toward it (variant 2), with variant-6 inputs reported there.
        VectorField ustar = U->scaled(aU.inverse());  // rho(ustar) = -id, a = 1
        Z = Z - ustar.scaled(r.aZ);
        Z = r.gp.reduce_mod(Z);
        auto sz2 = split_x_linear(Z.p);
        if (!sz2) throw UnclassifiableForm("normalized complement element lost its shape");
        r.aZ = sz2->first;  // now 0
        r.HZ = sz2->second;
        U = ustar;
        r.x_route = false;
        variant = 2;
    }
    if (r.x_route) {
        GaussianRational inv = r.aZ.inverse();
        Z = Z.scaled(inv);
        r.HZ = r.HZ.scaled(inv);
        r.aZ = GaussianRational(1);
    }
    r.Z = Z;
    r.U = U;
    r.eta_c = constant_value_of(Z.q);

    AdMatrix D = ad_matrix(Z, r.gp);
    r.spec = spectral_decompose(D);  // IrrationalSpectrum propagates

    // Eigenfunction shape of the spectral families: each generalized eigenspace is
    // spanned by single-frequency fields e^{mu y} P(y) Dx with deg P < mult,
    // and mu matches the eigenvalue when eta is constant.
    for (const SpectralBlock& block : r.spec.blocks) {
        std::optional<GaussianRational> mu;
        for (const auto& coords : block.basis) {
            VectorField v = r.gp.from_coords(coords);
            if (!is_horizontal_y(v))
                throw UnclassifiableForm("generalized eigenvector " + v.str() +
                                         " is not of the form G(y)*Dx");
            for (const auto& [mon, c] : v.p.terms()) {
                if (!mu) mu = mon.yfreq;
                if (!(mon.yfreq == *mu) || mon.ydeg >= block.multiplicity)
                    throw UnclassifiableForm(
                        "generalized eigenspace of " + block.lambda.str() +
                        " is not spanned by exp(mu*y)*P(y)*Dx with degree(P) < multiplicity");
            }
        }
        if (r.eta_c && mu) {
            GaussianRational expect =
                r.x_route ? (block.lambda + GaussianRational(1)) / *r.eta_c
                          : block.lambda / *r.eta_c;
            if (!(*mu == expect))
                throw UnclassifiableForm("eigenvalue " + block.lambda.str() +
                                         " sits on frequency " + mu->str() + ", expected " +
                                         expect.str());
        }
    }

    r.family.variant = variant;
    r.family.spectrum = r.spec.spectrum();
    int n0 = zero_multiplicity(r.family.spectrum);

    if (variant == 1 || variant == 4) {
        if (n0 > 0)
            throw UnclassifiableForm(
                "zero eigenvalue on the full commutator contradicts g' = [g, g]");
    }
    if (variant == 3) {
        if (n0 == 0)
            throw UnclassifiableForm(
                "null complement element with an invertible distinguished spectrum");
        if (r.eta_c) {
            ExpPoly cu = gp_funcs.reduce((*U).p);
            bool ok = cu.term_count() == 1;
            if (ok) {
                const auto& [mon, c] = *cu.terms().begin();
                ok = mon.xdeg == 0 && mon.xfreq.is_zero() && mon.yfreq.is_zero() &&
                     mon.ydeg == n0;
            }
            if (!ok)
                throw UnclassifiableForm("second complement element " + U->str() +
                                         " is not y^N*Dx modulo the commutator (N = " +
                                         std::to_string(n0) + ")");
        }
    }
    if (variant == 5 && r.eta_c) {
        GaussianRational mustar = r.eta_c->inverse();  // frequency with eigenvalue zero
        ExpPoly cu = gp_funcs.reduce((*U).p);
        bool ok = cu.term_count() == 1;
        if (ok) {
            const auto& [mon, c] = *cu.terms().begin();
            ok = mon.xdeg == 0 && mon.xfreq.is_zero() && mon.yfreq == mustar && mon.ydeg == n0;
        }
        if (!ok)
            throw UnclassifiableForm("second complement element " + U->str() +
                                     " is not y^N*exp(y/eta)*Dx modulo the commutator");
    }
    return r;
}

// ----------------------------------------------- non-abelian commutator

struct NonAbelianBranch {
    int k = 0;
    int m = 0;
    AlgebraSpan gp;
    AlgebraSpan ell;          // the rank-one part L of g' (with the center line)
    VectorField z0;           // center generator of g'
    VectorField wq;           // representative of g'/L
    std::vector<VectorField> comp;  // complement echelon reps
};

// scalar gamma with [v, z0] = gamma z0, and beta with [v, wq] = beta wq mod L
struct PairEig {
    GaussianRational gamma, beta;
};

NonAbelianBranch nonabelian_branch_data(const AlgebraSpan& g, const AlgebraSpan& gp) {
    NonAbelianBranch d{.gp = gp};
    d.k = (int)gp.dim() - 2;
    d.m = (int)(g.dim() - gp.dim());
    AlgebraSpan zc = center(gp);
    if (zc.dim() != 1)
        throw UnclassifiableForm("nonabelian commutator with center dimension " +
                                 std::to_string(zc.dim()));
    d.z0 = zc.basis()[0];
    // L = { v in g' : v wedge z0 = 0 }, the rank-one subspace through the center
    std::vector<ExpPoly> wedges;
    for (const VectorField& e : gp.basis()) wedges.push_back(e.p * d.z0.q - d.z0.p * e.q);
    // solve sum x_i wedge_i = 0 exactly over monomial coordinates
    std::set<ExpMonomial> keys;
    for (const ExpPoly& w : wedges)
        for (const auto& [mon, c] : w.terms()) keys.insert(mon);
    QMatrix sys(keys.size(), gp.dim());
    {
        std::size_t row = 0;
        for (const ExpMonomial& mon : keys) {
            for (std::size_t i = 0; i < gp.dim(); ++i) sys.at(row, i) = wedges[i].coefficient(mon);
            ++row;
        }
    }
    std::vector<VectorField> lfields;
    for (const auto& v : kernel(sys)) lfields.push_back(gp.from_coords(v));
    d.ell = AlgebraSpan::make_span_allow_empty(lfields);
    if ((int)d.ell.dim() != d.k + 1)
        throw UnclassifiableForm("rank-one part of the commutator has dimension " +
                                 std::to_string(d.ell.dim()) + ", expected " +
                                 std::to_string(d.k + 1));
    for (const VectorField& e : gp.basis()) {
        VectorField red = d.ell.reduce_mod(e);
        if (!red.is_zero()) {
            d.wq = red;
            break;
        }
    }
    if (d.wq.is_zero()) throw UnclassifiableForm("commutator has no Dy-direction part");
    std::vector<VectorField> reps;
    for (const VectorField& b : g.basis()) {
        VectorField red = gp.reduce_mod(b);
        if (!red.is_zero()) reps.push_back(red);
    }
    AlgebraSpan comp = AlgebraSpan::make_span_allow_empty(reps);
    if ((int)comp.dim() != d.m) throw UnclassifiableForm("complement dimension mismatch");
    d.comp = comp.echelon_fields();
    return d;
}

PairEig pair_eig(const NonAbelianBranch& d, const VectorField& v) {
    PairEig pe;
    AlgebraSpan zline = AlgebraSpan::make_span({d.z0});
    auto cz = zline.member(bracket(v, d.z0));
    if (!cz) throw UnclassifiableForm("element does not preserve the center line of g'");
    pe.gamma = (*cz)[0];
    std::vector<VectorField> lq = d.ell.basis();
    lq.push_back(d.wq);
    AlgebraSpan lqspan = AlgebraSpan::make_span(lq);
    auto cq = lqspan.member(bracket(v, d.wq));
    if (!cq) throw UnclassifiableForm("element does not preserve g' in the quotient");
    pe.beta = (*cq)[d.ell.dim()];
    return pe;
}

bool diagonalizable(const QMatrix& a, const std::vector<std::pair<GaussianRational, int>>& spec) {
    for (const auto& [lambda, mult] : spec) {
        QMatrix shifted = a - QMatrix::identity(a.rows).scaled(lambda);
        if ((int)kernel(shifted).size() != mult) return false;
    }
    return true;
}

QPoly poly_from_roots(const std::vector<GaussianRational>& roots) {
    QPoly p;
    p.c = {GaussianRational(1)};
    for (const GaussianRational& r : roots) {
        // multiply by (t - r)
        QPoly q;
        q.c.assign(p.c.size() + 1, GaussianRational());
        for (std::size_t i = 0; i < p.c.size(); ++i) {
            q.c[i + 1] += p.c[i];
            q.c[i] -= p.c[i] * r;
        }
        p = std::move(q);
    }
    return p;
}

ClassificationRecord classify_nonabelian_commutator(const AlgebraSpan& g, const Basics& b) {
    // g' must itself carry the nilpotent non-abelian profile
    if ((int)b.gp.dim() < 3 || !is_nilpotent(b.gp))
        throw UnclassifiableForm("nonabelian commutator without the nilpotent profile");
    NonAbelianBranch d = nonabelian_branch_data(g, b.gp);
    if (d.k < 1) throw UnclassifiableForm("commutator too small for the nonabelian branch");
    ClassificationRecord rec;
    if (d.m == 2) {
        PairEig p1 = pair_eig(d, d.comp[0]);
        PairEig p2 = pair_eig(d, d.comp[1]);
        // solve for the x*Dx-like and y*Dy-like combinations
        QMatrix mat(2, 2);
        mat.at(0, 0) = p1.gamma;
        mat.at(0, 1) = p2.gamma;
        mat.at(1, 0) = p1.beta;
        mat.at(1, 1) = p2.beta;
        GaussianRational det = mat.at(0, 0) * mat.at(1, 1) - mat.at(0, 1) * mat.at(1, 0);
        if (det.is_zero())
            throw UnclassifiableForm("two-dimensional complement acts degenerately on g'");
        auto solve2 = [&](const GaussianRational& t1, const GaussianRational& t2) {
            GaussianRational c1 = (t1 * mat.at(1, 1) - t2 * mat.at(0, 1)) / det;
            GaussianRational c2 = (t2 * mat.at(0, 0) - t1 * mat.at(1, 0)) / det;
            return d.comp[0].scaled(c1) + d.comp[1].scaled(c2);
        };
        VectorField x1 = solve2(GaussianRational(-1), GaussianRational(0));   // x Dx like
        VectorField x2 = solve2(GaussianRational(0), GaussianRational(-1));   // y Dy like
        QMatrix a1 = ad_matrix(x1, b.gp).m;
        QMatrix a2 = ad_matrix(x2, b.gp).m;
        std::size_t n = b.gp.dim();
        if (!((a1 * a1 + a1).is_zero()) || !(a1.trace() == GaussianRational(-(long)(d.k + 1))))
            throw UnclassifiableForm("complement action does not match the full normal form");
        std::vector<GaussianRational> roots{GaussianRational(0), GaussianRational(-1)};
        for (int j = 1; j <= d.k; ++j) roots.push_back(GaussianRational(j));
        QPoly expect = poly_from_roots(roots);
        QPoly chi;
        chi.c = char_poly(a2);
        if (!(chi.monic().c == expect.c))
            throw UnclassifiableForm("complement action does not match the full normal form");
        (void)n;
        rec.family = NonAbelianDerivedFull{d.k};
    } else if (d.m == 1) {
        PairEig pe = pair_eig(d, d.comp[0]);
        if (pe.beta.is_zero())
            throw UnclassifiableForm("complement acts trivially on g' modulo its rank-one part");
        VectorField z = d.comp[0].scaled(-(pe.beta.inverse()));  // beta = -1
        GaussianRational a = -pair_eig(d, z).gamma;
        QMatrix az = ad_matrix(z, b.gp).m;
        std::vector<GaussianRational> roots{GaussianRational(-1)};
        std::vector<std::pair<GaussianRational, int>> spec;
        for (int j = 0; j <= d.k; ++j) roots.push_back(GaussianRational(j) - a);
        QPoly expect = poly_from_roots(roots);
        QPoly chi;
        chi.c = char_poly(az);
        if (!(chi.monic().c == expect.c))
            throw UnclassifiableForm("complement action does not match the line normal form");
        std::map<std::string, std::pair<GaussianRational, int>> tally;
        for (const GaussianRational& rt : roots) {
            auto [it, fresh] = tally.try_emplace(rt.str(), std::make_pair(rt, 0));
            it->second.second += 1;
        }
        for (const auto& [key, val] : tally) spec.push_back(val);
        if (!diagonalizable(az, spec))
            throw UnclassifiableForm(
                "complement action on g' is not semisimple; no catalog form matches");
        if (a.is_zero() || a == GaussianRational(d.k))
            throw UnclassifiableForm("line profile with a = " + a.str() +
                                     ", excluded by the catalog side condition a != 0, k");
        rec.family = NonAbelianDerivedLine{d.k, a};
    } else {
        throw UnclassifiableForm("complement of a nonabelian commutator has dimension " +
                                 std::to_string(d.m));
    }
    return rec;
}

// -------------------------------------- rank-2 abelian commutator (gl2)

struct PlaneEigenline {
    GaussianRational value;
    VectorField line;  // eigenline generator as a field
};

std::vector<PlaneEigenline> two_by_two_eigenlines(const QMatrix& a, const AlgebraSpan& gp) {
    QPoly chi;
    chi.c = char_poly(a);
    RootSearchResult roots = gaussian_rational_roots(chi);
    if (roots.residual.degree() > 0) throw IrrationalSpectrum(roots.residual.str());
    std::vector<PlaneEigenline> out;
    for (const auto& [lambda, mult] : roots.roots) {
        QMatrix shifted = a - QMatrix::identity(2).scaled(lambda);
        for (const auto& v : kernel(shifted)) out.push_back({lambda, gp.from_coords(v)});
    }
    return out;
}

ClassificationRecord classify_translation_pair(const AlgebraSpan& g, const Basics& b) {
    if (b.gp.dim() != 2)
        throw UnclassifiableForm("abelian rank-2 commutator of dimension " +
                                 std::to_string(b.gp.dim()));
    int m = (int)(g.dim() - 2);
    if (m < 1 || m > 2)
        throw UnclassifiableForm("normalizer complement has dimension " + std::to_string(m));
    std::vector<VectorField> reps;
    for (const VectorField& e : g.basis()) {
        VectorField red = b.gp.reduce_mod(e);
        if (!red.is_zero()) reps.push_back(red);
    }
    AlgebraSpan comp = AlgebraSpan::make_span_allow_empty(reps);
    if ((int)comp.dim() != m) throw UnclassifiableForm("complement dimension mismatch");
    std::vector<VectorField> ech = comp.echelon_fields();
    ClassificationRecord rec;
    if (m == 1) {
        QMatrix a = ad_matrix(ech[0], b.gp).m;
        GaussianRational half(mpq_class(1, 2));
        GaussianRational tr_half = a.trace() * half;
        QMatrix traceless = a - QMatrix::identity(2).scaled(tr_half);
        if (traceless.is_zero()) {
            // scalar action: x Dx + y Dy up to scale
            rec.family = Rank2Abelian{3, GaussianRational(1)};
            return rec;
        }
        std::vector<PlaneEigenline> lines = two_by_two_eigenlines(a, b.gp);
        if (lines.size() != 2)
            throw UnclassifiableForm(
                "single complement element acts non-semisimply on <Dx, Dy>; not among the "
                "catalog types");
        std::size_t flat = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i)
            if (lines[i].line.q.is_zero()) flat = i;
        if (flat < lines.size()) {
            const PlaneEigenline& anchor = lines[flat];
            const PlaneEigenline& other = lines[1 - flat];
            if (anchor.value.is_zero() || other.line.q.is_zero())
                throw UnclassifiableForm("degenerate diagonal action on <Dx, Dy>");
            rec.family = Rank2Abelian{3, other.value / anchor.value};
        } else {
            // rotation-like: ad = s(-lambda I + J) with s^2 = det(ad - tr/2)
            QMatrix bmat = a - QMatrix::identity(2).scaled(tr_half);
            GaussianRational s2 =
                bmat.at(0, 0) * bmat.at(1, 1) - bmat.at(0, 1) * bmat.at(1, 0);
            auto s = gaussian_sqrt(s2);
            if (!s || s->is_zero() ||
                !((bmat * bmat) == QMatrix::identity(2).scaled(-s2)))
                throw UnclassifiableForm("complement action is not of rotation type");
            GaussianRational lambda = -(tr_half / *s);
            rec.family = Rank2Abelian{4, lambda};
        }
    } else {
        QMatrix a1 = ad_matrix(ech[0], b.gp).m;
        QMatrix a2 = ad_matrix(ech[1], b.gp).m;
        if (!(a1 * a2 == a2 * a1))
            throw UnclassifiableForm("complement actions on <Dx, Dy> do not commute");
        auto is_scalar = [](const QMatrix& m) {
            return (m - QMatrix::identity(2).scaled(m.at(0, 0))).is_zero();
        };
        QMatrix bmat = a1;
        if (is_scalar(bmat)) bmat = a2;
        if (is_scalar(bmat)) bmat = a1 + a2;
        if (is_scalar(bmat))
            throw UnclassifiableForm("two-dimensional complement acting by scalars only");
        std::vector<PlaneEigenline> lines = two_by_two_eigenlines(bmat, b.gp);
        if (lines.size() != 2)
            throw UnclassifiableForm("complement action is not semisimple; not among the "
                                     "catalog types");
        bool has_flat = lines[0].line.q.is_zero() || lines[1].line.q.is_zero();
        if (has_flat) {
            // diagonal pair: eigenvalue map must exhaust both directions
            auto eig_on = [&](const QMatrix& m, const VectorField& line) {
                auto coords = b.gp.member(line);
                std::vector<GaussianRational> image(2);
                for (std::size_t i = 0; i < 2; ++i)
                    image[i] = m.at(i, 0) * (*coords)[0] + m.at(i, 1) * (*coords)[1];
                // image = eig * coords on an eigenline
                for (std::size_t i = 0; i < 2; ++i)
                    if (!(*coords)[i].is_zero()) return image[i] / (*coords)[i];
                return GaussianRational();
            };
            QMatrix pairmat(2, 2);
            pairmat.at(0, 0) = eig_on(a1, lines[0].line);
            pairmat.at(0, 1) = eig_on(a1, lines[1].line);
            pairmat.at(1, 0) = eig_on(a2, lines[0].line);
            pairmat.at(1, 1) = eig_on(a2, lines[1].line);
            GaussianRational det =
                pairmat.at(0, 0) * pairmat.at(1, 1) - pairmat.at(0, 1) * pairmat.at(1, 0);
            if (det.is_zero())
                throw UnclassifiableForm("diagonal pair does not span both scaling directions");
            rec.family = Rank2Abelian{1, GaussianRational()};
        } else {
            // scaling + rotation: the action span must contain the identity
            // solve c1 a1 + c2 a2 = I
            QMatrix sys(4, 2);
            std::vector<GaussianRational> rhs(4);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    sys.at(i * 2 + j, 0) = a1.at(i, j);
                    sys.at(i * 2 + j, 1) = a2.at(i, j);
                    rhs[i * 2 + j] = (i == j) ? GaussianRational(1) : GaussianRational();
                }
            // least structure: solve two unknowns from two independent rows, verify all
            bool solved = false;
            for (std::size_t r1 = 0; r1 < 4 && !solved; ++r1)
                for (std::size_t r2 = r1 + 1; r2 < 4 && !solved; ++r2) {
                    GaussianRational det = sys.at(r1, 0) * sys.at(r2, 1) -
                                           sys.at(r1, 1) * sys.at(r2, 0);
                    if (det.is_zero()) continue;
                    GaussianRational c1 =
                        (rhs[r1] * sys.at(r2, 1) - rhs[r2] * sys.at(r1, 1)) / det;
                    GaussianRational c2 =
                        (rhs[r2] * sys.at(r1, 0) - rhs[r1] * sys.at(r2, 0)) / det;
                    QMatrix test = a1.scaled(c1) + a2.scaled(c2);
                    if (test == QMatrix::identity(2)) solved = true;
                }
            if (!solved)
                throw UnclassifiableForm(
                    "complement action span does not contain the identity; not of "
                    "scaling-plus-rotation type");
            rec.family = Rank2Abelian{2, GaussianRational()};
        }
    }
    return rec;
}

// --------------------------------------------------- rank-one algebras

ClassificationRecord classify_rank1(const AlgebraSpan& g, const Basics& b) {
    AlgebraSpan work = g;
    bool horizontal = true;
    for (const VectorField& v : g.basis())
        if (!v.q.is_zero()) horizontal = false;
    if (!horizontal) {
        bool vertical = true;
        for (const VectorField& v : g.basis())
            if (!v.p.is_zero()) vertical = false;
        if (!vertical)
            throw UnclassifiableForm("rank-one algebra whose direction is not a coordinate axis");
        work = swap_span(g);
    }
    AlgebraSpan gp = derived(work);
    for (const VectorField& v : gp.basis())
        if (!is_horizontal_y(v))
            throw UnclassifiableForm("rank-one commutator with x-dependent coefficients");
    if (work.dim() - gp.dim() != 1)
        throw UnclassifiableForm("rank-one solvable algebra with complement dimension " +
                                 std::to_string(work.dim() - gp.dim()));
    std::vector<VectorField> reps;
    for (const VectorField& e : work.basis()) {
        VectorField red = gp.reduce_mod(e);
        if (!red.is_zero()) reps.push_back(red);
    }
    AlgebraSpan comp = AlgebraSpan::make_span(reps);
    VectorField z = comp.echelon_fields()[0];
    QMatrix az = ad_matrix(z, gp).m;
    auto sz = split_x_linear(z.p);
    if (!sz || sz->first.is_zero() ||
        !(az == QMatrix::identity(gp.dim()).scaled(-sz->first)))
        throw UnclassifiableForm("complement of a rank-one algebra does not act by x*Dx");
    ClassificationRecord rec;
    Rank1Solvable fam;
    fam.phis = horizontal_functions(gp).basis();
    rec.family = std::move(fam);
    return rec;
}

// ------------------------------------------------------------ nilpotent

ClassificationRecord classify_nilpotent(const AlgebraSpan& g, const Basics& b) {
    int n = (int)g.dim() - 2;
    if (n < 1)
        throw UnclassifiableForm("nilpotent non-abelian algebra of dimension " +
                                 std::to_string(g.dim()));
    std::vector<int> expect_lcs{n + 2};
    for (int d = n; d >= 0; --d) expect_lcs.push_back(d);
    std::vector<int> expect_ds{n + 2, n, 0};
    if (b.lcs_dims != expect_lcs || b.ds_dims != expect_ds || b.center_dim != 1 ||
        b.rank_g != 2 || !b.gp_abelian || b.rank_gp != 1)
        throw UnclassifiableForm("nilpotent non-abelian profile mismatch");
    ClassificationRecord rec;
    rec.family = NilpotentNonAbelian{n};
    return rec;
}

}  // namespace

InvariantFingerprint fingerprint(const AlgebraSpan& g) {
    if (g.dim() == 0) throw UnclassifiableForm("zero algebra");
    Basics b = compute_basics(g);
    InvariantFingerprint fp = basics_to_fp(g, b);
    if (!b.solvable)
        throw NotSolvable("derived series stabilizes at dimension " +
                          std::to_string(b.ds_dims.back()));
    if (!b.abelian && !b.nilpotent && b.gp_abelian && b.rank_gp == 1 && b.rank_g == 2) {
        try {
            SpectralBranch c = analyze_spectral_branch(g);
            fp.ad_op = c.x_route ? InvariantFingerprint::AdOp::x_dx_plus_dy
                                 : InvariantFingerprint::AdOp::dy;
            fp.ad_spectrum = c.spec.spectrum();
        } catch (const UnclassifiableForm&) {
            // fingerprint stays purely structural when no distinguished element exists
        }
    }
    return fp;
}

ClassificationRecord classify(const AlgebraSpan& g) {
    if (g.dim() == 0) throw UnclassifiableForm("zero algebra");
    Basics b = compute_basics(g);
    InvariantFingerprint fp = basics_to_fp(g, b);
    if (!b.solvable)
        throw NotSolvable("derived series stabilizes at dimension " +
                          std::to_string(b.ds_dims.back()));
    ClassificationRecord rec;
    if (b.abelian) {
        if (b.rank_g <= 1) {
            rec.family = AbelianRank1{};
        } else {
            if (g.dim() != 2)
                throw UnclassifiableForm("abelian rank-2 algebra of dimension " +
                                         std::to_string(g.dim()));
            rec.family = AbelianRank2{};
        }
    } else if (b.nilpotent) {
        rec = classify_nilpotent(g, b);
    } else if (!b.gp_abelian) {
        rec = classify_nonabelian_commutator(g, b);
    } else if (b.rank_gp == 2) {
        rec = classify_translation_pair(g, b);
    } else if (b.rank_g == 1) {
        rec = classify_rank1(g, b);
    } else {
        SpectralBranch c = analyze_spectral_branch(g);
        fp.ad_op = c.x_route ? InvariantFingerprint::AdOp::x_dx_plus_dy
                             : InvariantFingerprint::AdOp::dy;
        fp.ad_spectrum = c.spec.spectrum();
        rec.family = c.family;
        if (c.swapped)
            rec.notes.push_back("classified in swapped coordinates (x <-> y)");
    }
    rec.fingerprint = fp;
    return rec;
}

// ------------------------------------------------------- canonicalization

namespace {

struct ChainBuilder {
    AlgebraSpan cur;
    PointTransform chain;

    explicit ChainBuilder(const AlgebraSpan& g) : cur(g) {}

    void apply(Move m) {
        PointTransform step{std::move(m)};
        cur = pushforward_algebra(step, cur);
        chain.then(step);
    }
};

// Normalizes the Pi-nonzero row z = xi(y) Dx + eta(y) Dy of a span to Dy:
// scale y so eta = 1, then shear away xi.  Throws when eta is not constant.
void normalize_dy_row(ChainBuilder& cb, const VectorField& zrow, const char* what) {
    auto eta = constant_value_of(zrow.q);
    if (!eta || eta->is_zero())
        throw NormalizationOutOfScope(std::string(what) +
                                      ": the Dy coefficient is not a nonzero constant; a "
                                      "change of y outside the affine family would be needed");
    if (!eta->is_one()) cb.apply(AffineY{eta->inverse(), GaussianRational()});
}

VectorField pi_row(const AlgebraSpan& s) {
    std::vector<VectorField> ech = s.echelon_fields();
    if (ech.empty() || ech[0].q.is_zero())
        throw NormalizationOutOfScope("no element with nonzero Dy component");
    return ech[0];
}

std::vector<VectorField> complement_rows(const AlgebraSpan& g, const AlgebraSpan& gp) {
    std::vector<VectorField> reps;
    for (const VectorField& e : g.basis()) {
        VectorField red = gp.reduce_mod(e);
        if (!red.is_zero()) reps.push_back(red);
    }
    return AlgebraSpan::make_span_allow_empty(reps).echelon_fields();
}

// Solves eta*K' - K = -H termwise within the ring (the change of variables
// x~ = x + K(y) carrying (x + H) Dx + eta Dy to x Dx + eta Dy).
struct FreqLess {
    bool operator()(const GaussianRational& a, const GaussianRational& b) const {
        return a.cmp(b) < 0;
    }
};

ExpPoly solve_shear_equation(const GaussianRational& eta, const ExpPoly& h) {
    // operator T(K) = eta K' - K on y^d e^{mu y}: yields
    //   (eta mu - 1) y^d e^{mu y} + eta d y^{d-1} e^{mu y},
    // triangular in d per frequency; at the resonance eta mu = 1 the degree
    // shifts up by one, which is the e^y F(y) substitution of the eigen case.
    ExpPoly k;
    std::map<GaussianRational, std::map<int, GaussianRational, std::greater<int>>, FreqLess>
        by_freq;
    for (const auto& [mon, c] : h.terms()) {
        if (mon.xdeg != 0 || !mon.xfreq.is_zero())
            throw NormalizationOutOfScope("shear offset depends on x");
        by_freq[mon.yfreq][mon.ydeg] -= c;  // right-hand side is -h
    }
    for (auto& [mu, rem] : by_freq) {
        GaussianRational factor = eta * mu - GaussianRational(1);
        int guard = 0;
        while (!rem.empty()) {
            if (++guard > 1000) throw NormalizationOutOfScope("shear solve did not terminate");
            auto [d, c] = *rem.begin();
            rem.erase(rem.begin());
            if (c.is_zero()) continue;
            GaussianRational kd;
            int kdeg;
            if (!factor.is_zero()) {
                kdeg = d;
                kd = c / factor;
                if (kdeg > 0) rem[kdeg - 1] -= eta * GaussianRational(kdeg) * kd;
            } else {
                kdeg = d + 1;
                kd = c / (eta * GaussianRational(kdeg));
            }
            ExpMonomial mon;
            mon.ydeg = kdeg;
            mon.yfreq = mu;
            k.add_term(mon, kd);
        }
    }
    ExpPoly check = k.diff(Var::y).scaled(eta) - k + h;
    if (!check.is_zero())
        throw NormalizationOutOfScope("no ring solution for the shear offset equation");
    return k;
}

}  // namespace

ClassificationRecord canonicalize_triangular(const AlgebraSpan& g) {
    for (const VectorField& v : g.basis())
        if (!v.is_triangular())
            throw NotTriangular("basis element " + v.str() + " is not triangular");
    ClassificationRecord rec = classify(g);
    ChainBuilder cb(g);

    if (std::holds_alternative<AbelianRank1>(rec.family)) {
        rec.canonical_basis = cb.cur.echelon_fields();
        rec.witness = cb.chain;
        return rec;
    }

    if (std::holds_alternative<AbelianRank2>(rec.family)) {
        std::vector<VectorField> ech = cb.cur.echelon_fields();
        if (ech[0].q.is_zero() || !ech[1].q.is_zero() || ech[1].p.depends_on_x() ||
            ech[0].p.depends_on_x())
            throw NormalizationOutOfScope("abelian pair is not in a sheared-translation frame");
        if (!ech[1].p.is_constant())
            throw NormalizationOutOfScope("abelian pair: the Dx line has a non-constant "
                                          "coefficient; rectification is outside the family");
        normalize_dy_row(cb, ech[0], "abelian rank-2 normalization");
        VectorField z = pi_row(cb.cur);
        ExpPoly xi = z.p;
        if (!xi.is_zero()) cb.apply(ShearX{GaussianRational(1), -solve_antiderivative(xi)});
    } else if (const auto* nil = std::get_if<NilpotentNonAbelian>(&rec.family)) {
        AlgebraSpan gp = derived(cb.cur);
        if (!all_horizontal_y(gp))
            throw NormalizationOutOfScope(
                "commutator line is not Dx-directed; apply the swap first");
        std::vector<VectorField> comp = complement_rows(cb.cur, gp);
        if (comp.empty() || comp[0].q.is_zero())
            throw NormalizationOutOfScope("no Dy-direction complement element");
        normalize_dy_row(cb, comp[0], "nilpotent normalization");
        gp = derived(cb.cur);
        VectorField z = complement_rows(cb.cur, gp)[0];
        if (z.p.depends_on_x())
            throw NormalizationOutOfScope("nilpotent complement element has an x-dependent "
                                          "Dx coefficient");
        if (!z.p.is_zero()) cb.apply(ShearX{GaussianRational(1), -solve_antiderivative(z.p)});
        (void)nil;
    } else if (std::holds_alternative<NonAbelianDerivedFull>(rec.family) ||
               std::holds_alternative<NonAbelianDerivedLine>(rec.family)) {
        // bring the Dy-conjugate inside g' to Dy
        AlgebraSpan gp = derived(cb.cur);
        {
            std::vector<VectorField> rows = gp.echelon_fields();
            for (std::size_t i = 1; i < rows.size(); ++i)
                if (!is_horizontal_y(rows[i]))
                    throw NormalizationOutOfScope(
                        "commutator is not Dx-directed below its Dy row");
        }
        VectorField w0 = pi_row(gp);
        if (w0.p.depends_on_x())
            throw NormalizationOutOfScope("Dy row of the commutator has x-dependence");
        normalize_dy_row(cb, w0, "commutator normalization");
        gp = derived(cb.cur);
        w0 = pi_row(gp);
        if (!w0.p.is_zero()) cb.apply(ShearX{GaussianRational(1), -solve_antiderivative(w0.p)});

        // the x Dx + y Dy conjugate: center action -1 and quotient action -1
        auto distinguished = [&]() -> VectorField {
            NonAbelianBranch d = nonabelian_branch_data(cb.cur, derived(cb.cur));
            if (std::holds_alternative<NonAbelianDerivedFull>(rec.family)) {
                PairEig p1 = pair_eig(d, d.comp[0]);
                PairEig p2 = pair_eig(d, d.comp[1]);
                GaussianRational det = p1.gamma * p2.beta - p2.gamma * p1.beta;
                if (det.is_zero()) throw NormalizationOutOfScope("degenerate complement pair");
                GaussianRational c1 = (p2.gamma - p2.beta) / det;
                GaussianRational c2 = (p1.beta - p1.gamma) / det;
                return d.comp[0].scaled(c1) + d.comp[1].scaled(c2);
            }
            PairEig pe = pair_eig(d, d.comp[0]);
            if (pe.beta.is_zero()) throw NormalizationOutOfScope("degenerate complement action");
            return d.comp[0].scaled(-(pe.beta.inverse()));
        };
        VectorField w = distinguished();
        // translate y so the Dy part of w becomes c*y
        ExpMonomial ylin;
        ylin.ydeg = 1;
        GaussianRational b0 = w.q.coefficient(ExpMonomial{});
        GaussianRational c0 = w.q.coefficient(ylin);
        ExpPoly residual = w.q;
        residual.add_term(ExpMonomial{}, -b0);
        residual.add_term(ylin, -c0);
        if (!residual.is_zero() || c0.is_zero())
            throw NormalizationOutOfScope("complement Dy part is not affine in y");
        if (!b0.is_zero()) cb.apply(AffineY{GaussianRational(1), b0 / c0});
        // absorb the Dx residue of w through the shear solving y F' - a F = -H
        gp = derived(cb.cur);
        FunctionSpan absorbable;
        for (const VectorField& row : gp.echelon_fields())
            if (row.q.is_zero()) absorbable.insert(row.p);
        w = distinguished();
        auto sw = split_x_linear(w.p);
        if (!sw) throw NormalizationOutOfScope("complement element is not (a x + H(y)) Dx");
        GaussianRational a = sw->first;
        ExpPoly hres = absorbable.reduce(sw->second);
        if (!hres.is_zero()) {
            ExpPoly f;
            for (const auto& [mon, c] : hres.terms()) {
                if (mon.xdeg != 0 || !mon.xfreq.is_zero() || !mon.yfreq.is_zero())
                    throw NormalizationOutOfScope("complement residue outside polynomial range");
                GaussianRational denom = GaussianRational(mon.ydeg) - a;
                if (denom.is_zero())
                    throw NormalizationOutOfScope(
                        "resonant shear equation (a equals a polynomial degree)");
                ExpMonomial fm;
                fm.ydeg = mon.ydeg;
                f.add_term(fm, -(c / denom));
            }
            if (!f.is_zero()) cb.apply(ShearX{GaussianRational(1), f});
        }
    } else if (const auto* r2 = std::get_if<Rank2Abelian>(&rec.family)) {
        AlgebraSpan gp = derived(cb.cur);
        std::vector<VectorField> gpech = gp.echelon_fields();
        if (gpech.size() != 2 || gpech[0].q.is_zero() || !gpech[1].q.is_zero())
            throw NormalizationOutOfScope("commutator pair is not in a sheared frame");
        if (!gpech[1].p.is_constant() || gpech[0].p.depends_on_x())
            throw NormalizationOutOfScope("commutator pair needs rectification outside the family");
        normalize_dy_row(cb, gpech[0], "translation-pair normalization");
        gp = derived(cb.cur);
        gpech = gp.echelon_fields();
        if (!gpech[0].p.is_zero())
            cb.apply(ShearX{GaussianRational(1), -solve_antiderivative(gpech[0].p)});
        gp = derived(cb.cur);

        auto linear_part = [&](const VectorField& v) -> std::optional<QMatrix> {
            QMatrix m(2, 2);
            ExpMonomial mx, my;
            mx.xdeg = 1;
            my.ydeg = 1;
            ExpPoly residual_p = v.p, residual_q = v.q;
            m.at(0, 0) = v.p.coefficient(mx);
            m.at(0, 1) = v.p.coefficient(my);
            m.at(1, 0) = v.q.coefficient(mx);
            m.at(1, 1) = v.q.coefficient(my);
            residual_p.add_term(mx, -m.at(0, 0));
            residual_p.add_term(my, -m.at(0, 1));
            residual_q.add_term(mx, -m.at(1, 0));
            residual_q.add_term(my, -m.at(1, 1));
            if (!residual_p.is_zero() || !residual_q.is_zero()) return std::nullopt;
            return m;
        };
        std::vector<VectorField> comp = complement_rows(cb.cur, gp);
        std::vector<QMatrix> lins;
        for (const VectorField& v : comp) {
            auto lp = linear_part(v);
            if (!lp)
                throw NormalizationOutOfScope("normalizer element is not an affine field");
            lins.push_back(*lp);
        }
        auto is_scalar = [](const QMatrix& m) {
            return (m - QMatrix::identity(2).scaled(m.at(0, 0))).is_zero();
        };
        QMatrix bmat = lins[0];
        if (is_scalar(bmat) && lins.size() > 1) bmat = lins[1];
        if (is_scalar(bmat) && lins.size() > 1) bmat = lins[0] + lins[1];
        if (r2->subtype == 1 || r2->subtype == 3) {
            if (!is_scalar(bmat)) {
                // align the non-Dx eigenline of the linear action with Dy
                QPoly chi;
                chi.c = char_poly(bmat);
                RootSearchResult roots = gaussian_rational_roots(chi);
                if (roots.residual.degree() > 0) throw IrrationalSpectrum(roots.residual.str());
                for (const auto& [lambda, mult] : roots.roots) {
                    QMatrix shifted = bmat - QMatrix::identity(2).scaled(lambda);
                    for (const auto& vec : kernel(shifted)) {
                        if (!vec[1].is_zero()) {
                            GaussianRational dcoef = -(vec[0] / vec[1]);
                            if (!dcoef.is_zero()) {
                                ExpPoly off = ExpPoly::variable(Var::y).scaled(dcoef);
                                cb.apply(ShearX{GaussianRational(1), off});
                            }
                        }
                    }
                }
            }
        } else {
            // rotation types: move the invariant complex lines onto (1, -i), (1, i)
            QPoly chi;
            chi.c = char_poly(bmat);
            RootSearchResult roots = gaussian_rational_roots(chi);
            if (roots.residual.degree() > 0) throw IrrationalSpectrum(roots.residual.str());
            std::vector<std::vector<GaussianRational>> lines;
            for (const auto& [lambda, mult] : roots.roots) {
                QMatrix shifted = bmat - QMatrix::identity(2).scaled(lambda);
                for (const auto& vec : kernel(shifted)) lines.push_back(vec);
            }
            if (lines.size() != 2)
                throw NormalizationOutOfScope("rotation normalization needs two eigenlines");
            GaussianRational i_unit = GaussianRational::imaginary_unit();
            bool done = false;
            for (int attempt = 0; attempt < 2 && !done; ++attempt) {
                const auto& l1 = lines[attempt];
                const auto& l2 = lines[1 - attempt];
                GaussianRational p1 = l1[0], q1 = l1[1], p2 = l2[0], q2 = l2[1];
                GaussianRational det = p1 * q2 - p2 * q1;
                if (det.is_zero() || q1.is_zero() || q2.is_zero()) continue;
                GaussianRational alpha = (i_unit * q1 * q2 + i_unit * q1 * q2) / det;
                GaussianRational dcoef = -(i_unit * (p1 * q2 + p2 * q1)) / det;
                if (alpha.is_zero()) continue;
                ChainBuilder trial = cb;
                trial.apply(ShearX{alpha, ExpPoly::variable(Var::y).scaled(dcoef)});
                AlgebraSpan target = generate(rec.family);
                if (trial.cur.same_span(target)) {
                    cb = trial;
                    done = true;
                }
            }
            if (!done)
                throw NormalizationOutOfScope("rotation normalization solve failed");
        }
    } else if (const auto* r1 = std::get_if<Rank1Solvable>(&rec.family)) {
        bool horizontal = true;
        for (const VectorField& v : cb.cur.basis())
            if (!v.q.is_zero()) horizontal = false;
        if (!horizontal)
            throw NormalizationOutOfScope(
                "rank-one direction is Dy; apply the swap first");
        AlgebraSpan gp = derived(cb.cur);
        VectorField z = complement_rows(cb.cur, gp)[0];
        auto sz = split_x_linear(z.p);
        if (!sz || sz->first.is_zero())
            throw NormalizationOutOfScope("rank-one complement is not (a x + H(y)) Dx");
        ExpPoly h = sz->second.scaled(sz->first.inverse());
        if (!h.is_zero()) cb.apply(ShearX{GaussianRational(1), h});
        (void)r1;
    } else if (const auto* st = std::get_if<SpectralType>(&rec.family)) {
        AlgebraSpan gp = derived(cb.cur);
        if (!all_horizontal_y(gp))
            throw NormalizationOutOfScope(
                "commutator line is not Dx-directed; apply the swap first");
        std::vector<VectorField> comp = complement_rows(cb.cur, gp);
        VectorField z = comp[0];
        auto sz = split_x_linear(z.p);
        if (!sz) throw NormalizationOutOfScope("distinguished element is not (a x + H) Dx + eta Dy");
        GaussianRational aZ = sz->first;
        std::optional<VectorField> u;
        GaussianRational aU;
        if (comp.size() == 2) {
            u = comp[1];
            auto su = split_x_linear(u->p);
            if (!su) throw NormalizationOutOfScope("second complement element malformed");
            aU = su->first;
        }
        if (st->variant == 2) {
            // pass to the Dy-conjugate Z0 = Z - aZ * U/aU
            if (!u || aU.is_zero())
                throw NormalizationOutOfScope("variant-2 normalization lost its scaling element");
            z = gp.reduce_mod(z - u->scaled(aZ / aU));
            sz = split_x_linear(z.p);
            aZ = sz->first;
        }
        bool x_route = !aZ.is_zero();
        if (x_route) {
            z = z.scaled(aZ.inverse());
            sz = split_x_linear(z.p);
        }
        normalize_dy_row(cb, z, "spectral normalization");
        gp = derived(cb.cur);
        comp = complement_rows(cb.cur, gp);
        z = comp[0];
        if (st->variant == 2) {
            VectorField ustar = comp[1];
            auto su = split_x_linear(ustar.p);
            if (!su || su->first.is_zero())
                throw NormalizationOutOfScope("variant-2 scaling element malformed");
            z = gp.reduce_mod(z - ustar.scaled(split_x_linear(z.p)->first / su->first));
        } else if (x_route) {
            z = z.scaled(split_x_linear(z.p)->first.inverse());
        }
        sz = split_x_linear(z.p);
        ExpPoly h = sz->second;
        if (!h.is_zero()) {
            if (x_route) {
                cb.apply(ShearX{GaussianRational(1), solve_shear_equation(GaussianRational(1), h)});
            } else {
                cb.apply(ShearX{GaussianRational(1), -solve_antiderivative(h)});
            }
        }
        if (st->variant == 2) {
            // clean the scaling element: residual top-degree term of H_U
            gp = derived(cb.cur);
            comp = complement_rows(cb.cur, gp);
            VectorField ustar = comp.size() > 1 ? comp[1] : VectorField();
            auto su = split_x_linear(ustar.p);
            if (!su) throw NormalizationOutOfScope("variant-2 scaling element malformed");
            FunctionSpan gp_funcs = horizontal_functions(gp);
            ExpPoly residual = gp_funcs.reduce(su->second.scaled(su->first.inverse()));
            if (!residual.is_zero()) {
                for (const auto& [mon, c] : residual.terms())
                    if (mon.xdeg != 0 || !mon.xfreq.is_zero())
                        throw NormalizationOutOfScope("variant-2 residual outside y-range");
                cb.apply(ShearX{GaussianRational(1), residual});
            }
        }
    }

    AlgebraSpan target = std::holds_alternative<AbelianRank1>(rec.family)
                             ? cb.cur
                             : generate(rec.family);
    if (!cb.cur.same_span(target))
        throw NormalizationOutOfScope("final span differs from the canonical form: got " +
                                      [&] {
                                          std::string s;
                                          for (const VectorField& v : cb.cur.basis())
                                              s += (s.empty() ? "" : "; ") + v.str();
                                          return s;
                                      }());
    rec.witness = cb.chain;
    rec.canonical_basis = target.basis();
    return rec;
}

}  // namespace planarlie
