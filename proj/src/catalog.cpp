#include "planarlie/catalog.hpp"

#include <algorithm>

#include "planarlie/errors.hpp"

namespace planarlie {

namespace {

VectorField x_dx() { return {ExpPoly::variable(Var::x), ExpPoly::zero()}; }
VectorField y_dy() { return {ExpPoly::zero(), ExpPoly::variable(Var::y)}; }
VectorField scale_field() { return {ExpPoly::variable(Var::x), ExpPoly::variable(Var::y)}; }
VectorField rotation_field() {
    return {ExpPoly::variable(Var::y), -ExpPoly::variable(Var::x)};
}
VectorField x_dx_plus_dy() { return {ExpPoly::variable(Var::x), ExpPoly::one()}; }

ExpPoly y_pow_exp(int deg, const GaussianRational& freq) {
    ExpMonomial m;
    m.ydeg = deg;
    m.yfreq = freq;
    return ExpPoly::term(m, GaussianRational(1));
}

void validate_spectrum(const SpectralType& st) {
    if (st.variant < 1 || st.variant > 6)
        throw InvalidParameters("spectral variant must be between 1 and 6");
    if (st.spectrum.empty()) throw InvalidParameters("spectrum must be nonempty");
    for (std::size_t i = 0; i < st.spectrum.size(); ++i) {
        if (st.spectrum[i].second < 1)
            throw InvalidParameters("eigenvalue multiplicities must be positive");
        if (i > 0 && st.spectrum[i - 1].first.cmp(st.spectrum[i].first) >= 0)
            throw InvalidParameters("spectrum must be sorted by (re, im) with distinct eigenvalues");
    }
    int n0 = st.zero_multiplicity();
    switch (st.variant) {
        case 1:
        case 4:
            if (n0 > 0)
                throw InvalidParameters("variants 1 and 4 require zero not to be an eigenvalue");
            break;
        case 3:
            if (n0 == 0)
                throw InvalidParameters("variant 3 requires zero in the spectrum (N >= 1)");
            break;
        case 6:
            if (n0 == 0) throw InvalidParameters("variant 6 requires N > 0 (zero in the spectrum)");
            break;
        default:
            break;
    }
}


std::vector<VectorField> spectral_h_basis(const SpectralType& st) {
    bool shifted = st.variant >= 4;  // blocks e^{(lambda+1) y} P(y) Dx
    std::vector<VectorField> h;
    for (const auto& [lambda, mult] : st.spectrum) {
        GaussianRational freq = lambda;
        if (shifted) freq += GaussianRational(1);
        for (int j = 0; j < mult; ++j) h.push_back(VectorField::horizontal(y_pow_exp(j, freq)));
    }
    return h;
}

std::vector<VectorField> spectral_basis(const SpectralType& st) {
    validate_spectrum(st);
    std::vector<VectorField> basis = spectral_h_basis(st);
    int n0 = st.zero_multiplicity();
    switch (st.variant) {
        case 1:
            basis.push_back(VectorField::dy());
            break;
        case 2:
            basis.push_back(VectorField::dy());
            basis.push_back(x_dx());
            break;
        case 3:
            basis.push_back(VectorField::dy());
            basis.push_back(VectorField::horizontal(ExpPoly::variable(Var::y, n0)));
            break;
        case 4:
            basis.push_back(x_dx_plus_dy());
            break;
        case 5:
            basis.push_back(x_dx_plus_dy());
            basis.push_back(VectorField::horizontal(y_pow_exp(n0, GaussianRational(1))));
            break;
        case 6:
            basis.push_back(x_dx_plus_dy());
            basis.push_back(x_dx() + VectorField::horizontal(y_pow_exp(n0, GaussianRational(1))));
            break;
        default:
            break;
    }
    return basis;
}

std::vector<VectorField> ideal_basis(int k) {  // <Dx, Dy, y Dx, ..., y^k Dx>
    std::vector<VectorField> b{VectorField::dx(), VectorField::dy()};
    for (int j = 1; j <= k; ++j) b.push_back(VectorField::horizontal(ExpPoly::variable(Var::y, j)));
    return b;
}

}  // namespace

std::string family_tag(const CanonicalFamily& fam) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, AbelianRank1>) return "abelian-rank1";
            else if constexpr (std::is_same_v<T, AbelianRank2>) return "abelian-rank2";
            else if constexpr (std::is_same_v<T, NilpotentNonAbelian>) return "nilpotent";
            else if constexpr (std::is_same_v<T, NonAbelianDerivedFull>) return "nonabelian-full";
            else if constexpr (std::is_same_v<T, NonAbelianDerivedLine>) return "nonabelian-line";
            else if constexpr (std::is_same_v<T, Rank2Abelian>) return "rank2-abelian";
            else if constexpr (std::is_same_v<T, Rank1Solvable>) return "rank1-solvable";
            else return "spectral";
        },
        fam);
}

std::string family_str(const CanonicalFamily& fam) {
    std::string out = family_tag(fam);
    if (const auto* n = std::get_if<NilpotentNonAbelian>(&fam)) {
        out += " N=" + std::to_string(n->n);
    } else if (const auto* f = std::get_if<NonAbelianDerivedFull>(&fam)) {
        out += " k=" + std::to_string(f->k);
    } else if (const auto* l = std::get_if<NonAbelianDerivedLine>(&fam)) {
        out += " k=" + std::to_string(l->k) + " a=" + l->a.str();
    } else if (const auto* r = std::get_if<Rank2Abelian>(&fam)) {
        out += " subtype=" + std::to_string(r->subtype);
        if (r->subtype >= 3) out += " lambda=" + r->lambda.str();
    } else if (const auto* r1 = std::get_if<Rank1Solvable>(&fam)) {
        out += " phis=[";
        for (std::size_t i = 0; i < r1->phis.size(); ++i)
            out += (i ? ", " : "") + r1->phis[i].str();
        out += "]";
    } else if (const auto* s = std::get_if<SpectralType>(&fam)) {
        out += " variant=" + std::to_string(s->variant) + " S=[";
        for (std::size_t i = 0; i < s->spectrum.size(); ++i)
            out += (i ? ", " : "") + s->spectrum[i].first.str() + ":" +
                   std::to_string(s->spectrum[i].second);
        out += "]";
    }
    return out;
}

bool family_equal(const CanonicalFamily& a, const CanonicalFamily& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return x == std::get<T>(b);
        },
        a);
}

bool spectral_is_nilpotent_degenerate(const SpectralType& st) {
    return (st.variant == 3 || st.variant == 5) && st.spectrum.size() == 1 &&
           st.zero_multiplicity() > 0;
}

AlgebraSpan generate(const CanonicalFamily& fam) {
    std::vector<VectorField> basis;
    if (std::holds_alternative<AbelianRank1>(fam)) {
        throw InvalidParameters("abelian rank-1 algebras have no canonical form to generate");
    } else if (std::holds_alternative<AbelianRank2>(fam)) {
        basis = {VectorField::dx(), VectorField::dy()};
    } else if (const auto* nil = std::get_if<NilpotentNonAbelian>(&fam)) {
        if (nil->n < 1) throw InvalidParameters("nilpotent family needs N >= 1");
        basis.push_back(VectorField::dy());
        for (int j = 0; j <= nil->n; ++j)
            basis.push_back(VectorField::horizontal(ExpPoly::variable(Var::y, j)));
    } else if (const auto* full = std::get_if<NonAbelianDerivedFull>(&fam)) {
        if (full->k < 1) throw InvalidParameters("nonabelian-full family needs k >= 1");
        basis = {x_dx(), y_dy()};
        for (const VectorField& f : ideal_basis(full->k)) basis.push_back(f);
    } else if (const auto* line = std::get_if<NonAbelianDerivedLine>(&fam)) {
        if (line->k < 1) throw InvalidParameters("nonabelian-line family needs k >= 1");
        if (line->a.is_zero() || line->a == GaussianRational(line->k))
            throw InvalidParameters("nonabelian-line requires a != 0 and a != k (catalog side condition)");
        basis.push_back(x_dx().scaled(line->a) + y_dy());
        for (const VectorField& f : ideal_basis(line->k)) basis.push_back(f);
    } else if (const auto* r2 = std::get_if<Rank2Abelian>(&fam)) {
        switch (r2->subtype) {
            case 1:
                basis = {x_dx(), y_dy()};
                break;
            case 2:
                basis = {scale_field(), rotation_field()};
                break;
            case 3:
                if (r2->lambda.is_zero())
                    throw InvalidParameters(
                        "rank2-abelian subtype 3 needs lambda != 0 (otherwise the commutator "
                        "is not <Dx, Dy>)");
                basis = {x_dx() + y_dy().scaled(r2->lambda)};
                break;
            case 4: {
                GaussianRational i = GaussianRational::imaginary_unit();
                if (r2->lambda == i || r2->lambda == -i)
                    throw InvalidParameters(
                        "rank2-abelian subtype 4 needs lambda != +-i (otherwise the commutator "
                        "is not <Dx, Dy>)");
                basis = {scale_field().scaled(r2->lambda) + rotation_field()};
                break;
            }
            default:
                throw InvalidParameters("rank2-abelian subtype must be 1..4");
        }
        basis.push_back(VectorField::dx());
        basis.push_back(VectorField::dy());
    } else if (const auto* r1 = std::get_if<Rank1Solvable>(&fam)) {
        if (r1->phis.empty()) throw InvalidParameters("rank1-solvable needs at least one phi");
        if (r1->phis.front() != ExpPoly::one())
            throw InvalidParameters("rank1-solvable normalization requires phi_1 = 1");
        FunctionSpan span;
        for (const ExpPoly& phi : r1->phis) {
            if (phi.depends_on_x())
                throw InvalidParameters("rank1-solvable phis must depend only on y");
            if (!span.insert(phi))
                throw InvalidParameters("rank1-solvable phis must be linearly independent");
        }
        basis.push_back(x_dx());
        for (const ExpPoly& phi : r1->phis) basis.push_back(VectorField::horizontal(phi));
    } else if (const auto* st = std::get_if<SpectralType>(&fam)) {
        basis = spectral_basis(*st);
    }
    AlgebraSpan g = AlgebraSpan::make_span(basis);
    if (g.dim() != basis.size())
        throw Error("internal: canonical basis is unexpectedly dependent for " + family_str(fam));
    g.closed();
    return g;
}

InvariantFingerprint expected_invariants(const CanonicalFamily& fam) {
    InvariantFingerprint fp;
    fp.solvable = true;
    auto desc = [](int from, int downto) {
        std::vector<int> v;
        for (int d = from; d >= downto; --d) v.push_back(d);
        return v;
    };
    if (std::holds_alternative<AbelianRank1>(fam)) {
        throw InvalidParameters("abelian rank-1 algebras have no fixed expected fingerprint");
    } else if (std::holds_alternative<AbelianRank2>(fam)) {
        fp.dim = 2;
        fp.derived_dims = {2, 0};
        fp.lcs_dims = {2, 0};
        fp.abelian = fp.nilpotent = true;
        fp.center_dim = 2;
        fp.rank_g = 2;
        fp.rank_derived = 0;
        fp.derived_abelian = true;
        fp.quotient_dim = 2;
    } else if (const auto* nil = std::get_if<NilpotentNonAbelian>(&fam)) {
        int n = nil->n;
        if (n < 1) throw InvalidParameters("nilpotent family needs N >= 1");
        fp.dim = n + 2;
        fp.derived_dims = {n + 2, n, 0};
        fp.lcs_dims = {n + 2};
        for (int d : desc(n, 0)) fp.lcs_dims.push_back(d);
        fp.nilpotent = true;
        fp.center_dim = 1;
        fp.rank_g = 2;
        fp.rank_derived = 1;
        fp.derived_abelian = true;
        fp.quotient_dim = 2;
    } else if (const auto* full = std::get_if<NonAbelianDerivedFull>(&fam)) {
        int k = full->k;
        if (k < 1) throw InvalidParameters("nonabelian-full family needs k >= 1");
        fp.dim = k + 4;
        fp.derived_dims = {k + 4, k + 2, k, 0};
        fp.lcs_dims = {k + 4, k + 2};
        fp.center_dim = 0;
        fp.rank_g = 2;
        fp.rank_derived = 2;
        fp.derived_abelian = false;
        fp.quotient_dim = 2;
    } else if (const auto* line = std::get_if<NonAbelianDerivedLine>(&fam)) {
        int k = line->k;
        if (k < 1 || line->a.is_zero() || line->a == GaussianRational(k))
            throw InvalidParameters("nonabelian-line side conditions violated");
        fp.dim = k + 3;
        fp.derived_dims = {k + 3, k + 2, k, 0};
        fp.lcs_dims = {k + 3, k + 2};
        fp.center_dim = 0;
        fp.rank_g = 2;
        fp.rank_derived = 2;
        fp.derived_abelian = false;
        fp.quotient_dim = 1;
    } else if (const auto* r2 = std::get_if<Rank2Abelian>(&fam)) {
        int m = r2->subtype <= 2 ? 2 : 1;
        fp.dim = 2 + m;
        fp.derived_dims = {fp.dim, 2, 0};
        fp.lcs_dims = {fp.dim, 2};
        fp.center_dim = 0;
        fp.rank_g = 2;
        fp.rank_derived = 2;
        fp.derived_abelian = true;
        fp.quotient_dim = m;
    } else if (const auto* r1 = std::get_if<Rank1Solvable>(&fam)) {
        int n = (int)r1->phis.size();
        fp.dim = n + 1;
        fp.derived_dims = {n + 1, n, 0};
        fp.lcs_dims = {n + 1, n};
        fp.center_dim = 0;
        fp.rank_g = 1;
        fp.rank_derived = 1;
        fp.derived_abelian = true;
        fp.quotient_dim = 1;
    } else if (const auto* st = std::get_if<SpectralType>(&fam)) {
        validate_spectrum(*st);
        if (spectral_is_nilpotent_degenerate(*st))
            return expected_invariants(NilpotentNonAbelian{st->zero_multiplicity()});
        int dim_h = 0;
        for (const auto& [l, n] : st->spectrum) dim_h += n;
        int n0 = st->zero_multiplicity();
        int extras = (st->variant == 1 || st->variant == 4) ? 1 : 2;
        fp.dim = dim_h + extras;
        fp.derived_dims = {fp.dim, dim_h, 0};
        if (st->variant == 3 || (st->variant == 5 && n0 > 0)) {
            fp.lcs_dims = {fp.dim};
            for (int d = dim_h; d >= dim_h - n0; --d) fp.lcs_dims.push_back(d);
        } else {
            fp.lcs_dims = {fp.dim, dim_h};
        }
        switch (st->variant) {
            case 1:
            case 4:
                fp.center_dim = 0;
                break;
            case 2:
                fp.center_dim = (st->spectrum.size() == 1 && st->spectrum[0].second == 1) ? 1 : 0;
                break;
            case 3:
            case 5:
                fp.center_dim = 1;
                break;
            case 6:
                fp.center_dim =
                    (st->spectrum.size() == 1 && n0 == 1) ? 1 : 0;
                break;
            default:
                break;
        }
        fp.rank_g = 2;
        fp.rank_derived = 1;
        fp.derived_abelian = true;
        fp.quotient_dim = extras;
        // Distinguished operator as the classifier reports it.  Variant 6
        // admits a Dy-conjugate presentation (the tie-break target): its
        // instances classify as variant 2 with the spectrum shifted by one.
        if (st->variant <= 3) {
            fp.ad_op = InvariantFingerprint::AdOp::dy;
            fp.ad_spectrum = st->spectrum;
        } else if (st->variant <= 5) {
            fp.ad_op = InvariantFingerprint::AdOp::x_dx_plus_dy;
            fp.ad_spectrum = st->spectrum;
        } else {
            fp.ad_op = InvariantFingerprint::AdOp::dy;
            for (const auto& [l, n] : st->spectrum)
                fp.ad_spectrum.push_back({l + GaussianRational(1), n});
        }
    }
    return fp;
}

SpectralDerivedAudit audit_spectral_derived(const SpectralType& st) {
    SpectralDerivedAudit audit;
    AlgebraSpan g = generate(st);
    AlgebraSpan h = AlgebraSpan::make_span(spectral_h_basis(st));
    AlgebraSpan gp = derived(g);
    audit.derived_dim = (int)gp.dim();
    audit.h_dim = (int)h.dim();
    audit.derived_equals_h = gp.same_span(h);
    return audit;
}

std::vector<LineConditionAudit> audit_line_side_condition(
    int k, const std::vector<GaussianRational>& sample) {
    std::vector<LineConditionAudit> out;
    AlgebraSpan full_ideal = AlgebraSpan::make_span(ideal_basis(k));
    for (const GaussianRational& a : sample) {
        std::vector<VectorField> basis{x_dx().scaled(a) + y_dy()};
        for (const VectorField& f : ideal_basis(k)) basis.push_back(f);
        AlgebraSpan g = AlgebraSpan::make_span(basis);
        AlgebraSpan gp = derived(g);
        out.push_back({a, (int)gp.dim(), gp.same_span(full_ideal)});
    }
    return out;
}

Variant6Equivalence variant6_equivalence(const SpectralType& v6) {
    if (v6.variant != 6) throw InvalidParameters("variant6_equivalence needs a variant-6 family");
    Variant6Equivalence eq;
    int n0 = v6.zero_multiplicity();
    ExpPoly f = solve_antiderivative(y_pow_exp(n0, GaussianRational(1)));
    eq.shear = PointTransform::shear_x(GaussianRational(1), f);
    eq.v2_family.variant = 2;
    for (const auto& [l, n] : v6.spectrum)
        eq.v2_family.spectrum.push_back({l + GaussianRational(1), n});
    AlgebraSpan pushed = pushforward_algebra(eq.shear, generate(v6));
    eq.verified = pushed.same_span(generate(eq.v2_family));
    return eq;
}

}  // namespace planarlie
