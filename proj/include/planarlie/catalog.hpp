#pragma once

#include <string>
#include <variant>
#include <vector>

#include "planarlie/fingerprint.hpp"
#include "planarlie/funcspan.hpp"
#include "planarlie/span.hpp"
#include "planarlie/transform.hpp"

namespace planarlie {

// Canonical families of the classification.  Parameters carry the side
// conditions checked by generate().

struct AbelianRank1 {  // classification outcome only; no canonical form
    friend bool operator==(const AbelianRank1&, const AbelianRank1&) { return true; }
};

struct AbelianRank2 {  // <Dx, Dy>
    friend bool operator==(const AbelianRank2&, const AbelianRank2&) { return true; }
};

struct NilpotentNonAbelian {  // <Dy> + <Dx, y Dx, ..., y^N Dx>, N >= 1
    int n = 1;
    friend bool operator==(const NilpotentNonAbelian&, const NilpotentNonAbelian&) = default;
};

struct NonAbelianDerivedFull {  // <x Dx, y Dy> + <Dx, Dy, y Dx, ..., y^k Dx>
    int k = 1;
    friend bool operator==(const NonAbelianDerivedFull&, const NonAbelianDerivedFull&) = default;
};

struct NonAbelianDerivedLine {  // <a x Dx + y Dy> + <Dx, Dy, y Dx, ..., y^k Dx>, a != 0, k
    int k = 1;
    GaussianRational a;
    friend bool operator==(const NonAbelianDerivedLine&, const NonAbelianDerivedLine&) = default;
};

struct Rank2Abelian {  // the four semidirect types over <Dx, Dy>
    int subtype = 1;           // 1: <xDx, yDy>; 2: <xDx+yDy, yDx-xDy>;
    GaussianRational lambda;   // 3: <xDx + lambda yDy>; 4: <lambda(xDx+yDy) + yDx-xDy>
    friend bool operator==(const Rank2Abelian& u, const Rank2Abelian& v) {
        if (u.subtype != v.subtype) return false;
        if (u.subtype <= 2) return true;
        return u.lambda == v.lambda;
    }
};

struct Rank1Solvable {  // <x Dx> + <phi_1 Dx, ..., phi_N Dx>, phi_1 = 1
    std::vector<ExpPoly> phis;
    // Parameter equality is function-span equality (the basis presentation is
    // not itself an invariant).
    friend bool operator==(const Rank1Solvable& u, const Rank1Solvable& v) {
        return FunctionSpan(u.phis).same_span(FunctionSpan(v.phis));
    }
};

struct SpectralType {  // the six rank-2 forms with abelian rank-1 commutator
    int variant = 1;  // 1: <h, Dy>             (0 not in S)
                      // 2: <h, Dy, x Dx>
                      // 3: <h, Dy, y^N Dx>     (N = multiplicity of 0)
                      // 4: <h, X>              (0 not in S), X = x Dx + Dy
                      // 5: <h, X, y^N e^y Dx>
                      // 6: <h, X, x Dx + y^N e^y Dx>  (N > 0)
    // Spectrum of the distinguished operator on h: blocks e^{lambda y} P(y) Dx
    // for variants 1-3 and e^{(lambda+1) y} P(y) Dx for variants 4-6,
    // degree(P) < multiplicity.  Sorted by (re, im), distinct lambdas.
    std::vector<std::pair<GaussianRational, int>> spectrum;
    friend bool operator==(const SpectralType&, const SpectralType&) = default;

    int zero_multiplicity() const {
        for (const auto& [l, n] : spectrum)
            if (l.is_zero()) return n;
        return 0;
    }
};

using CanonicalFamily = std::variant<AbelianRank1, AbelianRank2, NilpotentNonAbelian,
                                     NonAbelianDerivedFull, NonAbelianDerivedLine, Rank2Abelian,
                                     Rank1Solvable, SpectralType>;

std::string family_tag(const CanonicalFamily& fam);
std::string family_str(const CanonicalFamily& fam);
bool family_equal(const CanonicalFamily& a, const CanonicalFamily& b);

// Variants 3 and 5 collapse to the nilpotent canonical form when the whole
// spectrum sits at zero; the classifier reports those instances there.
bool spectral_is_nilpotent_degenerate(const SpectralType& st);

// Explicit canonical basis of the family; the result always
// passes verify_closure.  Throws InvalidParameters on violated side conditions.
AlgebraSpan generate(const CanonicalFamily& fam);

// Independently predicted fingerprint for generate(fam); the ground-truth
// side of the catalog audit.
InvariantFingerprint expected_invariants(const CanonicalFamily& fam);

// --- audit helpers -------------------------------------------------------

// Compares derived(generate(st)) against the generated h span.
struct SpectralDerivedAudit {
    bool derived_equals_h = false;
    int derived_dim = 0;
    int h_dim = 0;
};
SpectralDerivedAudit audit_spectral_derived(const SpectralType& st);

// Brute-force derived algebra of <a x Dx + y Dy> + I_k for a sweep of a,
// including the excluded values a = 0 and a = k.
struct LineConditionAudit {
    GaussianRational a;
    int derived_dim = 0;
    bool derived_is_full_ideal = false;  // g' = <Dx, Dy, y Dx, ..., y^k Dx>
};
std::vector<LineConditionAudit> audit_line_side_condition(
    int k, const std::vector<GaussianRational>& sample);

// Constructive within-family equivalence for variant 6: the shear carrying
// generate(v6) onto the span of generate(variant 2 with spectrum shifted by
// one).  verified is the exact span-equality check.
struct Variant6Equivalence {
    PointTransform shear;
    SpectralType v2_family;
    bool verified = false;
};
Variant6Equivalence variant6_equivalence(const SpectralType& v6);

}  // namespace planarlie
