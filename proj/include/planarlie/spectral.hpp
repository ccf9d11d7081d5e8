#pragma once

#include <utility>
#include <vector>

#include "planarlie/span.hpp"

namespace planarlie {

// Matrix of ad_X restricted to an ad_X-invariant span, column j =
// coordinates of [X, e_j] in the span's basis.
struct AdMatrix {
    VectorField op;
    AlgebraSpan target;
    QMatrix m;
};

// Exact generalized eigen-decomposition of an ad-operator.
struct SpectralBlock {
    GaussianRational lambda;
    int multiplicity = 0;
    std::vector<std::vector<GaussianRational>> basis;  // coordinate vectors in target
};

struct SpectralData {
    VectorField op;
    std::vector<SpectralBlock> blocks;  // sorted by (re, im) of lambda

    std::vector<std::pair<GaussianRational, int>> spectrum() const {
        std::vector<std::pair<GaussianRational, int>> s;
        for (const auto& b : blocks) s.push_back({b.lambda, b.multiplicity});
        return s;
    }
};

// Throws NotInvariant(j, witness) when some [X, e_j] escapes the target.
AdMatrix ad_matrix(const VectorField& x, const AlgebraSpan& target);

// Characteristic polynomial, Gaussian-rational roots, exact kernels of
// (m - lambda I)^k.  Throws IrrationalSpectrum when a factor has no
// Gaussian-rational root.
SpectralData spectral_decompose(const AdMatrix& ad);

// Verifies each generalized lambda-eigenspace consists of fields
// e^{lambda y} P(y) Dx (operator Dy) or e^{(lambda+1) y} P(y) Dx (operator
// x*Dx + Dy) with deg P < multiplicity; returns the (lambda, multiplicity)
// list.  Throws FormMismatch otherwise.
std::vector<std::pair<GaussianRational, int>> eigenfunction_form(const SpectralData& d,
                                                                 const AlgebraSpan& target);

}  // namespace planarlie
