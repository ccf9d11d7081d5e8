#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planarlie/catalog.hpp"
#include "planarlie/fingerprint.hpp"
#include "planarlie/span.hpp"
#include "planarlie/transform.hpp"

namespace planarlie {

struct ClassificationRecord {
    CanonicalFamily family;
    InvariantFingerprint fingerprint;
    std::optional<PointTransform> witness;
    std::optional<std::vector<VectorField>> canonical_basis;
    std::vector<std::string> notes;  // diagnostics surfaced alongside the result
};

// All invariants of a closed algebra; spectral data filled when g' is abelian
// of rank 1, g has rank 2 and a distinguished complement element exists.
// Throws NotSolvable when the derived series does not reach zero, and
// IrrationalSpectrum when the distinguished spectrum leaves Q(i).
InvariantFingerprint fingerprint(const AlgebraSpan& g);

// Assigns the canonical family tag and exact parameters.
// Throws NotSolvable, IrrationalSpectrum, UnclassifiableForm.
ClassificationRecord classify(const AlgebraSpan& g);

// classify plus an explicit canonicalizing transform chain, for triangular
// inputs reachable by the supported transform family.
// Throws NotTriangular, NormalizationOutOfScope on top of classify's errors.
ClassificationRecord canonicalize_triangular(const AlgebraSpan& g);

}  // namespace planarlie
