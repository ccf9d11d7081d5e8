#pragma once

#include <optional>
#include <vector>

#include "planarlie/field.hpp"
#include "planarlie/linalg.hpp"

namespace planarlie {

// Exact structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k.
struct StructureConstants {
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<GaussianRational>>> c;
};

// Finite-dimensional span of vector fields with a linearly independent basis.
// Immutable after construction; linear algebra is exact in flattened
// ExpMonomial coordinates.
class AlgebraSpan {
  public:
    AlgebraSpan() = default;  // the zero span

    // Extracts a maximal independent subset, preserving input order.
    // Throws EmptySpan when every input is zero.
    static AlgebraSpan make_span(const std::vector<VectorField>& fields);
    // Same, but a zero-dimensional result is allowed (derived series use).
    static AlgebraSpan make_span_allow_empty(const std::vector<VectorField>& fields);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<VectorField>& basis() const { return basis_; }

    // Exact coordinates in the basis, or nullopt when v is outside the span.
    std::optional<std::vector<GaussianRational>> member(const VectorField& v) const;
    bool contains(const VectorField& v) const { return member(v).has_value(); }
    VectorField from_coords(const std::vector<GaussianRational>& coords) const;
    bool same_span(const AlgebraSpan& other) const;

    // Canonical reduced-echelon representatives of the span, Dy-supported
    // rows first, each with leading coefficient 1.
    std::vector<VectorField> echelon_fields() const;
    // v minus its projection onto the span along the pivot coordinates;
    // deterministic canonical representative of v modulo the span.
    VectorField reduce_mod(const VectorField& v) const;

    // Verifies every pairwise bracket stays in the span and returns the
    // structure constants.  Throws NotClosed(i, j, witness) otherwise.
    const StructureConstants& closed() const;

  private:
    void build(const std::vector<VectorField>& fields, bool allow_empty);

    std::vector<VectorField> basis_;
    // flattened coordinates: Dy-component keys first, then Dx-component keys;
    // this makes echelon rows with nonzero Dy-part come first.
    std::vector<std::pair<int, ExpMonomial>> coords_;
    QMatrix echelon_;  // rref rows of the basis in flattened coordinates
    QMatrix combo_;    // echelon_.row(r) = sum_k combo_(r,k) * basis_[k]
    std::vector<std::size_t> pivot_cols_;
    mutable std::optional<StructureConstants> sc_;

    std::optional<std::vector<GaussianRational>> flatten(const VectorField& v) const;
    friend class SpanBuilder;
};

AlgebraSpan derived(const AlgebraSpan& g);
std::vector<AlgebraSpan> derived_series(const AlgebraSpan& g);
std::vector<AlgebraSpan> lower_central_series(const AlgebraSpan& g);
bool is_solvable(const AlgebraSpan& g);
bool is_nilpotent(const AlgebraSpan& g);
bool is_abelian(const AlgebraSpan& g);

// Exact kernel of the joint ad-action; requires a closed algebra.
AlgebraSpan center(const AlgebraSpan& g);

// Dimension of the generic orbit: 2 if some pair of fields has a not
// identically vanishing 2x2 determinant, 1 if nonzero fields exist, else 0.
int rank(const AlgebraSpan& g);

}  // namespace planarlie
