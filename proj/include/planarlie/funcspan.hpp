#pragma once

#include <optional>
#include <vector>

#include "planarlie/expoly.hpp"

namespace planarlie {

// Echelon-canonical span of scalar functions; exact linear algebra over the
// monomial coordinates, mirroring AlgebraSpan for ExpPoly values.
class FunctionSpan {
  public:
    FunctionSpan() = default;
    explicit FunctionSpan(const std::vector<ExpPoly>& gens) {
        for (const ExpPoly& g : gens) insert(g);
    }

    std::size_t dim() const { return rows_.size(); }
    // Echelon rows sorted by leading monomial, leading coefficient 1.
    const std::vector<ExpPoly>& basis() const { return rows_; }

    // f minus its projection onto the span; canonical representative mod span.
    ExpPoly reduce(const ExpPoly& f) const;
    bool contains(const ExpPoly& f) const { return reduce(f).is_zero(); }
    bool same_span(const FunctionSpan& o) const;

    // Adds f to the span; returns true when the dimension grew.
    bool insert(const ExpPoly& f);

  private:
    std::vector<ExpPoly> rows_;  // mutually reduced, sorted by leading monomial
};

}  // namespace planarlie
