#pragma once

#include <utility>
#include <vector>

#include "planarlie/scalar.hpp"

namespace planarlie {

// Exactly computed structural invariants; comparable by structural equality.
struct InvariantFingerprint {
    int dim = 0;
    std::vector<int> derived_dims;  // dims of g, g', g'', ... until stabilization
    std::vector<int> lcs_dims;      // dims of the lower central series
    bool abelian = false;
    bool nilpotent = false;
    bool solvable = false;
    int center_dim = 0;
    int rank_g = 0;
    int rank_derived = 0;
    bool derived_abelian = false;
    int quotient_dim = 0;  // dim g / g'

    // Spectral data of the distinguished ad-operator on g', filled only in
    // the rank-2 / abelian-rank-1-commutator case.
    enum class AdOp { none, dy, x_dx_plus_dy };
    AdOp ad_op = AdOp::none;
    std::vector<std::pair<GaussianRational, int>> ad_spectrum;  // sorted by (re, im)

    friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;
};

}  // namespace planarlie
