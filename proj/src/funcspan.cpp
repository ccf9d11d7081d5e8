#include "planarlie/funcspan.hpp"

#include <algorithm>

namespace planarlie {

namespace {
const ExpMonomial& leading(const ExpPoly& p) { return p.terms().begin()->first; }
}  // namespace

ExpPoly FunctionSpan::reduce(const ExpPoly& f) const {
    ExpPoly r = f;
    for (const ExpPoly& row : rows_) {
        GaussianRational c = r.coefficient(leading(row));
        if (!c.is_zero()) r -= row.scaled(c);
    }
    return r;
}

bool FunctionSpan::insert(const ExpPoly& f) {
    ExpPoly r = reduce(f);
    if (r.is_zero()) return false;
    r = r.scaled(r.terms().begin()->second.inverse());
    // re-reduce existing rows against the new one, keep mutual reduction
    for (ExpPoly& row : rows_) {
        GaussianRational c = row.coefficient(leading(r));
        if (!c.is_zero()) row -= r.scaled(c);
    }
    rows_.push_back(std::move(r));
    std::sort(rows_.begin(), rows_.end(),
              [](const ExpPoly& a, const ExpPoly& b) { return leading(a).cmp(leading(b)) < 0; });
    return true;
}

bool FunctionSpan::same_span(const FunctionSpan& o) const {
    if (dim() != o.dim()) return false;
    for (const ExpPoly& r : o.rows_)
        if (!contains(r)) return false;
    return true;
}

}  // namespace planarlie
