#include "planarlie/span.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "planarlie/errors.hpp"

namespace planarlie {

namespace {

int coord_cmp(const std::pair<int, ExpMonomial>& a, const std::pair<int, ExpMonomial>& b) {
    if (a.first != b.first) return a.first < b.first ? -1 : 1;
    return a.second.cmp(b.second);
}

struct CoordKeyLess {
    bool operator()(const std::pair<int, ExpMonomial>& a,
                    const std::pair<int, ExpMonomial>& b) const {
        return coord_cmp(a, b) < 0;
    }
};

}  // namespace

std::optional<std::vector<GaussianRational>> AlgebraSpan::flatten(const VectorField& v) const {
    std::vector<GaussianRational> vec(coords_.size());
    auto place = [&](int comp, const ExpPoly& poly) -> bool {
        for (const auto& [m, c] : poly.terms()) {
            std::pair<int, ExpMonomial> key{comp, m};
            auto it = std::lower_bound(coords_.begin(), coords_.end(), key,
                                       [](const auto& a, const auto& b) { return coord_cmp(a, b) < 0; });
            if (it == coords_.end() || coord_cmp(*it, key) != 0) return false;
            vec[(std::size_t)(it - coords_.begin())] = c;
        }
        return true;
    };
    // Dy component first so echelon rows with eta != 0 sort to the top.
    if (!place(0, v.q) || !place(1, v.p)) return std::nullopt;
    return vec;
}

void AlgebraSpan::build(const std::vector<VectorField>& fields, bool allow_empty) {
    std::set<std::pair<int, ExpMonomial>, CoordKeyLess> keyset;
    for (const VectorField& f : fields) {
        for (const auto& [m, c] : f.q.terms()) keyset.insert({0, m});
        for (const auto& [m, c] : f.p.terms()) keyset.insert({1, m});
    }
    coords_.assign(keyset.begin(), keyset.end());

    // Greedy maximal independent subset, preserving order.
    std::vector<std::vector<GaussianRational>> rows;   // echelon (not reduced) rows
    std::vector<std::vector<GaussianRational>> combos; // tracking rows over basis_
    std::vector<std::size_t> leads;
    for (const VectorField& f : fields) {
        if (f.is_zero()) continue;
        auto vecOpt = flatten(f);
        std::vector<GaussianRational> vec = std::move(*vecOpt);
        std::vector<GaussianRational> cmb(basis_.size() + 1);
        cmb[basis_.size()] = GaussianRational(1);
        std::vector<std::size_t> by_lead(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) by_lead[r] = r;
        std::sort(by_lead.begin(), by_lead.end(),
                  [&](std::size_t a, std::size_t b) { return leads[a] < leads[b]; });
        for (std::size_t r : by_lead) {
            const GaussianRational x = vec[leads[r]];
            if (x.is_zero()) continue;
            GaussianRational factor = x / rows[r][leads[r]];
            for (std::size_t j = 0; j < vec.size(); ++j) vec[j] -= factor * rows[r][j];
            for (std::size_t j = 0; j < combos[r].size(); ++j) cmb[j] -= factor * combos[r][j];
        }
        std::size_t lead = 0;
        while (lead < vec.size() && vec[lead].is_zero()) ++lead;
        if (lead == vec.size()) continue;  // dependent
        basis_.push_back(f);
        for (auto& c : combos) c.resize(basis_.size());
        cmb.resize(basis_.size());
        rows.push_back(std::move(vec));
        combos.push_back(std::move(cmb));
        leads.push_back(lead);
    }
    if (basis_.empty() && !allow_empty) throw EmptySpan("all input fields are zero");

    // Back-substitute to reduced echelon form, rows ordered by leading column.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return leads[a] < leads[b]; });
    echelon_ = QMatrix(rows.size(), coords_.size());
    combo_ = QMatrix(rows.size(), basis_.size());
    pivot_cols_.clear();
    for (std::size_t r = 0; r < order.size(); ++r) {
        std::size_t src = order[r];
        GaussianRational inv = rows[src][leads[src]].inverse();
        for (std::size_t j = 0; j < coords_.size(); ++j) echelon_.at(r, j) = rows[src][j] * inv;
        for (std::size_t k = 0; k < basis_.size(); ++k) combo_.at(r, k) = combos[src][k] * inv;
        pivot_cols_.push_back(leads[src]);
    }
    for (std::size_t r = rows.size(); r-- > 0;) {
        for (std::size_t i = 0; i < r; ++i) {
            GaussianRational f = echelon_.at(i, pivot_cols_[r]);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < coords_.size(); ++j)
                echelon_.at(i, j) -= f * echelon_.at(r, j);
            for (std::size_t k = 0; k < basis_.size(); ++k)
                combo_.at(i, k) -= f * combo_.at(r, k);
        }
    }
}

AlgebraSpan AlgebraSpan::make_span(const std::vector<VectorField>& fields) {
    AlgebraSpan s;
    s.build(fields, false);
    return s;
}

AlgebraSpan AlgebraSpan::make_span_allow_empty(const std::vector<VectorField>& fields) {
    AlgebraSpan s;
    s.build(fields, true);
    return s;
}

std::optional<std::vector<GaussianRational>> AlgebraSpan::member(const VectorField& v) const {
    auto vecOpt = flatten(v);
    if (!vecOpt) return std::nullopt;
    std::vector<GaussianRational> vec = std::move(*vecOpt);
    std::vector<GaussianRational> coords(basis_.size());
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
        GaussianRational f = vec[pivot_cols_[r]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < vec.size(); ++j) vec[j] -= f * echelon_.at(r, j);
        for (std::size_t k = 0; k < basis_.size(); ++k) coords[k] += f * combo_.at(r, k);
    }
    for (const auto& x : vec)
        if (!x.is_zero()) return std::nullopt;
    return coords;
}

VectorField AlgebraSpan::from_coords(const std::vector<GaussianRational>& coords) const {
    assert(coords.size() == basis_.size());
    VectorField v;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) v = v + basis_[k].scaled(coords[k]);
    return v;
}

std::vector<VectorField> AlgebraSpan::echelon_fields() const {
    std::vector<VectorField> out;
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
        VectorField f;
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            const GaussianRational& c = echelon_.at(r, j);
            if (c.is_zero()) continue;
            if (coords_[j].first == 0) f.q.add_term(coords_[j].second, c);
            else f.p.add_term(coords_[j].second, c);
        }
        out.push_back(std::move(f));
    }
    return out;
}

VectorField AlgebraSpan::reduce_mod(const VectorField& v) const {
    VectorField r = v;
    std::vector<VectorField> rows = echelon_fields();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& key = coords_[pivot_cols_[i]];
        GaussianRational f =
            key.first == 0 ? r.q.coefficient(key.second) : r.p.coefficient(key.second);
        if (!f.is_zero()) r = r - rows[i].scaled(f);
    }
    return r;
}

bool AlgebraSpan::same_span(const AlgebraSpan& other) const {
    if (dim() != other.dim()) return false;
    for (const VectorField& f : other.basis_)
        if (!contains(f)) return false;
    return true;
}

const StructureConstants& AlgebraSpan::closed() const {
    if (sc_) return *sc_;
    StructureConstants sc;
    sc.dim = dim();
    sc.c.assign(sc.dim, std::vector<std::vector<GaussianRational>>(
                            sc.dim, std::vector<GaussianRational>(sc.dim)));
    for (std::size_t i = 0; i < sc.dim; ++i) {
        for (std::size_t j = i + 1; j < sc.dim; ++j) {
            VectorField b = bracket(basis_[i], basis_[j]);
            auto coords = member(b);
            if (!coords) throw NotClosed(i, j, b.str());
            sc.c[i][j] = *coords;
            for (std::size_t k = 0; k < sc.dim; ++k) sc.c[j][i][k] = -(*coords)[k];
        }
    }
    sc_ = std::move(sc);
    return *sc_;
}

AlgebraSpan derived(const AlgebraSpan& g) {
    std::vector<VectorField> brackets;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            brackets.push_back(bracket(g.basis()[i], g.basis()[j]));
    return AlgebraSpan::make_span_allow_empty(brackets);
}

std::vector<AlgebraSpan> derived_series(const AlgebraSpan& g) {
    std::vector<AlgebraSpan> series{g};
    while (series.back().dim() > 0) {
        AlgebraSpan next = derived(series.back());
        if (next.dim() == series.back().dim()) break;
        series.push_back(std::move(next));
    }
    return series;
}

std::vector<AlgebraSpan> lower_central_series(const AlgebraSpan& g) {
    std::vector<AlgebraSpan> series{g};
    while (series.back().dim() > 0) {
        std::vector<VectorField> brackets;
        for (const VectorField& a : g.basis())
            for (const VectorField& b : series.back().basis()) brackets.push_back(bracket(a, b));
        AlgebraSpan next = AlgebraSpan::make_span_allow_empty(brackets);
        if (next.dim() == series.back().dim()) break;
        series.push_back(std::move(next));
    }
    return series;
}

bool is_solvable(const AlgebraSpan& g) { return derived_series(g).back().dim() == 0; }
bool is_nilpotent(const AlgebraSpan& g) { return lower_central_series(g).back().dim() == 0; }
bool is_abelian(const AlgebraSpan& g) { return derived(g).dim() == 0; }

AlgebraSpan center(const AlgebraSpan& g) {
    const StructureConstants& sc = g.closed();
    std::size_t n = sc.dim;
    if (n == 0) return AlgebraSpan::make_span_allow_empty({});
    QMatrix m(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) m.at(j * n + k, i) = sc.c[i][j][k];
    std::vector<VectorField> fields;
    for (const auto& v : kernel(m)) fields.push_back(g.from_coords(v));
    return AlgebraSpan::make_span_allow_empty(fields);
}

int rank(const AlgebraSpan& g) {
    if (g.dim() == 0) return 0;
    const auto& b = g.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (!(b[i].p * b[j].q - b[j].p * b[i].q).is_zero()) return 2;
    return 1;
}

}  // namespace planarlie
