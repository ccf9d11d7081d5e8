#include <doctest.h>

#include "planarlie/errors.hpp"
#include "planarlie/expr.hpp"
#include "planarlie/span.hpp"
#include "test_support.hpp"

using namespace planarlie;
using planarlie::testing::Gen;
using planarlie::testing::seed_from_env;

namespace {

VectorField F(const std::string& s) { return parse_field(s); }

AlgebraSpan S(std::initializer_list<const char*> fields) {
    std::vector<VectorField> v;
    for (const char* s : fields) v.push_back(F(s));
    return AlgebraSpan::make_span(v);
}

// Independent oracle: dimension of a span computed by plain Gaussian
// elimination over its own coordinate flattening, no shared machinery.
std::size_t oracle_span_dim(const std::vector<VectorField>& fields) {
    std::vector<std::pair<int, ExpMonomial>> keys;
    auto find_key = [&](int comp, const ExpMonomial& m) {
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i].first == comp && keys[i].second == m) return i;
        keys.push_back({comp, m});
        return keys.size() - 1;
    };
    std::vector<std::vector<GaussianRational>> rows;
    for (const VectorField& f : fields) {
        std::vector<GaussianRational> row;
        auto put = [&](int comp, const ExpPoly& p) {
            for (const auto& [m, c] : p.terms()) {
                std::size_t k = find_key(comp, m);
                if (row.size() <= k) row.resize(k + 1);
                row[k] = c;
            }
        };
        put(0, f.p);
        put(1, f.q);
        rows.push_back(std::move(row));
    }
    for (auto& r : rows) r.resize(keys.size());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < keys.size() && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            GaussianRational f = rows[i][col] / rows[rank][col];
            for (std::size_t j = 0; j < keys.size(); ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Brute-force derived span: naive double loop, no caching, oracle elimination.
std::size_t oracle_derived_dim(const AlgebraSpan& g) {
    std::vector<VectorField> brackets;
    for (const VectorField& a : g.basis())
        for (const VectorField& b : g.basis()) brackets.push_back(bracket(a, b));
    return oracle_span_dim(brackets);
}

}  // namespace

TEST_CASE("make_span extracts a maximal independent subset") {
    CHECK(S({"Dx", "2*Dx"}).dim() == 1);
    CHECK(S({"Dx", "Dy"}).dim() == 2);
    CHECK(S({"y*Dx", "(y + y^2)*Dx", "y^2*Dx"}).dim() == 2);
    CHECK_THROWS_AS(AlgebraSpan::make_span({VectorField(), VectorField()}), EmptySpan);
}

TEST_CASE("member: exact coordinates") {
    AlgebraSpan g = S({"Dx", "Dy"});
    auto coords = g.member(F("3*Dx - Dy"));
    REQUIRE(coords.has_value());
    CHECK((*coords)[0] == GaussianRational(3));
    CHECK((*coords)[1] == GaussianRational(-1));

    CHECK_FALSE(S({"Dx"}).member(F("y*Dx")).has_value());

    auto zero = g.member(VectorField());
    REQUIRE(zero.has_value());
    CHECK((*zero)[0].is_zero());
    CHECK((*zero)[1].is_zero());
}

TEST_CASE("verify_closure and structure constants") {
    AlgebraSpan aff = S({"Dx", "x*Dx"});
    const StructureConstants& sc = aff.closed();
    // [e1, e2] = [Dx, x Dx] = Dx = e1
    CHECK(sc.c[0][1][0] == GaussianRational(1));
    CHECK(sc.c[0][1][1].is_zero());
    CHECK(sc.c[1][0][0] == GaussianRational(-1));

    AlgebraSpan ab = S({"Dx", "y*Dy"});
    const StructureConstants& sc2 = ab.closed();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) CHECK(sc2.c[i][j][k].is_zero());
}

TEST_CASE("verify_closure rejects <x Dy, y Dx>") {
    // direct oracle first: [x Dy, y Dx] = x Dx - y Dy escapes the span
    VectorField b = bracket(F("x*Dy"), F("y*Dx"));
    CHECK(b == F("x*Dx - y*Dy"));
    AlgebraSpan g = S({"x*Dy", "y*Dx"});
    CHECK_FALSE(g.contains(b));
    CHECK_THROWS_AS(g.closed(), NotClosed);
    try {
        g.closed();
    } catch (const NotClosed& e) {
        CHECK(e.i == 0);
        CHECK(e.j == 1);
    }
}

TEST_CASE("structure constants satisfy antisymmetry and Jacobi exactly") {
    AlgebraSpan g = S({"x*Dx", "y*Dy", "Dx", "Dy", "y*Dx"});
    const StructureConstants& sc = g.closed();
    std::size_t n = sc.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) CHECK(sc.c[i][j][k] == -sc.c[j][i][k]);
    // Jacobi in coordinates: sum_m c[j][k][m] c[i][m][l] + cyclic = 0
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    GaussianRational sum;
                    for (std::size_t m = 0; m < n; ++m) {
                        sum += sc.c[j][k][m] * sc.c[i][m][l];
                        sum += sc.c[k][i][m] * sc.c[j][m][l];
                        sum += sc.c[i][j][m] * sc.c[k][m][l];
                    }
                    CHECK(sum.is_zero());
                }
}

TEST_CASE("derived algebra examples") {
    CHECK(derived(S({"Dx", "Dy"})).dim() == 0);

    AlgebraSpan nil = S({"Dy", "Dx", "y*Dx", "y^2*Dx"});
    AlgebraSpan expect = S({"Dx", "y*Dx"});
    CHECK(derived(nil).same_span(expect));

    AlgebraSpan full = S({"x*Dx", "y*Dy", "Dx", "Dy", "y*Dx"});
    CHECK(derived(full).same_span(S({"Dx", "Dy", "y*Dx"})));
}

TEST_CASE("series and predicates") {
    CHECK(is_nilpotent(S({"Dy", "Dx", "y*Dx"})));
    AlgebraSpan aff = S({"x*Dx", "Dx"});
    CHECK(is_solvable(aff));
    CHECK_FALSE(is_nilpotent(aff));
    CHECK(is_abelian(S({"Dx", "y*Dx", "y^2*Dx"})));

    // monotone non-increasing, stabilizing
    AlgebraSpan g = S({"x*Dx", "y*Dy", "Dx", "Dy", "y*Dx"});
    auto ds = derived_series(g);
    for (std::size_t i = 1; i < ds.size(); ++i) CHECK(ds[i].dim() < ds[i - 1].dim());
}

TEST_CASE("center examples") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<VectorField> basis{VectorField::dy()};
        for (int j = 0; j <= n; ++j)
            basis.push_back(VectorField::horizontal(ExpPoly::variable(Var::y, j)));
        AlgebraSpan g = AlgebraSpan::make_span(basis);
        AlgebraSpan z = center(g);
        REQUIRE(z.dim() == 1);
        CHECK(z.contains(VectorField::dx()));
    }
    AlgebraSpan ab = S({"Dx", "y*Dx", "y^2*Dx"});
    CHECK(center(ab).dim() == 3);
    CHECK(center(S({"x*Dx", "Dx"})).dim() == 0);
}

TEST_CASE("rank") {
    CHECK(rank(S({"Dx", "y*Dx"})) == 1);
    CHECK(rank(S({"Dx", "Dy"})) == 2);
    CHECK(rank(AlgebraSpan::make_span_allow_empty({})) == 0);
    CHECK(rank(S({"exp(y)*Dx", "x*Dx + Dy"})) == 2);
}

TEST_CASE("rank agrees with the numeric evaluation oracle") {
    Gen gen(seed_from_env(401));
    std::vector<AlgebraSpan> cases = {S({"Dx", "y*Dx"}), S({"Dx", "Dy"}),
                                      S({"exp(2*y)*Dx", "Dy"}), S({"x*Dx", "Dx"}),
                                      S({"x*Dx + y*Dy", "y*Dx - x*Dy", "Dx", "Dy"})};
    for (const AlgebraSpan& g : cases) {
        int symbolic = rank(g);
        int numeric = 0;
        for (int pt = 0; pt < 20; ++pt) {
            GaussianRational x0 = GaussianRational::of(gen.uniform(-9, 9), gen.uniform(1, 7));
            GaussianRational y0 = GaussianRational::of(gen.uniform(-9, 9), gen.uniform(1, 7));
            // numeric rank of the 2 x dim evaluation matrix at this point
            std::vector<std::complex<double>> evals;
            for (const VectorField& f : g.basis()) {
                evals.push_back(f.p.eval(x0, y0));
                evals.push_back(f.q.eval(x0, y0));
            }
            int r = 0;
            for (std::size_t i = 0; i < g.basis().size(); ++i)
                if (std::abs(evals[2 * i]) > 1e-9 || std::abs(evals[2 * i + 1]) > 1e-9) r = 1;
            if (r == 1)
                for (std::size_t i = 0; i < g.basis().size() && r == 1; ++i)
                    for (std::size_t j = i + 1; j < g.basis().size(); ++j) {
                        std::complex<double> det =
                            evals[2 * i] * evals[2 * j + 1] - evals[2 * j] * evals[2 * i + 1];
                        if (std::abs(det) > 1e-9) {
                            r = 2;
                            break;
                        }
                    }
            numeric = std::max(numeric, r);
        }
        CHECK(symbolic == numeric);
    }
}

TEST_CASE("derived matches the brute-force oracle on assorted algebras") {
    std::vector<AlgebraSpan> cases = {
        S({"Dy", "Dx", "y*Dx", "y^2*Dx"}),
        S({"x*Dx", "y*Dy", "Dx", "Dy", "y*Dx"}),
        S({"x*Dx + y*Dy", "y*Dx - x*Dy", "Dx", "Dy"}),
        S({"exp(2*y)*Dx", "y*exp(2*y)*Dx", "Dy"}),
        S({"x*Dx", "Dx", "exp(y)*Dx"}),
    };
    for (const AlgebraSpan& g : cases) CHECK(derived(g).dim() == oracle_derived_dim(g));
}

TEST_CASE("echelon fields and reduce_mod are canonical") {
    AlgebraSpan g = S({"Dx + Dy", "Dx - Dy"});
    std::vector<VectorField> ech = g.echelon_fields();
    REQUIRE(ech.size() == 2);
    CHECK(ech[0] == VectorField::dy());
    CHECK(ech[1] == VectorField::dx());
    CHECK(g.reduce_mod(F("3*Dx + y*Dx")) == F("y*Dx"));
}
