#include "planarlie/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "planarlie/errors.hpp"

namespace planarlie {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& v : a)
        if (!v.is_zero()) return false;
    return true;
}

GaussianRational QMatrix::trace() const {
    GaussianRational t;
    for (std::size_t i = 0; i < rows && i < cols; ++i) t += at(i, i);
    return t;
}

QMatrix QMatrix::scaled(const GaussianRational& c) const {
    QMatrix r = *this;
    for (auto& v : r.a) v *= c;
    return r;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    assert(x.cols == y.rows);
    QMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const GaussianRational& xv = x.at(i, k);
            if (xv.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    QMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    QMatrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMatrix QMatrix::pow(unsigned e) const {
    assert(is_square());
    QMatrix r = identity(rows);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        GaussianRational inv = m.at(row, col).inverse();
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            GaussianRational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t matrix_rank(QMatrix m) { return rref(m).size(); }

std::vector<std::vector<GaussianRational>> kernel(const QMatrix& m0) {
    QMatrix m = m0;
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<GaussianRational> v(m.cols);
        v[j] = GaussianRational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<GaussianRational> char_poly(const QMatrix& m) {
    assert(m.is_square());
    std::size_t n = m.rows;
    // Faddeev-LeVerrier: exact, division only by integers.
    std::vector<GaussianRational> cdesc(n + 1);  // cdesc[k] = coeff of t^{n-k}
    cdesc[0] = GaussianRational(1);
    QMatrix M = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) M = m * (M + QMatrix::identity(n).scaled(cdesc[k - 1]));
        cdesc[k] = -(M.trace() / GaussianRational((long)k));
    }
    std::vector<GaussianRational> asc(n + 1);
    for (std::size_t k = 0; k <= n; ++k) asc[n - k] = cdesc[k];
    return asc;
}

void QPoly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

GaussianRational QPoly::eval(const GaussianRational& t) const {
    GaussianRational r;
    for (std::size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

QPoly QPoly::deflate(const GaussianRational& root) const {
    // synthetic division by (t - root); remainder must vanish
    assert(!c.empty());
    QPoly q;
    q.c.assign(c.size() - 1, GaussianRational());
    GaussianRational carry;
    for (std::size_t i = c.size(); i-- > 1;) {
        carry = c[i] + carry * root;
        q.c[i - 1] = carry;
    }
    return q;
}

QPoly QPoly::monic() const {
    QPoly r = *this;
    r.normalize();
    if (r.c.empty()) return r;
    GaussianRational inv = r.c.back().inverse();
    for (auto& v : r.c) v *= inv;
    return r;
}

std::string QPoly::str() const {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        std::string coeff = c[i].str();
        std::string mono =
            i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        std::string piece;
        if (mono.empty()) piece = coeff;
        else if (c[i].is_one()) piece = mono;
        else if ((-c[i]).is_one()) piece = "-" + mono;
        else piece = (c[i].is_real() || c[i].re == 0 ? coeff : "(" + coeff + ")") + "*" + mono;
        if (!first && piece[0] != '-') out += "+";
        out += piece;
        first = false;
    }
    return out;
}

namespace {

using GInt = std::pair<mpz_class, mpz_class>;  // a + b*i

mpz_class gnorm(const GInt& z) { return z.first * z.first + z.second * z.second; }

bool gdivides(const GInt& d, const GInt& z, GInt* quot = nullptr) {
    mpz_class n = gnorm(d);
    if (n == 0) return false;
    // z * conj(d) / N(d)
    mpz_class re = z.first * d.first + z.second * d.second;
    mpz_class im = z.second * d.first - z.first * d.second;
    if (re % n != 0 || im % n != 0) return false;
    if (quot) *quot = {re / n, im / n};
    return true;
}

// Prime factorization by trial division; adequate for the coefficient sizes
// produced by structure constants of small algebras.
std::map<mpz_class, unsigned> factor_integer(mpz_class n) {
    std::map<mpz_class, unsigned> f;
    if (n < 0) n = -n;
    for (mpz_class p = 2; n > 1 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

// A Gaussian prime above the rational prime p (p = 2 or p = 1 mod 4 splits).
GInt gaussian_prime_above(const mpz_class& p) {
    if (p == 2) return {1, 1};
    // p = a^2 + b^2; scan a
    for (mpz_class a = 1; a * a * 2 <= p; ++a) {
        mpz_class rem = p - a * a;
        if (mpz_perfect_square_p(rem.get_mpz_t())) {
            mpz_class b;
            mpz_sqrt(b.get_mpz_t(), rem.get_mpz_t());
            return {a, b};
        }
    }
    throw Error("failed to split prime over Z[i]: " + p.get_str());
}

// All divisors of z up to units, found through the Gaussian prime factorization.
std::vector<GInt> gaussian_divisors(GInt z) {
    std::vector<std::pair<GInt, unsigned>> primes;  // (prime, max exponent in z)
    mpz_class n = gnorm(z);
    if (n == 0) return {};
    for (const auto& [p, e] : factor_integer(n)) {
        std::vector<GInt> candidates;
        if (p == 2) candidates.push_back({1, 1});
        else if (p % 4 == 3) candidates.push_back({p, 0});
        else {
            GInt pi = gaussian_prime_above(p);
            candidates.push_back(pi);
            candidates.push_back({pi.first, -pi.second});
        }
        for (const GInt& pi : candidates) {
            unsigned mult = 0;
            GInt rest = z;
            GInt q;
            while (mult <= 2 * e && gdivides(pi, rest, &q)) {
                ++mult;
                rest = q;
            }
            if (mult > 0) primes.push_back({pi, mult});
        }
    }
    std::vector<GInt> divisors{{1, 0}};
    for (const auto& [pi, mult] : primes) {
        std::vector<GInt> next;
        for (const GInt& d : divisors) {
            GInt acc = d;
            next.push_back(acc);
            for (unsigned k = 1; k <= mult; ++k) {
                acc = {acc.first * pi.first - acc.second * pi.second,
                       acc.first * pi.second + acc.second * pi.first};
                next.push_back(acc);
            }
        }
        divisors = std::move(next);
    }
    return divisors;
}

}  // namespace

RootSearchResult gaussian_rational_roots(const QPoly& input) {
    RootSearchResult result;
    QPoly p = input;
    p.normalize();
    if (p.degree() <= 0) {
        result.residual = p;
        return result;
    }
    // factor out t^m
    int zero_mult = 0;
    while (!p.c.empty() && p.c.front().is_zero()) {
        p.c.erase(p.c.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) result.roots.push_back({GaussianRational(), zero_mult});

    if (p.degree() >= 1) {
        // clear denominators to Gaussian-integer coefficients
        mpz_class den(1);
        for (const auto& v : p.c) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), v.re.get_den().get_mpz_t());
            mpz_lcm(den.get_mpz_t(), l.get_mpz_t(), v.im.get_den().get_mpz_t());
        }
        std::vector<GInt> ic;
        for (const auto& v : p.c) {
            mpq_class r = v.re * den, i = v.im * den;
            ic.push_back({r.get_num(), i.get_num()});
        }
        const GInt units[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        std::set<std::pair<std::pair<mpz_class, mpz_class>, std::pair<mpz_class, mpz_class>>> seen;
        std::vector<GaussianRational> candidates;
        for (const GInt& num : gaussian_divisors(ic.front())) {
            for (const GInt& dnm : gaussian_divisors(ic.back())) {
                for (const GInt& u : units) {
                    GInt nn{num.first * u.first - num.second * u.second,
                            num.first * u.second + num.second * u.first};
                    mpz_class n2 = gnorm(dnm);
                    // (nn / dnm) as a Gaussian rational
                    mpq_class re(nn.first * dnm.first + nn.second * dnm.second, n2);
                    mpq_class im(nn.second * dnm.first - nn.first * dnm.second, n2);
                    re.canonicalize();
                    im.canonicalize();
                    if (!seen.insert({{re.get_num(), re.get_den()}, {im.get_num(), im.get_den()}})
                             .second)
                        continue;
                    candidates.push_back({re, im});
                }
            }
        }
        for (const GaussianRational& r : candidates) {
            int mult = 0;
            while (p.degree() >= 1 && p.eval(r).is_zero()) {
                p = p.deflate(r);
                ++mult;
            }
            if (mult > 0) result.roots.push_back({r, mult});
            if (p.degree() < 1) break;
        }
    }
    std::sort(result.roots.begin(), result.roots.end(),
              [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
    result.residual = p.monic();
    return result;
}

}  // namespace planarlie
