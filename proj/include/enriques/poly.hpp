#ifndef ENRIQUES_POLY_HPP
#define ENRIQUES_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "enriques/linalg.hpp"
#include "enriques/rational.hpp"

namespace enriques {

// Dense univariate polynomials over Q, coefficient of t^i at index i, no
// trailing zeros.  The zero polynomial is the empty vector.
using UPoly = std::vector<Rat>;

inline void unormalize(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero
inline bool uzero(const UPoly& p) { return p.empty(); }

inline UPoly uadd(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    unormalize(r);
    return r;
}

inline UPoly uscale(const UPoly& a, const Rat& c) {
    if (c == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline UPoly umul(const UPoly& a, const UPoly& b) {
    if (uzero(a) || uzero(b)) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    unormalize(r);
    return r;
}

// Division with remainder over the field Q.
inline std::pair<UPoly, UPoly> udivrem(UPoly a, const UPoly& b) {
    if (uzero(b)) throw domain_error("polynomial division by zero");
    UPoly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    const Rat inv = 1 / b.back();
    for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        if (a[i] == 0) continue;
        Rat f = a[i] * inv;
        q[i - (b.size() - 1)] = f;
        for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
    }
    unormalize(a);
    return {q, a};
}

inline UPoly uderiv(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
    return r;
}

inline Rat ueval(const UPoly& a, const Rat& t) {
    Rat v = 0;
    for (int i = udeg(a); i >= 0; --i) v = v * t + a[i];
    return v;
}

inline UPoly umonic(UPoly a) {
    if (!uzero(a)) {
        Rat inv = 1 / a.back();
        for (auto& c : a) c *= inv;
    }
    return a;
}

inline UPoly ugcd(UPoly a, UPoly b) {
    while (!uzero(b)) {
        auto [q, r] = udivrem(std::move(a), b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(std::move(a));
}

// Yun's squarefree decomposition: returns pairs (factor, multiplicity) with
// the factors squarefree, pairwise coprime and monic; multiplicities
// ascending.  Constants decompose to nothing.
inline std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p) {
    std::vector<std::pair<UPoly, int>> out;
    if (udeg(p) < 1) return out;
    UPoly a = umonic(p);
    UPoly g = ugcd(a, uderiv(a));
    UPoly w = udivrem(a, g).first;
    int m = 1;
    while (udeg(w) >= 1) {
        UPoly y = ugcd(w, g);
        UPoly f = udivrem(w, y).first;
        if (udeg(f) >= 1) out.emplace_back(umonic(f), m);
        w = std::move(y);
        g = udivrem(g, w).first;
        ++m;
    }
    return out;
}

// All rational roots of p with multiplicities, via the rational root
// theorem on the primitive integer model.  The remaining rootless factor's
// degree is also reported so callers can refuse irrational continuations.
struct RootSplit {
    std::vector<std::pair<Rat, int>> roots;
    UPoly rootless;  // monic, no rational roots (may be constant 1)
};

inline RootSplit rational_roots(const UPoly& p) {
    RootSplit out;
    out.rootless = {Rat(1)};
    if (udeg(p) < 1) return out;
    UPoly rest = umonic(p);
    // strip roots at 0
    int zero_mult = 0;
    while (!rest.empty() && rest[0] == 0) {
        rest.erase(rest.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.emplace_back(Rat(0), zero_mult);
    if (udeg(rest) < 1) return out;
    // integer model: clear denominators
    mpz_class den = 1;
    for (const auto& c : rest) den = den * c.get_den() / gcd(den, mpz_class(c.get_den()));
    std::vector<mpz_class> z(rest.size());
    for (size_t i = 0; i < rest.size(); ++i) z[i] = mpz_class(rest[i].get_num() * (den / rest[i].get_den()));
    auto divisors = [](mpz_class v) {
        v = abs(v);
        std::vector<mpz_class> d;
        for (mpz_class i = 1; i * i <= v; ++i) {
            if (v % i == 0) {
                d.push_back(i);
                if (i * i != v) d.push_back(v / i);
            }
        }
        return d;
    };
    std::vector<mpz_class> num_c = divisors(z.front());
    std::vector<mpz_class> den_c = divisors(z.back());
    std::vector<Rat> candidates;
    for (const auto& nu : num_c)
        for (const auto& de : den_c)
            for (int s : {1, -1}) {
                Rat q(s * nu, de);
                q.canonicalize();
                candidates.push_back(q);
            }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Rat& c : candidates) {
        int mult = 0;
        while (udeg(rest) >= 1 && ueval(rest, c) == 0) {
            rest = udivrem(rest, UPoly{-c, Rat(1)}).first;
            ++mult;
        }
        if (mult > 0) out.roots.emplace_back(c, mult);
        if (udeg(rest) < 1) break;
    }
    out.rootless = udeg(rest) >= 1 ? rest : UPoly{Rat(1)};
    return out;
}

// Resultant of a and b read as polynomials of formal degrees m and n (the
// actual degrees may be lower when coefficients specialise to zero):
// determinant of the corresponding Sylvester matrix.
inline Rat resultant_padded(const UPoly& a, const UPoly& b, int m, int n) {
    if (m < 0 || n < 0 || udeg(a) > m || udeg(b) > n) throw internal_error("bad resultant padding");
    if (m == 0 && n == 0) return Rat(1);
    auto coef = [](const UPoly& p, int i) { return i < static_cast<int>(p.size()) ? p[i] : Rat(0); };
    const int s = m + n;
    RatMat syl(s, RatVec(s, Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) syl[r][r + (m - i)] = coef(a, i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl[n + r][r + (n - i)] = coef(b, i);
    return det(std::move(syl));
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
inline UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size()) throw internal_error("interpolation size mismatch");
    UPoly acc;  // running Newton form
    UPoly basis{Rat(1)};
    for (size_t k = 0; k < xs.size(); ++k) {
        Rat have = ueval(acc, xs[k]);
        Rat scale = ueval(basis, xs[k]);
        if (scale == 0) throw internal_error("interpolation nodes are not distinct");
        acc = uadd(acc, uscale(basis, (ys[k] - have) / scale));
        basis = umul(basis, UPoly{-xs[k], Rat(1)});
    }
    return acc;
}

// ---- bivariate layer: polynomials in y with UPoly (in x) coefficients ----
// Used for exact gcd / squarefree questions about polynomial germs.

using BPoly = std::vector<UPoly>;  // coefficient of y^j at index j

inline void bnormalize(BPoly& p) {
    while (!p.empty() && uzero(p.back())) p.pop_back();
}
inline int bdeg(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly bcontent(const BPoly& p) {
    UPoly g;
    for (const auto& c : p) g = ugcd(g, c);
    return g;
}

inline BPoly bprimitive(const BPoly& p) {
    UPoly c = bcontent(p);
    if (uzero(c) || udeg(c) == 0) return p;
    BPoly r = p;
    for (auto& q : r) q = udivrem(q, c).first;
    return r;
}

inline BPoly bscale(const BPoly& a, const UPoly& f) {
    BPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = umul(a[i], f);
    bnormalize(r);
    return r;
}

// Pseudo-remainder of a by b in (Q[x])[y].
inline BPoly bprem(BPoly a, const BPoly& b) {
    bnormalize(a);
    const int db = bdeg(b);
    if (db < 0) throw domain_error("pseudo-division by zero");
    const UPoly& lb = b.back();
    while (bdeg(a) >= db) {
        const int da = bdeg(a);
        UPoly la = a.back();
        BPoly scaled = bscale(a, lb);
        for (int j = 0; j <= db; ++j) {
            UPoly sub = umul(la, b[j]);
            size_t idx = j + (da - db);
            if (scaled.size() <= idx) scaled.resize(idx + 1);
            scaled[idx] = uadd(scaled[idx], uscale(sub, Rat(-1)));
        }
        bnormalize(scaled);
        if (bdeg(scaled) >= da) throw internal_error("pseudo-division failed to reduce degree");
        a = std::move(scaled);
    }
    return a;
}

// gcd in Q[x][y] by the primitive Euclidean algorithm; content handled in
// Q[x].  Normalised so the leading y-coefficient is monic in x.
inline BPoly bgcd(BPoly a, BPoly b) {
    bnormalize(a);
    bnormalize(b);
    if (bdeg(a) < 0) return b;
    if (bdeg(b) < 0) return a;
    UPoly ca = bcontent(a), cb = bcontent(b);
    UPoly cg = ugcd(ca, cb);
    a = bprimitive(a);
    b = bprimitive(b);
    if (bdeg(a) < bdeg(b)) std::swap(a, b);
    while (bdeg(b) >= 1) {
        BPoly r = bprimitive(bprem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    BPoly g = (bdeg(b) == 0) ? BPoly{UPoly{Rat(1)}} : a;  // common part is a constant in y
    g = bscale(g, cg);
    // monic-ish normalisation
    if (!g.empty() && !uzero(g.back())) {
        Rat lead = g.back().back();
        for (auto& c : g)
            for (auto& q : c) q /= lead;
    }
    return g;
}

inline bool bis_constant(const BPoly& p) {
    return bdeg(p) <= 0 && (p.empty() || udeg(p[0]) <= 0);
}

}  // namespace enriques

#endif
