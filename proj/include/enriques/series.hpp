#ifndef ENRIQUES_SERIES_HPP
#define ENRIQUES_SERIES_HPP

#include <compare>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enriques/poly.hpp"
#include "enriques/rational.hpp"

namespace enriques {

struct Mono {
    int i = 0;  // x exponent
    int j = 0;  // y exponent
    auto operator<=>(const Mono&) const = default;
    int deg() const { return i + j; }
};

// Linear form in formal unknowns, the coefficient type of the symbolic
// series used to impose cluster conditions on an indeterminate polynomial.
struct LinForm {
    std::map<int, Rat> a;

    LinForm() = default;
    static LinForm unknown(int k) {
        LinForm f;
        f.a[k] = 1;
        return f;
    }
    bool zero() const { return a.empty(); }
    LinForm& operator+=(const LinForm& o) {
        for (const auto& [k, v] : o.a) {
            Rat& c = a[k];
            c += v;
            if (c == 0) a.erase(k);
        }
        return *this;
    }
    LinForm& operator*=(const Rat& c) {
        if (c == 0) {
            a.clear();
            return *this;
        }
        for (auto& [k, v] : a) v *= c;
        return *this;
    }
};

namespace coeff {
inline bool is_zero(const Rat& c) { return c == 0; }
inline bool is_zero(const LinForm& c) { return c.zero(); }
}  // namespace coeff

// Bivariate power series known below a truncation order.  `trunc == nullopt`
// means the series is exact (a polynomial: all omitted terms are zero);
// otherwise terms of total degree >= *trunc are unknown and unstored.
template <class C>
struct SeriesT {
    std::map<Mono, C> t;
    std::optional<int> trunc;

    bool exact() const { return !trunc.has_value(); }

    void set(Mono m, C c) {
        if (trunc && m.deg() >= *trunc) return;
        if (coeff::is_zero(c))
            t.erase(m);
        else
            t[m] = std::move(c);
    }
    void add(Mono m, const C& c) {
        if (trunc && m.deg() >= *trunc) return;
        auto it = t.find(m);
        if (it == t.end()) {
            if (!coeff::is_zero(c)) t.emplace(m, c);
            return;
        }
        it->second += c;
        if (coeff::is_zero(it->second)) t.erase(it);
    }
};

using Series = SeriesT<Rat>;

namespace detail {
inline std::optional<int> trunc_min(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}
}  // namespace detail

// Order of the known part: smallest total degree carrying a nonzero term.
// Empty exact series have no order (identically zero); empty truncated
// series are unknown below their truncation and get nullopt as well —
// callers decide whether that is an error.
template <class C>
inline std::optional<int> known_order(const SeriesT<C>& f) {
    std::optional<int> o;
    for (const auto& [m, c] : f.t)
        if (!o || m.deg() < *o) o = m.deg();
    return o;
}

// Order with truncation semantics: throws when the series is zero to its
// truncation bound (the order cannot be certified).
inline int order(const Series& f) {
    auto o = known_order(f);
    if (o) return *o;
    if (f.exact()) throw domain_error("order of the zero series");
    throw precision_error("series vanishes up to its truncation order " + std::to_string(*f.trunc) +
                          "; order unknown");
}

template <class C>
inline SeriesT<C> series_add(const SeriesT<C>& a, const SeriesT<C>& b) {
    SeriesT<C> r;
    r.trunc = detail::trunc_min(a.trunc, b.trunc);
    for (const auto& [m, c] : a.t) r.add(m, c);
    for (const auto& [m, c] : b.t) r.add(m, c);
    return r;
}

template <class C>
inline SeriesT<C> series_scale(const SeriesT<C>& a, const Rat& s) {
    SeriesT<C> r;
    r.trunc = a.trunc;
    for (const auto& [m, c] : a.t) {
        C v = c;
        v *= s;
        r.set(m, std::move(v));
    }
    return r;
}

inline Series series_mul(const Series& a, const Series& b) {
    Series r;
    if (!a.exact() || !b.exact()) {
        auto oa = known_order(a), ob = known_order(b);
        int la = oa ? *oa : (a.trunc ? *a.trunc : 0);
        int lb = ob ? *ob : (b.trunc ? *b.trunc : 0);
        std::optional<int> ta = a.trunc ? std::optional<int>(*a.trunc + lb) : std::nullopt;
        std::optional<int> tb = b.trunc ? std::optional<int>(*b.trunc + la) : std::nullopt;
        r.trunc = detail::trunc_min(ta, tb);
    }
    for (const auto& [ma, ca] : a.t)
        for (const auto& [mb, cb] : b.t) r.add({ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return r;
}

inline Series series_diff_x(const Series& f) {
    Series r;
    if (f.trunc) r.trunc = *f.trunc - 1;
    for (const auto& [m, c] : f.t)
        if (m.i > 0) r.add({m.i - 1, m.j}, c * Rat(m.i));
    return r;
}

inline Series series_diff_y(const Series& f) {
    Series r;
    if (f.trunc) r.trunc = *f.trunc - 1;
    for (const auto& [m, c] : f.t)
        if (m.j > 0) r.add({m.i, m.j - 1}, c * Rat(m.j));
    return r;
}

inline Series mono_mul(const Series& f, int di, int dj) {
    Series r;
    if (f.trunc) r.trunc = *f.trunc + di + dj;
    for (const auto& [m, c] : f.t) r.t.emplace(Mono{m.i + di, m.j + dj}, c);
    return r;
}

inline Rat series_eval(const Series& f, const Rat& x, const Rat& y) {
    if (!f.exact()) throw domain_error("cannot evaluate a truncated series");
    Rat v = 0;
    for (const auto& [m, c] : f.t) {
        Rat xp = 1, yp = 1;
        for (int k = 0; k < m.i; ++k) xp *= x;
        for (int k = 0; k < m.j; ++k) yp *= y;
        v += c * xp * yp;
    }
    return v;
}

// Leading form of f evaluated at (1, t): the univariate polynomial whose
// roots are the directions of f's tangent cone (t = infinity corresponds to
// the missing degree).
inline UPoly leading_form_at_one(const Series& f, int ord) {
    UPoly p;
    for (const auto& [m, c] : f.t)
        if (m.deg() == ord) {
            if (static_cast<int>(p.size()) <= m.j) p.resize(m.j + 1, Rat(0));
            p[m.j] = c;
        }
    unormalize(p);
    return p;
}

template <class C>
inline SeriesT<C> swap_xy(const SeriesT<C>& f) {
    SeriesT<C> r;
    r.trunc = f.trunc;
    for (const auto& [m, c] : f.t) r.t.emplace(Mono{m.j, m.i}, c);
    return r;
}

// Total transform under the blow-up chart (x, y) -> (x, x (y + c)):
// x^i y^j becomes x^(i+j) (y + c)^j.  Degrees only grow, so the truncation
// order carries over.
template <class C>
inline SeriesT<C> chart_subst_finite(const SeriesT<C>& f, const Rat& c) {
    SeriesT<C> r;
    r.trunc = f.trunc;
    for (const auto& [m, co] : f.t) {
        // binomial expansion of (y + c)^j
        std::vector<Rat> cpow(m.j + 1);
        cpow[m.j] = 1;
        for (int k = m.j - 1; k >= 0; --k) cpow[k] = cpow[k + 1] * c;
        std::vector<Rat> bin(m.j + 1);
        bin[0] = 1;
        for (int k = 1; k <= m.j; ++k) bin[k] = bin[k - 1] * Rat(m.j - k + 1) / Rat(k);
        for (int k = 0; k <= m.j; ++k) {
            if (cpow[k] == 0 && k < m.j) continue;
            C v = co;
            v *= bin[k] * cpow[k];
            r.add({m.i + m.j, k}, v);
        }
    }
    return r;
}

// Total transform under the opposite chart (x, y) -> (x y, y):
// x^i y^j becomes x^i y^(i+j).
template <class C>
inline SeriesT<C> chart_subst_infinite(const SeriesT<C>& f) {
    SeriesT<C> r;
    r.trunc = f.trunc;
    for (const auto& [m, c] : f.t) r.t.emplace(Mono{m.i, m.i + m.j}, c);
    return r;
}

// Exact division by x^k (k may be negative, meaning multiplication).  All
// known terms must be divisible; the truncation bound drops by k.
template <class C>
inline SeriesT<C> divide_x(const SeriesT<C>& f, int k) {
    SeriesT<C> r;
    if (f.trunc) r.trunc = *f.trunc - k;
    for (const auto& [m, c] : f.t) {
        if (m.i - k < 0) throw internal_error("series not divisible by x^" + std::to_string(k));
        r.t.emplace(Mono{m.i - k, m.j}, c);
    }
    return r;
}

template <class C>
inline SeriesT<C> divide_y(const SeriesT<C>& f, int k) {
    SeriesT<C> r;
    if (f.trunc) r.trunc = *f.trunc - k;
    for (const auto& [m, c] : f.t) {
        if (m.j - k < 0) throw internal_error("series not divisible by y^" + std::to_string(k));
        r.t.emplace(Mono{m.i, m.j - k}, c);
    }
    return r;
}

// Strict transform at the point of E with coordinate c (slope of the
// direction y = c x), or at the point at infinity of E (the direction
// x = 0) when `at_infinity`.  Divides by the full order of f.
inline Series blow_up(const Series& f, const Rat& c, bool at_infinity = false) {
    int m = order(f);
    if (at_infinity) return divide_y(chart_subst_infinite(f), m);
    return divide_x(chart_subst_finite(f, c), m);
}

// ---------- text format ----------
// Terms like "3/2*x^2*y - y^4 + x^5"; '*' is optional, '^' gives exponents.

namespace detail {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;

    explicit PolyParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Rat number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw parse_error("expected a number in polynomial at position " + std::to_string(pos));
        mpz_class num(s.substr(start, pos - start));
        if (peek() == '/') {
            ++pos;
            skip_ws();
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) throw parse_error("expected a denominator in polynomial");
            mpz_class den(s.substr(dstart, pos - dstart));
            if (den == 0) throw parse_error("zero denominator in polynomial");
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        return Rat(num);
    }

    int exponent() {
        if (peek() == '^') {
            ++pos;
            Rat e = number();
            if (!is_integer(e) || e < 0) throw parse_error("exponent must be a non-negative integer");
            return static_cast<int>(to_long(e));
        }
        return 1;
    }

    // coefficient [*] {x|y}[^k] [*] ...
    void term(Series& out, int sign) {
        Rat coef = sign;
        bool saw_factor = false;
        int ei = 0, ej = 0;
        for (;;) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= number();
                saw_factor = true;
            } else if (c == 'x') {
                ++pos;
                ei += exponent();
                saw_factor = true;
            } else if (c == 'y') {
                ++pos;
                ej += exponent();
                saw_factor = true;
            } else if (c == '*') {
                ++pos;
            } else {
                break;
            }
        }
        if (!saw_factor) throw parse_error("empty term in polynomial");
        out.add({ei, ej}, coef);
    }
};

}  // namespace detail

inline Series parse_poly(const std::string& text) {
    detail::PolyParser p(text);
    Series out;  // exact
    int sign = 1;
    bool first = true;
    while (!p.eof()) {
        char c = p.peek();
        if (c == '+') {
            ++p.pos;
            sign = 1;
        } else if (c == '-') {
            ++p.pos;
            sign = -1;
        } else if (!first) {
            throw parse_error("expected '+' or '-' between polynomial terms");
        }
        if (p.eof()) throw parse_error("dangling sign in polynomial");
        p.term(out, sign);
        sign = 1;
        first = false;
    }
    if (first) throw parse_error("empty polynomial");
    return out;
}

inline std::string poly_str(const Series& f) {
    if (f.t.empty()) return "0";
    std::string out;
    // highest-order terms last, graded by total degree then x-exponent
    std::vector<std::pair<Mono, Rat>> terms(f.t.begin(), f.t.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        return a.first.i > b.first.i;
    });
    bool first = true;
    for (const auto& [m, c] : terms) {
        Rat a = abs(c);
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        std::string mono;
        if (m.i > 0) mono += "x" + (m.i > 1 ? "^" + std::to_string(m.i) : "");
        if (m.j > 0) mono += (mono.empty() ? "" : "*") + std::string("y") + (m.j > 1 ? "^" + std::to_string(m.j) : "");
        if (mono.empty())
            out += rat_str(a);
        else if (a == 1)
            out += mono;
        else
            out += rat_str(a) + "*" + mono;
        first = false;
    }
    return out;
}

// Coefficients of f as a polynomial in y over Q[x]; requires exactness.
inline BPoly to_bpoly(const Series& f) {
    if (!f.exact()) throw domain_error("conversion to polynomial requires an exact series");
    BPoly b;
    for (const auto& [m, c] : f.t) {
        if (static_cast<int>(b.size()) <= m.j) b.resize(m.j + 1);
        UPoly& u = b[m.j];
        if (static_cast<int>(u.size()) <= m.i) u.resize(m.i + 1, Rat(0));
        u[m.i] = c;
    }
    for (auto& u : b) unormalize(u);
    bnormalize(b);
    return b;
}

// Squarefree test for exact polynomials.  The content in Q[x] is univariate;
// the primitive part is squarefree iff Res_y(p, p_y) is not identically zero,
// which is decided by specialising x to integers (skipping zeros of the
// leading coefficient) until a resultant is nonzero or enough vanish to pin
// the zero polynomial.  This avoids bivariate gcds, whose remainder chains
// blow up on dense inputs.
inline bool is_reduced_poly(const Series& f) {
    BPoly b = to_bpoly(f);
    if (bdeg(b) < 0) throw domain_error("zero polynomial is not reduced");
    UPoly cont = bcontent(b);
    if (udeg(ugcd(cont, uderiv(cont))) >= 1) return false;
    BPoly p = bprimitive(b);
    const int m = bdeg(p);
    if (m == 0) return true;
    BPoly py(m);
    for (int j = 1; j <= m; ++j) py[j - 1] = uscale(p[j], Rat(j));
    int da = 0, db = 0;
    for (const auto& c : p)
        if (udeg(c) > da) da = udeg(c);
    for (const auto& c : py)
        if (udeg(c) > db) db = udeg(c);
    const long need = static_cast<long>(m - 1) * da + static_cast<long>(m) * db + 1;
    long zeros = 0;
    for (long k = 0; zeros < need; ++k) {
        const Rat x0 = (k % 2 == 0) ? Rat(k / 2) : Rat(-(k / 2 + 1));
        if (ueval(p.back(), x0) == 0) continue;
        UPoly a(m + 1), c(m);
        for (int j = 0; j <= m; ++j) a[j] = ueval(p[j], x0);
        for (int j = 0; j < m; ++j) c[j] = ueval(py[j], x0);
        unormalize(a);
        unormalize(c);
        if (resultant_padded(a, c, m, m - 1) != 0) return true;
        ++zeros;
    }
    return false;
}

}  // namespace enriques

#endif
