#ifndef ENRIQUES_DISCRIMINANT_HPP
#define ENRIQUES_DISCRIMINANT_HPP

#include <string>
#include <vector>

#include "enriques/colength.hpp"
#include "enriques/poly.hpp"
#include "enriques/series.hpp"

namespace enriques {

// Discriminant curve of the map (x, y) -> (f(x, y), g(x, y)), eliminated as
// a polynomial N(u, v).  `swapped` records that the roles of f and g were
// exchanged to make the first component linear.
struct DiscriminantCurve {
    BPoly N;  // N[j] is the coefficient of v^j, a polynomial in u
    bool swapped = false;
};

namespace detail {

inline bool is_linear_form(const Series& f) {
    if (f.t.empty() || !f.exact()) return false;
    for (const auto& [m, c] : f.t)
        if (m.deg() != 1) return false;
    return true;
}

// g(a X + b Y, c X + d Y)
inline Series subst_linear(const Series& g, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    Series X, Y, out;
    X.t = {{{1, 0}, a}, {{0, 1}, b}};
    Y.t = {{{1, 0}, c}, {{0, 1}, d}};
    for (auto& s : {&X, &Y})
        for (auto it = s->t.begin(); it != s->t.end();)
            it = it->second == 0 ? s->t.erase(it) : std::next(it);
    for (const auto& [m, co] : g.t) {
        Series term;
        term.t = {{{0, 0}, co}};
        for (int k = 0; k < m.i; ++k) term = series_mul(term, X);
        for (int k = 0; k < m.j; ++k) term = series_mul(term, Y);
        out = series_add(out, term);
    }
    return out;
}

inline UPoly eval_u(const BPoly& b, const Rat& u) {
    UPoly p(b.size());
    for (size_t j = 0; j < b.size(); ++j) p[j] = ueval(b[j], u);
    unormalize(p);
    return p;
}

// N(u, v) = Res_Y(jac(u, Y), v - G(u, Y)) by grid evaluation of padded
// Sylvester determinants and dense interpolation.
inline BPoly eliminate(const BPoly& jac, const BPoly& G) {
    const int m = bdeg(jac), n = bdeg(G);
    int du_jac = 0, du_g = 0;
    for (const auto& c : jac) du_jac = std::max(du_jac, udeg(c));
    for (const auto& c : G) du_g = std::max(du_g, udeg(c));
    const int Du = n * du_jac + m * du_g;
    const int Dv = m;

    std::vector<Rat> us(Du + 1), vs(Dv + 1);
    for (int s = 0; s <= Du; ++s) us[s] = s;
    for (int t = 0; t <= Dv; ++t) vs[t] = t;

    std::vector<UPoly> per_u(Du + 1);  // N(u_s, v) as a polynomial in v
    for (int s = 0; s <= Du; ++s) {
        UPoly a = eval_u(jac, us[s]);
        UPoly g0 = eval_u(G, us[s]);
        std::vector<Rat> vals(Dv + 1);
        for (int t = 0; t <= Dv; ++t) {
            UPoly b = uscale(g0, Rat(-1));
            if (b.empty()) b.resize(1, Rat(0));
            b[0] += vs[t];
            unormalize(b);
            vals[t] = resultant_padded(a, b, m, n);
        }
        per_u[s] = interpolate(vs, vals);
        per_u[s].resize(Dv + 1, Rat(0));
    }

    BPoly N(Dv + 1);
    for (int j = 0; j <= Dv; ++j) {
        std::vector<Rat> vals(Du + 1);
        for (int s = 0; s <= Du; ++s) vals[s] = per_u[s][j];
        N[j] = interpolate(us, vals);
    }
    bnormalize(N);
    return N;
}

}  // namespace detail

inline long ord_at_origin(const BPoly& N) {
    long best = -1;
    for (size_t j = 0; j < N.size(); ++j) {
        int o = -1;
        for (size_t i = 0; i < N[j].size(); ++i)
            if (N[j][i] != 0) {
                o = static_cast<int>(i);
                break;
            }
        if (o < 0) continue;
        const long tot = static_cast<long>(j) + o;
        if (best < 0 || tot < best) best = tot;
    }
    if (best < 0) throw internal_error("the zero polynomial has no order");
    return best;
}

// Multiplicity of the discriminant curve along the line a*u + b*v = 0.
inline long line_multiplicity(const DiscriminantCurve& D, Rat a, Rat b) {
    if (a == 0 && b == 0) throw domain_error("a line needs a nonzero equation");
    if (D.swapped) std::swap(a, b);
    // parametrize the line as (u, v) = (-b t, a t)
    UPoly acc{Rat(0)};
    UPoly tpow{Rat(1)};
    const UPoly u_of_t{Rat(0), -b};
    for (size_t j = 0; j < D.N.size(); ++j) {
        UPoly term = D.N[j];
        // substitute u = -b t
        UPoly sub{};
        UPoly up{Rat(1)};
        for (size_t i = 0; i < term.size(); ++i) {
            sub = uadd(sub, uscale(up, term[i]));
            up = umul(up, u_of_t);
        }
        // multiply by (a t)^j
        sub = umul(sub, tpow);
        acc = uadd(acc, sub);
        tpow = umul(tpow, UPoly{Rat(0), a});
    }
    unormalize(acc);
    if (acc.empty())
        throw domain_error("the line lies inside the discriminant; its intersection is infinite");
    size_t o = 0;
    while (acc[o] == 0) ++o;
    return static_cast<long>(o);
}

inline long multiplicity_at_origin(const DiscriminantCurve& D) { return ord_at_origin(D.N); }

// Eliminate the discriminant of the pair (f, g).  One of the two components
// must be a nonzero linear form; the computation refuses pairs whose
// critical locus behaves badly over the chosen axis (contracted fiber
// components or fibers through points away from the origin).
inline DiscriminantCurve discriminant_by_elimination(const Series& f, const Series& g) {
    if (!f.exact() || !g.exact()) throw refusal_error("elimination needs exact polynomial input");
    if (f.t.count({0, 0}) || g.t.count({0, 0}))
        throw refusal_error("both components must vanish at the origin");

    const bool f_lin = detail::is_linear_form(f);
    const bool g_lin = detail::is_linear_form(g);
    if (!f_lin && !g_lin)
        throw refusal_error("elimination requires one component to be a linear form; "
                            "apply a coordinate change first");
    const Series& lin = f_lin ? f : g;
    const Series& oth = f_lin ? g : f;
    if (oth.t.empty()) throw refusal_error("the pair is degenerate: one component is zero");

    // change coordinates so the linear component becomes X
    Rat al = 0, be = 0;
    for (const auto& [m, c] : lin.t) (m.i == 1 ? al : be) = c;
    Series G = be != 0 ? detail::subst_linear(oth, Rat(0), Rat(1), 1 / be, -al / be)
                       : detail::subst_linear(oth, 1 / al, Rat(0), Rat(0), Rat(1));

    Series jac = series_diff_y(G);
    if (jac.t.empty())
        throw refusal_error("the critical locus is everything: the pair drops rank identically");

    // fiber over 0 must meet the critical locus only at the origin
    UPoly g0;
    for (const auto& [m, c] : G.t)
        if (m.i == 0) {
            if (static_cast<int>(g0.size()) <= m.j) g0.resize(m.j + 1, Rat(0));
            g0[m.j] = c;
        }
    unormalize(g0);
    if (g0.empty())
        throw refusal_error("the fiber over the origin is contained in the curve; the pair is not finite");
    for (int j = 0; j < udeg(g0); ++j)
        if (g0[j] != 0)
            throw refusal_error("the fiber over the origin meets the curve away from the origin; "
                                "shrink the representative or change coordinates");

    DiscriminantCurve D;
    D.swapped = !f_lin;
    if (known_order(jac) && *known_order(jac) == 0 && jac.t.size() == 1) {
        D.N = BPoly{UPoly{Rat(1)}};  // immersion: empty discriminant
        return D;
    }
    D.N = detail::eliminate(to_bpoly(jac), to_bpoly(G));
    if (bdeg(D.N) < 0 && D.N.empty()) throw internal_error("elimination degenerated to zero");

    // strip components that are vertical lines away from the origin
    UPoly cont = bcontent(D.N);
    if (udeg(cont) > 0) {
        for (auto& c : D.N) c = udivrem(c, cont).first;
        bnormalize(D.N);
    }
    return D;
}

// Milnor numbers across the pencil of members a f + b g of the pair (f, g).
struct PencilSample {
    Rat a, b;
    bool ok = false;
    long milnor = -1;
    long rhs = -1;  // milnor + deg - 1, the predicted discriminant-line intersection
    std::string note;
};

struct PencilReport {
    long degree = 0;  // deg of the pair as a finite map: colength of (f, g)
    std::vector<PencilSample> samples;
    long min_milnor = -1;  // over successful samples; -1 when none succeeded
};

inline PencilReport pencil_scan(const Series& f, const Series& g,
                                const std::vector<std::pair<Rat, Rat>>& samples, int max_cap = 64) {
    PencilReport rep;
    rep.degree = pair_colength(f, g, max_cap);
    for (const auto& [a, b] : samples) {
        PencilSample s;
        s.a = a;
        s.b = b;
        try {
            Series member = series_add(series_scale(f, a), series_scale(g, b));
            s.milnor = jacobian_colength(member, max_cap);
            s.rhs = s.milnor + rep.degree - 1;
            s.ok = true;
            if (rep.min_milnor < 0 || s.milnor < rep.min_milnor) rep.min_milnor = s.milnor;
        } catch (const refusal_error& e) {
            s.note = e.what();
        } catch (const domain_error& e) {
            s.note = e.what();
        }
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

}  // namespace enriques

#endif
