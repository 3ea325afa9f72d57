#ifndef ENRIQUES_RESOLVE_HPP
#define ENRIQUES_RESOLVE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "enriques/embedded.hpp"
#include "enriques/germ.hpp"
#include "enriques/poly.hpp"
#include "enriques/series.hpp"

namespace enriques {

// Infinitely near points of a curve germ, discovered by blowing up: the
// centers of the minimal resolution making the total transform a normal
// crossings divisor, with their effective multiplicities.
struct ResolvedGerm {
    Cluster cluster;
    std::vector<long> mult;
    std::vector<std::optional<Coord>> coord;

    GermCluster as_germ() const { return GermCluster(cluster, mult); }
    EmbeddedCluster as_embedded() const { return EmbeddedCluster(cluster, coord); }
};

namespace detail {

struct DiscoveryState {
    std::vector<Cluster::Point> pts;
    std::vector<long> mult;
    std::vector<std::optional<Coord>> coord;
    int counter = 0;

    int add(int parent, int extra, long m, std::optional<Coord> co) {
        Cluster::Point p;
        p.label = counter == 0 ? "O" : "O" + std::to_string(counter);
        ++counter;
        p.parent = parent;
        p.extra = extra;
        pts.push_back(p);
        mult.push_back(m);
        coord.push_back(co);
        return static_cast<int>(pts.size()) - 1;
    }
};

// Returns the multiplicity of t = 0 as a root and divides it out.
inline int strip_zero_root(UPoly& p) {
    int m = 0;
    while (static_cast<int>(p.size()) > m && p[m] == 0) ++m;
    p.erase(p.begin(), p.begin() + m);
    return m;
}

inline void check_depth(int depth) {
    if (depth > 4096) throw internal_error("resolution does not terminate; input is likely non-reduced");
}

// self = index of the current point (already added); S = its strict
// transform, in a frame where the parent's exceptional curve is {x = 0}
// and, at satellites, the second exceptional curve is {y = 0}.
inline void discover(DiscoveryState& st, int self, const SeriesT<Rat>& S, int depth) {
    check_depth(depth);
    const bool is_root = st.pts[self].parent < 0;
    const bool is_sat = st.pts[self].extra >= 0;

    int e;
    try {
        e = order(S);
    } catch (const precision_error&) {
        throw precision_error("truncation order exhausted while resolving at " + st.pts[self].label +
                              "; raise the precision");
    }
    st.mult[self] = e;
    if (S.trunc && *S.trunc <= e)
        throw precision_error("leading form unknown at " + st.pts[self].label + "; raise the precision");
    if (is_root && e == 1) return;  // a smooth germ is resolved by nothing

    UPoly L = leading_form_at_one(S, e);
    const int m_inf = e - udeg(L);
    const int m_zero = strip_zero_root(L);

    // corner towards the second exceptional curve (satellites only)
    if (is_sat && m_zero >= 1) {
        int q = st.add(self, st.pts[self].extra, 0, std::nullopt);
        discover(st, q, divide_x(chart_subst_finite(S, Rat(0)), e), depth + 1);
    } else if (!is_sat && !is_root && m_zero >= 2) {
        int q = st.add(self, -1, 0, Coord{false, 0});
        discover(st, q, divide_x(chart_subst_finite(S, Rat(0)), e), depth + 1);
    } else if (is_root && m_zero >= 2) {
        int q = st.add(self, -1, 0, Coord{false, 0});
        discover(st, q, divide_x(chart_subst_finite(S, Rat(0)), e), depth + 1);
    }

    // finite nonzero directions: only multiple ones stay in the diagram,
    // and they must be rational to be blown up explicitly
    std::vector<std::pair<Rat, int>> targets;
    for (const auto& [fac, mu] : squarefree_decomposition(L)) {
        if (mu < 2) continue;  // simple, free, transverse: resolved already
        RootSplit rs = rational_roots(fac);
        if (udeg(rs.rootless) > 0) throw irrational_point_error(udeg(rs.rootless));
        for (const auto& [c, k] : rs.roots) targets.emplace_back(c, mu * k);
    }
    std::sort(targets.begin(), targets.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, mu] : targets) {
        int q = st.add(self, -1, 0, Coord{false, c});
        discover(st, q, divide_x(chart_subst_finite(S, c), e), depth + 1);
    }

    // direction of the parent's exceptional curve (t = infinity); free for
    // the root, a corner point otherwise
    if ((is_root && m_inf >= 2) || (!is_root && m_inf >= 1)) {
        int q = is_root ? st.add(self, -1, 0, Coord{true, 0})
                        : st.add(self, st.pts[self].parent, 0, std::nullopt);
        discover(st, q, swap_xy(divide_y(chart_subst_infinite(S), e)), depth + 1);
    }
}

}  // namespace detail

// Blow up a reduced germ until its total transform has normal crossings and
// report the centers with their multiplicities.  Exact inputs are checked
// for squarefreeness first; truncated inputs fail with precision_error when
// the order budget runs out, and inputs whose resolution leaves the rational
// plane raise irrational_point_error.
inline ResolvedGerm multiplicity_sequence(const Series& f) {
    if (f.t.empty()) {
        if (f.exact()) throw domain_error("the zero series defines no curve");
        throw precision_error("series vanishes to its truncation order; no curve visible");
    }
    if (f.exact()) {
        auto o = known_order(f);
        if (o && *o == 0) throw domain_error("a unit defines no curve");
        if (!is_reduced_poly(f)) throw refusal_error("the polynomial has a repeated factor; pass its radical");
    } else {
        auto o = known_order(f);
        if (o && *o == 0) throw domain_error("a unit defines no curve");
    }
    detail::DiscoveryState st;
    int root = st.add(-1, -1, 0, std::nullopt);
    detail::discover(st, root, f, 0);
    return ResolvedGerm{Cluster(st.pts), st.mult, st.coord};
}

namespace detail {

template <class C>
SeriesT<C> strict_step(const EmbeddedCluster& K, int q, const SeriesT<C>& S, int e) {
    const Cluster& cl = K.cluster();
    if (!cl.is_satellite(q)) {
        const Coord& co = *K.coord(q);
        if (co.at_inf) return swap_xy(divide_y(chart_subst_infinite(S), e));
        return divide_x(chart_subst_finite(S, co.c), e);
    }
    if (proximity_tag(cl, q) == 1) return swap_xy(divide_y(chart_subst_infinite(S), e));
    return divide_x(chart_subst_finite(S, Rat(0)), e);
}

// order of a strict transform, with 0 meaning "the curve misses the point";
// truncated series that vanish to their bound cannot be decided
inline int passing_order(const SeriesT<Rat>& S, const std::string& where) {
    auto o = known_order(S);
    if (o) return *o;
    if (S.exact()) throw internal_error("strict transform vanished identically at " + where);
    throw precision_error("cannot decide passage at " + where + "; raise the precision");
}

inline void strict_orders_rec(const EmbeddedCluster& K, int p, const Series& S, std::vector<long>& out) {
    const int e = passing_order(S, K.cluster().label(p));
    out[p] = e;
    if (e == 0) return;
    for (int q : K.cluster().children(p)) strict_orders_rec(K, q, strict_step(K, q, S, e), out);
}

}  // namespace detail

// Effective multiplicities of the strict transforms of f at the points of
// K (0 where f does not pass).  This is how f is measured against a
// cluster: unlike the free-standing diagram of f, it sees tangencies of f
// with the directions K singles out.
inline std::vector<long> strict_orders(const EmbeddedCluster& K, const Series& f) {
    std::vector<long> out(K.size(), 0);
    detail::strict_orders_rec(K, 0, f, out);
    return out;
}

// Values of f along the points of K and the v-superficiality test: at every
// point where the consistent cluster of I has positive excess, the value of
// f must agree with the generic value of the ideal.
inline std::vector<long> values_along(const EmbeddedCluster& K, const Series& f) {
    const Cluster& cl = K.cluster();
    std::vector<long> eo = strict_orders(K, f);
    std::vector<long> v(eo.size(), 0);
    for (int p = 0; p < cl.size(); ++p) {
        v[p] = eo[p];
        if (cl.parent(p) >= 0) v[p] += v[cl.parent(p)];
        if (cl.extra(p) >= 0) v[p] += v[cl.extra(p)];
    }
    return v;
}

inline bool v_superficial_along(const EmbeddedCluster& K, const std::vector<long>& nu, const Series& f) {
    WeightedCluster wu = unload(WeightedCluster{K.cluster(), nu}).cluster;
    const std::vector<long> vI = values(wu);
    const std::vector<long> rho = excesses(wu);
    const std::vector<long> vf = values_along(K, f);
    for (size_t p = 0; p < rho.size(); ++p)
        if (rho[p] > 0 && vf[p] != vI[p]) return false;
    return true;
}

namespace detail {

// true iff f and g share no infinitely near point beyond K
inline bool separated_rec(const EmbeddedCluster& K, int p, const Series& Sf, const Series& Sg) {
    const Cluster& cl = K.cluster();
    const int ef = passing_order(Sf, cl.label(p));
    const int eg = passing_order(Sg, cl.label(p));
    if (ef == 0 || eg == 0) return true;

    UPoly Lf = leading_form_at_one(Sf, ef), Lg = leading_form_at_one(Sg, eg);
    const int inf_f = ef - udeg(Lf), inf_g = eg - udeg(Lg);
    UPoly D = ugcd(Lf, Lg);

    bool inf_covered = false;
    for (int q : cl.children(p)) {
        bool towards_inf = false;
        std::optional<Rat> slope;
        if (!cl.is_satellite(q)) {
            if (K.coord(q)->at_inf)
                towards_inf = true;
            else
                slope = K.coord(q)->c;
        } else if (proximity_tag(cl, q) == 1) {
            towards_inf = true;
        } else {
            slope = Rat(0);
        }
        if (towards_inf) {
            inf_covered = true;
        } else {
            // strip this direction out of the common tangent divisor
            for (;;) {
                Rat at = ueval(D, *slope);
                if (at != 0 || udeg(D) < 1) break;
                D = udivrem(D, UPoly{-*slope, Rat(1)}).first;
            }
        }
        Series fq = strict_step(K, q, Sf, ef);
        Series gq = strict_step(K, q, Sg, eg);
        if (passing_order(fq, cl.label(q)) >= 1 && passing_order(gq, cl.label(q)) >= 1)
            if (!separated_rec(K, q, fq, gq)) return false;
    }
    if (udeg(D) >= 1) return false;                          // common direction off K
    if (!inf_covered && inf_f >= 1 && inf_g >= 1) return false;  // common vertical tangent off K
    return true;
}

}  // namespace detail

// Do the strict transforms of f and g on the surface obtained by blowing up
// all of K avoid each other?  Shared tangent directions that do not point
// at a K point are detected through gcds of leading forms, so no rationality
// of the shared points is needed.
inline bool separated_along(const EmbeddedCluster& K, const Series& f, const Series& g) {
    return detail::separated_rec(K, 0, f, g);
}

// Resolved points of f together with the positions of K it runs through.
struct AlongResult {
    ResolvedGerm germ;
    Matching onto_K;  // germ point index -> K point index
};

namespace detail {

inline void along_rec(const EmbeddedCluster& K, DiscoveryState& st, Matching& mt, int self, int kp,
                      const SeriesT<Rat>& S, int depth) {
    check_depth(depth);
    const Cluster& cl = K.cluster();
    const bool is_root = st.pts[self].parent < 0;
    const bool is_sat = st.pts[self].extra >= 0;

    const int e = order(S);
    st.mult[self] = e;
    if (kp >= 0) mt.push_back({self, kp});
    if (S.trunc && *S.trunc <= e)
        throw precision_error("leading form unknown at " + st.pts[self].label + "; raise the precision");

    UPoly L = leading_form_at_one(S, e);
    const int m_inf = e - udeg(L);
    const int m_zero = strip_zero_root(L);

    // points of K first: f is measured there whether or not its own
    // resolution would single those directions out
    std::vector<Rat> covered;
    bool inf_covered = false, zero_corner_covered = false;
    if (kp >= 0) {
        for (int q : cl.children(kp)) {
            bool towards_inf = false;
            if (!cl.is_satellite(q)) {
                if (K.coord(q)->at_inf)
                    towards_inf = true;
                else
                    covered.push_back(K.coord(q)->c);
            } else if (proximity_tag(cl, q) == 1) {
                towards_inf = true;
            } else {
                zero_corner_covered = true;
            }
            if (towards_inf) inf_covered = true;
            Series Sq = strict_step(K, q, S, e);
            if (passing_order(Sq, cl.label(q)) < 1) continue;
            int out;
            if (!cl.is_satellite(q))
                out = st.add(self, -1, 0, *K.coord(q));
            else if (proximity_tag(cl, q) == 1)
                out = st.add(self, st.pts[self].parent, 0, std::nullopt);
            else
                out = st.add(self, st.pts[self].extra, 0, std::nullopt);
            along_rec(K, st, mt, out, q, Sq, depth + 1);
        }
    }

    const bool zero_covered =
        zero_corner_covered || std::count(covered.begin(), covered.end(), Rat(0)) > 0;
    if (!zero_covered) {
        if (is_sat && m_zero >= 1) {
            int q = st.add(self, st.pts[self].extra, 0, std::nullopt);
            along_rec(K, st, mt, q, -1, divide_x(chart_subst_finite(S, Rat(0)), e), depth + 1);
        } else if (!is_sat && m_zero >= 2) {
            int q = st.add(self, -1, 0, Coord{false, 0});
            along_rec(K, st, mt, q, -1, divide_x(chart_subst_finite(S, Rat(0)), e), depth + 1);
        }
    }

    std::vector<std::pair<Rat, int>> targets;
    for (const auto& [fac, mu] : squarefree_decomposition(L)) {
        if (mu < 2) continue;
        RootSplit rs = rational_roots(fac);
        if (udeg(rs.rootless) > 0) throw irrational_point_error(udeg(rs.rootless));
        for (const auto& [c, k] : rs.roots) targets.emplace_back(c, mu * k);
    }
    std::sort(targets.begin(), targets.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, mu] : targets) {
        if (std::count(covered.begin(), covered.end(), c)) continue;
        int q = st.add(self, -1, 0, Coord{false, c});
        along_rec(K, st, mt, q, -1, divide_x(chart_subst_finite(S, c), e), depth + 1);
    }

    if (!inf_covered && ((is_root && m_inf >= 2) || (!is_root && m_inf >= 1))) {
        int q = is_root ? st.add(self, -1, 0, Coord{true, 0})
                        : st.add(self, st.pts[self].parent, 0, std::nullopt);
        along_rec(K, st, mt, q, -1, swap_xy(divide_y(chart_subst_infinite(S), e)), depth + 1);
    }
}

}  // namespace detail

// Resolve f while walking through every point of K it touches, so that
// passage, tangency with K's directions, and f's own extra singular points
// are all visible in one diagram with a ready matching onto K.
inline AlongResult resolve_along(const EmbeddedCluster& K, const Series& f) {
    if (f.t.empty()) {
        if (f.exact()) throw domain_error("the zero series defines no curve");
        throw precision_error("series vanishes to its truncation order; no curve visible");
    }
    auto o = known_order(f);
    if (o && *o == 0) throw domain_error("a unit defines no curve");
    if (f.exact() && !is_reduced_poly(f))
        throw refusal_error("the polynomial has a repeated factor; pass its radical");
    detail::DiscoveryState st;
    Matching mt;
    int root = st.add(-1, -1, 0, std::nullopt);
    detail::along_rec(K, st, mt, root, 0, f, 0);
    return AlongResult{ResolvedGerm{Cluster(st.pts), st.mult, st.coord}, std::move(mt)};
}

// Does f realize exactly the multiplicities of (K, nu), with no singular
// points beyond?  The decision is taken on the diagram of f resolved along
// K, per the sharpness rules for matched and unmatched points.
inline bool sharp_through(const EmbeddedCluster& K, const std::vector<long>& nu, const Series& f) {
    AlongResult ar = resolve_along(K, f);
    return goes_sharply_through(ar.germ.as_germ(), WeightedCluster{K.cluster(), nu}, ar.onto_K);
}

// Match the points of a resolved germ onto the points of an embedded
// cluster by position: roots correspond, free points correspond when their
// coordinates agree, satellite points when they lean on corresponding
// targets.  The result is a partial matching suitable for the intersection
// and value computations.
inline Matching match_to_cluster(const ResolvedGerm& g, const EmbeddedCluster& K) {
    Matching mt;
    const Cluster& a = g.cluster;
    const Cluster& b = K.cluster();
    std::vector<int> a2b(a.size(), -1);
    a2b[0] = 0;
    mt.push_back({0, 0});
    for (int p = 1; p < a.size(); ++p) {
        int pa = a.parent(p);
        if (a2b[pa] < 0) continue;
        int qb = -1;
        for (int q : b.children(a2b[pa])) {
            if (a.is_satellite(p) != b.is_satellite(q)) continue;
            if (a.is_satellite(p)) {
                if (detail::proximity_tag(a, p) == detail::proximity_tag(b, q)) qb = q;
            } else {
                if (*g.coord[p] == *K.coord(q)) qb = q;
            }
            if (qb >= 0) break;
        }
        if (qb >= 0) {
            a2b[p] = qb;
            mt.push_back({p, qb});
        }
    }
    return mt;
}

// Series-level reduction verdict for a pair of members of the ideal of
// (K, nu): both v-superficial and separated inside K.
inline ReductionReport reduction_report_along(const EmbeddedCluster& K, const std::vector<long>& nu,
                                              const Series& f, const Series& g) {
    ReductionReport r;
    r.v_superficial_f = v_superficial_along(K, nu, f);
    r.v_superficial_g = v_superficial_along(K, nu, g);
    r.separated = separated_along(K, f, g);
    r.rees = r.good_pair();
    return r;
}

}  // namespace enriques

#endif
