#ifndef ENRIQUES_EMBEDDED_HPP
#define ENRIQUES_EMBEDDED_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enriques/cluster.hpp"
#include "enriques/germ.hpp"
#include "enriques/linalg.hpp"
#include "enriques/series.hpp"

namespace enriques {

// Position of a free point on the exceptional curve of its parent: the
// slope c of the direction y = c x, or the point at infinity (direction
// x = 0, only available on the first exceptional curve).
struct Coord {
    bool at_inf = false;
    Rat c = 0;

    bool operator==(const Coord& o) const { return at_inf == o.at_inf && (at_inf || c == o.c); }
};

inline std::string coord_str(const Coord& c) { return c.at_inf ? "inf" : rat_str(c.c); }

// A cluster together with coordinates realizing it in the plane (x, y).
// Free non-root points carry a coordinate on the parent's exceptional
// curve; satellite points sit at the corner named by their proximity data.
class EmbeddedCluster {
   public:
    EmbeddedCluster(Cluster cl, std::vector<std::optional<Coord>> coords)
        : cl_(std::move(cl)), coord_(std::move(coords)) {
        validate();
    }

    const Cluster& cluster() const { return cl_; }
    int size() const { return cl_.size(); }
    const std::optional<Coord>& coord(int p) const { return coord_.at(p); }

   private:
    void validate() const {
        const int n = cl_.size();
        if (static_cast<int>(coord_.size()) != n)
            throw domain_error("coordinate list does not match the cluster size");
        for (int p = 0; p < n; ++p) {
            const bool free_nonroot = p != 0 && !cl_.is_satellite(p);
            if (free_nonroot && !coord_[p])
                throw domain_error("free point " + cl_.label(p) + " needs a coordinate");
            if (!free_nonroot && coord_[p])
                throw domain_error("point " + cl_.label(p) +
                                   " cannot carry a coordinate (it is not a free point)");
            if (coord_[p] && coord_[p]->at_inf && cl_.parent(p) != 0)
                throw domain_error("point " + cl_.label(p) +
                                   ": the direction at infinity exists only above the origin");
            if (coord_[p] && !coord_[p]->at_inf && coord_[p]->c == 0 && cl_.is_satellite(cl_.parent(p)))
                throw domain_error("point " + cl_.label(p) +
                                   ": slope 0 is the corner of the parent's exceptional curve");
        }
        // distinct positions among free siblings
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (coord_[p] && coord_[q] && cl_.parent(p) == cl_.parent(q) && *coord_[p] == *coord_[q])
                    throw domain_error("points " + cl_.label(p) + " and " + cl_.label(q) +
                                       " occupy the same position");
    }

    Cluster cl_;
    std::vector<std::optional<Coord>> coord_;
};

namespace detail {

// One step of the walk: derive the series seen at child q from the series
// seen at its parent, already divided by x^nu_parent.  The local frame is
// kept so that the newest exceptional curve is {x = 0}.
template <class C>
SeriesT<C> step_to_child(const EmbeddedCluster& K, const SeriesT<C>& at_parent, int q, long nu_parent) {
    const Cluster& cl = K.cluster();
    const int np = static_cast<int>(nu_parent);
    if (!cl.is_satellite(q)) {
        const Coord& co = *K.coord(q);
        if (co.at_inf) return swap_xy(divide_y(chart_subst_infinite(at_parent), np));
        return divide_x(chart_subst_finite(at_parent, co.c), np);
    }
    switch (proximity_tag(cl, q)) {
        case 1:  // corner towards the exceptional curve of the grandparent
            return swap_xy(divide_y(chart_subst_infinite(at_parent), np));
        case 2:  // corner towards the exceptional curve of the parent's other target
            return divide_x(chart_subst_finite(at_parent, Rat(0)), np);
        default:
            throw internal_error("satellite point with no recognizable corner");
    }
}

// Remove the terms a visitor has already constrained to vanish, so that the
// subsequent division is exact.
template <class C>
void drop_below(SeriesT<C>& f, long nu) {
    for (auto it = f.t.begin(); it != f.t.end();) {
        if (it->first.deg() < nu)
            it = f.t.erase(it);
        else
            ++it;
    }
}

// Drive `f` through every point of K in order.  At each point the visitor
// sees the virtual transform (total transform divided by the prescribed
// powers along the path) and must account for all terms of total degree
// below the point's multiplicity; those terms are then treated as zero.
// Returns false when the visitor aborts.
template <class C, class V>
bool conditions_walk(const EmbeddedCluster& K, const std::vector<long>& nu, const SeriesT<C>& f, V&& visit) {
    const Cluster& cl = K.cluster();
    const int n = cl.size();
    if (static_cast<int>(nu.size()) != n) throw domain_error("multiplicity list does not match the cluster");
    std::vector<SeriesT<C>> at(n);
    at[0] = f;
    for (int p = 0; p < n; ++p) {
        if (at[p].trunc && *at[p].trunc < nu[p])
            throw precision_error("series known only below degree " + std::to_string(*at[p].trunc) +
                                  " at " + cl.label(p) + "; degree " + std::to_string(nu[p]) +
                                  " conditions required");
        if (!visit(p, std::as_const(at[p]), nu[p])) return false;
        drop_below(at[p], nu[p]);
        for (int q : cl.children(p)) at[q] = step_to_child(K, at[p], q, nu[p]);
        at[p] = {};  // children hold what they need
    }
    return true;
}

}  // namespace detail

// Does f satisfy the virtual passing conditions of (K, nu)?  For a
// consistent cluster this is membership of f in the associated complete
// ideal.  Throws precision_error when the truncated input cannot decide.
inline bool satisfies_conditions(const EmbeddedCluster& K, const std::vector<long>& nu, const Series& f) {
    return detail::conditions_walk(K, nu, f, [](int, const Series& s, long v) {
        for (const auto& [m, c] : s.t)
            if (m.deg() < v && c != 0) return false;
        return true;
    });
}

inline bool satisfies_conditions(const EmbeddedCluster& K, const WeightedCluster& wc, const Series& f) {
    return satisfies_conditions(K, wc.mult, f);
}

// Per-point account of the membership test: the order the virtual transform
// actually attains at each point against the order it must reach.
struct MemberPoint {
    std::string label;
    long required = 0;
    bool satisfied = false;
    bool order_known = false;
    long order = -1;  // known order of the virtual transform; -1 with
                      // order_known=false means "vanishes identically" (exact)
                      // or "vanishes to the truncation bound"
};

struct MemberReport {
    bool member = false;
    std::vector<MemberPoint> points;
};

inline MemberReport member_report(const EmbeddedCluster& K, const std::vector<long>& nu, const Series& f) {
    MemberReport rep;
    detail::conditions_walk(K, nu, f, [&](int p, const Series& s, long v) {
        MemberPoint mp;
        mp.label = K.cluster().label(p);
        mp.required = v;
        auto o = known_order(s);
        if (o) {
            mp.order_known = true;
            mp.order = *o;
            mp.satisfied = *o >= v;
        } else {
            // nothing visible below the truncation (or at all): order >= v
            mp.satisfied = true;
        }
        rep.points.push_back(std::move(mp));
        return true;
    });
    rep.member = true;
    for (const auto& mp : rep.points) rep.member = rep.member && mp.satisfied;
    return rep;
}

struct IdealBasis {
    std::vector<Series> basis;  // reduced-echelon representatives, degree < bound
    int bound = 0;              // monomial degree bound used
    long codim = 0;             // rank of the imposed conditions
    bool stabilized = false;    // codim equals the colength of the ideal
};

namespace detail {

inline std::vector<Mono> monomials_below(int d) {
    std::vector<Mono> ms;
    for (int t = 0; t < d; ++t)
        for (int i = t; i >= 0; --i) ms.push_back({i, t - i});
    return ms;
}

}  // namespace detail

// All polynomials of degree < bound satisfying the passing conditions,
// as a deterministic reduced-echelon basis.  When `bound` is not given, it
// is grown until the conditions stabilize (rank reaches the colength of
// the complete ideal of the unloaded cluster).
inline IdealBasis ideal_basis(const EmbeddedCluster& K, const std::vector<long>& nu, int bound = 0) {
    WeightedCluster wc{K.cluster(), nu};
    const std::vector<long> eff = unload(wc).cluster.mult;
    long expected = 0;
    for (long v : eff) expected += v * (v + 1) / 2;

    const bool grow = bound <= 0;
    if (grow) bound = static_cast<int>(std::max<long>(expected, 1));

    for (;;) {
        const std::vector<Mono> ms = detail::monomials_below(bound);
        const int nm = static_cast<int>(ms.size());
        SeriesT<LinForm> f;
        for (int k = 0; k < nm; ++k) f.t.emplace(ms[k], LinForm::unknown(k));

        RatMat rows;
        detail::conditions_walk(K, nu, f, [&](int, const SeriesT<LinForm>& s, long v) {
            for (const auto& [m, c] : s.t) {
                if (m.deg() >= v) continue;
                RatVec row(nm, Rat(0));
                for (const auto& [k, val] : c.a) row[k] = val;
                rows.push_back(std::move(row));
            }
            return true;
        });

        RatMat cm = rows;
        const long rank = static_cast<long>(rref(cm).size());
        if (grow && (rank < expected || rank == static_cast<long>(nm))) {
            ++bound;
            continue;
        }

        RatMat null = nullspace(cm, nm);
        // echelonize the solution space over the graded monomial order
        std::vector<int> piv = rref(null);
        IdealBasis out;
        out.bound = bound;
        out.codim = rank;
        out.stabilized = rank == expected;
        for (const auto& vec : null) {
            Series g;
            for (int k = 0; k < nm; ++k)
                if (vec[k] != 0) g.t.emplace(ms[k], vec[k]);
            out.basis.push_back(std::move(g));
        }
        return out;
    }
}

inline IdealBasis ideal_basis(const EmbeddedCluster& K, const WeightedCluster& wc, int bound = 0) {
    return ideal_basis(K, wc.mult, bound);
}

// Random element of the conditions space with small nonzero coefficients on
// every basis member; deterministic in the RNG state.
inline Series random_member(const IdealBasis& ib, SplitMix& rng) {
    if (ib.basis.empty()) throw domain_error("the conditions space is zero; no member to draw");
    Series f;
    for (const auto& b : ib.basis) {
        long c = 1 + static_cast<long>(rng.below(9));
        if (rng.below(2) == 0) c = -c;
        f = series_add(f, series_scale(b, Rat(c)));
    }
    return f;
}

}  // namespace enriques

#endif
