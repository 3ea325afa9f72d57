#ifndef ENRIQUES_GERM_HPP
#define ENRIQUES_GERM_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "enriques/cluster.hpp"

namespace enriques {

// Enriques diagram of a reduced curve germ: the cluster of its singular
// points with effective multiplicities.  Every recorded point lies on the
// curve (e >= 1) and proximity forces e_p >= sum of e_q over q proximate
// to p.
struct GermCluster {
    Cluster cluster;
    std::vector<long> mult;

    GermCluster() = default;
    GermCluster(Cluster c, std::vector<long> m) : cluster(std::move(c)), mult(std::move(m)) {
        if (static_cast<int>(mult.size()) != cluster.size())
            throw domain_error("multiplicity list does not match cluster");
        for (long v : mult)
            if (v < 1) throw domain_error("effective multiplicities must be >= 1");
        WeightedCluster w{};
        w.cluster = cluster;
        w.mult = mult;
        for (long r : excesses(w))
            if (r < 0) throw domain_error("effective multiplicities violate proximity");
    }

    WeightedCluster as_weighted() const {
        WeightedCluster w{};
        w.cluster = cluster;
        w.mult = mult;
        return w;
    }
};

// Number of branches: the total excess.
inline long branch_count(const GermCluster& f) {
    long r = 0;
    for (long e : excesses(f.as_weighted())) r += e;
    return r;
}

// delta = sum e(e-1)/2 over the diagram.
inline long delta_invariant(const GermCluster& f) {
    long d = 0;
    for (long e : f.mult) d += e * (e - 1) / 2;
    return d;
}

// Milnor number via mu = 2 delta - r + 1.
inline long milnor(const GermCluster& f) { return 2 * delta_invariant(f) - branch_count(f) + 1; }

// Identification of points of one diagram with points of another
// (typically: points of a curve with points of a cluster it passes
// through).  Pairs are (index in a, index in b).
using Matching = std::vector<std::pair<int, int>>;

namespace detail {

// A matching must identify the roots, be injective both ways, and respect
// the proximity structure: parents map to parents and satellite targets to
// satellite targets.
inline void validate_matching(const Cluster& a, const Cluster& b, const Matching& m) {
    std::map<int, int> ab, ba;
    for (auto [i, j] : m) {
        if (i < 0 || i >= a.size() || j < 0 || j >= b.size())
            throw domain_error("matching index out of range");
        if (!ab.emplace(i, j).second || !ba.emplace(j, i).second)
            throw domain_error("matching is not one-to-one");
    }
    for (auto [i, j] : ab) {
        const auto& pa = a.point(i);
        const auto& pb = b.point(j);
        if ((pa.parent < 0) != (pb.parent < 0)) throw domain_error("matching pairs a root with a non-root");
        if (pa.parent >= 0) {
            auto it = ab.find(pa.parent);
            if (it == ab.end() || it->second != pb.parent)
                throw domain_error("matching is not closed under parents");
        }
        if ((pa.extra < 0) != (pb.extra < 0))
            throw domain_error("matching pairs a free point with a satellite");
        if (pa.extra >= 0) {
            auto it = ab.find(pa.extra);
            if (it == ab.end() || it->second != pb.extra)
                throw domain_error("matching does not respect satellite targets");
        }
    }
    if (!ab.empty()) {
        bool root_matched = false;
        for (auto [i, j] : ab) root_matched = root_matched || a.point(i).parent < 0;
        if (!root_matched) throw domain_error("a non-empty matching must contain the roots");
    }
}

}  // namespace detail

// Noether's formula: the intersection number of two germs sharing exactly
// the matched points is the sum of e_i(a) e_i(b) over the matching.
// Unmatched continuations contribute nothing; the caller guarantees the
// germs share no branch (a shared branch is not expressible by a finite
// matching and is caught at the power-series level instead).
inline long noether_intersection(const GermCluster& a, const GermCluster& b, const Matching& shared) {
    detail::validate_matching(a.cluster, b.cluster, shared);
    long s = 0;
    for (auto [i, j] : shared) s += a.mult[i] * b.mult[j];
    return s;
}

// Values of the germ f along the points of the cluster K: the recursion of
// `values` run with f's effective multiplicities transported through the
// matching, and 0 where f has left K.
inline std::vector<long> values_of_germ(const GermCluster& f, const WeightedCluster& k,
                                        const Matching& shared) {
    detail::validate_matching(f.cluster, k.cluster, shared);
    const int n = k.cluster.size();
    std::vector<long> eff(n, 0);
    for (auto [i, j] : shared) eff[j] = f.mult[i];
    std::vector<long> v(n, 0);
    for (int p = 0; p < n; ++p) {
        v[p] = eff[p];
        for (int q : k.cluster.proximate_to(p)) v[p] += v[q];
    }
    return v;
}

// v-superficiality of f for the ideal of K: the values of f agree with the
// values of K at every point with positive excess (those are the divisorial
// valuations of the ideal's normalized blowup).  Equality everywhere else
// then follows for members; non-members simply fail.
inline bool is_v_superficial(const GermCluster& f, const WeightedCluster& k, const Matching& shared) {
    if (!is_consistent(k)) throw domain_error("v-superficiality requires a consistent cluster");
    std::vector<long> vf = values_of_germ(f, k, shared);
    std::vector<long> vk = values(k);
    std::vector<long> rho = excesses(k);
    for (int p = 0; p < k.cluster.size(); ++p)
        if (rho[p] > 0 && vf[p] != vk[p]) return false;
    return true;
}

// Sharp passage: f realises the cluster exactly (e_i = nu_i at every
// positively weighted point of K) and leaves it through free simple points
// only.  Zero-weight points of K are not base points, so f may cross them
// the same way it crosses points outside K: freely and simply.
inline bool goes_sharply_through(const GermCluster& f, const WeightedCluster& k, const Matching& shared) {
    detail::validate_matching(f.cluster, k.cluster, shared);
    std::vector<bool> k_matched(k.cluster.size(), false);
    std::vector<bool> f_matched(f.cluster.size(), false);
    for (auto [i, j] : shared) {
        f_matched[i] = true;
        k_matched[j] = true;
        if (k.mult[j] == 0) {
            if (f.mult[i] != 1 || f.cluster.is_satellite(i)) return false;
        } else if (f.mult[i] != k.mult[j]) {
            return false;
        }
    }
    for (int j = 0; j < k.cluster.size(); ++j)
        if (!k_matched[j] && k.mult[j] != 0) return false;
    for (int i = 0; i < f.cluster.size(); ++i)
        if (!f_matched[i] && (f.mult[i] != 1 || f.cluster.is_satellite(i))) return false;
    return true;
}

// "General member" is sharp passage; the Milnor-minimality that comes with
// it is asserted by the test suite, not here.
inline bool is_general(const GermCluster& f, const WeightedCluster& k, const Matching& shared) {
    return goes_sharply_through(f, k, shared);
}

namespace detail {

// Tag of a point relative to its parent: free, satellite towards the
// grandparent, or satellite towards the parent's own satellite target.
inline int proximity_tag(const Cluster& c, int i) {
    const auto& p = c.point(i);
    if (p.extra < 0) return 0;
    const auto& par = c.point(p.parent);
    if (p.extra == par.parent) return 1;
    if (p.extra == par.extra) return 2;
    throw internal_error("satellite target escaped validation");
}

inline std::string signature(const Cluster& c, const std::vector<long>& w, int i, int tag) {
    std::vector<std::string> kids;
    for (int j : c.children(i)) kids.push_back(signature(c, w, j, proximity_tag(c, j)));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(w[i]) + "," + std::to_string(tag);
    for (const auto& k : kids) s += k;
    return s + ")";
}

inline int root_of(const Cluster& c) {
    for (int i = 0; i < c.size(); ++i)
        if (c.point(i).parent < 0) return i;
    throw internal_error("cluster lost its root");
}

}  // namespace detail

// Canonical form of a weighted proximity tree, used for equisingularity
// comparison: children are ordered by their recursive signature.
inline std::string equisingularity_type(const GermCluster& f) {
    return detail::signature(f.cluster, f.mult, detail::root_of(f.cluster), 0);
}

inline bool equisingular(const GermCluster& a, const GermCluster& b) {
    return equisingularity_type(a) == equisingularity_type(b);
}

struct GenericMember {
    GermCluster diagram;
    Matching onto_cluster;  // diagram point -> cluster point
};

// Diagram of the generic member of a consistent cluster: the points with
// positive multiplicity, carried verbatim (e = nu).  Zero subtrees are
// dropped; consistency guarantees they are genuinely subtrees.
inline GenericMember generic_member_diagram(const WeightedCluster& k) {
    if (!is_consistent(k)) throw domain_error("generic member requires a consistent cluster");
    const int n = k.cluster.size();
    std::vector<int> new_index(n, -1);
    std::vector<Cluster::Point> pts;
    std::vector<long> mult;
    Matching m;
    for (int i = 0; i < n; ++i) {
        if (k.mult[i] <= 0) continue;
        Cluster::Point p = k.cluster.point(i);
        if (p.parent >= 0) {
            if (new_index[p.parent] < 0) throw internal_error("zero point with positive descendant");
            p.parent = new_index[p.parent];
        }
        if (p.extra >= 0) {
            if (new_index[p.extra] < 0) throw internal_error("satellite target was dropped");
            p.extra = new_index[p.extra];
        }
        new_index[i] = static_cast<int>(pts.size());
        m.emplace_back(new_index[i], i);
        pts.push_back(std::move(p));
        mult.push_back(k.mult[i]);
    }
    return {GermCluster(Cluster(std::move(pts)), std::move(mult)), std::move(m)};
}

struct ReductionReport {
    bool rees = false;         // noether_intersection(f,g) == e(I)
    bool v_superficial_f = false;
    bool v_superficial_g = false;
    bool separated = false;    // f and g share no point outside K
    bool good_pair() const { return v_superficial_f && v_superficial_g && separated; }
};

// Rees verdict for the pair (f, g) inside the ideal of K, together with its
// structural decomposition: (f,g) generates a reduction iff both elements
// are v-superficial and their strict transforms separate inside K.
inline ReductionReport is_reduction_pair(const GermCluster& f, const GermCluster& g,
                                         const WeightedCluster& k, const Matching& f_to_k,
                                         const Matching& g_to_k, const Matching& f_to_g) {
    detail::validate_matching(f.cluster, g.cluster, f_to_g);
    ReductionReport rep;
    rep.rees = noether_intersection(f, g, f_to_g) == multiplicity_cluster(k);
    rep.v_superficial_f = is_v_superficial(f, k, f_to_k);
    rep.v_superficial_g = is_v_superficial(g, k, g_to_k);
    rep.separated = true;
    std::map<int, int> fk(f_to_k.begin(), f_to_k.end());
    for (auto [i, j] : f_to_g)
        if (!fk.count(i)) rep.separated = false;
    return rep;
}

}  // namespace enriques

#endif
