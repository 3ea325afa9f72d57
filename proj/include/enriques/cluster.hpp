#ifndef ENRIQUES_CLUSTER_HPP
#define ENRIQUES_CLUSTER_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "enriques/resgraph.hpp"

namespace enriques {

// A cluster of infinitely near points over a smooth surface germ, recorded
// by its Enriques proximity structure.  Point i is proximate to its parent
// and, when it is a satellite, to one additional point `extra`; the extra
// target must itself be a point the parent is proximate to.
class Cluster {
  public:
    struct Point {
        std::string label;
        int parent = -1;  // -1 for the root
        int extra = -1;   // -1 for free points
    };

    Cluster() = default;
    explicit Cluster(std::vector<Point> pts) : pts_(std::move(pts)) { validate(); }

    int size() const { return static_cast<int>(pts_.size()); }
    const Point& point(int i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }
    const std::string& label(int i) const { return pts_[i].label; }
    int parent(int i) const { return pts_[i].parent; }
    int extra(int i) const { return pts_[i].extra; }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (pts_[i].label == label) return i;
        throw domain_error("unknown point label " + label);
    }
    bool has_point(const std::string& label) const {
        for (const auto& p : pts_)
            if (p.label == label) return true;
        return false;
    }

    bool is_satellite(int i) const { return pts_[i].extra >= 0; }

    // The points q is proximate to: parent plus the optional satellite target.
    std::vector<int> proximate_to(int q) const {
        std::vector<int> r;
        if (pts_[q].parent >= 0) r.push_back(pts_[q].parent);
        if (pts_[q].extra >= 0) r.push_back(pts_[q].extra);
        return r;
    }

    // Indices j with i in prox(j).
    std::vector<int> proximate_from(int i) const {
        std::vector<int> r;
        for (int j = 0; j < size(); ++j)
            if (pts_[j].parent == i || pts_[j].extra == i) r.push_back(j);
        return r;
    }

    std::vector<int> children(int i) const {
        std::vector<int> r;
        for (int j = 0; j < size(); ++j)
            if (pts_[j].parent == i) r.push_back(j);
        return r;
    }

    int depth(int i) const {
        int d = 0;
        while (pts_[i].parent >= 0) {
            i = pts_[i].parent;
            ++d;
        }
        return d;
    }

  private:
    void validate() const {
        const int n = size();
        if (n == 0) throw domain_error("cluster needs at least one point");
        int roots = 0;
        std::map<std::string, int> seen;
        for (int i = 0; i < n; ++i) {
            const Point& p = pts_[i];
            if (!seen.emplace(p.label, i).second) throw domain_error("duplicate point label " + p.label);
            if (p.parent < 0) {
                ++roots;
                if (p.extra >= 0) throw domain_error("root point cannot be a satellite");
                continue;
            }
            if (p.parent >= i) throw domain_error("parent of " + p.label + " must precede it");
            if (p.extra >= 0) {
                // Satellite condition: the extra target is a point the parent
                // is itself proximate to.
                const Point& par = pts_[p.parent];
                if (p.extra != par.parent && p.extra != par.extra)
                    throw domain_error("satellite target of " + p.label +
                                       " is not among the parent's proximities");
            }
        }
        if (roots != 1) throw domain_error("cluster must have exactly one root");
        // A satellite point is the intersection of two specific exceptional
        // components, so no two points may occupy the same corner.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (pts_[i].extra >= 0 && pts_[i].parent == pts_[j].parent && pts_[i].extra == pts_[j].extra)
                    throw domain_error("points " + pts_[i].label + " and " + pts_[j].label +
                                       " occupy the same satellite corner");
    }

    std::vector<Point> pts_;
};

// A cluster with virtual multiplicities.  Arbitrary integers are accepted
// (unloading inputs may be wild) but at least one multiplicity must be
// positive so the attached ideal is proper.
struct WeightedCluster {
    Cluster cluster;
    std::vector<long> mult;

    WeightedCluster() = default;
    WeightedCluster(Cluster c, std::vector<long> m) : cluster(std::move(c)), mult(std::move(m)) {
        if (static_cast<int>(mult.size()) != cluster.size())
            throw domain_error("multiplicity list does not match cluster");
        if (std::none_of(mult.begin(), mult.end(), [](long v) { return v > 0; }))
            throw domain_error("cluster must carry at least one positive multiplicity");
    }
};

// Excess at p: rho_p = nu_p - sum of nu_q over the points q proximate to p.
inline std::vector<long> excesses(const WeightedCluster& k) {
    const int n = k.cluster.size();
    std::vector<long> rho(k.mult);
    for (int q = 0; q < n; ++q)
        for (int t : k.cluster.proximate_to(q)) rho[t] -= k.mult[q];
    return rho;
}

inline bool is_consistent(const WeightedCluster& k) {
    for (long v : k.mult)
        if (v < 0) return false;
    for (long r : excesses(k))
        if (r < 0) return false;
    return true;
}

enum class UnloadPivot { First, Last };

struct UnloadResult {
    WeightedCluster cluster;
    long steps = 0;
};

// Tame unloading: while the excess at some point p is negative, add the
// exceptional divisor of p to the cycle of values.  On multiplicities this
// bumps nu_p by one and lowers nu_q by one at every q proximate to p.
// Terminates at the unique consistent cluster defining the same complete
// ideal; the pivot choice does not affect the result.
inline UnloadResult unload(const WeightedCluster& k, UnloadPivot pivot = UnloadPivot::First) {
    const int n = k.cluster.size();
    WeightedCluster w = k;
    long total = 0;
    int maxdepth = 0;
    for (int i = 0; i < n; ++i) {
        total += std::abs(w.mult[i]);
        maxdepth = std::max(maxdepth, w.cluster.depth(i));
    }
    // Generous safety bound; exceeding it means a bug, not bad input.
    const long bound = 64 + 32 * (total + 1) * (n + 1) * (maxdepth + 2);
    UnloadResult res;
    for (;;) {
        std::vector<long> rho = excesses(w);
        int bump = -1;
        for (int i = 0; i < n; ++i) {
            if (rho[i] < 0) {
                bump = i;
                if (pivot == UnloadPivot::First) break;
            }
        }
        if (bump < 0) break;
        w.mult[bump] += 1;
        for (int q : w.cluster.proximate_from(bump)) w.mult[q] -= 1;
        if (++res.steps > bound) throw internal_error("unloading failed to terminate within its bound");
    }
    // all excesses >= 0 forces all multiplicities >= 0: the last point with
    // a negative multiplicity would have negative excess
    for (long v : w.mult)
        if (v < 0) throw internal_error("unloading ended with a negative multiplicity");
    res.cluster = std::move(w);
    return res;
}

// Values v_p = nu_p + sum of v_q over the points p is proximate to.
inline std::vector<long> values(const WeightedCluster& k) {
    const int n = k.cluster.size();
    std::vector<long> v(n, 0);
    for (int p = 0; p < n; ++p) {
        v[p] = k.mult[p];
        for (int q : k.cluster.proximate_to(p)) v[p] += v[q];
    }
    return v;
}

struct ClusterGraph {
    ResolutionGraph graph;
    Cycle z;  // the cycle of the cluster's ideal, Z = sum v_p E_p
};

// Dual graph of the resolution obtained by blowing up every point of the
// cluster.  E_p^2 = -1 - #{q proximate to p}; an edge joins p and q (q
// proximate to p) unless some later point is proximate to both.
inline ClusterGraph to_resolution_graph(const WeightedCluster& k) {
    if (!is_consistent(k)) throw domain_error("resolution graph requires a consistent cluster");
    const Cluster& c = k.cluster;
    const int n = c.size();
    std::vector<ResolutionGraph::Vertex> verts(n);
    for (int i = 0; i < n; ++i) {
        verts[i].label = c.point(i).label;
        verts[i].self = -1 - static_cast<long>(c.proximate_from(i).size());
        verts[i].genus = 0;
    }
    std::vector<std::pair<int, int>> edges;
    for (int q = 0; q < n; ++q) {
        for (int p : c.proximate_to(q)) {
            bool covered = false;
            for (int r = 0; r < n && !covered; ++r) {
                auto prox = c.proximate_to(r);
                bool to_p = std::find(prox.begin(), prox.end(), p) != prox.end();
                bool to_q = std::find(prox.begin(), prox.end(), q) != prox.end();
                covered = to_p && to_q;
            }
            if (!covered) edges.emplace_back(p, q);
        }
    }
    ClusterGraph out{ResolutionGraph(std::move(verts), std::move(edges)), Cycle()};
    std::vector<long> v = values(k);
    out.z.resize(n);
    for (int i = 0; i < n; ++i) out.z[i] = v[i];
    return out;
}

// e(I) = sum of nu^2; asserted against -Z^2 on the resolution graph.
inline long multiplicity_cluster(const WeightedCluster& k) {
    if (!is_consistent(k)) throw domain_error("multiplicity requires a consistent cluster");
    long e = 0;
    for (long v : k.mult) e += v * v;
    ClusterGraph cg = to_resolution_graph(k);
    if (Rat(e) != -intersect(cg.graph, cg.z, cg.z))
        throw internal_error("sum nu^2 disagrees with -Z^2");
    return e;
}

// Milnor number of the generic member, cluster route:
//   mu = sum nu(nu-1) - sum rho + 1;
// asserted against the resolution-graph formula.
inline long generic_milnor_cluster(const WeightedCluster& k) {
    if (!is_consistent(k)) throw domain_error("generic Milnor number requires a consistent cluster");
    long mu = 1;
    for (long v : k.mult) mu += v * (v - 1);
    for (long r : excesses(k)) mu -= r;
    ClusterGraph cg = to_resolution_graph(k);
    long mu_graph = generic_milnor(cg.graph, cg.z);
    if (mu != mu_graph) throw internal_error("cluster and graph Milnor formulas disagree");
    return mu;
}

// Unload both sides, prune subtrees whose multiplicities vanish entirely,
// then compare point-for-point (labels, proximities, multiplicities).
inline bool same_complete_ideal(const WeightedCluster& a, const WeightedCluster& b) {
    auto normalize = [](const WeightedCluster& k) {
        WeightedCluster u = unload(k).cluster;
        const int n = u.cluster.size();
        // keep a point iff its subtree carries a positive multiplicity
        std::vector<bool> keep(n, false);
        for (int i = n - 1; i >= 0; --i) {
            if (u.mult[i] > 0) keep[i] = true;
            if (keep[i] && u.cluster.point(i).parent >= 0) keep[u.cluster.point(i).parent] = true;
        }
        std::vector<std::tuple<std::string, std::string, std::string, long>> rows;
        for (int i = 0; i < n; ++i) {
            if (!keep[i]) continue;
            const auto& p = u.cluster.point(i);
            rows.emplace_back(p.label, p.parent >= 0 ? u.cluster.point(p.parent).label : "",
                              p.extra >= 0 ? u.cluster.point(p.extra).label : "", u.mult[i]);
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    return normalize(a) == normalize(b);
}

// Small deterministic generator (works on any platform for a fixed seed;
// no std distributions, their output is implementation-defined).
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long below(long n) { return n <= 1 ? 0 : static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

  private:
    std::uint64_t s_;
};

// Random consistent cluster: grow a proximity tree respecting the corner
// rules, then assign multiplicities top-down so every excess stays >= 0 and
// no multiplicity exceeds max_mult.
inline WeightedCluster random_consistent_cluster(int max_points, long max_mult, std::uint64_t seed) {
    if (max_points < 1 || max_mult < 1) throw domain_error("random cluster needs max_points, max_mult >= 1");
    SplitMix rng(seed);
    const int n = 1 + static_cast<int>(rng.below(max_points));
    std::vector<Cluster::Point> pts;
    pts.push_back({"p0", -1, -1});
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng.below(i));
        // candidate satellite targets: the points the parent is proximate
        // to, minus corners already occupied at this parent
        std::vector<int> sat;
        for (int t : Cluster(pts).proximate_to(parent)) {
            bool taken = false;
            for (const auto& q : pts) taken = taken || (q.parent == parent && q.extra == t);
            if (!taken) sat.push_back(t);
        }
        int extra = -1;
        if (!sat.empty() && rng.below(2) == 0) extra = sat[rng.below(static_cast<long>(sat.size()))];
        pts.push_back({"p" + std::to_string(i), parent, extra});
    }
    Cluster c(pts);
    std::vector<long> nu(n, 0);
    nu[0] = 1 + rng.below(max_mult);
    // remaining allowance at each point before its excess would go negative
    std::vector<long> room(n, 0);
    room[0] = nu[0];
    for (int i = 1; i < n; ++i) {
        long cap = max_mult;
        for (int t : c.proximate_to(i)) cap = std::min(cap, room[t]);
        nu[i] = cap <= 0 ? 0 : rng.below(cap + 1);
        for (int t : c.proximate_to(i)) room[t] -= nu[i];
        room[i] = nu[i];
    }
    return WeightedCluster(std::move(c), std::move(nu));
}

}  // namespace enriques

#endif
