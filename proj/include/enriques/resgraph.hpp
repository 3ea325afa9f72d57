#ifndef ENRIQUES_RESGRAPH_HPP
#define ENRIQUES_RESGRAPH_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "enriques/linalg.hpp"
#include "enriques/rational.hpp"

namespace enriques {

// Weighted dual graph of a good resolution of a normal surface singularity.
// Vertices carry the self-intersection (<= -1) and genus of the exceptional
// component; parallel edges are allowed, loops are not.  The intersection
// matrix must be negative definite; this is checked eagerly in exact
// arithmetic via the signs of the leading principal minors.
class ResolutionGraph {
  public:
    struct Vertex {
        std::string label;
        long self = -1;
        long genus = 0;
    };

    ResolutionGraph(std::vector<Vertex> vertices, std::vector<std::pair<int, int>> edges)
        : verts_(std::move(vertices)), edges_(std::move(edges)) {
        const int n = static_cast<int>(verts_.size());
        if (n == 0) throw domain_error("resolution graph needs at least one vertex");
        for (int i = 0; i < n; ++i) {
            if (verts_[i].self > -1) throw domain_error("self-intersection must be <= -1 at vertex " + verts_[i].label);
            if (verts_[i].genus < 0) throw domain_error("genus must be >= 0 at vertex " + verts_[i].label);
            if (!index_.emplace(verts_[i].label, i).second)
                throw domain_error("duplicate vertex label " + verts_[i].label);
        }
        n_ = RatMat(n, RatVec(n, Rat(0)));
        for (int i = 0; i < n; ++i) n_[i][i] = verts_[i].self;
        for (auto [a, b] : edges_) {
            if (a < 0 || b < 0 || a >= n || b >= n) throw internal_error("edge endpoint out of range");
            if (a == b) throw domain_error("loop edge at vertex " + verts_[a].label);
            n_[a][b] += 1;
            n_[b][a] += 1;
        }
        check_connected();
        check_negative_definite();
    }

    int size() const { return static_cast<int>(verts_.size()); }
    const Vertex& vertex(int i) const { return verts_[i]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const RatMat& intersection_matrix() const { return n_; }

    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw domain_error("unknown vertex label " + label);
        return it->second;
    }
    bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }

  private:
    void check_connected() const {
        const int n = size();
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (w != v && n_[v][w] != 0 && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[v]) throw domain_error("resolution graph is not connected");
    }

    // (-1)^k det(N_k) > 0 for every leading principal minor N_k.
    void check_negative_definite() const {
        const int n = size();
        for (int k = 1; k <= n; ++k) {
            RatMat sub(k, RatVec(k));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[i][j] = n_[i][j];
            Rat d = det(sub);
            bool ok = (k % 2 == 0) ? d > 0 : d < 0;
            if (!ok) throw domain_error("intersection matrix is not negative definite");
        }
    }

    std::vector<Vertex> verts_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::string, int> index_;
    RatMat n_;
};

// Exceptional cycles are stored as coefficient vectors aligned with the
// graph's vertex order.  Rational coefficients are allowed (the canonical
// cycle need not be integral).
using Cycle = RatVec;

inline Cycle zero_cycle(const ResolutionGraph& g) { return Cycle(g.size(), Rat(0)); }

inline Rat intersect(const ResolutionGraph& g, const Cycle& a, const Cycle& b) {
    const int n = g.size();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw domain_error("cycle length does not match graph");
    const RatMat& m = g.intersection_matrix();
    Rat s = 0;
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        Rat row = 0;
        for (int j = 0; j < n; ++j)
            if (b[j] != 0) row += m[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

// The (anti)canonical cycle K, characterised by adjunction:
//   K . E_i = -E_i^2 + 2 g_i - 2   for every vertex.
// Solved exactly over the rationals; N is invertible by definiteness.
inline Cycle canonical_cycle(const ResolutionGraph& g) {
    const int n = g.size();
    RatVec b(n);
    for (int i = 0; i < n; ++i) b[i] = Rat(-g.vertex(i).self + 2 * g.vertex(i).genus - 2);
    return solve_linear(g.intersection_matrix(), b);
}

inline bool is_antinef(const ResolutionGraph& g, const Cycle& z) {
    const int n = g.size();
    if (static_cast<int>(z.size()) != n) throw domain_error("cycle length does not match graph");
    const RatMat& m = g.intersection_matrix();
    for (int i = 0; i < n; ++i) {
        Rat s = 0;
        for (int j = 0; j < n; ++j)
            if (z[j] != 0) s += m[i][j] * z[j];
        if (s > 0) return false;
    }
    return true;
}

// Laufer's algorithm for the fundamental cycle: start from a single vertex
// and repeatedly add any E_i with z.E_i > 0.  On a connected negative
// definite graph this terminates at the minimal nonzero antinef cycle,
// independently of all choices.
inline Cycle fundamental_cycle(const ResolutionGraph& g) {
    const int n = g.size();
    Cycle z = zero_cycle(g);
    z[0] = 1;
    const RatMat& m = g.intersection_matrix();
    // The fundamental cycle of a desk-scale graph is tiny; the bound is a
    // safety net against an inconsistency slipping past the definiteness
    // check.
    long guard = 0, bound = 1000000;
    for (;;) {
        int bump = -1;
        for (int i = 0; i < n && bump < 0; ++i) {
            Rat s = 0;
            for (int j = 0; j < n; ++j)
                if (z[j] != 0) s += m[i][j] * z[j];
            if (s > 0) bump = i;
        }
        if (bump < 0) break;
        z[bump] += 1;
        if (++guard > bound) throw internal_error("fundamental cycle iteration failed to terminate");
    }
    return z;
}

namespace detail {
inline void require_full_positive_antinef(const ResolutionGraph& g, const Cycle& z) {
    for (int i = 0; i < g.size(); ++i)
        if (z[i] <= 0)
            throw domain_error("cycle must have positive coefficient on every vertex (vertex " +
                               g.vertex(i).label + ")");
    if (!is_antinef(g, z)) throw domain_error("cycle is not antinef");
}
}  // namespace detail

// Milnor number of the generic element whose vanishing cycle is z:
//   mu = 1 - z.(z - |z| - K)
// with |z| the reduced cycle of the (full) support of z.
inline long generic_milnor(const ResolutionGraph& g, const Cycle& z) {
    detail::require_full_positive_antinef(g, z);
    Cycle k = canonical_cycle(g);
    Cycle w(g.size());
    for (int i = 0; i < g.size(); ++i) w[i] = z[i] - 1 - k[i];
    Rat mu = 1 - intersect(g, z, w);
    if (!is_integer(mu) || mu < 0) throw internal_error("generic Milnor number is not a non-negative integer");
    return to_long(mu);
}

// e = -z^2, the multiplicity of the ideal attached to z.
inline long multiplicity_from_cycle(const ResolutionGraph& g, const Cycle& z) {
    detail::require_full_positive_antinef(g, z);
    Rat e = -intersect(g, z, z);
    if (!is_integer(e) || e <= 0) throw internal_error("-z^2 is not a positive integer");
    return to_long(e);
}

// Multiplicity at the origin of the discriminant of a generic pair in the
// ideal: e(Delta) = mu + e - 1.
inline long discriminant_multiplicity(const ResolutionGraph& g, const Cycle& z) {
    return generic_milnor(g, z) + multiplicity_from_cycle(g, z) - 1;
}

// The two summands of e(Delta) for the maximal ideal cycle:
// mu^1 = e - 1 (polar/covering part), mu^2 = mu (vanishing part).
struct MuSplit {
    long mu1 = 0;
    long mu2 = 0;
};

inline MuSplit mu1_mu2(const ResolutionGraph& g, const Cycle& z_m) {
    MuSplit s;
    s.mu1 = multiplicity_from_cycle(g, z_m) - 1;
    s.mu2 = generic_milnor(g, z_m);
    return s;
}

}  // namespace enriques

#endif
