#ifndef ENRIQUES_COLENGTH_HPP
#define ENRIQUES_COLENGTH_HPP

#include <map>
#include <string>
#include <vector>

#include "enriques/series.hpp"

namespace enriques {

struct ColengthResult {
    long colength = 0;
    int certified_level = 0;  // smallest L with m^L inside the ideal, certified
    int cap_used = 0;         // truncation degree that produced the certificate
};

namespace detail {

// graded index of a monomial: degree blocks, x-power descending inside
inline int mono_index(int i, int j) {
    const int t = i + j;
    return t * (t + 1) / 2 + (t - i);
}

using SparseRow = std::map<int, Rat>;

struct Echelon {
    std::map<int, SparseRow> rows;  // pivot index -> normalized row

    void insert(SparseRow r) {
        while (!r.empty()) {
            const int p = r.begin()->first;
            auto it = rows.find(p);
            if (it == rows.end()) {
                const Rat inv = 1 / r.begin()->second;
                for (auto& [k, v] : r) v *= inv;
                rows.emplace(p, std::move(r));
                return;
            }
            const Rat c = r.begin()->second;
            for (const auto& [k, v] : it->second) {
                auto jt = r.find(k);
                if (jt == r.end()) {
                    r.emplace(k, -c * v);
                } else {
                    jt->second -= c * v;
                    if (jt->second == 0) r.erase(jt);
                }
            }
        }
    }
};

}  // namespace detail

// Colength (vector space dimension of the quotient) of the ideal spanned by
// `gens` in the formal power series ring, certified by a degree level L with
// m^L contained in the ideal.  Generators may be truncated; the achievable
// working degree is then limited by their truncation orders.  Throws
// nonfinite_error when no certificate exists below `max_cap` (the ideal is
// then very deep or not of finite colength — e.g. the generators share a
// component), and precision_error when truncation is what blocks progress.
inline ColengthResult colength_of(const std::vector<Series>& gens, int max_cap = 64) {
    if (gens.empty()) throw domain_error("colength of the zero ideal is infinite");
    int known = max_cap;
    bool any_nonzero = false;
    for (const auto& g : gens) {
        if (!g.t.empty()) any_nonzero = true;
        if (g.trunc && *g.trunc < known) known = *g.trunc;
    }
    if (!any_nonzero) {
        for (const auto& g : gens)
            if (!g.exact())
                throw precision_error("all generators vanish to their truncation; colength unknown");
        throw domain_error("colength of the zero ideal is infinite");
    }
    const int limit = std::min(max_cap, known);

    for (int cap = std::min(8, limit); ; cap = std::min(cap * 2, limit)) {
        detail::Echelon ech;
        for (const auto& g : gens) {
            auto og = known_order(g);
            if (!og || *og >= cap) continue;
            for (int d = 0; d + *og < cap; ++d) {
                for (int a = d; a >= 0; --a) {
                    const int b = d - a;
                    detail::SparseRow row;
                    for (const auto& [m, c] : g.t) {
                        if (m.deg() + d >= cap) continue;
                        row[detail::mono_index(m.i + a, m.j + b)] = c;
                    }
                    if (!row.empty()) ech.insert(std::move(row));
                }
            }
        }
        // find the smallest full level: all monomials of that degree are pivots
        for (int level = 0; level < cap; ++level) {
            bool full = true;
            for (int i = level; i >= 0 && full; --i)
                if (!ech.rows.count(detail::mono_index(i, level - i))) full = false;
            if (!full) continue;
            long pivots_below = 0;
            for (const auto& [p, _] : ech.rows)
                if (p < level * (level + 1) / 2) ++pivots_below;
            ColengthResult res;
            res.colength = static_cast<long>(level) * (level + 1) / 2 - pivots_below;
            res.certified_level = level;
            res.cap_used = cap;
            return res;
        }
        if (cap >= limit) break;
    }
    if (limit < max_cap)
        throw precision_error("no containment certificate below the truncation order " +
                              std::to_string(limit) + "; raise the precision");
    throw nonfinite_error("no containment certificate below degree " + std::to_string(max_cap) +
                          "; the ideal looks infinite-codimensional (shared component?)");
}

// Milnor number as the codimension of the gradient ideal.
inline long jacobian_colength(const Series& f, int max_cap = 64) {
    return colength_of({series_diff_x(f), series_diff_y(f)}, max_cap).colength;
}

// Intersection number of two germs without common component.
inline long pair_colength(const Series& f, const Series& g, int max_cap = 64) {
    return colength_of({f, g}, max_cap).colength;
}

}  // namespace enriques

#endif
