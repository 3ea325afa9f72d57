#ifndef ENRIQUES_VERIFY_HPP
#define ENRIQUES_VERIFY_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "enriques/cluster.hpp"
#include "enriques/colength.hpp"
#include "enriques/discriminant.hpp"
#include "enriques/embedded.hpp"
#include "enriques/germ.hpp"
#include "enriques/resgraph.hpp"
#include "enriques/resolve.hpp"
#include "enriques/series.hpp"

namespace enriques {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    long failures() const {
        long n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
};

namespace detail {

// Distinct small coordinates for the free points, nonzero so that satellite
// parents stay legal.
inline std::vector<std::optional<Coord>> random_embedding(const Cluster& c, SplitMix& rng) {
    std::vector<std::optional<Coord>> coords(c.size());
    for (int i = 0; i < c.size(); ++i) {
        if (c.parent(i) < 0 || c.is_satellite(i)) continue;
        for (;;) {
            long v = 1 + static_cast<long>(rng.below(9));
            if (rng.below(2) == 0) v = -v;
            bool used = false;
            for (int q : c.children(c.parent(i)))
                if (q != i && coords[q] && !coords[q]->at_inf && coords[q]->c == v) used = true;
            if (!used) {
                coords[i] = Coord{false, Rat(v)};
                break;
            }
        }
    }
    return coords;
}

inline bool same_series(const Series& a, const Series& b) { return a.t == b.t; }

inline std::string join_notes(const std::vector<std::string>& notes) {
    std::string s;
    for (const auto& n : notes) {
        if (!s.empty()) s += "; ";
        s += n;
    }
    return s;
}

}  // namespace detail

// Three independent routes to the generic Milnor number of a consistent
// cluster agree: the dual-graph formula on the associated resolution, the
// closed form in multiplicities and excesses, and the diagram of a generic
// member.
inline SuiteReport verify_eq3(std::uint64_t seed, long samples = 200) {
    SuiteReport rep{"eq3-agreement", {}};
    for (long s = 0; s < samples; ++s) {
        WeightedCluster wc = random_consistent_cluster(6, 4, seed + 7919 * s);
        ClusterGraph cg = to_resolution_graph(wc);
        const long mu_graph = generic_milnor(cg.graph, cg.z);
        const long mu_formula = generic_milnor_cluster(wc);
        GenericMember gm = generic_member_diagram(wc);
        const long mu_diagram = milnor(gm.diagram);
        CheckLine c;
        c.name = "sample-" + std::to_string(s);
        c.pass = mu_graph == mu_formula && mu_formula == mu_diagram;
        c.detail = "graph=" + std::to_string(mu_graph) + " formula=" + std::to_string(mu_formula) +
                   " diagram=" + std::to_string(mu_diagram);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

// Unloading: the procedure lands on a consistent cluster, does not depend on
// the pivot order, is idempotent, and does not change the linear system of
// passing polynomials at any truncation degree.
inline SuiteReport verify_unloading(std::uint64_t seed, long samples = 20) {
    SuiteReport rep{"unloading", {}};

    struct Fixed {
        const char* name;
        std::vector<Cluster::Point> pts;
        std::vector<long> nu;
        std::vector<long> expect;
    };
    std::vector<Fixed> fixed = {
        {"chain-0-1", {{"O", -1, -1}, {"O1", 0, -1}}, {0, 1}, {1, 0}},
        {"corner-1-1-1", {{"O", -1, -1}, {"O1", 0, -1}, {"O2", 1, 0}}, {1, 1, 1}, {2, 0, 0}},
    };

    long produced = 0;
    std::uint64_t salt = 0;
    while (produced < samples) {
        std::string name;
        WeightedCluster bad{Cluster({{"O", -1, -1}}), {1}};
        std::vector<long> expect;  // empty = not pinned
        if (produced < static_cast<long>(fixed.size())) {
            const Fixed& fx = fixed[produced];
            name = fx.name;
            bad = WeightedCluster{Cluster(fx.pts), fx.nu};
            expect = fx.expect;
        } else {
            // random consistent cluster, then overload one multiplicity until
            // its parent's excess turns negative
            WeightedCluster wc{Cluster({{"O", -1, -1}}), {1}};
            do {
                wc = random_consistent_cluster(4, 2, seed + 104729 * (++salt));
            } while (wc.cluster.size() < 2);
            SplitMix rng(seed ^ (0x9e3779b97f4a7c15ULL * salt));
            const int q = 1 + static_cast<int>(rng.below(wc.cluster.size() - 1));
            const int par = wc.cluster.parent(q);
            std::vector<long> nu = wc.mult;
            nu[q] += excesses(wc)[par] + 1 + static_cast<long>(rng.below(2));
            bad = WeightedCluster{wc.cluster, nu};
            name = "random-" + std::to_string(produced);
        }

        std::vector<std::string> notes;
        if (is_consistent(bad)) notes.push_back("perturbation failed to break consistency");

        UnloadResult u1 = unload(bad, UnloadPivot::First);
        UnloadResult u2 = unload(bad, UnloadPivot::Last);
        if (!is_consistent(u1.cluster)) notes.push_back("result not consistent");
        if (u1.cluster.mult != u2.cluster.mult) notes.push_back("pivot order changed the result");
        UnloadResult again = unload(u1.cluster);
        if (again.steps != 0 || again.cluster.mult != u1.cluster.mult)
            notes.push_back("not idempotent");
        if (!expect.empty() && u1.cluster.mult != expect) notes.push_back("pinned value missed");

        // both weight systems cut out the same space of polynomials
        SplitMix erng(seed ^ (0xbf58476d1ce4e5b9ULL + produced));
        EmbeddedCluster K(bad.cluster, detail::random_embedding(bad.cluster, erng));
        IdealBasis ibu = ideal_basis(K, u1.cluster.mult);
        IdealBasis ibk = ideal_basis(K, bad.mult, ibu.bound);
        if (!ibu.stabilized) notes.push_back("consistent side did not stabilize");
        bool span_equal = ibu.basis.size() == ibk.basis.size();
        for (size_t i = 0; span_equal && i < ibu.basis.size(); ++i)
            span_equal = detail::same_series(ibu.basis[i], ibk.basis[i]);
        if (!span_equal) notes.push_back("linear systems differ at degree " + std::to_string(ibu.bound));

        CheckLine c;
        c.name = name;
        c.pass = notes.empty();
        c.detail = c.pass ? "steps=" + std::to_string(u1.steps) : detail::join_notes(notes);
        rep.checks.push_back(std::move(c));
        ++produced;
    }
    return rep;
}

// Reduction criterion: the combinatorial verdict (both members v-superficial
// and their strict transforms separated beyond the cluster) coincides with
// the multiplicity test e(f,g) = e(I) on every corpus pair.
inline SuiteReport verify_rees(std::uint64_t seed, long samples = 20) {
    SuiteReport rep{"rees", {}};

    struct Engineered {
        const char* name;
        std::vector<Cluster::Point> pts;
        std::vector<std::optional<Coord>> coords;
        std::vector<long> nu;
        const char* f;
        const char* g;
        bool expect_verdict;
        long expect_pair;  // -1 = infinite
    };
    const std::optional<Coord> none;
    std::vector<Engineered> eng = {
        {"origin-good", {{"O", -1, -1}}, {none}, {1}, "x", "x+y", true, 1},
        {"origin-shared-direction", {{"O", -1, -1}}, {none}, {1}, "x", "x+x*y", false, -1},
        {"chain-tangent-escape",
         {{"O", -1, -1}, {"O1", 0, -1}},
         {none, Coord{true, 0}},
         {1, 1},
         "x",
         "x+y^3",
         false,
         3},
        {"fat-origin-not-superficial", {{"O", -1, -1}}, {none}, {2}, "x^2-y^3", "x^3-y^4", false, 8},
        {"fat-origin-good", {{"O", -1, -1}}, {none}, {2}, "x^2-y^3", "y^2-x^3", true, 4},
        {"cusp-good",
         {{"O", -1, -1}, {"O1", 0, -1}, {"O2", 1, 0}},
         {none, Coord{false, 0}, none},
         {2, 1, 1},
         "y^2-x^3",
         "y^2-2*x^3",
         true,
         6},
        {"cusp-shared-direction",
         {{"O", -1, -1}, {"O1", 0, -1}, {"O2", 1, 0}},
         {none, Coord{false, 0}, none},
         {2, 1, 1},
         "y^2-x^3",
         "y^2-x^3+x^2*y",
         false,
         7},
    };

    auto run_pair = [&](const std::string& name, const EmbeddedCluster& K,
                        const std::vector<long>& nu, const Series& f, const Series& g,
                        const bool* expect_verdict, const long* expect_pair, int max_cap) {
        std::vector<std::string> notes;
        const long eI = multiplicity_cluster(unload(WeightedCluster{K.cluster(), nu}).cluster);
        bool verdict = false;
        bool verdict_known = true;
        try {
            verdict = reduction_report_along(K, nu, f, g).good_pair();
        } catch (const refusal_error& e) {
            verdict_known = false;
            notes.push_back(std::string("verdict refused: ") + e.what());
        }
        long eJ = -1;
        bool oracle;
        try {
            eJ = pair_colength(f, g, max_cap);
            oracle = eJ == eI;
        } catch (const nonfinite_error&) {
            oracle = false;  // infinite multiplicity can never match a finite e(I)
        }
        if (expect_pair && eJ != *expect_pair) notes.push_back("pinned e(f,g) missed");
        if (expect_verdict && verdict_known && verdict != *expect_verdict)
            notes.push_back("pinned verdict missed");
        if (verdict_known && verdict != oracle)
            notes.push_back("verdict " + std::to_string(verdict) + " vs multiplicity test " +
                            std::to_string(oracle));
        CheckLine c;
        c.name = name;
        c.pass = notes.empty() && verdict_known;
        c.detail = c.pass ? "e(I)=" + std::to_string(eI) + " e(f,g)=" +
                                (eJ < 0 ? std::string("inf") : std::to_string(eJ)) +
                                " verdict=" + (verdict ? "good" : "bad")
                          : detail::join_notes(notes);
        rep.checks.push_back(std::move(c));
    };

    for (const auto& e : eng) {
        Cluster cl(e.pts);
        EmbeddedCluster K(cl, e.coords);
        const bool ev = e.expect_verdict;
        const long ep = e.expect_pair;
        run_pair(e.name, K, e.nu, parse_poly(e.f), parse_poly(e.g), &ev, &ep, 64);
    }

    for (long s = 0; s < samples; ++s) {
        WeightedCluster wc = random_consistent_cluster(4, 2, seed + 15485863 * (s + 1));
        SplitMix rng(seed ^ (0x94d049bb133111ebULL + s));
        EmbeddedCluster K(wc.cluster, detail::random_embedding(wc.cluster, rng));
        IdealBasis ib = ideal_basis(K, wc.mult);
        Series f = random_member(ib, rng);
        Series g = random_member(ib, rng);
        for (int tries = 0; detail::same_series(f, g) && tries < 8; ++tries) g = random_member(ib, rng);
        run_pair("random-" + std::to_string(s), K, wc.mult, f, g, nullptr, nullptr, 32);
    }
    return rep;
}

// Discriminant against member Milnor numbers: for three finite maps the
// intersection multiplicity of the eliminated discriminant with sampled
// transversal lines equals mu(member) + deg - 1, exactly; lines inside the
// discriminant are refused.
inline SuiteReport verify_le_greuel() {
    SuiteReport rep{"le-greuel", {}};

    struct MapCase {
        const char* name;
        const char* f;
        const char* g;
        std::vector<std::pair<long, long>> lines;
        std::vector<std::pair<long, long>> inside;  // expected to be refused
    };
    std::vector<MapCase> cases = {
        {"deg-1", "x", "y", {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}}, {}},
        {"deg-2", "x", "y^2", {{1, 0}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {3, 1}}, {{0, 1}}},
        {"deg-3", "x", "y^3", {{1, 0}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {3, 1}}, {{0, 1}}},
    };

    for (const auto& mc : cases) {
        Series f = parse_poly(mc.f), g = parse_poly(mc.g);
        DiscriminantCurve D = discriminant_by_elimination(f, g);
        const long deg = pair_colength(f, g);
        for (const auto& [a, b] : mc.lines) {
            std::vector<std::string> notes;
            long lhs = -1, mu = -1;
            try {
                lhs = line_multiplicity(D, Rat(a), Rat(b));
                Series member = series_add(series_scale(f, Rat(a)), series_scale(g, Rat(b)));
                mu = jacobian_colength(member);
                if (lhs != mu + deg - 1)
                    notes.push_back("(D.L)=" + std::to_string(lhs) + " but mu+deg-1=" +
                                    std::to_string(mu + deg - 1));
            } catch (const std::exception& e) {
                notes.push_back(e.what());
            }
            CheckLine c;
            c.name = std::string(mc.name) + "-line-" + std::to_string(a) + "," + std::to_string(b);
            c.pass = notes.empty();
            c.detail = c.pass ? "(D.L)=" + std::to_string(lhs) + " mu=" + std::to_string(mu) +
                                    " deg=" + std::to_string(deg)
                              : detail::join_notes(notes);
            rep.checks.push_back(std::move(c));
        }
        for (const auto& [a, b] : mc.inside) {
            CheckLine c;
            c.name = std::string(mc.name) + "-inside-" + std::to_string(a) + "," + std::to_string(b);
            try {
                line_multiplicity(D, Rat(a), Rat(b));
                c.pass = false;
                c.detail = "line inside the discriminant was not refused";
            } catch (const domain_error&) {
                c.pass = true;
                c.detail = "refused as expected";
            }
            rep.checks.push_back(std::move(c));
        }
    }
    return rep;
}

// Minimal Milnor number detects general members: over seeded members of the
// complete ideal of an embedded cluster, the minimum of the Jacobian-colength
// oracle equals the predicted generic value, a member attains it exactly when
// it goes sharply through the cluster, and the generic behaviour has hit
// rate at least 95%.
inline SuiteReport verify_theorem23(std::uint64_t seed, long clusters = 30, long members = 100) {
    SuiteReport rep{"theorem23", {}};
    for (long ci = 0; ci < clusters; ++ci) {
        WeightedCluster wc = (ci % 2 == 0) ? random_consistent_cluster(4, 2, seed + 32452843 * (ci + 1))
                                           : random_consistent_cluster(3, 3, seed + 49979687 * (ci + 1));
        SplitMix rng(seed ^ (0xd6e8feb86659fd93ULL + ci));
        EmbeddedCluster K(wc.cluster, detail::random_embedding(wc.cluster, rng));
        const long mu_I = generic_milnor_cluster(wc);

        std::vector<std::string> notes;
        IdealBasis ib = ideal_basis(K, wc.mult);
        if (!ib.stabilized) notes.push_back("basis did not stabilize");

        std::optional<long> mu_min;
        long hits = 0;
        long bad_biconditional = 0;
        for (long mi = 0; mi < members; ++mi) {
            Series f = random_member(ib, rng);
            std::optional<long> mu;
            try {
                mu = jacobian_colength(f, 32);
            } catch (const refusal_error&) {
                mu = std::nullopt;  // beyond the cap: strictly larger than any generic value
            }
            bool sharp = false;
            try {
                sharp = sharp_through(K, wc.mult, f);
            } catch (const refusal_error&) {
                sharp = false;
            }
            if (mu && (!mu_min || *mu < *mu_min)) mu_min = *mu;
            const bool minimal = mu && *mu == mu_I;
            if (minimal) ++hits;
            if (minimal != sharp) ++bad_biconditional;
        }
        if (!mu_min || *mu_min != mu_I)
            notes.push_back("min mu = " + (mu_min ? std::to_string(*mu_min) : std::string("inf")) +
                            " but generic value is " + std::to_string(mu_I));
        if (bad_biconditional > 0)
            notes.push_back(std::to_string(bad_biconditional) + " members broke minimal<->sharp");
        if (100 * hits < 95 * members)
            notes.push_back("hit rate " + std::to_string(hits) + "/" + std::to_string(members));

        CheckLine c;
        c.name = "cluster-" + std::to_string(ci);
        c.pass = notes.empty();
        c.detail = c.pass ? "mu_I=" + std::to_string(mu_I) + " hits=" + std::to_string(hits) + "/" +
                                std::to_string(members)
                          : detail::join_notes(notes);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, long samples) {
    if (name == "eq3-agreement") return verify_eq3(seed, samples > 0 ? samples : 200);
    if (name == "unloading") return verify_unloading(seed, samples > 0 ? samples : 20);
    if (name == "rees") return verify_rees(seed, samples > 0 ? samples : 20);
    if (name == "le-greuel") return verify_le_greuel();
    if (name == "theorem23") return verify_theorem23(seed, samples > 0 ? samples : 30);
    throw domain_error("unknown verification suite '" + name + "'");
}

}  // namespace enriques

#endif
