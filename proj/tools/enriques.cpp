// Batch front end: invariants of clusters and resolution graphs, unloading,
// membership and generality of explicit curves, reduction verdicts, pencil
// scans, and the cross-module verification suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "enriques/cluster.hpp"
#include "enriques/colength.hpp"
#include "enriques/discriminant.hpp"
#include "enriques/embedded.hpp"
#include "enriques/germ.hpp"
#include "enriques/io.hpp"
#include "enriques/resgraph.hpp"
#include "enriques/resolve.hpp"
#include "enriques/series.hpp"
#include "enriques/verify.hpp"

using json = nlohmann::json;
using namespace enriques;

namespace {

struct RunConfig {
    std::string format = "text";
    std::uint64_t seed = 1;
    long samples = 0;      // 0 = command default
    long degree_bound = 0; // 0 = grow until stabilized
    long precision = 64;   // colength certificate cap
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Series read_poly_file(const std::string& path) {
    std::string text = read_file(path);
    std::string joined;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        joined += line + " ";
    }
    return parse_poly(joined);
}

bool looks_like_graph(const std::string& text) {
    for (const auto& toks : enriques::detail::tokenized_lines(text))
        return toks[0] == "vertex" || toks[0] == "edge" || toks[0] == "cycle";
    throw parse_error("empty input file");
}

json cycle_json(const ResolutionGraph& g, const Cycle& z) {
    json j = json::object();
    for (int i = 0; i < g.size(); ++i) j[g.vertex(i).label] = rat_str(z[i]);
    return j;
}

std::string cycle_text(const ResolutionGraph& g, const Cycle& z) {
    std::string s;
    for (int i = 0; i < g.size(); ++i) {
        if (i) s += " ";
        s += g.vertex(i).label + "=" + rat_str(z[i]);
    }
    return s;
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// Conditions basis at the command-level degree policy: start from twice the
// total multiplicity plus a margin, then raise until the rank stabilizes.
IdealBasis basis_for(const EmbeddedCluster& K, const std::vector<long>& nu, const RunConfig& cfg) {
    if (cfg.degree_bound > 0) {
        IdealBasis ib = ideal_basis(K, nu, static_cast<int>(cfg.degree_bound));
        return ib;
    }
    long total = 0;
    for (long v : nu) total += v;
    int bound = static_cast<int>(2 * total + 4);
    for (;;) {
        IdealBasis ib = ideal_basis(K, nu, bound);
        if (ib.stabilized) return ib;
        ++bound;
    }
}

int cmd_invariants(const RunConfig& cfg, const std::string& path) {
    const std::string text = read_file(path);
    json j;
    std::string out;
    if (looks_like_graph(text)) {
        GraphFile gf = parse_graph(text);
        const ResolutionGraph& g = gf.graph;
        Cycle z;
        if (const Cycle* named = gf.find_cycle("Z"))
            z = *named;
        else if (gf.cycles.size() == 1)
            z = gf.cycles.front().second;
        else
            z = fundamental_cycle(g);
        if (!is_antinef(g, z)) throw domain_error("the chosen cycle is not antinef");
        const long mu = generic_milnor(g, z);
        const long e = multiplicity_from_cycle(g, z);
        const long ed = discriminant_multiplicity(g, z);
        Cycle K = canonical_cycle(g);
        j["mu"] = mu;
        j["e"] = e;
        j["e_delta"] = ed;
        j["K"] = cycle_json(g, K);
        j["Z"] = cycle_json(g, z);
        json m = json::array();
        for (const auto& row : g.intersection_matrix()) {
            json r = json::array();
            for (const auto& v : row) r.push_back(to_long(v));
            m.push_back(r);
        }
        j["matrix"] = m;
        out += "mu      = " + std::to_string(mu) + "\n";
        out += "e       = " + std::to_string(e) + "\n";
        out += "e_delta = " + std::to_string(ed) + "\n";
        out += "K = " + cycle_text(g, K) + "\n";
        out += "Z = " + cycle_text(g, z) + "\n";
    } else {
        ClusterFile cf = parse_cluster(text);
        WeightedCluster wc = cf.as_weighted();
        const bool unloaded = !is_consistent(wc);
        if (unloaded) wc = unload(wc).cluster;
        ClusterGraph cg = to_resolution_graph(wc);
        const long mu = generic_milnor_cluster(wc);
        const long e = multiplicity_cluster(wc);
        const long ed = discriminant_multiplicity(cg.graph, cg.z);
        Cycle K = canonical_cycle(cg.graph);
        j["mu"] = mu;
        j["e"] = e;
        j["e_delta"] = ed;
        j["K"] = cycle_json(cg.graph, K);
        j["Z"] = cycle_json(cg.graph, cg.z);
        j["unloaded"] = unloaded;
        json m = json::array();
        for (const auto& row : cg.graph.intersection_matrix()) {
            json r = json::array();
            for (const auto& v : row) r.push_back(to_long(v));
            m.push_back(r);
        }
        j["matrix"] = m;
        out += "mu      = " + std::to_string(mu) + "\n";
        out += "e       = " + std::to_string(e) + "\n";
        out += "e_delta = " + std::to_string(ed) + "\n";
        out += "K = " + cycle_text(cg.graph, K) + "\n";
        out += "Z = " + cycle_text(cg.graph, cg.z) + "\n";
        out += std::string("unloaded = ") + (unloaded ? "yes" : "no") + "\n";
    }
    emit(cfg, j, out);
    return 0;
}

json points_json(const Cluster& c, const std::vector<long>& mult,
                 const std::vector<std::optional<Coord>>& coords) {
    json pts = json::array();
    for (int i = 0; i < c.size(); ++i) {
        json p;
        p["label"] = c.label(i);
        p["parent"] = c.parent(i) < 0 ? json() : json(c.label(c.parent(i)));
        p["sat"] = c.extra(i) < 0 ? json() : json(c.label(c.extra(i)));
        p["mult"] = mult[i];
        p["coord"] = (!coords.empty() && coords[i]) ? json(coord_str(*coords[i])) : json();
        pts.push_back(p);
    }
    return pts;
}

int cmd_unload(const RunConfig& cfg, const std::string& path) {
    ClusterFile cf = parse_cluster(read_file(path));
    UnloadResult r = unload(cf.as_weighted());
    json j;
    j["points"] = points_json(r.cluster.cluster, r.cluster.mult, cf.coords);
    j["steps"] = r.steps;
    j["consistent_input"] = r.steps == 0;
    std::string out = "# unloading steps: " + std::to_string(r.steps) + "\n";
    out += write_cluster(r.cluster.cluster, r.cluster.mult, cf.coords);
    emit(cfg, j, out);
    return 0;
}

int cmd_member(const RunConfig& cfg, const std::string& poly_path, const std::string& cluster_path) {
    Series f = read_poly_file(poly_path);
    ClusterFile cf = parse_cluster(read_file(cluster_path));
    EmbeddedCluster K = cf.as_embedded();
    MemberReport rep = member_report(K, cf.mult, f);
    json j;
    j["member"] = rep.member;
    j["certified_precision"] = f.trunc ? json(*f.trunc) : json();
    json pts = json::array();
    std::string out = std::string("member = ") + (rep.member ? "true" : "false") + "\n";
    for (const auto& mp : rep.points) {
        json p;
        p["label"] = mp.label;
        p["required"] = mp.required;
        p["order"] = mp.order_known ? json(mp.order) : json();
        p["satisfied"] = mp.satisfied;
        pts.push_back(p);
        out += "point " + mp.label + " required=" + std::to_string(mp.required) +
               " order=" + (mp.order_known ? std::to_string(mp.order) : std::string("full")) +
               (mp.satisfied ? " ok" : " MISSED") + "\n";
    }
    j["points"] = pts;
    emit(cfg, j, out);
    return 0;
}

// "-" in place of a polynomial path draws a seeded member of the ideal.
Series poly_or_member(const std::string& path, const EmbeddedCluster& K,
                      const std::vector<long>& nu, const RunConfig& cfg, std::uint64_t salt) {
    if (path != "-") return read_poly_file(path);
    IdealBasis ib = basis_for(K, nu, cfg);
    SplitMix rng(cfg.seed + salt);
    return random_member(ib, rng);
}

int cmd_general(const RunConfig& cfg, const std::string& poly_path, const std::string& cluster_path) {
    ClusterFile cf = parse_cluster(read_file(cluster_path));
    EmbeddedCluster K = cf.as_embedded();
    WeightedCluster wc = unload(cf.as_weighted()).cluster;
    Series f = poly_or_member(poly_path, K, wc.mult, cfg, 0);

    const bool member = satisfies_conditions(K, wc.mult, f);
    const long mu_generic = generic_milnor_cluster(wc);
    long mu = -1;
    bool mu_finite = true;
    try {
        mu = jacobian_colength(f, static_cast<int>(cfg.precision));
    } catch (const nonfinite_error&) {
        mu_finite = false;
    }
    bool sharp = false;
    try {
        sharp = sharp_through(K, wc.mult, f);
    } catch (const refusal_error&) {
        sharp = false;  // a refused resolution can only come from extra singularity
    }
    const bool minimal = mu_finite && mu == mu_generic;
    const bool general = member && sharp;
    const bool biconditional_ok = !member || (minimal == sharp);

    json j;
    j["poly"] = poly_str(f);
    j["member"] = member;
    j["mu"] = mu_finite ? json(mu) : json();
    j["mu_generic"] = mu_generic;
    j["sharp"] = sharp;
    j["general"] = general;
    j["biconditional_ok"] = biconditional_ok;
    j["certified_precision"] = cfg.precision;
    std::string out;
    out += "poly    = " + poly_str(f) + "\n";
    out += std::string("member  = ") + (member ? "true" : "false") + "\n";
    out += "mu      = " + (mu_finite ? std::to_string(mu) : std::string("infinite")) + "\n";
    out += "mu_generic = " + std::to_string(mu_generic) + "\n";
    out += std::string("sharp   = ") + (sharp ? "true" : "false") + "\n";
    out += std::string("general = ") + (general ? "true" : "false") + "\n";
    out += std::string("biconditional_ok = ") + (biconditional_ok ? "true" : "false") + "\n";
    emit(cfg, j, out);
    return biconditional_ok ? 0 : 1;
}

int cmd_reduction(const RunConfig& cfg, const std::string& f_path, const std::string& g_path,
                  const std::string& cluster_path) {
    ClusterFile cf = parse_cluster(read_file(cluster_path));
    EmbeddedCluster K = cf.as_embedded();
    WeightedCluster wc = unload(cf.as_weighted()).cluster;
    Series f = poly_or_member(f_path, K, wc.mult, cfg, 0);
    Series g = poly_or_member(g_path, K, wc.mult, cfg, 0x5851f42d4c957f2dULL);

    ReductionReport rr = reduction_report_along(K, wc.mult, f, g);
    const long eI = multiplicity_cluster(wc);
    const long eJ = pair_colength(f, g, static_cast<int>(cfg.precision));
    const bool reduction = eJ == eI;

    json j;
    j["f"] = poly_str(f);
    j["g"] = poly_str(g);
    j["e_I"] = eI;
    j["e_J"] = eJ;
    j["reduction"] = reduction;
    j["v_superficial_f"] = rr.v_superficial_f;
    j["v_superficial_g"] = rr.v_superficial_g;
    j["separated"] = rr.separated;
    j["certified_precision"] = cfg.precision;
    std::string out;
    out += "f = " + poly_str(f) + "\n";
    out += "g = " + poly_str(g) + "\n";
    out += "e_I = " + std::to_string(eI) + "\n";
    out += "e_J = " + std::to_string(eJ) + "\n";
    out += std::string("reduction = ") + (reduction ? "true" : "false") + "\n";
    out += std::string("v_superficial_f = ") + (rr.v_superficial_f ? "true" : "false") + "\n";
    out += std::string("v_superficial_g = ") + (rr.v_superficial_g ? "true" : "false") + "\n";
    out += std::string("separated = ") + (rr.separated ? "true" : "false") + "\n";
    emit(cfg, j, out);
    return 0;
}

int cmd_pencil(const RunConfig& cfg, const std::string& f_path, const std::string& g_path) {
    Series f = read_poly_file(f_path);
    Series g = read_poly_file(g_path);
    const long want = cfg.samples > 0 ? cfg.samples : 7;

    std::vector<std::pair<Rat, Rat>> samples = {{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                                {2, 1}, {1, 2}, {3, 1}};
    SplitMix rng(cfg.seed);
    while (static_cast<long>(samples.size()) < want) {
        Rat a(static_cast<long>(rng.below(19)) - 9);
        Rat b(1 + static_cast<long>(rng.below(9)));
        bool dup = false;
        for (const auto& [x, y] : samples) dup = dup || (x == a && y == b);
        if (!dup) samples.emplace_back(a, b);
    }
    samples.resize(want);

    PencilReport pr = pencil_scan(f, g, samples, static_cast<int>(cfg.precision));

    json j;
    j["degree"] = pr.degree;
    j["min_mu"] = pr.min_milnor >= 0 ? json(pr.min_milnor) : json();
    j["certified_precision"] = cfg.precision;
    json arr = json::array();
    std::string out = "degree = " + std::to_string(pr.degree) + "\n";
    out += "min_mu = " + std::to_string(pr.min_milnor) + "\n";
    for (size_t i = 0; i < pr.samples.size(); ++i) {
        const PencilSample& s = pr.samples[i];
        json e;
        e["a"] = rat_str(s.a);
        e["b"] = rat_str(s.b);
        e["mu"] = s.ok ? json(s.milnor) : json();
        e["rhs"] = s.ok ? json(s.rhs) : json();
        e["special"] = !s.ok || s.milnor != pr.min_milnor;
        e["note"] = s.note;
        arr.push_back(e);
        out += "sample " + std::to_string(i) + ": a=" + rat_str(s.a) + " b=" + rat_str(s.b);
        if (s.ok) {
            out += " mu=" + std::to_string(s.milnor) + " rhs=" + std::to_string(s.rhs);
            if (s.milnor != pr.min_milnor) out += " special";
        } else {
            out += " special (" + s.note + ")";
        }
        out += "\n";
    }
    j["samples"] = arr;
    emit(cfg, j, out);
    return 0;
}

int cmd_graph(const RunConfig& cfg, const std::string& path) {
    ClusterFile cf = parse_cluster(read_file(path));
    WeightedCluster wc = unload(cf.as_weighted()).cluster;
    ClusterGraph cg = to_resolution_graph(wc);
    Cycle K = canonical_cycle(cg.graph);
    json j;
    json verts = json::array();
    for (int i = 0; i < cg.graph.size(); ++i) {
        json v;
        v["label"] = cg.graph.vertex(i).label;
        v["self"] = cg.graph.vertex(i).self;
        v["genus"] = cg.graph.vertex(i).genus;
        verts.push_back(v);
    }
    json edges = json::array();
    for (const auto& [a, b] : cg.graph.edges())
        edges.push_back({cg.graph.vertex(a).label, cg.graph.vertex(b).label});
    j["vertices"] = verts;
    j["edges"] = edges;
    j["Z"] = cycle_json(cg.graph, cg.z);
    j["K"] = cycle_json(cg.graph, K);
    std::string out = write_graph(cg.graph, {{"Z", cg.z}, {"K", K}});
    emit(cfg, j, out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    SuiteReport rep = run_suite(suite, cfg.seed, cfg.samples);
    json j;
    j["suite"] = rep.suite;
    j["pass"] = rep.pass();
    j["failures"] = rep.failures();
    json arr = json::array();
    std::string out;
    for (const auto& c : rep.checks) {
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["detail"] = c.detail;
        arr.push_back(e);
        out += std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
    }
    j["checks"] = arr;
    out += "suite " + rep.suite + ": " +
           std::to_string(static_cast<long>(rep.checks.size()) - rep.failures()) + "/" +
           std::to_string(rep.checks.size()) + " passed\n";
    emit(cfg, j, out);
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string path1, path2, path3, suite;

    CLI::App app{"invariants of clusters of infinitely near points and curve germs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "random seed")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
    app.add_option("--degree-bound", cfg.degree_bound, "polynomial degree bound")
        ->check(CLI::PositiveNumber);
    app.add_option("--precision", cfg.precision, "colength certificate cap")
        ->check(CLI::PositiveNumber);

    auto* inv = app.add_subcommand("invariants", "invariants of a cluster or resolution graph");
    inv->add_option("file", path1)->required();
    auto* unl = app.add_subcommand("unload", "unload a weighted cluster");
    unl->add_option("file", path1)->required();
    auto* mem = app.add_subcommand("member", "membership of a polynomial in a cluster ideal");
    mem->add_option("poly", path1)->required();
    mem->add_option("cluster", path2)->required();
    auto* gen = app.add_subcommand("general", "generality of a polynomial for a cluster ideal");
    gen->add_option("poly", path1)->required();
    gen->add_option("cluster", path2)->required();
    auto* red = app.add_subcommand("reduction", "reduction verdict for a pair of members");
    red->add_option("f", path1)->required();
    red->add_option("g", path2)->required();
    red->add_option("cluster", path3)->required();
    auto* pen = app.add_subcommand("pencil", "Milnor numbers across the pencil of a pair");
    pen->add_option("f", path1)->required();
    pen->add_option("g", path2)->required();
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite)->required();
    auto* gra = app.add_subcommand("graph", "resolution graph of a cluster");
    gra->add_option("file", path1)->required();

    try {
        app.parse(argc, argv);
        if (inv->parsed()) return cmd_invariants(cfg, path1);
        if (unl->parsed()) return cmd_unload(cfg, path1);
        if (mem->parsed()) return cmd_member(cfg, path1, path2);
        if (gen->parsed()) return cmd_general(cfg, path1, path2);
        if (red->parsed()) return cmd_reduction(cfg, path1, path2, path3);
        if (pen->parsed()) return cmd_pencil(cfg, path1, path2);
        if (ver->parsed()) return cmd_verify(cfg, suite);
        if (gra->parsed()) return cmd_graph(cfg, path1);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const refusal_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
