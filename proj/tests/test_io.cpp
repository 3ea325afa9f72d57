#include <catch2/catch_amalgamated.hpp>

#include "enriques/io.hpp"

using namespace enriques;

static const char* kCuspGraph =
    "# minimal good resolution of the cusp\n"
    "vertex A self=-3 genus=0\n"
    "vertex B self=-2 genus=0\n"
    "vertex C self=-1 genus=0\n"
    "edge A C\n"
    "edge B C\n"
    "cycle K A=1 B=2 C=4\n"
    "cycle Z A=2 B=3 C=6\n";

TEST_CASE("graph files round-trip") {
    GraphFile gf = parse_graph(kCuspGraph);
    REQUIRE(gf.graph.size() == 3);
    CHECK(gf.graph.vertex(0).label == "A");
    CHECK(gf.graph.vertex(0).self == -3);
    CHECK(gf.graph.vertex(2).self == -1);
    REQUIRE(gf.cycles.size() == 2);
    CHECK(gf.find_cycle("Z") != nullptr);
    CHECK(gf.find_cycle("W") == nullptr);
    CHECK((*gf.find_cycle("K"))[2] == 4);

    std::string text = write_graph(gf.graph, gf.cycles);
    GraphFile back = parse_graph(text);
    CHECK(write_graph(back.graph, back.cycles) == text);
    CHECK(*back.find_cycle("Z") == *gf.find_cycle("Z"));
}

TEST_CASE("graph file errors") {
    CHECK_THROWS_AS(parse_graph(""), parse_error);
    CHECK_THROWS_AS(parse_graph("# only a comment\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2 colour=red\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2 genus=0\nedge A B\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2 genus=0\ncycle\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2 genus=0\ncycle Z B=1\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("wedge A B\nvertex A self=-2 genus=0\n"), parse_error);
    // structural problems surface as domain errors from the graph itself
    CHECK_THROWS_AS(parse_graph("vertex A self=0 genus=0\n"), domain_error);
    CHECK_THROWS_AS(parse_graph("vertex A self=-2 genus=0\nedge A A\n"), domain_error);
}

static const char* kCuspCluster =
    "point O root mult=2\n"
    "point O1 parent=O mult=1 coord=0\n"
    "point O2 parent=O1 sat=O mult=1\n";

TEST_CASE("cluster files round-trip") {
    ClusterFile cf = parse_cluster(kCuspCluster);
    REQUIRE(cf.cluster.size() == 3);
    CHECK(cf.mult == std::vector<long>{2, 1, 1});
    CHECK(cf.cluster.point(2).extra == 0);
    CHECK(cf.fully_embedded());
    CHECK(values(cf.as_weighted()) == std::vector<long>{2, 3, 6});

    std::string text = write_cluster(cf.cluster, cf.mult, cf.coords);
    ClusterFile back = parse_cluster(text);
    CHECK(write_cluster(back.cluster, back.mult, back.coords) == text);
    CHECK(back.coords[1].has_value());
    CHECK_FALSE(back.coords[1]->at_inf);
    CHECK(back.coords[2] == std::nullopt);
}

TEST_CASE("cluster coordinates parse in both styles") {
    ClusterFile cf = parse_cluster(
        "point O root mult=3\n"
        "point P parent=O mult=1 coord=inf\n"
        "point Q parent=O mult=1 coord=-3/2\n"
        "point R parent=O mult=1\n");
    REQUIRE(cf.coords[1].has_value());
    CHECK(cf.coords[1]->at_inf);
    CHECK(cf.coords[2]->c == Rat(-3, 2));
    CHECK_FALSE(cf.fully_embedded());  // R has no coordinate yet
    std::string text = write_cluster(cf.cluster, cf.mult, cf.coords);
    CHECK(parse_cluster(text).coords == cf.coords);
}

TEST_CASE("cluster file errors") {
    CHECK_THROWS_AS(parse_cluster(""), parse_error);
    CHECK_THROWS_AS(parse_cluster("point O root\n"), parse_error);
    CHECK_THROWS_AS(parse_cluster("point O root mult\n"), parse_error);
    CHECK_THROWS_AS(parse_cluster("point O root mult=2 shade=dark\n"), parse_error);
    CHECK_THROWS_AS(parse_cluster("vertex O self=-1 genus=0\n"), parse_error);
    CHECK_THROWS_AS(parse_cluster("point O parent=P mult=1\npoint P root mult=2\n"), parse_error);
    // coord= only makes sense on free non-root points
    CHECK_THROWS_AS(parse_cluster("point O root mult=2 coord=0\n"), parse_error);
    CHECK_THROWS_AS(parse_cluster(std::string(kCuspCluster) + "point O3 parent=O2 sat=O1 mult=1 coord=1\n"),
                    parse_error);
    // two roots is a shape problem, reported by the cluster itself
    CHECK_THROWS_AS(parse_cluster("point O root mult=1\npoint P root mult=1\n"), domain_error);
}

TEST_CASE("matching files") {
    ClusterFile a = parse_cluster(kCuspCluster);
    ClusterFile b = parse_cluster(
        "point R root mult=2\n"
        "point R1 parent=R mult=1\n"
        "point R2 parent=R1 sat=R mult=1\n");
    Matching m = parse_matching("match O=R\nmatch O1=R1\nmatch O2=R2\n", a.cluster, b.cluster);
    REQUIRE(m.size() == 3);
    CHECK(m[2] == std::pair<int, int>{2, 2});
    detail::validate_matching(a.cluster, b.cluster, m);

    CHECK_THROWS_AS(parse_matching("pair O=R\n", a.cluster, b.cluster), parse_error);
    CHECK_THROWS_AS(parse_matching("match O R\n", a.cluster, b.cluster), parse_error);
    CHECK_THROWS_AS(parse_matching("match O=X\n", a.cluster, b.cluster), domain_error);
}

TEST_CASE("comments and spacing are ignored everywhere") {
    ClusterFile cf = parse_cluster(
        "\n   # header\n"
        "point  O   root  mult=2   # the origin\n"
        "\npoint O1 parent=O mult=1\n");
    CHECK(cf.cluster.size() == 2);
    CHECK(cf.mult[0] == 2);
}
