#include <catch2/catch_amalgamated.hpp>

#include "enriques/series.hpp"

using namespace enriques;

TEST_CASE("polynomial parsing") {
    Series f = parse_poly("3/2*x^2*y - y^4 + x^5");
    CHECK(f.exact());
    CHECK(f.t.at({2, 1}) == Rat(3, 2));
    CHECK(f.t.at({0, 4}) == -1);
    CHECK(f.t.at({5, 0}) == 1);
    CHECK(f.t.size() == 3);

    CHECK(parse_poly("2x y").t.at({1, 1}) == 2);   // '*' optional
    CHECK(parse_poly("x + x").t.at({1, 0}) == 2);  // merged
    CHECK(parse_poly("x - x").t.empty());          // cancelled
    CHECK(parse_poly("7").t.at({0, 0}) == 7);

    CHECK(parse_poly("x x").t.at({2, 0}) == 1);  // juxtaposed factors multiply

    CHECK_THROWS_AS(parse_poly(""), parse_error);
    CHECK_THROWS_AS(parse_poly("x +"), parse_error);
    CHECK_THROWS_AS(parse_poly("x y z"), parse_error);
    CHECK_THROWS_AS(parse_poly("x^-2"), parse_error);
    CHECK_THROWS_AS(parse_poly("1/0*x"), parse_error);
}

TEST_CASE("printing is graded and round-trips") {
    CHECK(poly_str(parse_poly("y^2 - x^3")) == "y^2 - x^3");
    CHECK(poly_str(parse_poly("-x + 3/2*y")) == "-x + 3/2*y");
    CHECK(poly_str(parse_poly("y^2 + x^2 + x*y")) == "x^2 + x*y + y^2");
    CHECK(poly_str(Series{}) == "0");
    for (const char* s : {"y^2 - x^3", "x", "1/3*x*y - 7*y^5 + x^2", "2 - x"}) {
        Series f = parse_poly(s);
        CHECK(parse_poly(poly_str(f)).t == f.t);
    }
}

TEST_CASE("series arithmetic respects truncation") {
    Series f = parse_poly("x + y^2");
    Series g = parse_poly("x");
    Series h = series_add(f, series_scale(g, -1));
    CHECK(h.t == parse_poly("y^2").t);

    Series t = f;
    t.trunc = 3;
    Series p = series_mul(t, t);
    REQUIRE(p.trunc.has_value());
    CHECK(*p.trunc == 4);  // trunc + order of the other factor
    CHECK(p.t.count({2, 0}) == 1);
    CHECK(p.t.count({0, 4}) == 0);  // beyond the product's certainty

    CHECK(order(f) == 1);
    CHECK(order(parse_poly("y^2 - x^3")) == 2);
    CHECK_THROWS_AS(order(Series{}), domain_error);
    Series empty_trunc;
    empty_trunc.trunc = 5;
    CHECK_THROWS_AS(order(empty_trunc), precision_error);
    CHECK_FALSE(known_order(empty_trunc).has_value());

    CHECK(series_eval(parse_poly("y^2 - x^3"), Rat(1), Rat(2)) == Rat(3));
    CHECK(series_mul(parse_poly("x + y"), parse_poly("x - y")).t == parse_poly("x^2 - y^2").t);
    CHECK(series_diff_x(parse_poly("y^2 - x^3")).t == parse_poly("-3x^2").t);
    CHECK(series_diff_y(parse_poly("y^2 - x^3")).t == parse_poly("2y").t);
    CHECK(mono_mul(parse_poly("x + y"), 1, 2).t == parse_poly("x^2*y^2 + x*y^3").t);
}

TEST_CASE("tangent directions from the leading form") {
    Series f = parse_poly("x*y + x^3");  // directions y = 0 and x = 0
    UPoly lf = leading_form_at_one(f, 2);
    REQUIRE(udeg(lf) == 1);  // degree drop = the direction at infinity
    RootSplit rs = rational_roots(lf);
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].first == 0);

    UPoly cusp_lf = leading_form_at_one(parse_poly("y^2 - x^3"), 2);
    CHECK(udeg(cusp_lf) == 2);  // y^2: double root t = 0
    CHECK(rational_roots(cusp_lf).roots == std::vector<std::pair<Rat, int>>{{Rat(0), 2}});
}

TEST_CASE("blow-up charts") {
    Series cusp = parse_poly("y^2 - x^3");
    CHECK(blow_up(cusp, Rat(0)).t == parse_poly("y^2 - x").t);
    // at the direction y = c x with c != 0 the transform is a unit
    CHECK(blow_up(cusp, Rat(1)).t.count({0, 0}) == 1);
    // swapped cusp meets the chart at infinity
    CHECK(blow_up(parse_poly("x^2 - y^3"), Rat(0), true).t == parse_poly("x^2 - y").t);
    CHECK(blow_up(parse_poly("x"), Rat(0), true).t == parse_poly("x").t);

    CHECK(swap_xy(parse_poly("x^2 - y")).t == parse_poly("y^2 - x").t);
    CHECK(chart_subst_infinite(parse_poly("x + y")).t == parse_poly("x*y + y").t);
    CHECK(chart_subst_finite(parse_poly("y"), Rat(2)).t == parse_poly("x*y + 2*x").t);
    CHECK_THROWS_AS(divide_x(parse_poly("y"), 1), internal_error);

    Series t = parse_poly("y^2 - x^3");
    t.trunc = 10;
    Series bt = blow_up(t, Rat(0));
    REQUIRE(bt.trunc.has_value());
    CHECK(*bt.trunc == 8);  // degrees at least doubled then divided by x^2
}

TEST_CASE("univariate helpers") {
    UPoly p = {Rat(-1), Rat(0), Rat(1)};  // t^2 - 1
    auto [q, r] = udivrem(p, UPoly{Rat(-1), Rat(1)});
    CHECK(q == UPoly{Rat(1), Rat(1)});
    CHECK(uzero(r));
    CHECK(ugcd(p, UPoly{Rat(-1), Rat(1)}) == UPoly{Rat(-1), Rat(1)});
    CHECK(ueval(p, Rat(3)) == 8);

    // (t-1)^2 (t+2)
    UPoly s = umul(umul(UPoly{Rat(-1), Rat(1)}, UPoly{Rat(-1), Rat(1)}), UPoly{Rat(2), Rat(1)});
    auto sq = squarefree_decomposition(s);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0] == std::pair<UPoly, int>{UPoly{Rat(2), Rat(1)}, 1});
    CHECK(sq[1] == std::pair<UPoly, int>{UPoly{Rat(-1), Rat(1)}, 2});

    RootSplit rs = rational_roots(umul(s, UPoly{Rat(1), Rat(0), Rat(1)}));  // extra t^2+1
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.roots[0] == std::pair<Rat, int>{Rat(-2), 1});
    CHECK(rs.roots[1] == std::pair<Rat, int>{Rat(1), 2});
    CHECK(udeg(rs.rootless) == 2);

    RootSplit half = rational_roots(UPoly{Rat(-1), Rat(2)});
    CHECK(half.roots == std::vector<std::pair<Rat, int>>{{Rat(1, 2), 1}});

    // res(t^2+1, t-3) = 3^2+1
    CHECK(resultant_padded(UPoly{Rat(1), Rat(0), Rat(1)}, UPoly{Rat(-3), Rat(1)}, 2, 1) == 10);
    // vanished leading coefficients only affect the sign / unit factor
    CHECK(resultant_padded(UPoly{Rat(1)}, UPoly{Rat(-3), Rat(1)}, 1, 1) == -1);
    CHECK(resultant_padded(UPoly{Rat(-3), Rat(1)}, UPoly{Rat(-3), Rat(1)}, 2, 1) == 0);

    UPoly ip = interpolate({Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(2), Rat(5)});
    CHECK(ip == UPoly{Rat(1), Rat(0), Rat(1)});
}

TEST_CASE("bivariate gcd layer") {
    BPoly f = to_bpoly(parse_poly("y^2 - x^3"));
    CHECK(bdeg(f) == 2);
    CHECK(bis_constant(bgcd(f, to_bpoly(parse_poly("x")))));
    BPoly g = bgcd(to_bpoly(parse_poly("x*y")), to_bpoly(parse_poly("x*y + x^2")));
    // common factor x
    CHECK(bdeg(g) == 0);
    CHECK(udeg(g[0]) == 1);

    CHECK(is_reduced_poly(parse_poly("y^2 - x^3")));
    CHECK(is_reduced_poly(parse_poly("x*y")));
    CHECK_FALSE(is_reduced_poly(parse_poly("x^2")));
    CHECK_FALSE(is_reduced_poly(parse_poly("x^2 + 2*x*y + y^2")));
    Series tr;
    tr.trunc = 4;
    CHECK_THROWS_AS(to_bpoly(tr), domain_error);
}
