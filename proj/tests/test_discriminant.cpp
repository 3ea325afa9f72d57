#include <catch2/catch_amalgamated.hpp>

#include "enriques/discriminant.hpp"

using namespace enriques;

TEST_CASE("discriminant multiplicity of the model pairs") {
    DiscriminantCurve d1 = discriminant_by_elimination(parse_poly("x"), parse_poly("y"));
    CHECK(multiplicity_at_origin(d1) == 0);  // immersion, empty discriminant

    DiscriminantCurve d2 = discriminant_by_elimination(parse_poly("x"), parse_poly("y^2"));
    CHECK(multiplicity_at_origin(d2) == 1);

    DiscriminantCurve d3 = discriminant_by_elimination(parse_poly("x"), parse_poly("y^3"));
    CHECK(multiplicity_at_origin(d3) == 2);
}

TEST_CASE("the discriminant of (x, y^2) is the u-axis") {
    DiscriminantCurve d = discriminant_by_elimination(parse_poly("x"), parse_poly("y^2"));
    // the branch locus line v = 0 lies inside the discriminant
    CHECK_THROWS_AS(line_multiplicity(d, 0, 1), domain_error);
    // every other line meets it once
    CHECK(line_multiplicity(d, 1, 0) == 1);
    CHECK(line_multiplicity(d, 1, 1) == 1);
    CHECK_THROWS_AS(line_multiplicity(d, 0, 0), domain_error);
}

TEST_CASE("a smooth but tangent discriminant branch") {
    // (x, y^2 - x^3) folds along y = 0 onto v = -u^3
    DiscriminantCurve d = discriminant_by_elimination(parse_poly("x"), parse_poly("y^2 - x^3"));
    CHECK(multiplicity_at_origin(d) == 1);
    CHECK(line_multiplicity(d, 1, 0) == 1);
    CHECK(line_multiplicity(d, 1, 1) == 1);
    CHECK(line_multiplicity(d, 0, 1) == 3);  // v = 0 is the tangent line
}

TEST_CASE("component order does not matter, only bookkeeping swaps") {
    DiscriminantCurve d = discriminant_by_elimination(parse_poly("y^2"), parse_poly("x"));
    CHECK(d.swapped);
    CHECK(multiplicity_at_origin(d) == 1);
    // now u = f-value, so the axis inside the discriminant is u = 0
    CHECK_THROWS_AS(line_multiplicity(d, 1, 0), domain_error);
    CHECK(line_multiplicity(d, 0, 1) == 1);
}

TEST_CASE("elimination refuses what it cannot see") {
    // neither component linear
    CHECK_THROWS_AS(discriminant_by_elimination(parse_poly("x^2"), parse_poly("y^3")), refusal_error);
    // rank drops identically
    CHECK_THROWS_AS(discriminant_by_elimination(parse_poly("x"), parse_poly("x")), refusal_error);
    // the fiber over 0 is a component of the curve
    CHECK_THROWS_AS(discriminant_by_elimination(parse_poly("x"), parse_poly("x*y")), refusal_error);
    // the fiber over 0 hits the curve at (0, 1)
    CHECK_THROWS_AS(discriminant_by_elimination(parse_poly("x"), parse_poly("y^2 - y")), refusal_error);
    // units are not germs at the origin
    CHECK_THROWS_AS(discriminant_by_elimination(parse_poly("x + 1"), parse_poly("y")), refusal_error);
    // truncated input cannot be eliminated exactly
    Series f = parse_poly("x");
    f.trunc = 4;
    CHECK_THROWS_AS(discriminant_by_elimination(f, parse_poly("y")), refusal_error);
}

TEST_CASE("pencil scan across a f + b g") {
    std::vector<std::pair<Rat, Rat>> picks = {{1, 1}, {1, -1}, {2, 3}, {1, 0}, {0, 1}};
    PencilReport rep = pencil_scan(parse_poly("x^2"), parse_poly("y^3"), picks);
    CHECK(rep.degree == 6);
    CHECK(rep.min_milnor == 2);
    REQUIRE(rep.samples.size() == 5);
    for (int i = 0; i < 3; ++i) {
        CHECK(rep.samples[i].ok);
        CHECK(rep.samples[i].milnor == 2);
        CHECK(rep.samples[i].rhs == 7);
    }
    // the degenerate members x^2 and y^3 have nonfinite Milnor numbers
    CHECK_FALSE(rep.samples[3].ok);
    CHECK_FALSE(rep.samples[4].ok);
    CHECK_FALSE(rep.samples[3].note.empty());
}

TEST_CASE("pencil scan of a good pair hits the generic value") {
    // members of (y^2 - x^3, y^2 - 2x^3) are cusps except b = -a
    PencilReport rep = pencil_scan(parse_poly("y^2 - x^3"), parse_poly("y^2 - 2*x^3"),
                                   {{1, 1}, {2, 1}, {1, -1}});
    CHECK(rep.degree == 6);
    CHECK(rep.min_milnor == 2);
    CHECK(rep.samples[0].ok);
    CHECK(rep.samples[0].milnor == 2);
    CHECK(rep.samples[1].milnor == 2);
    // f - g = x^3 is a triple line
    CHECK_FALSE(rep.samples[2].ok);
}
