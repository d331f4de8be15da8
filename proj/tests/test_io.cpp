#include <hodgekit/io.hpp>
#include <hodgekit/models.hpp>
#include <hodgekit/weighted.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace hodgekit;

namespace {

CellComplex parse_str(const std::string& text)
{
    std::istringstream in(text);
    return parse_complex(in, "test.cc");
}

} // namespace

TEST_CASE("complex round-trips through its text form", "[io]")
{
    CellComplex torus = make_torus(2);
    std::string text = complex_to_text(torus);
    CellComplex parsed = parse_str(text);

    CHECK(parsed.top_dim() == torus.top_dim());
    for (std::size_t k = 0; k <= torus.top_dim(); ++k) {
        REQUIRE(parsed.size(k) == torus.size(k));
        CHECK(parsed.ids(k) == torus.ids(k));
        CHECK(parsed.boundary_matrix(k) == torus.boundary_matrix(k));
    }
    // emission is canonical: emit(parse(emit(x))) == emit(x)
    CHECK(complex_to_text(parsed) == text);
}

TEST_CASE("complex parser reports malformed input with line numbers", "[io]")
{
    auto expect_parse_error = [](const std::string& text, std::size_t line) {
        try {
            parse_str(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };

    expect_parse_error("cellcomplex v2\n", 1);
    expect_parse_error("cellcomplex v1\ncell a 0\n", 2);                       // missing dim
    expect_parse_error("cellcomplex v1\ndim 1\ncell a 0\ncell a 0\n", 4);      // duplicate id
    expect_parse_error("cellcomplex v1\ndim 1\ncell a 0\ncell e 1\nbd e 1:z\n", 5); // unknown face
    expect_parse_error("cellcomplex v1\ndim 1\ncell a 0\nbd a 1:a\n", 4);      // bd on a 0-cell
    expect_parse_error("cellcomplex v1\ndim 2\ncell a 0\ncell b 0\ncell f 2\nbd f 1:a\n", 6); // wrong face dim
    expect_parse_error("cellcomplex v1\ndim 1\ncell a 0\ncell e 1\nbd e 1:a\nbd e 1:a\n", 6); // duplicate bd
    expect_parse_error("cellcomplex v1\ndim 1\ncell a 9\n", 3);                // dim above declared
}

TEST_CASE("comments and blank lines are ignored", "[io]")
{
    CellComplex x = parse_str("# circle\ncellcomplex v1\n\ndim 1\n"
                              "cell v0 0\ncell v1 0\ncell v2 0 # third vertex\n"
                              "cell e0 1\ncell e1 1\ncell e2 1\n"
                              "bd e0 1:v1 -1:v0\nbd e1 1:v2 -1:v1\nbd e2 1:v0 -1:v2\n");
    CHECK(validate(x).ok());
    CHECK(betti_all(x) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("subcomplex parser", "[io]")
{
    CellComplex torus = make_torus(2);
    std::string face = torus.id(2, 0);
    Subcomplex closure = subcomplex_closure(torus, {face});
    std::string text = subcomplex_to_text(closure);

    std::istringstream in(text);
    Subcomplex parsed = parse_subcomplex(in, "sub.sc", torus);
    CHECK(parsed.total_cells() == closure.total_cells());
    CHECK(subcomplex_to_text(parsed) == text);

    std::istringstream bad("subcomplex v1\nsel nope\n");
    try {
        parse_subcomplex(bad, "sub.sc", torus);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    std::istringstream dup("subcomplex v1\nsel " + face + "\nsel " + face + "\n");
    CHECK_THROWS_AS(parse_subcomplex(dup, "sub.sc", torus), ParseError);
}

TEST_CASE("weights parser and completeness rules", "[io]")
{
    CellComplex circle = make_circle(3);
    std::istringstream in("weights v1\nw v0 1/2\nw v1 3/4\nw v2 1/1\n"
                          "w e0 2/3\nw e1 5/1\nw e2 7/2\n");
    auto by_id = parse_weights(in, "w.wt", circle);
    WeightedComplex w(circle, by_id);
    CHECK(w.weight(0, 0) == Rat(1, 2));
    CHECK(w.weight(1, 2) == Rat(7, 2));

    std::istringstream partial("weights v1\nw v0 1/2\n");
    auto sparse = parse_weights(partial, "w.wt", circle);
    CHECK_THROWS_AS(WeightedComplex(circle, sparse), Error);          // missing ids
    WeightedComplex defaulted(circle, sparse, true);                  // --default-unit
    CHECK(defaulted.weight(0, 1) == 1);

    std::istringstream zero("weights v1\nw v0 0/2\n");
    CHECK_THROWS_AS(parse_weights(zero, "w.wt", circle), ParseError); // weights positive

    std::istringstream unknown("weights v1\nw zz 1/2\n");
    CHECK_THROWS_AS(parse_weights(unknown, "w.wt", circle), ParseError);

    std::istringstream dup("weights v1\nw v0 1/2\nw v0 1/3\n");
    CHECK_THROWS_AS(parse_weights(dup, "w.wt", circle), ParseError);
}

TEST_CASE("group generator parser", "[io]")
{
    std::istringstream in("glz v1\nrank 2\ngen\n0 -1\n1 0\ngen\n-1 0\n0 -1\n");
    std::size_t m = 0;
    auto gens = parse_group_generators(in, "g.glz", &m);
    CHECK(m == 2);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0](0, 1) == -1);
    CHECK(gens[1](0, 0) == -1);

    std::istringstream trivial("glz v1\nrank 0\n");
    std::size_t m0 = 9;
    CHECK(parse_group_generators(trivial, "g.glz", &m0).empty());
    CHECK(m0 == 0);

    std::istringstream short_row("glz v1\nrank 2\ngen\n1 0\n");
    CHECK_THROWS_AS(parse_group_generators(short_row, "g.glz"), ParseError);

    std::istringstream junk("glz v1\nrank 2\ngen\n1 x\n0 1\n");
    CHECK_THROWS_AS(parse_group_generators(junk, "g.glz"), ParseError);
}
