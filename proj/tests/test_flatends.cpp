#include <hodgekit/flat_ends.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace hodgekit;

namespace {

IntMatrix int_matrix(std::size_t n, std::vector<std::vector<int>> vals)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = vals[i][j];
    return m;
}

IntMatrix rot4() { return int_matrix(2, {{0, -1}, {1, 0}}); }
IntMatrix minus_id2() { return int_matrix(2, {{-1, 0}, {0, -1}}); }

/**
 * Averaging-projector oracle: assemble Λ^k(γ) explicitly (minors over sorted
 * subsets), average over the group, and take the rank. Independent of the
 * trace path used by invariant_betti.
 */
std::size_t projector_rank(const LatticeGroup& g, std::size_t k)
{
    std::vector<std::vector<std::size_t>> subsets;
    {
        std::vector<std::size_t> subset(k);
        for (std::size_t i = 0; i < k; ++i)
            subset[i] = i;
        if (k == 0) {
            subsets.push_back({});
        } else if (k <= g.m) {
            while (true) {
                subsets.push_back(subset);
                bool advanced = false;
                std::size_t i = k;
                while (i-- > 0)
                    if (subset[i] + (k - i) < g.m) {
                        ++subset[i];
                        for (std::size_t j = i + 1; j < k; ++j)
                            subset[j] = subset[j - 1] + 1;
                        advanced = true;
                        break;
                    }
                if (!advanced)
                    break;
            }
        }
    }
    const std::size_t dim = subsets.size();
    RatMatrix average(dim, dim);
    for (const IntMatrix& gamma : g.elements)
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                IntMatrix minor(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        minor(i, j) = gamma(subsets[r][i], subsets[c][j]);
                average(r, c) += Rat(det(minor));
            }
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            average(r, c) /= Rat(static_cast<long>(g.order()));
    return rank(average);
}

} // namespace

TEST_CASE("group closure of standard generators", "[flatends]")
{
    LatticeGroup trivial = group_closure(2, {});
    CHECK(trivial.order() == 1);

    LatticeGroup c4 = group_closure(2, {rot4()});
    CHECK(c4.order() == 4);

    LatticeGroup pm = group_closure(2, {minus_id2()});
    CHECK(pm.order() == 2);

    try {
        group_closure(2, {int_matrix(2, {{1, 1}, {0, 1}})}, 10000);
        FAIL("expected CapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CapExceeded);
    }

    try {
        group_closure(2, {int_matrix(2, {{2, 0}, {0, 1}})});
        FAIL("expected NotUnimodular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotUnimodular);
    }
}

TEST_CASE("group closure is idempotent", "[flatends]")
{
    LatticeGroup c4 = group_closure(2, {rot4()});
    LatticeGroup again = group_closure(2, c4.elements);
    REQUIRE(again.order() == c4.order());
    for (std::size_t i = 0; i < c4.elements.size(); ++i)
        CHECK(again.elements[i] == c4.elements[i]);
}

TEST_CASE("empty-rank group conventions", "[flatends]")
{
    LatticeGroup t0 = trivial_group(0);
    CHECK(t0.order() == 1);
    CHECK(exterior_traces(t0.elements[0]) == IntVec{Int(1)});
    CHECK(lefschetz(t0.elements[0]) == 1);
    CHECK(chi_equivariant(t0) == 1);
}

TEST_CASE("exterior traces", "[flatends]")
{
    CHECK(exterior_traces(IntMatrix::identity(2)) == IntVec{Int(1), Int(2), Int(1)});
    CHECK(exterior_traces(rot4()) == IntVec{Int(1), Int(0), Int(1)});
    CHECK(exterior_traces(minus_id2()) == IntVec{Int(1), Int(-2), Int(1)});

    IntMatrix g = int_matrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    IntVec t = exterior_traces(g);
    CHECK(t[0] == 1);
    CHECK(t[3] == det(g));
}

TEST_CASE("lefschetz numbers", "[flatends]")
{
    CHECK(lefschetz(IntMatrix::identity(3)) == 0);
    CHECK(lefschetz(rot4()) == 2);
    CHECK(lefschetz(minus_id2()) == 4);
}

TEST_CASE("invariant Betti numbers against the projector oracle", "[flatends]")
{
    LatticeGroup trivial = group_closure(2, {});
    CHECK(invariant_betti(trivial, 0) == 1);
    CHECK(invariant_betti(trivial, 1) == 2);
    CHECK(invariant_betti(trivial, 2) == 1);

    LatticeGroup pm = group_closure(2, {minus_id2()});
    CHECK(invariant_betti(pm, 0) == 1);
    CHECK(invariant_betti(pm, 1) == 0);
    CHECK(invariant_betti(pm, 2) == 1);

    LatticeGroup c4 = group_closure(2, {rot4()});
    CHECK(invariant_betti(c4, 0) == 1);
    CHECK(invariant_betti(c4, 1) == 0);
    CHECK(invariant_betti(c4, 2) == 1);

    for (const LatticeGroup& g : {trivial, pm, c4})
        for (std::size_t k = 0; k <= g.m; ++k)
            CHECK(invariant_betti(g, k) == projector_rank(g, k));

    // a 3x3 permutation group, checked against the oracle as well
    LatticeGroup s3 = group_closure(
        3, {int_matrix(3, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}),
            int_matrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})});
    CHECK(s3.order() == 6);
    for (std::size_t k = 0; k <= 3; ++k)
        CHECK(invariant_betti(s3, k) == projector_rank(s3, k));
}

TEST_CASE("equivariant Euler characteristic", "[flatends]")
{
    LatticeGroup trivial = group_closure(2, {});
    CHECK(chi_equivariant(trivial) == 0);

    LatticeGroup pm = group_closure(2, {minus_id2()});
    CHECK(chi_equivariant(pm) == 2);

    LatticeGroup c4 = group_closure(2, {rot4()});
    CHECK(chi_equivariant(c4) == 2);
}

TEST_CASE("q of an end", "[flatends]")
{
    // rank-zero ends: q = 1/#Γ − 1
    CHECK(q_end(make_end(2, 2, trivial_group(0), 1)) == Rat(0));
    CHECK(q_end(make_end(2, 2, trivial_group(0), 2)) == Rat(-1, 2));
    CHECK(q_end(make_end(2, 2, trivial_group(0), 3)) == Rat(-2, 3));
    CHECK(q_end(make_end(2, 2, trivial_group(0), 5)) == Rat(-4, 5));

    // torsion-free holonomy: q = 0
    CHECK(q_end(make_end(2, 4, trivial_group(2))) == Rat(0));

    LatticeGroup pm = group_closure(2, {minus_id2()});
    CHECK(q_end(make_end(2, 4, pm)) == Rat(-2));

    try {
        q_end(make_parabolic_end(2, 2));
        FAIL("expected ParabolicEnd");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParabolicEnd);
    }
}

TEST_CASE("boundary terms", "[flatends]")
{
    CHECK(boundary_term(make_end(3, 4, trivial_group(1))) == Rat(0));
    CHECK(boundary_term(make_end(4, 4, trivial_group(0), 5)) == Rat(1, 5));
    CHECK(boundary_term(make_end(4, 4, trivial_group(0), 1)) == Rat(1));
    CHECK_THROWS_AS(boundary_term(make_parabolic_end(2, 2)), Error);
}

TEST_CASE("chi_l2 over flat ends", "[flatends]")
{
    // R^3 x S^1 style end: everything vanishes
    ChiL2Report flat = chi_l2(0, {make_end(3, 4, trivial_group(1))});
    CHECK(flat.chi_l2 == 0);
    CHECK(flat.integral_omega == Rat(0));
    CHECK(flat.q_sum == Rat(0));

    LatticeGroup pm = group_closure(2, {minus_id2()});
    ChiL2Report r = chi_l2(1, {make_end(2, 4, pm)});
    CHECK(r.chi_l2 == -1);
    CHECK(Rat(r.chi_l2) == r.integral_omega + r.q_sum);

    // simply connected Euclidean end: χ_{L²} = χ − 1
    ChiL2Report e = chi_l2(1, {make_end(4, 4, trivial_group(0), 1)});
    CHECK(e.chi_l2 == 0);
    CHECK(e.integral_omega == Rat(0));
    CHECK(e.q_sum == Rat(0));

    try {
        chi_l2(0, {make_parabolic_end(2, 2)});
        FAIL("expected ParabolicEnd");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::ParabolicEnd);
    }
}

TEST_CASE("warped-product Euler formulas", "[flatends]")
{
    CHECK(chi_l2_warped(7, {1, 1}, WarpedMode::cone, 2) == 7); // empty sum
    CHECK(chi_l2_warped(3, {1, 3, 3, 1}, WarpedMode::cone, 4) == 2);
    CHECK(chi_l2_warped(3, {1, 3, 3, 1}, WarpedMode::shrinking, 4) == 1);

    try {
        chi_l2_warped(0, {1, 1, 1}, WarpedMode::cone, 3);
        FAIL("expected OddDimension");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddDimension);
    }
    CHECK_THROWS_AS(chi_l2_warped(0, {1, 1}, WarpedMode::cone, 4), Error); // wrong length
}

TEST_CASE("end descriptor validation", "[flatends]")
{
    CHECK_THROWS_AS(make_end(1, 3, trivial_group(2)), Error);       // ν < 2
    CHECK_THROWS_AS(make_end(4, 3, trivial_group(0)), Error);       // n < ν
    CHECK_THROWS_AS(make_end(2, 4, trivial_group(1)), Error);       // group rank mismatch
    CHECK_THROWS_AS(make_end(2, 2, trivial_group(0), 0), Error);    // zero cover order
}
