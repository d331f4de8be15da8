#include <hodgekit/models.hpp>
#include <hodgekit/weighted.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

#include <map>
#include <random>

using namespace hodgekit;

namespace {

/// Random positive weights for every cell, from a fixed-seed generator.
WeightedComplex random_weighting(const CellComplex& x, std::mt19937& rng)
{
    std::vector<RatVec> weights(x.top_dim() + 1);
    for (std::size_t k = 0; k <= x.top_dim(); ++k) {
        weights[k].resize(x.size(k));
        for (auto& w : weights[k])
            w = test_support::random_positive_rational(rng);
    }
    return WeightedComplex(x, std::move(weights));
}

RatVec unit_cochain(std::size_t n, std::size_t at)
{
    RatVec v(n, Rat(0));
    v[at] = 1;
    return v;
}

} // namespace

TEST_CASE("codifferential with unit weights is the plain transpose", "[hodge]")
{
    CellComplex circle = make_circle(3);
    WeightedComplex unit(circle);
    CHECK(unit.codifferential(1) == circle.coboundary_matrix(0).transpose());

    // a global weight scale cancels in δ
    std::map<std::string, Rat> twos;
    for (std::size_t k = 0; k <= circle.top_dim(); ++k)
        for (const std::string& id : circle.ids(k))
            twos[id] = 2;
    WeightedComplex scaled(circle, twos);
    CHECK(scaled.codifferential(1) == unit.codifferential(1));

    CHECK_THROWS_AS(unit.codifferential(0), Error);
    CHECK_THROWS_AS(unit.codifferential(2), Error);
}

TEST_CASE("codifferential carries the edge weights and satisfies adjointness", "[hodge]")
{
    CellComplex circle = make_circle(3);
    std::map<std::string, Rat> by_id{{"v0", Rat(1)}, {"v1", Rat(1)}, {"v2", Rat(1)},
                                     {"e0", Rat(1)}, {"e1", Rat(2)}, {"e2", Rat(3)}};
    WeightedComplex w(circle, by_id);

    RatMatrix delta = w.codifferential(1);
    RatMatrix expected = circle.coboundary_matrix(0).transpose();
    for (std::size_t j = 0; j < 3; ++j)
        expected.scale_col(j, by_id[circle.id(1, j)]);
    CHECK(delta == expected);

    // ⟨d a, b⟩₁ = ⟨a, δ b⟩₀ over the full standard basis
    RatMatrix d0 = w.coboundary(0);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            RatVec da = d0.apply(unit_cochain(3, a));
            RatVec db = delta.apply(unit_cochain(3, b));
            CHECK(w.inner(1, da, unit_cochain(3, b)) == w.inner(0, unit_cochain(3, a), db));
        }
}

TEST_CASE("adjoint identity holds for random weightings", "[hodge]")
{
    std::mt19937 rng(321);
    BuiltModel annulus = build({ModelKind::annulus, 3, 2, 0, 1});
    const CellComplex& x = annulus.complex();
    for (int trial = 0; trial < 5; ++trial) {
        WeightedComplex w = random_weighting(x, rng);
        for (std::size_t k = 1; k <= x.top_dim(); ++k) {
            RatMatrix d = w.coboundary(k - 1);
            RatMatrix delta = w.codifferential(k);
            for (std::size_t a = 0; a < x.size(k - 1); ++a)
                for (std::size_t b = 0; b < x.size(k); ++b) {
                    RatVec da = d.apply(unit_cochain(x.size(k - 1), a));
                    RatVec deltab = delta.apply(unit_cochain(x.size(k), b));
                    CHECK(w.inner(k, da, unit_cochain(x.size(k), b)) ==
                          w.inner(k - 1, unit_cochain(x.size(k - 1), a), deltab));
                }
        }
    }
}

TEST_CASE("Laplacian of 0-forms on the triangle is the graph Laplacian", "[hodge]")
{
    CellComplex circle = make_circle(3);
    WeightedComplex w(circle);
    RatMatrix lap = w.laplacian(0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(lap(i, j) == (i == j ? Rat(2) : Rat(-1)));

    CHECK(nullspace_basis(lap).dim() == 1); // constants on a connected complex
}

TEST_CASE("kernel of the weighted Laplacian matches the Betti number", "[hodge]")
{
    std::mt19937 rng(99);
    CellComplex torus = make_torus(2);
    WeightedComplex w = random_weighting(torus, rng);
    Subspace kernel = nullspace_basis(w.laplacian(1));
    CHECK(kernel.dim() == 2);

    // ker Δ = ker d ∩ ker δ, both inclusions on bases
    HarmonicBasis h = harmonic_basis(w, 1);
    CHECK(h.dim() == 2);
    RatMatrix lap = w.laplacian(1);
    for (const RatVec& v : h.vectors)
        for (const Rat& e : lap.apply(v))
            CHECK(e == 0);
    RatMatrix d = w.coboundary(1);
    RatMatrix delta = w.codifferential(1);
    for (const RatVec& v : kernel.basis) {
        for (const Rat& e : d.apply(v))
            CHECK(e == 0);
        for (const Rat& e : delta.apply(v))
            CHECK(e == 0);
    }
}

TEST_CASE("harmonic basis of the circle is the uniform edge cochain", "[hodge]")
{
    CellComplex circle = make_circle(3);
    WeightedComplex w(circle);
    HarmonicBasis h = harmonic_basis(w, 1);
    REQUIRE(h.dim() == 1);
    CHECK(h.vectors[0][0] == h.vectors[0][1]);
    CHECK(h.vectors[0][1] == h.vectors[0][2]);
    CHECK(h.vectors[0][0] != 0);
}

TEST_CASE("relative harmonic dimensions of the disk pair", "[hodge]")
{
    BuiltModel disk = build({ModelKind::ball, 3, 2, 0, 1});
    WeightedComplex w(disk.complex());
    const Subcomplex& boundary = disk.part("boundary");
    CHECK(harmonic_basis(w, 1, BoundaryCondition::relative, boundary).dim() == 0);
    CHECK(harmonic_basis(w, 2, BoundaryCondition::relative, boundary).dim() == 1);
}

TEST_CASE("harmonic dimension is weight independent on the torus", "[hodge]")
{
    std::mt19937 rng(2024);
    CellComplex torus = make_torus(2);
    for (int trial = 0; trial < 50; ++trial) {
        WeightedComplex w = random_weighting(torus, rng);
        CHECK(harmonic_basis(w, 1).dim() == 2);
    }
}

TEST_CASE("relative condition requires a boundary-closed subcomplex", "[hodge]")
{
    CellComplex torus = make_torus(2);
    WeightedComplex w(torus);
    Subcomplex open_edge = Subcomplex::from_ids(torus, {torus.id(1, 0)});
    CHECK_THROWS_AS(harmonic_basis(w, 1, BoundaryCondition::relative, open_edge), Error);
}

TEST_CASE("hodge split is idempotent on harmonics and kills exact cochains", "[hodge]")
{
    std::mt19937 rng(5);
    CellComplex torus = make_torus(2);
    WeightedComplex w = random_weighting(torus, rng);

    HarmonicBasis h = harmonic_basis(w, 1);
    REQUIRE(h.dim() == 2);
    HodgeSplit split = hodge_split(w, 1, h.vectors[0]);
    CHECK(split.harmonic == h.vectors[0]);
    for (const Rat& e : split.exact)
        CHECK(e == 0);
    for (const Rat& e : split.coexact)
        CHECK(e == 0);

    RatVec u = test_support::random_vector(rng, torus.size(0));
    RatVec du = w.coboundary(0).apply(u);
    HodgeSplit s2 = hodge_split(w, 1, du);
    for (const Rat& e : s2.harmonic)
        CHECK(e == 0);
    for (const Rat& e : s2.coexact)
        CHECK(e == 0);
    CHECK(s2.exact == du);
}

TEST_CASE("hodge split: orthogonal parts, exact sum, exact potentials", "[hodge]")
{
    std::mt19937 rng(6);
    CellComplex torus = make_torus(2);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedComplex w = random_weighting(torus, rng);
        RatVec v = test_support::random_vector(rng, torus.size(1));
        HodgeSplit s = hodge_split(w, 1, v);

        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(v[i] == s.harmonic[i] + s.exact[i] + s.coexact[i]);
        CHECK(w.inner(1, s.harmonic, s.exact) == 0);
        CHECK(w.inner(1, s.harmonic, s.coexact) == 0);
        CHECK(w.inner(1, s.exact, s.coexact) == 0);

        CHECK(s.exact == w.coboundary(0).apply(s.potential_down));
        CHECK(s.coexact == w.codifferential(2).apply(s.potential_up));

        // harmonic part is closed and coclosed
        for (const Rat& e : w.coboundary(1).apply(s.harmonic))
            CHECK(e == 0);
        for (const Rat& e : w.codifferential(1).apply(s.harmonic))
            CHECK(e == 0);
    }
}

TEST_CASE("hodge split dimension bookkeeping", "[hodge]")
{
    std::mt19937 rng(8);
    CellComplex torus = make_torus(2);
    WeightedComplex w = random_weighting(torus, rng);
    for (std::size_t k = 0; k <= torus.top_dim(); ++k) {
        std::size_t h = harmonic_basis(w, k).dim();
        std::size_t rank_down = k == 0 ? 0 : rank(w.coboundary(k - 1));
        std::size_t rank_up = rank(w.coboundary(k)); // rank δ_{k+1} = rank d_k
        CHECK(torus.size(k) == h + rank_down + rank_up);
    }
}

TEST_CASE("double split of the interval pair", "[hodge]")
{
    CellComplex interval = make_interval(1);
    Subcomplex ends = Subcomplex::from_ids(interval, {"r0", "r1"});
    DoubleComplex d = make_double(interval, ends);
    WeightedComplex w(d.complex());

    DoubleSplitDims k0 = double_split(w, d.swap, 0);
    CHECK(k0.invariant == 1);
    CHECK(k0.anti_invariant == 0);
    DoubleSplitDims k1 = double_split(w, d.swap, 1);
    CHECK(k1.invariant == 0);
    CHECK(k1.anti_invariant == 1);
}

TEST_CASE("double split of the disk pair", "[hodge]")
{
    BuiltModel disk = build({ModelKind::ball, 3, 2, 0, 1});
    DoubleComplex d = make_double(disk.complex(), disk.part("boundary"));
    WeightedComplex w(d.complex());

    DoubleSplitDims k0 = double_split(w, d.swap, 0);
    CHECK(k0.invariant == 1);
    CHECK(k0.anti_invariant == 0);
    DoubleSplitDims k2 = double_split(w, d.swap, 2);
    CHECK(k2.invariant == 0);
    CHECK(k2.anti_invariant == 1);
}

TEST_CASE("double split of the annulus pair matches the torus", "[hodge]")
{
    BuiltModel annulus = build({ModelKind::annulus, 3, 2, 0, 1});
    DoubleComplex d = make_double(annulus.complex(), annulus.part("boundary"));
    WeightedComplex w(d.complex());
    DoubleSplitDims k1 = double_split(w, d.swap, 1);
    CHECK(k1.invariant == 1);
    CHECK(k1.anti_invariant == 1);
    CHECK(k1.invariant + k1.anti_invariant == betti(d.complex(), 1));
}

TEST_CASE("double split needs σ-symmetric weights", "[hodge]")
{
    CellComplex interval = make_interval(1);
    Subcomplex ends = Subcomplex::from_ids(interval, {"r0", "r1"});
    DoubleComplex d = make_double(interval, ends);

    std::map<std::string, Rat> lopsided;
    for (std::size_t k = 0; k <= d.complex().top_dim(); ++k)
        for (const std::string& id : d.complex().ids(k))
            lopsided[id] = id[0] == 'l' ? Rat(2) : Rat(1);
    WeightedComplex w(d.complex(), lopsided);
    CHECK_THROWS_AS(double_split(w, d.swap, 1), Error);
}

TEST_CASE("duality on disk, annulus and sphere", "[hodge]")
{
    BuiltModel disk = build({ModelKind::ball, 3, 2, 0, 1});
    WeightedComplex wd(disk.complex());
    DualityReport r = duality_check(wd, disk.part("boundary"), 0);
    CHECK(r.abs_dim == 1);
    CHECK(r.rel_dim == 1);
    CHECK(r.equal());

    BuiltModel annulus = build({ModelKind::annulus, 3, 2, 0, 1});
    WeightedComplex wa(annulus.complex());
    DualityReport ra = duality_check(wa, annulus.part("boundary"), 1);
    CHECK(ra.abs_dim == 1);
    CHECK(ra.rel_dim == 1);

    CellComplex sphere = make_sphere(3);
    WeightedComplex ws(sphere);
    for (std::size_t k = 0; k <= 2; ++k) {
        DualityReport rs = duality_check(ws, Subcomplex(sphere), k);
        CHECK(rs.equal());
    }
}
