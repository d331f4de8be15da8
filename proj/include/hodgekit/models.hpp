#ifndef HODGEKIT_MODELS_HPP
#define HODGEKIT_MODELS_HPP

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/weighted.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hodgekit {

// --- Model specs --------------------------------------------------------------

enum class ModelKind { circle, interval, torus, sphere, ball, annulus, end_model, core_model };

struct ModelSpec {
    ModelKind kind = ModelKind::circle;
    std::size_t resolution = 3; ///< circle subdivision (≥ 3)
    std::size_t nu = 2;         ///< sphere(ν) is the (ν−1)-sphere, ball(ν) the ν-ball
    std::size_t torus_rank = 0; ///< m, number of circle factors
    std::size_t shells = 1;     ///< interval subdivisions of the radial direction
};

struct BuiltModel {
    std::shared_ptr<const CellComplex> complex_ptr;
    std::map<std::string, Subcomplex> subcomplexes; ///< designated parts, by name

    const CellComplex& complex() const { return *complex_ptr; }

    const Subcomplex& part(const std::string& name) const
    {
        auto it = subcomplexes.find(name);
        if (it == subcomplexes.end())
            throw Error(ErrorCode::UnknownId, "model has no designated subcomplex '" + name + "'");
        return it->second;
    }
};

// --- Elementary builders --------------------------------------------------------

/// Circle as an n-cycle: vertices v0..v_{n-1}, edges e_i from v_i to v_{i+1}.
inline CellComplex make_circle(std::size_t resolution)
{
    if (resolution < 3)
        throw Error(ErrorCode::InvalidSpec, "circle resolution must be at least 3");
    CellComplex x(1);
    for (std::size_t i = 0; i < resolution; ++i)
        x.add_cell("v" + std::to_string(i), 0);
    for (std::size_t i = 0; i < resolution; ++i)
        x.add_cell("e" + std::to_string(i), 1,
                   {{(i + 1) % resolution, 1}, {i, -1}});
    return x;
}

/// Path with `segments` edges: vertices r0..r_s, radial edges dr_i.
inline CellComplex make_interval(std::size_t segments)
{
    if (segments < 1)
        throw Error(ErrorCode::InvalidSpec, "interval needs at least one segment");
    CellComplex x(1);
    for (std::size_t i = 0; i <= segments; ++i)
        x.add_cell("r" + std::to_string(i), 0);
    for (std::size_t i = 0; i < segments; ++i)
        x.add_cell("dr" + std::to_string(i), 1, {{i + 1, 1}, {i, -1}});
    return x;
}

inline CellComplex make_point()
{
    CellComplex x(0);
    x.add_cell("pt", 0);
    return x;
}

/// m-fold product of circles; the empty product is a point.
inline CellComplex make_torus(std::size_t rank, std::size_t resolution = 3)
{
    if (rank == 0)
        return make_point();
    CellComplex t = make_circle(resolution);
    for (std::size_t i = 1; i < rank; ++i)
        t = product(t, make_circle(resolution));
    return t;
}

namespace detail {

/// Vertex tokens of the ν-cross-polytope: p<i> / m<i> for ±e_i, i = 1..ν.
inline std::string polytope_vertex(std::size_t axis, bool positive)
{
    return (positive ? "p" : "m") + std::to_string(axis + 1);
}

inline std::string simplex_id(const std::vector<std::string>& vertices)
{
    std::string id = vertices[0];
    for (std::size_t i = 1; i < vertices.size(); ++i)
        id += "_" + vertices[i];
    return id;
}

} // namespace detail

/**
 * The (ν−1)-sphere as the boundary of the ν-dimensional cross-polytope: 2ν
 * vertices ±e_i, and one (k)-simplex for every choice of k+1 distinct axes
 * with a sign each. Incidence signs come from the ordered-vertex rule.
 */
inline CellComplex make_sphere(std::size_t nu)
{
    if (nu < 2)
        throw Error(ErrorCode::InvalidSpec, "sphere dimension parameter must be at least 2");
    CellComplex x(nu - 1);

    // simplices of dimension k: axis subsets of size k+1 with signs
    for (std::size_t k = 0; k < nu; ++k) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << nu); ++mask) {
            std::vector<std::size_t> axes;
            for (std::size_t a = 0; a < nu; ++a)
                if ((mask >> a) & 1)
                    axes.push_back(a);
            if (axes.size() != k + 1)
                continue;
            std::size_t combos = std::size_t(1) << (k + 1);
            for (std::size_t bits = 0; bits < combos; ++bits) {
                std::vector<std::string> verts;
                for (std::size_t i = 0; i <= k; ++i)
                    verts.push_back(detail::polytope_vertex(axes[i], (bits >> i) & 1));
                BoundaryChain chain;
                if (k > 0) {
                    for (std::size_t drop = 0; drop <= k; ++drop) {
                        std::vector<std::string> face;
                        for (std::size_t i = 0; i <= k; ++i)
                            if (i != drop)
                                face.push_back(verts[i]);
                        auto [fk, findex] = x.locate(detail::simplex_id(face));
                        (void)fk;
                        chain.emplace_back(findex, drop % 2 == 0 ? 1 : -1);
                    }
                }
                x.add_cell(detail::simplex_id(verts), k, std::move(chain));
            }
        }
    }
    return x;
}

/// Cone on the boundary sphere: the ν-ball. Apex id "c"; cone cells "c_<σ>"
/// with ∂(cσ) = σ − c·∂σ.
inline CellComplex make_ball(std::size_t nu)
{
    CellComplex sphere = make_sphere(nu);
    CellComplex x(nu);
    x.add_cell("c", 0);
    for (std::size_t k = 0; k <= sphere.top_dim(); ++k)
        for (std::size_t i = 0; i < sphere.size(k); ++i) {
            BoundaryChain chain;
            for (const auto& [face, coef] : sphere.boundary_chain(k, i)) {
                auto [fk, findex] = x.locate(sphere.id(k - 1, face));
                (void)fk;
                chain.emplace_back(findex, coef);
            }
            x.add_cell(sphere.id(k, i), k, std::move(chain));
        }
    for (std::size_t k = 0; k <= sphere.top_dim(); ++k)
        for (std::size_t i = 0; i < sphere.size(k); ++i) {
            BoundaryChain chain;
            // σ itself ...
            chain.emplace_back(x.locate(sphere.id(k, i)).second, 1);
            if (k == 0) {
                chain.emplace_back(x.locate("c").second, -1);
            } else {
                // ... minus the cone on ∂σ
                for (const auto& [face, coef] : sphere.boundary_chain(k, i))
                    chain.emplace_back(x.locate("c_" + sphere.id(k - 1, face)).second, -coef);
            }
            x.add_cell("c_" + sphere.id(k, i), k + 1, std::move(chain));
        }
    return x;
}

// --- Assembled models -------------------------------------------------------------

namespace detail {

inline std::vector<std::string> id_tokens(const std::string& id)
{
    std::vector<std::string> tokens;
    std::string current;
    for (char c : id) {
        if (c == '*') {
            tokens.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    tokens.push_back(current);
    return tokens;
}

/// Select product cells by a predicate on their factor tokens.
template <typename Pred>
Subcomplex select_cells(const CellComplex& x, Pred&& pred)
{
    Subcomplex s(x);
    for (std::size_t k = 0; k <= x.top_dim(); ++k)
        for (std::size_t i = 0; i < x.size(k); ++i)
            if (pred(id_tokens(x.id(k, i))))
                s.insert(k, i);
    return s;
}

} // namespace detail

/// Builds the requested model and its designated subcomplexes.
inline BuiltModel build(const ModelSpec& spec)
{
    BuiltModel out;
    switch (spec.kind) {
    case ModelKind::circle:
        out.complex_ptr = std::make_shared<CellComplex>(make_circle(spec.resolution));
        break;
    case ModelKind::interval: {
        auto ptr = std::make_shared<CellComplex>(make_interval(spec.shells));
        out.complex_ptr = ptr;
        Subcomplex ends(*ptr);
        ends.insert(0, 0);
        ends.insert(0, spec.shells);
        out.subcomplexes.emplace("boundary", std::move(ends));
        break;
    }
    case ModelKind::torus:
        out.complex_ptr =
            std::make_shared<CellComplex>(make_torus(spec.torus_rank, spec.resolution));
        break;
    case ModelKind::sphere:
        out.complex_ptr = std::make_shared<CellComplex>(make_sphere(spec.nu));
        break;
    case ModelKind::ball: {
        auto ptr = std::make_shared<CellComplex>(make_ball(spec.nu));
        out.complex_ptr = ptr;
        out.subcomplexes.emplace("boundary", detail::select_cells(*ptr, [](const auto& tokens) {
                                     const std::string& t = tokens[0];
                                     return t != "c" && t.rfind("c_", 0) != 0;
                                 }));
        break;
    }
    case ModelKind::annulus: {
        auto ptr = std::make_shared<CellComplex>(
            product(make_circle(spec.resolution), make_interval(1)));
        out.complex_ptr = ptr;
        auto at_shell = [](const std::string& shell) {
            return [shell](const std::vector<std::string>& tokens) {
                return tokens[1] == shell;
            };
        };
        out.subcomplexes.emplace("inner", detail::select_cells(*ptr, at_shell("r0")));
        out.subcomplexes.emplace("outer", detail::select_cells(*ptr, at_shell("r1")));
        out.subcomplexes.emplace("boundary",
                                 detail::select_cells(*ptr, [](const auto& tokens) {
                                     return tokens[1] == "r0" || tokens[1] == "r1";
                                 }));
        break;
    }
    case ModelKind::end_model: {
        if (spec.nu < 2)
            throw Error(ErrorCode::InvalidSpec, "end model needs ν ≥ 2");
        CellComplex se = product(make_sphere(spec.nu), make_interval(spec.shells));
        // the rank-zero torus is a point: the product would only rename cells
        auto ptr = std::make_shared<CellComplex>(
            spec.torus_rank == 0 ? std::move(se)
                                 : product(se, make_torus(spec.torus_rank, spec.resolution)));
        out.complex_ptr = ptr;
        std::string outer = "r" + std::to_string(spec.shells);
        out.subcomplexes.emplace("inner", detail::select_cells(*ptr, [](const auto& tokens) {
                                     return tokens[1] == "r0";
                                 }));
        out.subcomplexes.emplace("outer", detail::select_cells(*ptr, [outer](const auto& tokens) {
                                     return tokens[1] == outer;
                                 }));
        out.subcomplexes.emplace("boundary",
                                 detail::select_cells(*ptr, [outer](const auto& tokens) {
                                     return tokens[1] == "r0" || tokens[1] == outer;
                                 }));
        out.subcomplexes.emplace("fiber", detail::select_cells(*ptr, [](const auto& tokens) {
                                     return tokens[0] == "p1" && tokens[1] == "r0";
                                 }));
        break;
    }
    case ModelKind::core_model: {
        if (spec.nu < 2)
            throw Error(ErrorCode::InvalidSpec, "core model needs ν ≥ 2");
        CellComplex ball = make_ball(spec.nu);
        auto ptr = std::make_shared<CellComplex>(
            spec.torus_rank == 0 ? std::move(ball)
                                 : product(ball, make_torus(spec.torus_rank, spec.resolution)));
        out.complex_ptr = ptr;
        out.subcomplexes.emplace("boundary", detail::select_cells(*ptr, [](const auto& tokens) {
                                     const std::string& t = tokens[0];
                                     return t != "c" && t.rfind("c_", 0) != 0;
                                 }));
        out.subcomplexes.emplace("fiber", detail::select_cells(*ptr, [](const auto& tokens) {
                                     return tokens[0] == "c";
                                 }));
        break;
    }
    }
    return out;
}

// --- Radial weights ------------------------------------------------------------------

/**
 * Weight profile emulating the volume element r^{ν−1} of a truncated flat
 * end: a product cell at shell radius r with p tangential (sphere or torus)
 * factor dimensions and q radial factor dimensions gets weight
 * r^{ν−1−2p+q}. The shell radius of a cell is r0 + step · (index of its
 * radial factor cell, counted at the inner endpoint for radial edges).
 *
 * Works on any complex whose cell ids carry end-model structure (as emitted
 * by build / the model CLI); anything else is refused.
 */
inline WeightedComplex radial_weights(const CellComplex& x, std::size_t nu, const Rat& r0,
                                      const Rat& step)
{
    if (nu < 2)
        throw Error(ErrorCode::InvalidSpec, "radial_weights: ν must be at least 2");
    std::vector<RatVec> weights(x.top_dim() + 1);
    for (std::size_t k = 0; k <= x.top_dim(); ++k) {
        weights[k].assign(x.size(k), Rat(1));
        for (std::size_t i = 0; i < x.size(k); ++i) {
            std::vector<std::string> tokens = detail::id_tokens(x.id(k, i));
            if (tokens.size() < 2)
                throw Error(ErrorCode::NotAnEndModel,
                            "radial_weights: cell '" + x.id(k, i) + "' is not an end-model cell");
            long p = 0, q = 0;
            long shell = -1;
            // sphere factor: dimension = number of '_' separators
            for (char c : tokens[0])
                if (c == '_')
                    ++p;
            if (tokens[0].empty() || (tokens[0][0] != 'p' && tokens[0][0] != 'm'))
                throw Error(ErrorCode::NotAnEndModel,
                            "radial_weights: cell '" + x.id(k, i) + "' lacks a sphere factor");
            const std::string& radial = tokens[1];
            try {
                if (radial.rfind("dr", 0) == 0) {
                    q = 1;
                    shell = std::stol(radial.substr(2));
                } else if (radial.rfind("r", 0) == 0) {
                    shell = std::stol(radial.substr(1));
                }
            } catch (const std::exception&) {
                shell = -1;
            }
            if (shell < 0)
                throw Error(ErrorCode::NotAnEndModel,
                            "radial_weights: cell '" + x.id(k, i) + "' lacks a radial factor");
            for (std::size_t t = 2; t < tokens.size(); ++t) {
                if (tokens[t].empty())
                    throw Error(ErrorCode::NotAnEndModel, "radial_weights: malformed id");
                if (tokens[t][0] == 'e')
                    ++p;
            }
            Rat radius = r0 + step * shell;
            if (radius <= 0)
                throw Error(ErrorCode::InvalidSpec, "radial_weights: shell radius not positive");
            long exponent = static_cast<long>(nu) - 1 - 2 * p + q;
            Rat w(1);
            for (long e = 0; e < (exponent < 0 ? -exponent : exponent); ++e)
                w *= radius;
            weights[k][i] = exponent < 0 ? Rat(1) / w : w;
        }
    }
    return WeightedComplex(x, std::move(weights));
}

WeightedComplex radial_weights(const CellComplex&&, std::size_t, const Rat&, const Rat&) = delete;

// --- Truncation sweep -----------------------------------------------------------------

struct SweepRow {
    std::size_t shells = 0;
    std::size_t dim = 0; ///< relative harmonic dimension under the radial profile
};

/**
 * For each shell count R: build end_model(ν, m, R), apply the radial weight
 * profile, and record the degree-k harmonic dimension relative to the full
 * (inner and outer) boundary. The unit-weight dimension is computed alongside
 * and must not depend on R — truncation depth never changes the topology.
 */
inline std::vector<SweepRow> sweep(std::size_t nu, std::size_t m, std::size_t k,
                                   const std::vector<std::size_t>& shell_counts,
                                   std::size_t resolution = 3, const Rat& r0 = Rat(1),
                                   const Rat& step = Rat(1))
{
    std::vector<SweepRow> rows;
    bool have_unit = false;
    std::size_t unit_dim = 0;
    for (std::size_t shells : shell_counts) {
        ModelSpec spec;
        spec.kind = ModelKind::end_model;
        spec.nu = nu;
        spec.torus_rank = m;
        spec.shells = shells;
        spec.resolution = resolution;
        BuiltModel model = build(spec);
        const Subcomplex& boundary = model.part("boundary");
        HarmonicContext context(model.complex(), boundary);

        WeightedComplex weighted = radial_weights(model.complex(), nu, r0, step);
        std::size_t dim = context.basis(weighted, k).dim();

        WeightedComplex unit(model.complex());
        std::size_t dim_unit = context.basis(unit, k).dim();
        if (!have_unit) {
            unit_dim = dim_unit;
            have_unit = true;
        } else if (dim_unit != unit_dim) {
            throw Error(ErrorCode::LogicError,
                        "sweep: unit-weight dimension changed with truncation depth");
        }
        rows.push_back({shells, dim});
    }
    return rows;
}

} // namespace hodgekit

#endif // HODGEKIT_MODELS_HPP
