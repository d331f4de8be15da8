#ifndef HODGEKIT_FLAT_ENDS_HPP
#define HODGEKIT_FLAT_ENDS_HPP

#include <hodgekit/errors.hpp>
#include <hodgekit/linalg.hpp>
#include <hodgekit/matrix.hpp>
#include <hodgekit/numeric.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

namespace hodgekit {

// --- Finite groups of lattice automorphisms -----------------------------------

/**
 * A finite subgroup of GL(m, Z), closed from generators. Carries the action
 * of an end's holonomy on H^1 of the fiber torus; everything downstream
 * (traces, determinants) only needs this integral action.
 */
struct LatticeGroup {
    std::size_t m = 0;
    std::vector<IntMatrix> generators;
    std::vector<IntMatrix> elements; ///< sorted lexicographically by entries; contains the identity

    std::size_t order() const { return elements.size(); }
};

inline LatticeGroup trivial_group(std::size_t m)
{
    LatticeGroup g;
    g.m = m;
    g.elements.push_back(IntMatrix::identity(m));
    return g;
}

namespace detail {

inline std::vector<Int> flatten(const IntMatrix& m)
{
    std::vector<Int> key;
    key.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            key.push_back(m(i, j));
    return key;
}

} // namespace detail

/**
 * Breadth-first multiplicative closure of the generators. A finite group is
 * reached exactly when every element has finite order, so inverses show up
 * as powers; if the closure passes `cap` elements the group is treated as
 * infinite and the run aborts with CapExceeded.
 */
inline LatticeGroup group_closure(std::size_t m, const std::vector<IntMatrix>& generators,
                                  std::size_t cap = 10000)
{
    for (const IntMatrix& g : generators) {
        if (g.rows() != m || g.cols() != m)
            throw Error(ErrorCode::DimMismatch, "group_closure: generator is not m x m");
        Int d = det(g);
        if (d != 1 && d != -1)
            throw Error(ErrorCode::NotUnimodular,
                        "group_closure: generator determinant is not ±1");
    }

    std::map<std::vector<Int>, std::size_t> seen;
    std::vector<IntMatrix> elements;
    std::deque<std::size_t> queue;

    IntMatrix id = IntMatrix::identity(m);
    seen.emplace(detail::flatten(id), 0);
    elements.push_back(id);
    queue.push_back(0);

    while (!queue.empty()) {
        std::size_t current = queue.front();
        queue.pop_front();
        for (const IntMatrix& g : generators) {
            IntMatrix next = elements[current] * g;
            std::vector<Int> key = detail::flatten(next);
            if (seen.count(key))
                continue;
            if (elements.size() >= cap)
                throw Error(ErrorCode::CapExceeded,
                            "group_closure: closure exceeded cap (group likely infinite)");
            seen.emplace(std::move(key), elements.size());
            elements.push_back(std::move(next));
            queue.push_back(elements.size() - 1);
        }
    }

    LatticeGroup group;
    group.m = m;
    group.generators = generators;
    group.elements.reserve(elements.size());
    for (const auto& [key, index] : seen) {
        (void)key;
        group.elements.push_back(std::move(elements[index]));
    }
    return group;
}

// --- Exterior algebra traces -----------------------------------------------------

namespace detail {

/// Sorted k-element subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t m, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > m)
        return out;
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i)
        subset[i] = i;
    while (true) {
        out.push_back(subset);
        bool advanced = false;
        std::size_t i = k;
        while (i-- > 0) {
            if (subset[i] + (k - i) < m) {
                ++subset[i];
                for (std::size_t j = i + 1; j < k; ++j)
                    subset[j] = subset[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return out;
    }
}

inline IntMatrix submatrix(const IntMatrix& g, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols)
{
    IntMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = g(rows[i], cols[j]);
    return out;
}

} // namespace detail

/**
 * t_k = trace of Λ^k g = sum of principal k x k minors, so that
 * det(I + x g) = Σ_k t_k x^k. t_0 = 1 and t_m = det g.
 */
inline IntVec exterior_traces(const IntMatrix& g)
{
    if (g.rows() != g.cols())
        throw Error(ErrorCode::DimMismatch, "exterior_traces: matrix not square");
    const std::size_t m = g.rows();
    IntVec traces(m + 1, Int(0));
    traces[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        Int sum = 0;
        for (const auto& subset : detail::k_subsets(m, k))
            sum += det(detail::submatrix(g, subset, subset));
        traces[k] = sum;
    }
    return traces;
}

/// det(I − g), checked against the alternating sum of exterior traces.
inline Int lefschetz(const IntMatrix& g)
{
    if (g.rows() != g.cols())
        throw Error(ErrorCode::DimMismatch, "lefschetz: matrix not square");
    const std::size_t m = g.rows();
    IntMatrix diff = IntMatrix::identity(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            diff(i, j) -= g(i, j);
    Int direct = det(diff);

    IntVec traces = exterior_traces(g);
    Int alternating = 0;
    for (std::size_t k = 0; k <= m; ++k)
        alternating += (k % 2 == 0) ? traces[k] : -traces[k];
    if (direct != alternating)
        throw Error(ErrorCode::LogicError, "lefschetz: det(I-g) disagrees with Σ(-1)^k tr Λ^k g");
    return direct;
}

/// dim H^k(T)^G for all k at once: (1/|G|) Σ_γ tr Λ^k γ. A failed
/// integrality or sign check means the group data is inconsistent.
inline std::vector<std::size_t> invariant_betti_all(const LatticeGroup& group)
{
    std::vector<Int> sums(group.m + 1, Int(0));
    for (const IntMatrix& g : group.elements) {
        IntVec traces = exterior_traces(g);
        for (std::size_t k = 0; k <= group.m; ++k)
            sums[k] += traces[k];
    }
    std::vector<std::size_t> out(group.m + 1);
    for (std::size_t k = 0; k <= group.m; ++k) {
        Rat average = Rat(sums[k]) / Rat(static_cast<long>(group.order()));
        if (!is_integer(average) || average < 0)
            throw Error(ErrorCode::NonIntegerAverage,
                        "invariant_betti: group average is not a non-negative integer");
        out[k] = static_cast<std::size_t>(numerator(average).convert_to<unsigned long>());
    }
    return out;
}

inline std::size_t invariant_betti(const LatticeGroup& group, std::size_t k)
{
    if (k > group.m)
        return 0;
    return invariant_betti_all(group)[k];
}

/// χ(T, G) = (1/|G|) Σ_γ det(I − γ), cross-checked against the alternating
/// sum of invariant Betti numbers.
inline std::int64_t chi_equivariant(const LatticeGroup& group)
{
    Int sum = 0;
    for (const IntMatrix& g : group.elements)
        sum += lefschetz(g);
    Rat average = Rat(sum) / Rat(static_cast<long>(group.order()));
    if (!is_integer(average))
        throw Error(ErrorCode::NonIntegerAverage, "chi_equivariant: group average is not an integer");
    std::int64_t value = numerator(average).convert_to<std::int64_t>();

    std::vector<std::size_t> betti = invariant_betti_all(group);
    std::int64_t alternating = 0;
    for (std::size_t k = 0; k <= group.m; ++k) {
        std::int64_t b = static_cast<std::int64_t>(betti[k]);
        alternating += (k % 2 == 0) ? b : -b;
    }
    if (value != alternating)
        throw Error(ErrorCode::LogicError,
                    "chi_equivariant: determinant average disagrees with invariant Betti sum");
    return value;
}

// --- Flat end descriptors ----------------------------------------------------------

/**
 * One flat end of the classification: a finite cover ((R^ν − B) × T^{n−ν})/Γ
 * described by ν, the ambient dimension n, the holonomy action on H^1 of the
 * torus, and the covering order (used when ν = n, where the torus is a
 * point). Parabolic ends (cylindrical and cycloid types) carry a flag only.
 */
struct EndDescriptor {
    std::size_t nu = 2;
    std::size_t n = 2;
    LatticeGroup group;           ///< action on H^1(T), m = n − ν
    std::size_t cover_order = 1;  ///< #Γ, used when ν = n
    bool parabolic = false;
};

inline EndDescriptor make_end(std::size_t nu, std::size_t n, LatticeGroup group,
                              std::size_t cover_order = 1, bool parabolic = false)
{
    if (nu < 2)
        throw Error(ErrorCode::InvalidSpec, "end descriptor: ν must be at least 2");
    if (n < nu)
        throw Error(ErrorCode::InvalidSpec, "end descriptor: ambient dimension below ν");
    if (cover_order == 0)
        throw Error(ErrorCode::InvalidSpec, "end descriptor: covering order must be positive");
    if (parabolic && (group.order() > 1 || group.m != 0))
        throw Error(ErrorCode::InvalidSpec, "end descriptor: parabolic ends carry no group data");
    if (!parabolic && group.m != n - nu)
        throw Error(ErrorCode::InvalidSpec, "end descriptor: group rank must equal n − ν");
    EndDescriptor e;
    e.nu = nu;
    e.n = n;
    e.group = std::move(group);
    e.cover_order = cover_order;
    e.parabolic = parabolic;
    return e;
}

inline EndDescriptor make_parabolic_end(std::size_t nu, std::size_t n)
{
    EndDescriptor e;
    e.nu = nu;
    e.n = n;
    e.group = trivial_group(0);
    e.cover_order = 1;
    e.parabolic = true;
    return e;
}

/// q(E): 1/#Γ − 1 in the rank-zero case, −χ(T_E, G_E) otherwise.
inline Rat q_end(const EndDescriptor& e)
{
    if (e.parabolic)
        throw Error(ErrorCode::ParabolicEnd, "q_end: not defined for parabolic ends");
    if (e.nu == e.n)
        return Rat(1, static_cast<long>(e.cover_order)) - 1;
    return Rat(-chi_equivariant(e.group));
}

/// The Chern boundary integral of the end: 0 below the top rank, 1/#Γ at it.
inline Rat boundary_term(const EndDescriptor& e)
{
    if (e.parabolic)
        throw Error(ErrorCode::ParabolicEnd, "boundary_term: not defined for parabolic ends");
    if (e.nu < e.n)
        return Rat(0);
    return Rat(1, static_cast<long>(e.cover_order));
}

struct ChiL2Report {
    std::int64_t chi_l2 = 0;
    Rat integral_omega; ///< χ(M) − Σ boundary terms
    Rat q_sum;          ///< Σ q(E)
};

/**
 * χ_{L²}(M) = χ(M) − Σ_E χ(T_E, G_E) for a manifold whose ends are all
 * non-parabolic, together with the bookkeeping χ_{L²} = ∫Ω + Σ q(E).
 * A parabolic end refuses: the gluing of two Euclidean planes shows no
 * formula of this shape can hold there (χ_{L²} = 0 while ∫ K dA/2π = −2).
 */
inline ChiL2Report chi_l2(std::int64_t chi_m, const std::vector<EndDescriptor>& ends)
{
    for (const EndDescriptor& e : ends)
        if (e.parabolic)
            throw Error(ErrorCode::ParabolicEnd,
                        "chi_l2: formula not asserted in the presence of parabolic ends");
    ChiL2Report report;
    report.chi_l2 = chi_m;
    report.integral_omega = Rat(chi_m);
    report.q_sum = 0;
    for (const EndDescriptor& e : ends) {
        report.chi_l2 -= chi_equivariant(e.group);
        report.integral_omega -= boundary_term(e);
        report.q_sum += q_end(e);
    }
    if (Rat(report.chi_l2) != report.integral_omega + report.q_sum)
        throw Error(ErrorCode::LogicError, "chi_l2: bookkeeping identity failed");
    return report;
}

// --- Warped-product Euler formulas ---------------------------------------------------

enum class WarpedMode { cone, shrinking };

/**
 * χ_{L²} of an even-dimensional manifold whose end is a warped product
 * dr² + f(r)² g over ∂K: f = ar subtracts Σ_{j=0}^{k−2} (−1)^j b_j(∂K),
 * f′ → 0 adds Σ_{j=0}^{k−1} (−1)^j b_j(∂K), with k = n/2. The spectral and
 * integrability hypotheses behind the formulas are the caller's assertion.
 */
inline std::int64_t chi_l2_warped(std::int64_t chi_m,
                                  const std::vector<std::int64_t>& betti_boundary,
                                  WarpedMode mode, std::size_t n)
{
    if (n == 0 || n % 2 != 0)
        throw Error(ErrorCode::OddDimension, "chi_l2_warped: dimension must be even and positive");
    if (betti_boundary.size() != n)
        throw Error(ErrorCode::InvalidSpec,
                    "chi_l2_warped: expected one boundary Betti number per degree 0..n-1");
    const std::size_t k = n / 2;
    std::int64_t result = chi_m;
    if (mode == WarpedMode::cone) {
        for (std::size_t j = 0; j + 2 <= k; ++j)
            result -= (j % 2 == 0) ? betti_boundary[j] : -betti_boundary[j];
    } else {
        for (std::size_t j = 0; j + 1 <= k; ++j)
            result += (j % 2 == 0) ? betti_boundary[j] : -betti_boundary[j];
    }
    return result;
}

} // namespace hodgekit

#endif // HODGEKIT_FLAT_ENDS_HPP
