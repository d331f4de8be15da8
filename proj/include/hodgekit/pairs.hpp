#ifndef HODGEKIT_PAIRS_HPP
#define HODGEKIT_PAIRS_HPP

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/linalg.hpp>
#include <hodgekit/relative.hpp>

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace hodgekit {

/// dim H^k of the cochains on X vanishing on the boundary-closed A.
inline std::size_t relative_cohomology(const CellComplex& x, const Subcomplex& a, std::size_t k)
{
    if (k > x.top_dim())
        return 0;
    RelativeComplex rel(x, a);
    std::size_t rank_dk = rank(rel.coboundary_matrix(k));
    std::size_t rank_dkm1 = k == 0 ? 0 : rank(rel.coboundary_matrix(k - 1));
    return rel.size(k) - rank_dk - rank_dkm1;
}

/**
 * Cohomology of a pair (X, A) with the three arrows of its long exact
 * sequence. Cocycle/coboundary spaces for the relative complex, X, and A are
 * computed once per degree and shared by the arrow constructions:
 *
 *   i  : H^k(X,A) -> H^k(X)    extension by zero of relative cocycles
 *   j* : H^k(X)   -> H^k(A)    restriction
 *   b  : H^k(A)   -> H^{k+1}(X,A)  extend by zero, then apply d
 */
class PairCohomology {
public:
    PairCohomology(const CellComplex& x, const Subcomplex& a) : x_(&x), rel_(x, a)
    {
        a_complex_ = a.extract();
        const std::size_t top = x.top_dim();
        z_rel_.resize(top + 2);
        b_rel_.resize(top + 2);
        z_x_.resize(top + 1);
        b_x_.resize(top + 1);
        z_a_.resize(top + 1);
        b_a_.resize(top + 1);
        restriction_.resize(top + 1);

        for (std::size_t k = 0; k <= top; ++k) {
            z_rel_[k] = nullspace_basis(rel_.coboundary_matrix(k));
            b_rel_[k] = k == 0 ? Subspace{rel_.size(0), {}}
                               : image_basis(rel_.coboundary_matrix(k - 1));
            z_x_[k] = nullspace_basis(x.coboundary_matrix(k));
            b_x_[k] = k == 0 ? Subspace{x.size(0), {}} : image_basis(x.coboundary_matrix(k - 1));
            z_a_[k] = nullspace_basis(a_complex_.coboundary_matrix(k));
            b_a_[k] = k == 0 ? Subspace{a_complex_.size(0), {}}
                             : image_basis(a_complex_.coboundary_matrix(k - 1));

            a_indices_.push_back(a.indices(k));
            RatMatrix r(a_complex_.size(k), x.size(k));
            std::size_t row = 0;
            for (std::size_t i : a_indices_[k])
                r(row++, i) = 1;
            restriction_[k] = std::move(r);
        }
        // One degree above the top, where b lands from degree top: everything
        // is zero-dimensional there.
        z_rel_[top + 1] = Subspace{0, {}};
        b_rel_[top + 1] = Subspace{0, {}};
    }

    PairCohomology(const CellComplex&& x, const Subcomplex& a) = delete;

    const CellComplex& x() const { return *x_; }
    const RelativeComplex& relative() const { return rel_; }
    const CellComplex& a_complex() const { return a_complex_; }

    std::size_t dim_rel(std::size_t k) const
    {
        if (k > x_->top_dim() + 1)
            return 0;
        return z_rel_[k].dim() - b_rel_[k].dim();
    }
    std::size_t dim_x(std::size_t k) const
    {
        return k > x_->top_dim() ? 0 : z_x_[k].dim() - b_x_[k].dim();
    }
    std::size_t dim_a(std::size_t k) const
    {
        return k > x_->top_dim() ? 0 : z_a_[k].dim() - b_a_[k].dim();
    }

    /// i on cohomology, via extension by zero of relative cocycles.
    RatMatrix map_i(std::size_t k) const
    {
        if (k > x_->top_dim())
            return RatMatrix(0, 0);
        return induced_map(rel_.inclusion_matrix(k), z_rel_[k], b_rel_[k], z_x_[k], b_x_[k]);
    }

    /// j* on cohomology, via restriction of cochains to A.
    RatMatrix map_jstar(std::size_t k) const
    {
        if (k > x_->top_dim())
            return RatMatrix(0, 0);
        return induced_map(restriction_[k], z_x_[k], b_x_[k], z_a_[k], b_a_[k]);
    }

    /**
     * The connecting map b. A cocycle on A is extended by zero to X and
     * differentiated; the result vanishes on A (A is boundary-closed and the
     * input a cocycle), hence is a relative (k+1)-cocycle. Extension by zero
     * is one choice of extension; any other differs by a relative cochain,
     * so the class is the same.
     */
    RatMatrix map_b(std::size_t k) const
    {
        if (k > x_->top_dim())
            return RatMatrix(0, 0);
        if (k == x_->top_dim())
            return RatMatrix(0, dim_a(k));
        RatMatrix chain = connecting_chain_map(k);
        return induced_map(chain, z_a_[k], b_a_[k], z_rel_[k + 1], b_rel_[k + 1]);
    }

    /// rank of i with witness cocycles on X supported off A.
    std::pair<std::size_t, std::vector<RatVec>> image_rel_to_abs(std::size_t k) const
    {
        std::pair<std::size_t, std::vector<RatVec>> out{0, {}};
        if (k > x_->top_dim())
            return out;
        QuotientPresentation q = make_quotient(z_rel_[k], b_rel_[k]);
        detail::SpanReducer reducer(x_->size(k));
        for (const RatVec& v : b_x_[k].basis)
            reducer.reduce_is_member(v);
        RatMatrix incl = rel_.inclusion_matrix(k);
        for (const RatVec& rep : q.reps) {
            RatVec candidate = incl.apply(rep);
            if (!reducer.reduce_is_member(candidate)) {
                out.second.push_back(std::move(candidate));
                ++out.first;
            }
        }
        return out;
    }

private:
    /// Chain-level b: restrict-to-kept ∘ d_k(X) ∘ extend-by-zero.
    RatMatrix connecting_chain_map(std::size_t k) const
    {
        RatMatrix d = x_->coboundary_matrix(k);
        RatMatrix out(rel_.size(k + 1), a_complex_.size(k));
        std::size_t col = 0;
        for (std::size_t i : a_indices_[k]) {
            for (std::size_t r = 0; r < rel_.size(k + 1); ++r) {
                const Rat& v = d(rel_.kept(k + 1)[r], i);
                if (v != 0)
                    out(r, col) = v;
            }
            ++col;
        }
        return out;
    }

    const CellComplex* x_;
    RelativeComplex rel_;
    CellComplex a_complex_;
    std::vector<Subspace> z_rel_, b_rel_, z_x_, b_x_, z_a_, b_a_;
    std::vector<RatMatrix> restriction_;
    std::vector<std::vector<std::size_t>> a_indices_;
};

// --- Long exact sequence audit ------------------------------------------------------

struct LesReport {
    struct DegreeRow {
        std::size_t degree = 0;
        std::size_t dim_rel = 0, dim_x = 0, dim_a = 0;
        std::size_t rank_i = 0, rank_j = 0, rank_b = 0;
        bool exact_at_rel = false, exact_at_x = false, exact_at_a = false;
    };
    std::vector<DegreeRow> rows;
    std::int64_t alternating_sum = 0; ///< Σ(−1)^k (dim_rel − dim_x + dim_a)

    bool all_exact() const
    {
        for (const DegreeRow& r : rows)
            if (!r.exact_at_rel || !r.exact_at_x || !r.exact_at_a)
                return false;
        return true;
    }
};

/**
 * Full exactness audit of ... -> H^k(X,A) -i-> H^k(X) -j*-> H^k(A) -b->
 * H^{k+1}(X,A) -> ... at every node. For finite CW pairs every node must be
 * exact; a failed verdict indicates a defect, which is why the report exists.
 */
inline LesReport les_audit(const CellComplex& x, const Subcomplex& a)
{
    PairCohomology pc(x, a);
    LesReport report;
    const std::size_t top = x.top_dim();
    std::vector<std::size_t> rank_i(top + 1), rank_j(top + 1), rank_b(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        rank_i[k] = rank(pc.map_i(k));
        rank_j[k] = rank(pc.map_jstar(k));
        rank_b[k] = rank(pc.map_b(k));
    }
    for (std::size_t k = 0; k <= top; ++k) {
        LesReport::DegreeRow row;
        row.degree = k;
        row.dim_rel = pc.dim_rel(k);
        row.dim_x = pc.dim_x(k);
        row.dim_a = pc.dim_a(k);
        row.rank_i = rank_i[k];
        row.rank_j = rank_j[k];
        row.rank_b = rank_b[k];
        std::size_t incoming_b = k == 0 ? 0 : rank_b[k - 1];
        row.exact_at_rel = incoming_b == row.dim_rel - row.rank_i;
        row.exact_at_x = row.rank_i == row.dim_x - row.rank_j;
        row.exact_at_a = row.rank_j == row.dim_a - row.rank_b;
        report.rows.push_back(row);

        std::int64_t term = static_cast<std::int64_t>(row.dim_rel) -
                            static_cast<std::int64_t>(row.dim_x) +
                            static_cast<std::int64_t>(row.dim_a);
        report.alternating_sum += (k % 2 == 0) ? term : -term;
    }
    return report;
}

inline std::tuple<RatMatrix, RatMatrix, RatMatrix> les_maps(const CellComplex& x,
                                                            const Subcomplex& a, std::size_t k)
{
    PairCohomology pc(x, a);
    return {pc.map_i(k), pc.map_jstar(k), pc.map_b(k)};
}

/// rank of i: H^k(X,A) -> H^k(X), with basis cocycles supported off A.
inline std::pair<std::size_t, std::vector<RatVec>>
image_rel_to_abs(const CellComplex& x, const Subcomplex& a, std::size_t k)
{
    return PairCohomology(x, a).image_rel_to_abs(k);
}

/**
 * dim H^k of { α : α|_T = 0 } with the restricted differential — the
 * cohomology constrained to die on the fiber subcomplex T.
 */
inline std::size_t ker_pullback_cohomology(const CellComplex& x, const Subcomplex& t,
                                           std::size_t k)
{
    t.require_boundary_closed("ker_pullback_cohomology");
    return relative_cohomology(x, t, k);
}

} // namespace hodgekit

#endif // HODGEKIT_PAIRS_HPP
