#ifndef HODGEKIT_RELATIVE_HPP
#define HODGEKIT_RELATIVE_HPP

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/matrix.hpp>

#include <cstddef>
#include <vector>

namespace hodgekit {

/**
 * The subcomplex of cochains on X vanishing on a boundary-closed A. Because
 * every face of an A-cell stays in A, d of such a cochain vanishes on A
 * again, so the kept coordinates form a complex whose differential is the
 * plain submatrix of d on the kept rows and columns.
 *
 * Holds index data only — safe to copy and keep after the Subcomplex is gone
 * (the parent complex must outlive it).
 */
class RelativeComplex {
public:
    RelativeComplex(const CellComplex& x, const Subcomplex& a) : x_(&x)
    {
        a.require_boundary_closed("relative complex");
        kept_.resize(x.top_dim() + 1);
        pos_.resize(x.top_dim() + 1);
        for (std::size_t k = 0; k <= x.top_dim(); ++k) {
            pos_[k].assign(x.size(k), npos);
            for (std::size_t i = 0; i < x.size(k); ++i)
                if (!a.contains(k, i)) {
                    pos_[k][i] = kept_[k].size();
                    kept_[k].push_back(i);
                }
        }
    }

    RelativeComplex(const CellComplex&& x, const Subcomplex& a) = delete;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const CellComplex& parent() const { return *x_; }

    std::size_t top_dim() const { return x_->top_dim(); }

    std::size_t size(std::size_t k) const { return k <= top_dim() ? kept_[k].size() : 0; }

    const std::vector<std::size_t>& kept(std::size_t k) const { return kept_[k]; }

    std::size_t position(std::size_t k, std::size_t parent_index) const
    {
        return pos_[k][parent_index];
    }

    /// d restricted to kept rows and columns.
    RatMatrix coboundary_matrix(std::size_t k) const
    {
        if (k >= top_dim())
            return RatMatrix(0, size(k));
        RatMatrix d(size(k + 1), size(k));
        for (std::size_t j = 0; j < kept_[k + 1].size(); ++j)
            for (const auto& [face, coef] : x_->boundary_chain(k + 1, kept_[k + 1][j])) {
                std::size_t p = pos_[k][face];
                if (p != npos)
                    d(j, p) += coef;
            }
        return d;
    }

    /// Extension by zero, as a matrix C^k(X, A) -> C^k(X).
    RatMatrix inclusion_matrix(std::size_t k) const
    {
        RatMatrix e(x_->size(k), size(k));
        for (std::size_t j = 0; j < kept_[k].size(); ++j)
            e(kept_[k][j], j) = 1;
        return e;
    }

    RatVec embed(std::size_t k, const RatVec& rel) const
    {
        RatVec out(x_->size(k), Rat(0));
        for (std::size_t j = 0; j < kept_[k].size(); ++j)
            out[kept_[k][j]] = rel[j];
        return out;
    }

    RatVec restrict_to_kept(std::size_t k, const RatVec& full) const
    {
        RatVec out(size(k));
        for (std::size_t j = 0; j < kept_[k].size(); ++j)
            out[j] = full[kept_[k][j]];
        return out;
    }

private:
    const CellComplex* x_;
    std::vector<std::vector<std::size_t>> kept_;
    std::vector<std::vector<std::size_t>> pos_;
};

} // namespace hodgekit

#endif // HODGEKIT_RELATIVE_HPP
