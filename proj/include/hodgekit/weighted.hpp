#ifndef HODGEKIT_WEIGHTED_HPP
#define HODGEKIT_WEIGHTED_HPP

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/linalg.hpp>
#include <hodgekit/matrix.hpp>
#include <hodgekit/relative.hpp>

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace hodgekit {

/**
 * A cell complex with a positive rational weight per cell. The weights are
 * the diagonal of the inner product ⟨u,v⟩_k = Σ_σ w_σ u_σ v_σ — the discrete
 * metric. Coboundary matrices are cached on construction.
 */
class WeightedComplex {
public:
    explicit WeightedComplex(const CellComplex& x) : x_(&x)
    {
        weights_.resize(x.top_dim() + 1);
        for (std::size_t k = 0; k <= x.top_dim(); ++k)
            weights_[k].assign(x.size(k), Rat(1));
        cache_coboundaries();
    }

    WeightedComplex(const CellComplex& x, const std::map<std::string, Rat>& by_id,
                    bool default_unit = false)
        : x_(&x)
    {
        weights_.resize(x.top_dim() + 1);
        for (std::size_t k = 0; k <= x.top_dim(); ++k) {
            weights_[k].assign(x.size(k), Rat(0));
            for (std::size_t i = 0; i < x.size(k); ++i) {
                auto it = by_id.find(x.id(k, i));
                if (it == by_id.end()) {
                    if (!default_unit)
                        throw Error(ErrorCode::MissingWeight,
                                    "no weight for cell '" + x.id(k, i) + "'");
                    weights_[k][i] = 1;
                } else {
                    if (it->second <= 0)
                        throw Error(ErrorCode::InvalidSpec,
                                    "weight for '" + x.id(k, i) + "' is not positive");
                    weights_[k][i] = it->second;
                }
            }
        }
        for (const auto& [id, w] : by_id) {
            (void)w;
            if (!x.has_cell(id))
                throw Error(ErrorCode::UnknownId, "weight for unknown cell '" + id + "'");
        }
        cache_coboundaries();
    }

    /// Weight vector per dimension, assembled programmatically.
    WeightedComplex(const CellComplex& x, std::vector<RatVec> weights) : x_(&x)
    {
        if (weights.size() != x.top_dim() + 1)
            throw Error(ErrorCode::DimMismatch, "weight vector count differs from dimensions");
        for (std::size_t k = 0; k <= x.top_dim(); ++k) {
            if (weights[k].size() != x.size(k))
                throw Error(ErrorCode::DimMismatch, "weight count differs from cell count");
            for (const Rat& w : weights[k])
                if (w <= 0)
                    throw Error(ErrorCode::InvalidSpec, "weights must be positive");
        }
        weights_ = std::move(weights);
        cache_coboundaries();
    }

    // The complex is held by pointer; temporaries would dangle.
    explicit WeightedComplex(const CellComplex&&) = delete;
    WeightedComplex(const CellComplex&&, const std::map<std::string, Rat>&, bool = false) = delete;
    WeightedComplex(const CellComplex&&, std::vector<RatVec>) = delete;

    const CellComplex& complex() const { return *x_; }

    const RatVec& weights(std::size_t k) const { return weights_[k]; }

    Rat weight(std::size_t k, std::size_t index) const { return weights_[k][index]; }

    /// d_k as a cached matrix (zero-row matrix at and above the top degree).
    const RatMatrix& coboundary(std::size_t k) const { return coboundaries_[k]; }

    Rat inner(std::size_t k, const RatVec& u, const RatVec& v) const
    {
        if (u.size() != x_->size(k) || v.size() != x_->size(k))
            throw Error(ErrorCode::DimMismatch, "inner: cochain length differs from cell count");
        Rat acc(0);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != 0 && v[i] != 0)
                acc += weights_[k][i] * u[i] * v[i];
        return acc;
    }

    /// δ_k = W_{k-1}^{-1} d_{k-1}^T W_k, the formal adjoint of d_{k-1}.
    RatMatrix codifferential(std::size_t k) const
    {
        if (k == 0 || k > x_->top_dim())
            throw Error(ErrorCode::DegreeOutOfRange,
                        "codifferential degree must satisfy 1 <= k <= top_dim");
        RatMatrix delta = coboundaries_[k - 1].transpose();
        for (std::size_t j = 0; j < delta.cols(); ++j)
            if (weights_[k][j] != 1)
                delta.scale_col(j, weights_[k][j]);
        for (std::size_t i = 0; i < delta.rows(); ++i)
            if (weights_[k - 1][i] != 1)
                delta.scale_row(i, 1 / weights_[k - 1][i]);
        return delta;
    }

    /// Δ_k = d_{k-1} δ_k + δ_{k+1} d_k, terms dropped at the extremes.
    RatMatrix laplacian(std::size_t k) const
    {
        RatMatrix lap(x_->size(k), x_->size(k));
        if (k > x_->top_dim())
            return lap;
        if (k > 0)
            lap = lap + coboundaries_[k - 1] * codifferential(k);
        if (k < x_->top_dim())
            lap = lap + codifferential(k + 1) * coboundaries_[k];
        return lap;
    }

private:
    void cache_coboundaries()
    {
        coboundaries_.resize(x_->top_dim() + 1);
        for (std::size_t k = 0; k <= x_->top_dim(); ++k)
            coboundaries_[k] = x_->coboundary_matrix(k);
    }

    const CellComplex* x_;
    std::vector<RatVec> weights_;
    std::vector<RatMatrix> coboundaries_;
};

enum class BoundaryCondition { absolute, relative };

struct HarmonicBasis {
    std::size_t degree = 0;
    BoundaryCondition condition = BoundaryCondition::absolute;
    /// Harmonic cochains in full X coordinates (relative ones vanish on A).
    std::vector<RatVec> vectors;

    std::size_t dim() const { return vectors.size(); }
};

/**
 * Harmonic kernels ker d_k ∩ ker δ_k for one complex (or one relative pair)
 * across many weightings. The closed-cochain kernel of each d_k does not
 * depend on the weights, so it is computed once here; per weighting only the
 * coclosedness condition d_{k-1}^T W_k v = 0 is solved inside that kernel.
 * The δ rows enter scaled by the invertible diagonal W_{k-1}, which changes
 * nothing about the kernel but keeps the elimination integral.
 */
class HarmonicContext {
public:
    explicit HarmonicContext(const CellComplex& x)
        : x_(&x), condition_(BoundaryCondition::absolute)
    {
        const std::size_t top = x.top_dim();
        kept_.resize(top + 1);
        for (std::size_t k = 0; k <= top; ++k) {
            kept_[k].resize(x.size(k));
            for (std::size_t i = 0; i < x.size(k); ++i)
                kept_[k][i] = i;
        }
        d_.resize(top + 1);
        for (std::size_t k = 0; k <= top; ++k)
            d_[k] = x.coboundary_matrix(k);
        kernels_.resize(top + 1);
        kernel_ready_.assign(top + 1, 0);
    }

    HarmonicContext(const CellComplex& x, const Subcomplex& a)
        : x_(&x), condition_(BoundaryCondition::relative)
    {
        RelativeComplex rel(x, a);
        const std::size_t top = x.top_dim();
        kept_.resize(top + 1);
        d_.resize(top + 1);
        for (std::size_t k = 0; k <= top; ++k) {
            kept_[k] = rel.kept(k);
            d_[k] = rel.coboundary_matrix(k);
        }
        kernels_.resize(top + 1);
        kernel_ready_.assign(top + 1, 0);
    }

    HarmonicContext(const CellComplex&& x) = delete;
    HarmonicContext(const CellComplex&& x, const Subcomplex&) = delete;

    /// Harmonic basis under the given weights, in full X coordinates.
    HarmonicBasis basis(const WeightedComplex& w, std::size_t k) const
    {
        HarmonicBasis out;
        out.degree = k;
        out.condition = condition_;
        if (k > x_->top_dim())
            return out;
        const std::size_t n = kept_[k].size();
        const IntMatrix& kernel = kernel_for(k);
        const std::size_t z = kernel.cols();
        if (z == 0)
            return out;

        std::vector<RatVec> coefficients;
        if (k == 0) {
            coefficients.assign(z, RatVec(z, Rat(0)));
            for (std::size_t c = 0; c < z; ++c)
                coefficients[c][c] = 1;
        } else {
            // M = d_{k-1}^T (W_k · kernel), one row per (k-1)-cell
            const RatMatrix& down = d_[k - 1]; // n_k x n_{k-1}
            RatMatrix m(down.cols(), z);
            for (std::size_t i = 0; i < n; ++i) {
                const Rat& weight = w.weight(k, kept_[k][i]);
                for (std::size_t j = 0; j < down.cols(); ++j) {
                    const Rat& dij = down(i, j);
                    if (dij == 0)
                        continue;
                    Rat factor = dij * weight;
                    for (std::size_t c = 0; c < z; ++c)
                        if (kernel(i, c) != 0)
                            m(j, c) += factor * Rat(kernel(i, c));
                }
            }
            coefficients = nullspace_basis(m).basis;
        }

        for (const RatVec& c : coefficients) {
            RatVec v(x_->size(k), Rat(0));
            for (std::size_t i = 0; i < n; ++i) {
                Rat acc(0);
                for (std::size_t j = 0; j < z; ++j)
                    if (kernel(i, j) != 0 && c[j] != 0)
                        acc += Rat(kernel(i, j)) * c[j];
                v[kept_[k][i]] = acc;
            }
            out.vectors.push_back(std::move(v));
        }
        return out;
    }

private:
    /// Kernel of d_k with integer-scaled columns, built on first use.
    /// Column scaling only reindexes the coefficient space.
    const IntMatrix& kernel_for(std::size_t k) const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!kernel_ready_[k]) {
            Subspace ns = nullspace_basis(d_[k]);
            IntMatrix cols(kept_[k].size(), ns.dim());
            for (std::size_t c = 0; c < ns.dim(); ++c) {
                Int scale = 1;
                for (const Rat& e : ns.basis[c])
                    scale = boost::multiprecision::lcm(scale, denominator(e));
                for (std::size_t i = 0; i < ns.basis[c].size(); ++i) {
                    const Rat& e = ns.basis[c][i];
                    cols(i, c) = numerator(e) * (scale / denominator(e));
                }
            }
            kernels_[k] = std::move(cols);
            kernel_ready_[k] = 1;
        }
        return kernels_[k];
    }

    const CellComplex* x_;
    BoundaryCondition condition_;
    std::vector<std::vector<std::size_t>> kept_;
    std::vector<RatMatrix> d_;
    mutable std::vector<IntMatrix> kernels_;
    mutable std::vector<char> kernel_ready_;
    mutable std::mutex mutex_;
};

/**
 * Basis of ker d ∩ ker δ in degree k, under the absolute (full complex) or
 * relative (cochains vanishing on A) condition. The dimension equals the
 * corresponding Betti number whatever the positive weights are. Looping over
 * many weightings? Build one HarmonicContext and reuse it.
 */
inline HarmonicBasis harmonic_basis(const WeightedComplex& w, std::size_t k,
                                    BoundaryCondition condition, const Subcomplex& a)
{
    if (condition == BoundaryCondition::absolute)
        return HarmonicContext(w.complex()).basis(w, k);
    return HarmonicContext(w.complex(), a).basis(w, k);
}

inline HarmonicBasis harmonic_basis(const WeightedComplex& w, std::size_t k)
{
    return HarmonicContext(w.complex()).basis(w, k);
}

// --- Hodge decomposition ---------------------------------------------------------

struct HodgeSplit {
    RatVec harmonic; ///< h with dh = δh = 0
    RatVec exact;    ///< d(potential_down)
    RatVec coexact;  ///< δ(potential_up)
    RatVec potential_down; ///< b with exact = d b
    RatVec potential_up;   ///< c with coexact = δ c
};

/**
 * v = h + d(b) + δ(c), all parts pairwise orthogonal under ⟨·,·⟩_k, every
 * equality exact. The two projections solve the weighted normal equations;
 * both systems are consistent by construction.
 */
inline HodgeSplit hodge_split(const WeightedComplex& w, std::size_t k, const RatVec& v)
{
    const CellComplex& x = w.complex();
    if (k > x.top_dim() || v.size() != x.size(k))
        throw Error(ErrorCode::DimMismatch, "hodge_split: cochain does not live in degree k");
    const std::size_t n = x.size(k);
    const RatVec& w_k = w.weights(k);

    HodgeSplit split;
    split.exact.assign(n, Rat(0));
    split.coexact.assign(n, Rat(0));

    if (k > 0 && x.size(k - 1) > 0) {
        // minimize |v - d b|_w: (d^T W d) b = d^T W v
        const RatMatrix& d = w.coboundary(k - 1);
        RatMatrix dt = d.transpose();
        for (std::size_t j = 0; j < dt.cols(); ++j)
            if (w_k[j] != 1)
                dt.scale_col(j, w_k[j]);
        RatMatrix normal = dt * d;
        RatVec rhs = dt.apply(v);
        auto b = solve_one(normal, rhs);
        if (!b)
            throw Error(ErrorCode::LogicError, "hodge_split: normal equations inconsistent");
        split.potential_down = *b;
        split.exact = d.apply(*b);
    }

    if (k < x.top_dim() && x.size(k + 1) > 0) {
        // coexact part δ c with c solving (d W_k^{-1} d^T W_{k+1}) c = d v
        const RatMatrix& d = w.coboundary(k);
        RatMatrix middle = d.transpose(); // n x n_{k+1}
        for (std::size_t i = 0; i < middle.rows(); ++i)
            if (w_k[i] != 1)
                middle.scale_row(i, 1 / w_k[i]);
        for (std::size_t j = 0; j < middle.cols(); ++j)
            if (w.weights(k + 1)[j] != 1)
                middle.scale_col(j, w.weights(k + 1)[j]);
        RatMatrix normal = d * middle;
        RatVec rhs = d.apply(v);
        auto c = solve_one(normal, rhs);
        if (!c)
            throw Error(ErrorCode::LogicError, "hodge_split: normal equations inconsistent");
        split.potential_up = *c;
        split.coexact = middle.apply(*c);
    }

    split.harmonic.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        split.harmonic[i] = v[i] - split.exact[i] - split.coexact[i];
    return split;
}

// --- Doubling symmetry split ------------------------------------------------------

struct DoubleSplitDims {
    std::size_t invariant = 0;
    std::size_t anti_invariant = 0;
};

/**
 * Dimensions of the σ-invariant and σ-anti-invariant parts of the harmonic
 * space of a double. The invariant part matches the absolute condition on
 * the half, the anti-invariant part the relative one.
 */
inline DoubleSplitDims double_split(const WeightedComplex& w, const CellularInvolution& sigma,
                                    std::size_t k)
{
    const CellComplex& x = w.complex();
    for (std::size_t dim = 0; dim <= x.top_dim(); ++dim)
        for (std::size_t i = 0; i < x.size(dim); ++i) {
            auto [to, sign] = sigma.image(dim, i);
            (void)sign;
            if (w.weight(dim, i) != w.weight(dim, to))
                throw Error(ErrorCode::AsymmetricWeights,
                            "double_split: weights are not σ-symmetric");
        }

    HarmonicBasis h = harmonic_basis(w, k);
    if (h.dim() == 0)
        return {0, 0};
    RatMatrix hm = columns_to_matrix(x.size(k), h.vectors);
    RatMatrix s = to_rational(sigma.matrix(k));
    RatMatrix sh = s * hm;

    RatMatrix minus(sh.rows(), sh.cols());
    RatMatrix plus(sh.rows(), sh.cols());
    for (std::size_t i = 0; i < sh.rows(); ++i)
        for (std::size_t j = 0; j < sh.cols(); ++j) {
            minus(i, j) = sh(i, j) - hm(i, j);
            plus(i, j) = sh(i, j) + hm(i, j);
        }
    DoubleSplitDims dims;
    dims.invariant = nullspace_basis(minus).dim();
    dims.anti_invariant = nullspace_basis(plus).dim();
    if (dims.invariant + dims.anti_invariant != h.dim())
        throw Error(ErrorCode::LogicError, "double_split: ±1 eigenspaces do not fill the kernel");
    return dims;
}

// --- Poincaré–Lefschetz duality check ----------------------------------------------

struct DualityReport {
    std::size_t degree = 0;
    std::size_t dual_degree = 0;
    std::size_t abs_dim = 0;
    std::size_t rel_dim = 0;

    bool equal() const { return abs_dim == rel_dim; }
};

/// Compares dim ℋ^k_abs(X, ∂X) with dim ℋ^{n−k}_rel(X, ∂X) on an orientable
/// model with boundary subcomplex `boundary`.
inline DualityReport duality_check(const WeightedComplex& w, const Subcomplex& boundary,
                                   std::size_t k)
{
    DualityReport report;
    report.degree = k;
    report.dual_degree = w.complex().top_dim() - k;
    report.abs_dim = harmonic_basis(w, k).dim();
    report.rel_dim =
        harmonic_basis(w, report.dual_degree, BoundaryCondition::relative, boundary).dim();
    return report;
}

} // namespace hodgekit

#endif // HODGEKIT_WEIGHTED_HPP
