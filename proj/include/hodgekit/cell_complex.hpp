#ifndef HODGEKIT_CELL_COMPLEX_HPP
#define HODGEKIT_CELL_COMPLEX_HPP

#include <hodgekit/errors.hpp>
#include <hodgekit/linalg.hpp>
#include <hodgekit/matrix.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hodgekit {

/// One signed face incidence: (face index in dimension k-1, coefficient).
using BoundaryChain = std::vector<std::pair<std::size_t, std::int64_t>>;

/**
 * A finite graded cell complex with explicit signed incidence. Cells are
 * identified by globally unique ASCII ids; boundaries are integer chains one
 * dimension down. Validation of d∘d = 0 is a separate, reportable step.
 *
 * Instances are immutable once built; every operation below is a pure
 * function of its inputs.
 */
class CellComplex {
public:
    CellComplex() : top_dim_(0), ids_(1), chains_(1) {}

    explicit CellComplex(std::size_t top_dim)
        : top_dim_(top_dim), ids_(top_dim + 1), chains_(top_dim + 1) {}

    std::size_t top_dim() const { return top_dim_; }

    std::size_t size(std::size_t k) const { return k <= top_dim_ ? ids_[k].size() : 0; }

    std::size_t total_cells() const
    {
        std::size_t n = 0;
        for (const auto& dim : ids_)
            n += dim.size();
        return n;
    }

    const std::vector<std::string>& ids(std::size_t k) const { return ids_[k]; }

    const std::string& id(std::size_t k, std::size_t index) const { return ids_[k][index]; }

    bool has_cell(const std::string& id) const { return index_.count(id) > 0; }

    /// (dimension, index) of a cell id.
    std::pair<std::size_t, std::size_t> locate(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw Error(ErrorCode::UnknownId, "unknown cell id '" + id + "'");
        return it->second;
    }

    const BoundaryChain& boundary_chain(std::size_t k, std::size_t index) const
    {
        return chains_[k][index];
    }

    std::size_t add_cell(const std::string& id, std::size_t k, BoundaryChain chain = {})
    {
        if (k > top_dim_)
            throw Error(ErrorCode::InvalidSpec,
                        "cell '" + id + "' has dimension above the declared top dimension");
        if (index_.count(id))
            throw Error(ErrorCode::InvalidSpec, "duplicate cell id '" + id + "'");
        if (k == 0 && !chain.empty())
            throw Error(ErrorCode::InvalidSpec, "0-cell '" + id + "' cannot have a boundary");
        for (const auto& [face, coef] : chain) {
            (void)coef;
            if (k == 0 || face >= size(k - 1))
                throw Error(ErrorCode::UnknownId, "boundary of '" + id + "' references a missing face");
        }
        std::size_t index = ids_[k].size();
        ids_[k].push_back(id);
        chains_[k].push_back(std::move(chain));
        index_.emplace(id, std::make_pair(k, index));
        return index;
    }

    void set_boundary(const std::string& id, BoundaryChain chain)
    {
        auto [k, index] = locate(id);
        if (k == 0 && !chain.empty())
            throw Error(ErrorCode::InvalidSpec, "0-cell '" + id + "' cannot have a boundary");
        for (const auto& [face, coef] : chain) {
            (void)coef;
            if (face >= size(k - 1))
                throw Error(ErrorCode::UnknownId, "boundary of '" + id + "' references a missing face");
        }
        chains_[k][index] = std::move(chain);
    }

    /// D_k: k-chains -> (k-1)-chains, rows indexed by (k-1)-cells.
    IntMatrix boundary_matrix(std::size_t k) const
    {
        if (k == 0 || k > top_dim_)
            return IntMatrix(k == 0 ? 0 : size(k - 1), size(k));
        IntMatrix d(size(k - 1), size(k));
        for (std::size_t j = 0; j < size(k); ++j)
            for (const auto& [face, coef] : chains_[k][j])
                d(face, j) += coef;
        return d;
    }

    /// d_k = transpose(D_{k+1}): C^k -> C^{k+1}. Zero-row matrix past the top.
    RatMatrix coboundary_matrix(std::size_t k) const
    {
        if (k >= top_dim_)
            return RatMatrix(0, size(k));
        RatMatrix d(size(k + 1), size(k));
        for (std::size_t j = 0; j < size(k + 1); ++j)
            for (const auto& [face, coef] : chains_[k + 1][j])
                d(j, face) += coef;
        return d;
    }

private:
    std::size_t top_dim_;
    std::vector<std::vector<std::string>> ids_;
    std::vector<std::vector<BoundaryChain>> chains_;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> index_;
};

// --- Validation ---------------------------------------------------------------

struct ValidationReport {
    struct Violation {
        std::size_t dim;  ///< k with D_{k-1} · D_k ≠ 0
        std::size_t cell; ///< offending column (cell index in dimension k)
        std::string id;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks d∘d = 0 column by column and reports every violation; never throws.
inline ValidationReport validate(const CellComplex& x)
{
    ValidationReport report;
    for (std::size_t k = 2; k <= x.top_dim(); ++k) {
        for (std::size_t j = 0; j < x.size(k); ++j) {
            std::unordered_map<std::size_t, std::int64_t> acc;
            for (const auto& [face, coef] : x.boundary_chain(k, j))
                for (const auto& [face2, coef2] : x.boundary_chain(k - 1, face))
                    acc[face2] += coef * coef2;
            for (const auto& [cell, value] : acc)
                if (value != 0) {
                    report.violations.push_back({k, j, x.id(k, j)});
                    break;
                }
        }
    }
    return report;
}

// --- Betti numbers and Euler characteristic ------------------------------------

/// dim ker d_k - rank d_{k-1}, over Q. Degrees above the top dimension give 0.
inline std::size_t betti(const CellComplex& x, std::size_t k)
{
    if (k > x.top_dim())
        return 0;
    std::size_t rank_dk = rank(x.coboundary_matrix(k));
    std::size_t rank_dkm1 = k == 0 ? 0 : rank(x.coboundary_matrix(k - 1));
    return x.size(k) - rank_dk - rank_dkm1;
}

inline std::vector<std::size_t> betti_all(const CellComplex& x)
{
    std::vector<std::size_t> out(x.top_dim() + 1);
    std::size_t prev_rank = 0;
    for (std::size_t k = 0; k <= x.top_dim(); ++k) {
        std::size_t rank_dk = rank(x.coboundary_matrix(k));
        out[k] = x.size(k) - rank_dk - prev_rank;
        prev_rank = rank_dk;
    }
    return out;
}

inline std::int64_t euler(const CellComplex& x)
{
    std::int64_t chi = 0;
    for (std::size_t k = 0; k <= x.top_dim(); ++k)
        chi += (k % 2 == 0) ? static_cast<std::int64_t>(x.size(k))
                            : -static_cast<std::int64_t>(x.size(k));
    return chi;
}

// --- Subcomplexes ---------------------------------------------------------------

/**
 * A subset of cells of a parent complex, stored per dimension. Boundary
 * closedness (every face of a selected cell is selected) is what makes the
 * subset a complex of its own; operations that need it check it explicitly.
 */
class Subcomplex {
public:
    Subcomplex() : parent_(nullptr) {}

    explicit Subcomplex(const CellComplex& parent)
        : parent_(&parent), selected_(parent.top_dim() + 1)
    {
        for (std::size_t k = 0; k <= parent.top_dim(); ++k)
            selected_[k].assign(parent.size(k), false);
    }

    // Views keep a pointer to the parent; a temporary would dangle.
    explicit Subcomplex(const CellComplex&& parent) = delete;

    static Subcomplex from_ids(const CellComplex& parent, const std::vector<std::string>& ids)
    {
        Subcomplex s(parent);
        for (const std::string& id : ids) {
            auto [k, index] = parent.locate(id);
            s.selected_[k][index] = true;
        }
        return s;
    }

    static Subcomplex from_ids(const CellComplex&& parent, const std::vector<std::string>&) = delete;

    const CellComplex& parent() const { return *parent_; }

    bool contains(std::size_t k, std::size_t index) const
    {
        return k < selected_.size() && selected_[k][index];
    }

    void insert(std::size_t k, std::size_t index) { selected_[k][index] = true; }

    std::size_t size(std::size_t k) const
    {
        if (k >= selected_.size())
            return 0;
        std::size_t n = 0;
        for (bool b : selected_[k])
            n += b;
        return n;
    }

    std::size_t total_cells() const
    {
        std::size_t n = 0;
        for (std::size_t k = 0; k < selected_.size(); ++k)
            n += size(k);
        return n;
    }

    bool empty() const { return total_cells() == 0; }

    /// Selected indices of dimension k, increasing.
    std::vector<std::size_t> indices(std::size_t k) const
    {
        std::vector<std::size_t> out;
        if (k >= selected_.size())
            return out;
        for (std::size_t i = 0; i < selected_[k].size(); ++i)
            if (selected_[k][i])
                out.push_back(i);
        return out;
    }

    std::vector<std::string> selected_ids() const
    {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < selected_.size(); ++k)
            for (std::size_t i : indices(k))
                out.push_back(parent_->id(k, i));
        return out;
    }

    bool is_boundary_closed() const
    {
        for (std::size_t k = 1; k < selected_.size(); ++k)
            for (std::size_t i = 0; i < selected_[k].size(); ++i) {
                if (!selected_[k][i])
                    continue;
                for (const auto& [face, coef] : parent_->boundary_chain(k, i))
                    if (coef != 0 && !selected_[k - 1][face])
                        return false;
            }
        return true;
    }

    void require_boundary_closed(const char* what) const
    {
        if (!is_boundary_closed())
            throw Error(ErrorCode::NotBoundaryClosed,
                        std::string(what) + ": subcomplex is not closed under boundary");
    }

    /// The subcomplex as a standalone complex (same ids, same incidence).
    CellComplex extract() const
    {
        std::size_t top = 0;
        for (std::size_t k = 0; k < selected_.size(); ++k)
            if (size(k) > 0)
                top = k;
        CellComplex out(top);
        std::vector<std::vector<std::size_t>> reindex(selected_.size());
        for (std::size_t k = 0; k <= top; ++k) {
            reindex[k].assign(parent_->size(k), 0);
            for (std::size_t i : indices(k)) {
                BoundaryChain chain;
                if (k > 0)
                    for (const auto& [face, coef] : parent_->boundary_chain(k, i)) {
                        if (coef == 0)
                            continue;
                        if (!selected_[k - 1][face])
                            throw Error(ErrorCode::NotBoundaryClosed,
                                        "extract: subcomplex is not closed under boundary");
                        chain.emplace_back(reindex[k - 1][face], coef);
                    }
                reindex[k][i] = out.add_cell(parent_->id(k, i), k, std::move(chain));
            }
        }
        return out;
    }

private:
    const CellComplex* parent_;
    std::vector<std::vector<bool>> selected_;
};

/// Smallest boundary-closed superset of the seed cells.
inline Subcomplex subcomplex_closure(const CellComplex& x, const std::vector<std::string>& seeds)
{
    Subcomplex s(x);
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    for (const std::string& id : seeds) {
        auto [k, index] = x.locate(id);
        if (!s.contains(k, index)) {
            s.insert(k, index);
            queue.emplace_back(k, index);
        }
    }
    while (!queue.empty()) {
        auto [k, index] = queue.front();
        queue.pop_front();
        if (k == 0)
            continue;
        for (const auto& [face, coef] : x.boundary_chain(k, index))
            if (coef != 0 && !s.contains(k - 1, face)) {
                s.insert(k - 1, face);
                queue.emplace_back(k - 1, face);
            }
    }
    return s;
}

// --- Cellular involutions --------------------------------------------------------

/**
 * A signed cell permutation of order two that commutes with the boundary.
 * Arises as the swap symmetry of a double.
 */
class CellularInvolution {
public:
    CellularInvolution() = default;

    explicit CellularInvolution(const CellComplex& complex)
        : complex_(&complex), map_(complex.top_dim() + 1)
    {
        for (std::size_t k = 0; k <= complex.top_dim(); ++k) {
            map_[k].resize(complex.size(k));
            for (std::size_t i = 0; i < complex.size(k); ++i)
                map_[k][i] = {i, 1};
        }
    }

    explicit CellularInvolution(const CellComplex&& complex) = delete;

    const CellComplex& complex() const { return *complex_; }

    void set(std::size_t k, std::size_t from, std::size_t to, int sign)
    {
        map_[k][from] = {to, sign};
    }

    std::pair<std::size_t, int> image(std::size_t k, std::size_t index) const
    {
        return map_[k][index];
    }

    /// Signed permutation matrix on C_k (equally the action on cochains).
    IntMatrix matrix(std::size_t k) const
    {
        IntMatrix s(complex_->size(k), complex_->size(k));
        for (std::size_t i = 0; i < complex_->size(k); ++i) {
            auto [to, sign] = map_[k][i];
            s(to, i) = sign;
        }
        return s;
    }

    bool is_involution() const
    {
        for (std::size_t k = 0; k < map_.size(); ++k)
            for (std::size_t i = 0; i < map_[k].size(); ++i) {
                auto [to, sign] = map_[k][i];
                auto [back, sign2] = map_[k][to];
                if (back != i || sign * sign2 != 1)
                    return false;
            }
        return true;
    }

    /// σ commutes with D_k, checked chain by chain.
    bool is_chain_map() const
    {
        for (std::size_t k = 1; k <= complex_->top_dim(); ++k) {
            IntMatrix d = complex_->boundary_matrix(k);
            IntMatrix lhs = matrix(k - 1) * d;
            IntMatrix rhs = d * matrix(k);
            if (!(lhs == rhs))
                return false;
        }
        return true;
    }

private:
    const CellComplex* complex_ = nullptr;
    std::vector<std::vector<std::pair<std::size_t, int>>> map_;
};

// --- Products and doubles ----------------------------------------------------------

/// Cartesian product with the graded Leibniz boundary
/// ∂(a×b) = ∂a×b + (−1)^{dim a} a×∂b. Cell ids are "a*b".
inline CellComplex product(const CellComplex& x, const CellComplex& y)
{
    CellComplex out(x.top_dim() + y.top_dim());
    // index of (ka, ia, kb, ib) in the product, filled as cells are added
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> index(
        x.top_dim() + 1);
    for (std::size_t ka = 0; ka <= x.top_dim(); ++ka) {
        index[ka].resize(x.size(ka));
        for (std::size_t ia = 0; ia < x.size(ka); ++ia) {
            index[ka][ia].resize(y.top_dim() + 1);
            for (std::size_t kb = 0; kb <= y.top_dim(); ++kb)
                index[ka][ia][kb].resize(y.size(kb));
        }
    }
    for (std::size_t k = 0; k <= out.top_dim(); ++k)
        for (std::size_t ka = 0; ka <= std::min(k, x.top_dim()); ++ka) {
            std::size_t kb = k - ka;
            if (kb > y.top_dim())
                continue;
            for (std::size_t ia = 0; ia < x.size(ka); ++ia)
                for (std::size_t ib = 0; ib < y.size(kb); ++ib) {
                    BoundaryChain chain;
                    if (ka > 0)
                        for (const auto& [face, coef] : x.boundary_chain(ka, ia))
                            chain.emplace_back(index[ka - 1][face][kb][ib], coef);
                    if (kb > 0) {
                        std::int64_t sign = (ka % 2 == 0) ? 1 : -1;
                        for (const auto& [face, coef] : y.boundary_chain(kb, ib))
                            chain.emplace_back(index[ka][ia][kb - 1][face], sign * coef);
                    }
                    index[ka][ia][kb][ib] =
                        out.add_cell(x.id(ka, ia) + "*" + y.id(kb, ib), k, std::move(chain));
                }
        }
    return out;
}

struct DoubleComplex {
    std::shared_ptr<const CellComplex> complex_ptr; ///< stable address; views below point here
    CellularInvolution swap;
    Subcomplex shared; ///< the glued copy of A inside the double

    const CellComplex& complex() const { return *complex_ptr; }
};

/**
 * Two copies of X glued along the boundary-closed subcomplex A. The shared
 * cells keep id "s.<id>", the copies get "l.<id>" and "r.<id>"; the returned
 * involution swaps the copies and fixes the shared cells.
 */
inline DoubleComplex make_double(const CellComplex& x, const Subcomplex& a)
{
    a.require_boundary_closed("double");
    auto holder = std::make_shared<CellComplex>(x.top_dim());
    CellComplex& out = *holder;

    // per dimension: index of each parent cell in the double, for s/l/r parts
    std::vector<std::vector<std::size_t>> s_index(x.top_dim() + 1);
    std::vector<std::vector<std::size_t>> l_index(x.top_dim() + 1);
    std::vector<std::vector<std::size_t>> r_index(x.top_dim() + 1);

    for (std::size_t k = 0; k <= x.top_dim(); ++k) {
        s_index[k].assign(x.size(k), 0);
        l_index[k].assign(x.size(k), 0);
        r_index[k].assign(x.size(k), 0);
        auto translated = [&](std::size_t face, const std::vector<std::size_t>& copy_index) {
            return a.contains(k - 1, face) ? s_index[k - 1][face] : copy_index[face];
        };
        for (std::size_t i = 0; i < x.size(k); ++i) {
            if (!a.contains(k, i))
                continue;
            BoundaryChain chain;
            if (k > 0)
                for (const auto& [face, coef] : x.boundary_chain(k, i))
                    chain.emplace_back(s_index[k - 1][face], coef);
            s_index[k][i] = out.add_cell("s." + x.id(k, i), k, std::move(chain));
        }
        for (std::size_t i = 0; i < x.size(k); ++i) {
            if (a.contains(k, i))
                continue;
            BoundaryChain chain;
            if (k > 0)
                for (const auto& [face, coef] : x.boundary_chain(k, i))
                    chain.emplace_back(translated(face, l_index[k - 1]), coef);
            l_index[k][i] = out.add_cell("l." + x.id(k, i), k, std::move(chain));
        }
        for (std::size_t i = 0; i < x.size(k); ++i) {
            if (a.contains(k, i))
                continue;
            BoundaryChain chain;
            if (k > 0)
                for (const auto& [face, coef] : x.boundary_chain(k, i))
                    chain.emplace_back(translated(face, r_index[k - 1]), coef);
            r_index[k][i] = out.add_cell("r." + x.id(k, i), k, std::move(chain));
        }
    }

    DoubleComplex result{holder, CellularInvolution(*holder), Subcomplex(*holder)};
    for (std::size_t k = 0; k <= x.top_dim(); ++k)
        for (std::size_t i = 0; i < x.size(k); ++i) {
            if (a.contains(k, i)) {
                result.shared.insert(k, s_index[k][i]);
            } else {
                result.swap.set(k, l_index[k][i], r_index[k][i], 1);
                result.swap.set(k, r_index[k][i], l_index[k][i], 1);
            }
        }
    return result;
}

} // namespace hodgekit

#endif // HODGEKIT_CELL_COMPLEX_HPP
