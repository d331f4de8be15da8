#ifndef HODGEKIT_LINALG_HPP
#define HODGEKIT_LINALG_HPP

#include <hodgekit/errors.hpp>
#include <hodgekit/matrix.hpp>
#include <hodgekit/numeric.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace hodgekit {

/**
 * A linear subspace of Q^ambient, stored as an ordered list of independent
 * basis vectors. Bases produced here are echelonized and deterministic, so
 * identical inputs always yield identical output — reports diff cleanly.
 */
struct Subspace {
    std::size_t ambient = 0;
    std::vector<RatVec> basis;

    std::size_t dim() const { return basis.size(); }
};

// --- Row echelon machinery -------------------------------------------------

/**
 * In-place Gauss-Jordan reduction over Q of the first `main_cols` columns;
 * any further columns ride along as an augmented block. Pivot rows prefer a
 * unit entry (keeps fractions from growing on incidence-type matrices) and
 * are otherwise chosen first-come, so the result is canonical.
 *
 * Returns the pivot columns in increasing order.
 */
inline std::vector<std::size_t> rref(RatMatrix& m, std::size_t main_cols)
{
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < main_cols && pr < rows; ++col) {
        std::size_t pivot_row = rows;
        for (std::size_t r = pr; r < rows; ++r) {
            const Rat& v = m(r, col);
            if (v == 0)
                continue;
            if (v == 1 || v == -1) {
                pivot_row = r;
                break;
            }
            if (pivot_row == rows)
                pivot_row = r;
        }
        if (pivot_row == rows)
            continue;
        m.swap_rows(pr, pivot_row);
        const Rat pivot = m(pr, col);
        if (pivot != 1) {
            Rat inv = 1 / pivot;
            Rat* row = m.row_ptr(pr);
            for (std::size_t j = col; j < cols; ++j)
                if (row[j] != 0)
                    row[j] *= inv;
        }
        const Rat* prow = m.row_ptr(pr);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr)
                continue;
            Rat factor = m(r, col);
            if (factor == 0)
                continue;
            Rat* row = m.row_ptr(r);
            for (std::size_t j = col; j < cols; ++j)
                if (prow[j] != 0)
                    row[j] -= factor * prow[j];
        }
        pivots.push_back(col);
        ++pr;
    }
    return pivots;
}

inline std::vector<std::size_t> rref(RatMatrix& m) { return rref(m, m.cols()); }

/// Multiplies each row by the lcm of its denominators, giving an integer
/// matrix with the same row space and kernel.
inline IntMatrix clear_row_denominators(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int scale = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            scale = boost::multiprecision::lcm(scale, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& v = m(i, j);
            out(i, j) = numerator(v) * (scale / denominator(v));
        }
    }
    return out;
}

namespace detail {

/**
 * Forward fraction-free (Bareiss) elimination. Pivots are searched in the
 * first `main_cols` columns only; the rest of the matrix rides along as an
 * augmented block. Every division in the update is exact, so the whole
 * elimination stays in the integers — dramatically faster than rational
 * row reduction because no gcd normalization happens per entry.
 *
 * After return, row k has zeros in every earlier pivot column and in every
 * skipped (free) column left of its pivot; rows past the last pivot are zero
 * in the main block.
 */
struct Echelon {
    IntMatrix m;
    std::vector<std::size_t> pivot_cols;
};

inline Echelon bareiss_echelon(IntMatrix m, std::size_t main_cols)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    Echelon ech;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < main_cols && r < rows; ++col) {
        // Prefer a ±1 pivot with the sparsest row: keeps both entry growth
        // and fill-in down. Any pivot choice yields the same pivot columns,
        // so downstream bases do not depend on this heuristic.
        std::size_t pivot_row = rows;
        std::size_t best_nnz = 0;
        for (std::size_t i = r; i < rows; ++i) {
            const Int& v = m(i, col);
            if (v == 0)
                continue;
            if (pivot_row == rows) {
                pivot_row = i;
                best_nnz = static_cast<std::size_t>(-1);
            }
            if (v == 1 || v == -1) {
                std::size_t nnz = 0;
                const Int* row = m.row_ptr(i);
                for (std::size_t j = col; j < cols; ++j)
                    if (row[j] != 0)
                        ++nnz;
                if (nnz < best_nnz) {
                    best_nnz = nnz;
                    pivot_row = i;
                }
            }
        }
        if (pivot_row == rows)
            continue;
        m.swap_rows(r, pivot_row);
        const Int pivot = m(r, col);
        for (std::size_t i = r + 1; i < rows; ++i) {
            Int head = m(i, col);
            Int* row = m.row_ptr(i);
            const Int* prow = m.row_ptr(r);
            if (head == 0) {
                if (pivot != prev)
                    for (std::size_t j = col + 1; j < cols; ++j) {
                        if (row[j] == 0)
                            continue;
                        row[j] *= pivot;
                        row[j] /= prev;
                    }
                continue;
            }
            for (std::size_t j = col + 1; j < cols; ++j) {
                if (row[j] != 0 || prow[j] != 0) {
                    row[j] = pivot * row[j] - head * prow[j];
                    if (prev != 1)
                        row[j] /= prev;
                }
            }
            row[col] = 0;
        }
        prev = pivot;
        ech.pivot_cols.push_back(col);
        ++r;
    }
    ech.m = std::move(m);
    return ech;
}

} // namespace detail

inline std::size_t rank(const IntMatrix& m)
{
    return detail::bareiss_echelon(m, m.cols()).pivot_cols.size();
}

inline std::size_t rank(const RatMatrix& m) { return rank(clear_row_denominators(m)); }

/// Determinant of a square integer matrix, fraction-free. det of the empty
/// 0x0 matrix is 1.
inline Int det(const IntMatrix& input)
{
    if (input.rows() != input.cols())
        throw Error(ErrorCode::DimMismatch, "det: matrix not square");
    const std::size_t n = input.rows();
    if (n == 0)
        return 1;
    IntMatrix m = input;
    Int prev = 1;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = n;
        for (std::size_t i = col; i < n; ++i)
            if (m(i, col) != 0) {
                pivot_row = i;
                break;
            }
        if (pivot_row == n)
            return 0;
        if (pivot_row != col) {
            m.swap_rows(col, pivot_row);
            sign = -sign;
        }
        const Int pivot = m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            Int head = m(i, col);
            Int* row = m.row_ptr(i);
            const Int* prow = m.row_ptr(col);
            for (std::size_t j = col + 1; j < n; ++j) {
                row[j] = pivot * row[j] - head * prow[j];
                if (prev != 1)
                    row[j] /= prev;
            }
            row[col] = 0;
        }
        prev = pivot;
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

// --- Kernels, images, spans ------------------------------------------------

/**
 * Canonical basis of { v : A v = 0 }: one vector per free column, with unit
 * coefficient there and pivot coordinates solved from the echelon form. This
 * is exactly the parametrization the reduced row echelon form determines, so
 * the basis depends only on A, not on elimination order.
 */
inline Subspace nullspace_basis(const RatMatrix& a)
{
    const std::size_t n = a.cols();
    detail::Echelon ech = detail::bareiss_echelon(clear_row_denominators(a), n);
    const std::vector<std::size_t>& pc = ech.pivot_cols;
    const std::size_t r = pc.size();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pc)
        is_pivot[p] = true;

    Subspace out;
    out.ambient = n;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RatVec v(n, Rat(0));
        v[f] = 1;
        // Back-substitute over Q. Rows whose pivot sits right of f have a
        // zero entry at f, so their unknowns vanish.
        for (std::size_t k = r; k-- > 0;) {
            if (pc[k] > f)
                continue;
            Rat acc = -Rat(ech.m(k, f));
            for (std::size_t j = k + 1; j < r; ++j) {
                const Int& coef = ech.m(k, pc[j]);
                if (coef != 0 && v[pc[j]] != 0)
                    acc -= Rat(coef) * v[pc[j]];
            }
            v[pc[k]] = acc / Rat(ech.m(k, pc[k]));
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

/// Canonical echelon basis of the column span of A.
inline Subspace image_basis(const RatMatrix& a)
{
    RatMatrix t = a.transpose();
    std::vector<std::size_t> pivots = rref(t);
    Subspace out;
    out.ambient = a.rows();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        RatVec v(out.ambient);
        for (std::size_t j = 0; j < out.ambient; ++j)
            v[j] = t(i, j);
        out.basis.push_back(std::move(v));
    }
    return out;
}

/// Echelonized span of arbitrary vectors (drops dependent ones).
inline Subspace span_basis(std::size_t ambient, const std::vector<RatVec>& vectors)
{
    RatMatrix rows(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient)
            throw Error(ErrorCode::DimMismatch, "span_basis: vector length differs from ambient");
        for (std::size_t j = 0; j < ambient; ++j)
            rows(i, j) = vectors[i][j];
    }
    std::vector<std::size_t> pivots = rref(rows);
    Subspace out;
    out.ambient = ambient;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        RatVec v(ambient);
        for (std::size_t j = 0; j < ambient; ++j)
            v[j] = rows(i, j);
        out.basis.push_back(std::move(v));
    }
    return out;
}

// --- Solving ----------------------------------------------------------------

struct SolveResult {
    std::vector<bool> consistent; ///< per right-hand-side column
    RatMatrix solutions;          ///< particular solutions (free variables zero)

    bool all_consistent() const
    {
        for (bool c : consistent)
            if (!c)
                return false;
        return true;
    }
};

/// Solves A X = B column by column with one shared elimination (free
/// variables set to zero in the particular solutions).
inline SolveResult solve(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimMismatch, "solve: row counts differ");
    RatMatrix aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            aug(i, a.cols() + j) = b(i, j);
    }
    detail::Echelon ech = detail::bareiss_echelon(clear_row_denominators(aug), a.cols());
    const std::vector<std::size_t>& pc = ech.pivot_cols;
    const std::size_t r = pc.size();

    SolveResult out;
    out.consistent.assign(b.cols(), true);
    out.solutions = RatMatrix(a.cols(), b.cols());
    // Rows past the last pivot have zero A-part; a nonzero augmented entry
    // there marks that column inconsistent.
    for (std::size_t i = r; i < aug.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (ech.m(i, a.cols() + j) != 0)
                out.consistent[j] = false;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!out.consistent[j])
            continue;
        for (std::size_t k = r; k-- > 0;) {
            Rat acc = Rat(ech.m(k, a.cols() + j));
            for (std::size_t i = k + 1; i < r; ++i) {
                const Int& coef = ech.m(k, pc[i]);
                if (coef != 0 && out.solutions(pc[i], j) != 0)
                    acc -= Rat(coef) * out.solutions(pc[i], j);
            }
            out.solutions(pc[k], j) = acc / Rat(ech.m(k, pc[k]));
        }
    }
    return out;
}

inline std::optional<RatVec> solve_one(const RatMatrix& a, const RatVec& b)
{
    SolveResult res = solve(a, columns_to_matrix(b.size(), {b}));
    if (!res.consistent[0])
        return std::nullopt;
    return matrix_column(res.solutions, 0);
}

/// True iff every given vector lies in span(space).
inline bool contains(const Subspace& space, const std::vector<RatVec>& vectors)
{
    if (vectors.empty())
        return true;
    for (const RatVec& v : vectors)
        if (v.size() != space.ambient)
            throw Error(ErrorCode::DimMismatch, "contains: vector length differs from ambient");
    RatMatrix basis = columns_to_matrix(space.ambient, space.basis);
    RatMatrix rhs = columns_to_matrix(space.ambient, vectors);
    return solve(basis, rhs).all_consistent();
}

// --- Quotients ---------------------------------------------------------------

/// dim(Z/B), after verifying B really sits inside span(Z).
inline std::size_t quotient_dim(const Subspace& z, const Subspace& b)
{
    if (z.ambient != b.ambient)
        throw Error(ErrorCode::DimMismatch, "quotient_dim: ambient dimensions differ");
    if (!contains(z, b.basis))
        throw Error(ErrorCode::NotContained, "quotient_dim: B is not contained in span(Z)");
    return z.dim() - b.dim();
}

/**
 * A quotient Z/B presented by representatives: the Z basis vectors that are
 * independent modulo B, taken greedily in basis order. Representatives are
 * kept verbatim (they are honest cocycles when Z is a cocycle space).
 */
struct QuotientPresentation {
    Subspace z;
    Subspace b;
    std::vector<RatVec> reps;

    std::size_t dim() const { return reps.size(); }
};

namespace detail {

/// Incremental row-reduction state for membership tests against a growing span.
class SpanReducer {
public:
    explicit SpanReducer(std::size_t ambient) : ambient_(ambient) {}

    /// Reduces v against the rows held so far; returns false (and absorbs the
    /// remainder) when v adds a new direction.
    bool reduce_is_member(const RatVec& v)
    {
        RatVec w = v;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rat& head = w[pivot_cols_[k]];
            if (head == 0)
                continue;
            Rat factor = head;
            const RatVec& row = rows_[k];
            for (std::size_t j = 0; j < ambient_; ++j)
                if (row[j] != 0)
                    w[j] -= factor * row[j];
        }
        std::size_t lead = ambient_;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (w[j] != 0) {
                lead = j;
                break;
            }
        if (lead == ambient_)
            return true;
        Rat inv = 1 / w[lead];
        for (std::size_t j = 0; j < ambient_; ++j)
            if (w[j] != 0)
                w[j] *= inv;
        // Keep rows mutually reduced so later membership tests stay cheap.
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Rat factor = rows_[k][lead];
            if (factor == 0)
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (w[j] != 0)
                    rows_[k][j] -= factor * w[j];
        }
        rows_.push_back(std::move(w));
        pivot_cols_.push_back(lead);
        return false;
    }

private:
    std::size_t ambient_;
    std::vector<RatVec> rows_;
    std::vector<std::size_t> pivot_cols_;
};

} // namespace detail

inline QuotientPresentation make_quotient(const Subspace& z, const Subspace& b)
{
    QuotientPresentation q;
    q.z = z;
    q.b = b;
    if (z.ambient != b.ambient)
        throw Error(ErrorCode::DimMismatch, "make_quotient: ambient dimensions differ");
    detail::SpanReducer reducer(z.ambient);
    for (const RatVec& v : b.basis)
        reducer.reduce_is_member(v);
    for (const RatVec& v : z.basis)
        if (!reducer.reduce_is_member(v))
            q.reps.push_back(v);
    return q;
}

/**
 * Matrix of the map induced by f on quotients Zs/Bs -> Zt/Bt, expressed in
 * the representative bases of the two quotients. Verifies the chain
 * compatibilities f(span Zs) <= span Zt and f(span Bs) <= span Bt first.
 */
inline RatMatrix induced_map(const RatMatrix& f,
                             const Subspace& zs, const Subspace& bs,
                             const Subspace& zt, const Subspace& bt)
{
    if (f.cols() != zs.ambient || f.rows() != zt.ambient)
        throw Error(ErrorCode::DimMismatch, "induced_map: map shape does not match ambients");
    if (zs.ambient != bs.ambient || zt.ambient != bt.ambient)
        throw Error(ErrorCode::DimMismatch, "induced_map: ambient dimensions differ");

    std::vector<RatVec> f_z;
    for (const RatVec& v : zs.basis)
        f_z.push_back(f.apply(v));
    if (!contains(zt, f_z))
        throw Error(ErrorCode::NotChainCompatible, "induced_map: f does not map Z into Z");
    std::vector<RatVec> f_b;
    for (const RatVec& v : bs.basis)
        f_b.push_back(f.apply(v));
    if (!contains(bt, f_b))
        throw Error(ErrorCode::NotChainCompatible, "induced_map: f does not map B into B");

    QuotientPresentation qs = make_quotient(zs, bs);
    QuotientPresentation qt = make_quotient(zt, bt);

    // Coordinates of f(rep) in the [Bt | reps_t] system; the Bt block is
    // discarded — it is the part that dies in the quotient.
    std::vector<RatVec> columns = bt.basis;
    columns.insert(columns.end(), qt.reps.begin(), qt.reps.end());
    RatMatrix system = columns_to_matrix(zt.ambient, columns);
    std::vector<RatVec> images;
    for (const RatVec& rep : qs.reps)
        images.push_back(f.apply(rep));
    RatMatrix rhs = columns_to_matrix(zt.ambient, images);
    SolveResult res = solve(system, rhs);
    if (!res.all_consistent())
        throw Error(ErrorCode::NotChainCompatible,
                    "induced_map: image leaves the target cocycle space");

    RatMatrix out(qt.dim(), qs.dim());
    for (std::size_t j = 0; j < qs.dim(); ++j)
        for (std::size_t i = 0; i < qt.dim(); ++i)
            out(i, j) = res.solutions(bt.dim() + i, j);
    return out;
}

} // namespace hodgekit

#endif // HODGEKIT_LINALG_HPP
