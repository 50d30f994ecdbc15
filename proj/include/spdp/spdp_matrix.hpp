#pragma once

#include "spdp/basis.hpp"
#include "spdp/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace spdp {

/// Row label (S, m): the derivative index (a squarefree monomial in
/// multilinear mode, a multi-index in standard mode) and the shift monomial.
struct RowLabel {
    Monomial deriv;
    Monomial shift;
};

/// Enumerate the derivative indices for the given convention in canonical
/// order: size-kappa sets (or all sizes <= kappa when cumulative) in
/// multilinear mode, multi-indices in standard mode.
std::vector<Monomial> derivative_indices(int n_vars, RingMode mode, const SpdpParams& params);

template <typename F>
struct GeneratorRow {
    RowLabel label;
    BasicPolynomial<F> poly; // m * d_S p
};

/// The SPDP generating family in row order: shift monomials in canonical
/// order, derivative indices in canonical order within each shift. When
/// keep_zero_rows is off, derivative indices with a vanishing derivative are
/// skipped entirely.
template <typename F>
std::vector<GeneratorRow<F>> generators(const BasicPolynomial<F>& p, const SpdpParams& params) {
    std::vector<GeneratorRow<F>> out;
    std::vector<Monomial> derivs = derivative_indices(p.n_vars(), p.mode(), params);
    std::vector<std::pair<Monomial, BasicPolynomial<F>>> dpolys;
    dpolys.reserve(derivs.size());
    for (const Monomial& d : derivs) {
        BasicPolynomial<F> dp = p.mode() == RingMode::multilinear ? p.derive(d.support())
                                                                  : p.derive_multi(d);
        if (!params.keep_zero_rows && dp.is_zero()) continue;
        dpolys.emplace_back(d, std::move(dp));
    }
    std::vector<Monomial> shifts = monomials_upto(p.n_vars(), p.mode(), params.ell);
    out.reserve(shifts.size() * dpolys.size());
    for (const Monomial& m : shifts)
        for (const auto& [d, dp] : dpolys)
            out.push_back({RowLabel{d, m}, dp.times_monomial(m)});
    return out;
}

template <typename F>
struct SparseRow {
    RowLabel label;
    std::vector<std::pair<std::uint32_t, F>> entries; // column-sorted
};

/// Explicit SPDP coefficient matrix: rows are the generating family written
/// in the ambient basis.
template <typename F>
struct SpdpMatrix {
    SpdpParams params;
    int n_vars = 0;
    RingMode mode = RingMode::multilinear;
    int degree_cutoff = 0;
    std::vector<Monomial> columns;
    std::vector<SparseRow<F>> rows;

    std::size_t row_count() const { return rows.size(); }
    std::size_t column_count() const { return columns.size(); }
};

template <typename F>
SpdpMatrix<F> build_matrix(const BasicPolynomial<F>& p, const SpdpParams& params) {
    AmbientBasis basis = ambient_basis(p, params);
    SpdpMatrix<F> mat;
    mat.params = params;
    mat.n_vars = p.n_vars();
    mat.mode = p.mode();
    mat.degree_cutoff = basis.degree_cutoff;
    for (auto& gen : generators(p, params)) {
        SparseRow<F> row;
        row.label = std::move(gen.label);
        row.entries.reserve(gen.poly.term_count());
        for (const auto& [mono, coeff] : gen.poly.terms())
            row.entries.emplace_back(basis.index.at(mono), coeff);
        mat.rows.push_back(std::move(row));
    }
    mat.columns = std::move(basis.monomials);
    return mat;
}

/// A partition of the variable set into disjoint covering blocks.
class BlockPartition {
public:
    BlockPartition(int n_vars, std::vector<std::vector<int>> blocks);

    /// n_vars singleton blocks; recovers the unblocked matrix.
    static BlockPartition singletons(int n_vars);

    int n_vars() const { return n_vars_; }
    int max_block_size() const { return max_block_size_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int var) const { return block_of_.at(static_cast<std::size_t>(var)); }

    /// True when every variable of the monomial lies in a single block.
    bool within_one_block(const Monomial& m) const;

private:
    int n_vars_;
    int max_block_size_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

struct BlockPredicate {
    std::function<bool(const RowLabel&)> row_admissible;
    std::function<bool(const Monomial&)> column_admissible;
};

/// Default admissibility: keep rows whose derivative support touches at most
/// one block; keep all columns.
BlockPredicate default_block_predicate(const BlockPartition& partition);

/// Structured submatrix M^B: admissible rows and columns only. An empty
/// selection is a valid matrix of rank zero.
template <typename F>
SpdpMatrix<F> blocked_matrix(const SpdpMatrix<F>& mat, const BlockPartition& partition,
                             const BlockPredicate& pred) {
    (void)partition;
    SpdpMatrix<F> out;
    out.params = mat.params;
    out.n_vars = mat.n_vars;
    out.mode = mat.mode;
    out.degree_cutoff = mat.degree_cutoff;

    std::vector<std::uint32_t> col_map(mat.columns.size(), UINT32_MAX);
    for (std::uint32_t c = 0; c < mat.columns.size(); ++c) {
        if (!pred.column_admissible || pred.column_admissible(mat.columns[c])) {
            col_map[c] = static_cast<std::uint32_t>(out.columns.size());
            out.columns.push_back(mat.columns[c]);
        }
    }
    for (const auto& row : mat.rows) {
        if (pred.row_admissible && !pred.row_admissible(row.label)) continue;
        SparseRow<F> kept;
        kept.label = row.label;
        for (const auto& [c, v] : row.entries)
            if (col_map[c] != UINT32_MAX) kept.entries.emplace_back(col_map[c], v);
        out.rows.push_back(std::move(kept));
    }
    return out;
}

template <typename F>
SpdpMatrix<F> blocked_matrix(const SpdpMatrix<F>& mat, const BlockPartition& partition) {
    return blocked_matrix(mat, partition, default_block_predicate(partition));
}

/// Sparse triplet export: header "spdp <rows> <cols> <field>" followed by
/// one "row col value" line per stored nonzero.
void export_matrix(const SpdpMatrix<Rational>& mat, std::ostream& os);
void export_matrix(const SpdpMatrix<Gfp>& mat, std::ostream& os);

} // namespace spdp
