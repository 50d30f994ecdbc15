#include "spdp/spdp_matrix.hpp"

#include <set>

namespace spdp {

std::vector<Monomial> derivative_indices(int n_vars, RingMode mode, const SpdpParams& params) {
    if (params.kappa < 0) throw std::invalid_argument("kappa must be >= 0");
    std::vector<Monomial> out;
    int lo = params.convention == Convention::cumulative ? 0 : params.kappa;
    for (int k = lo; k <= params.kappa; ++k) {
        auto layer = monomials_of_degree(n_vars, mode, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

BlockPartition::BlockPartition(int n_vars, std::vector<std::vector<int>> blocks)
    : n_vars_(n_vars), blocks_(std::move(blocks)), block_of_(static_cast<std::size_t>(n_vars), -1) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (int v : blocks_[b]) {
            if (v < 0 || v >= n_vars) throw std::invalid_argument("block variable out of range");
            if (block_of_[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("blocks are not disjoint");
            block_of_[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }
        max_block_size_ = std::max(max_block_size_, static_cast<int>(blocks_[b].size()));
    }
    for (int v = 0; v < n_vars; ++v)
        if (block_of_[static_cast<std::size_t>(v)] == -1)
            throw std::invalid_argument("blocks do not cover all variables");
}

BlockPartition BlockPartition::singletons(int n_vars) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n_vars));
    for (int v = 0; v < n_vars; ++v) blocks.push_back({v});
    return BlockPartition(n_vars, std::move(blocks));
}

bool BlockPartition::within_one_block(const Monomial& m) const {
    int block = -1;
    for (int v : m.support()) {
        int b = block_of(v);
        if (block == -1) block = b;
        else if (b != block) return false;
    }
    return true;
}

BlockPredicate default_block_predicate(const BlockPartition& partition) {
    BlockPredicate pred;
    pred.row_admissible = [partition](const RowLabel& label) {
        return partition.within_one_block(label.deriv);
    };
    pred.column_admissible = nullptr; // keep all columns
    return pred;
}

namespace {

template <typename F>
void export_impl(const SpdpMatrix<F>& mat, std::ostream& os, const char* field) {
    os << "spdp " << mat.row_count() << " " << mat.column_count() << " " << field << "\n";
    for (std::size_t r = 0; r < mat.rows.size(); ++r)
        for (const auto& [c, v] : mat.rows[r].entries) os << r << " " << c << " " << v << "\n";
}

} // namespace

void export_matrix(const SpdpMatrix<Rational>& mat, std::ostream& os) {
    export_impl(mat, os, "q");
}

void export_matrix(const SpdpMatrix<Gfp>& mat, std::ostream& os) {
    export_impl(mat, os, "gfp");
}

} // namespace spdp
