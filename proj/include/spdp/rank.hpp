#pragma once

#include "spdp/spdp_matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace spdp {

struct RankReport {
    std::size_t gamma = 0;
    std::size_t ambient_dim = 0;
    std::size_t codim = 0;
    std::size_t row_count = 0;
    std::size_t column_count = 0;
    std::string field_mode; // "q" or "gfp"
};

namespace detail {

/// Incremental exact row-space builder. Rational input rows are cleared to
/// primitive integer vectors and eliminated fraction-free (cross-multiply
/// then divide by content), so no rational arithmetic happens inside the
/// elimination; GF(p) rows are reduced monic. Pivot columns are chosen to
/// minimize fill among the stored rows.
template <typename F>
class RankEngine {
    using Entry = std::conditional_t<std::is_same_v<F, Rational>, Integer, F>;
    using Row = std::vector<std::pair<std::uint32_t, Entry>>;

public:
    /// Returns true when the row was independent of the span so far.
    bool insert(const std::vector<std::pair<std::uint32_t, F>>& row_in) {
        Row row = prepare(row_in);
        reduce(row);
        if (row.empty()) return false;
        normalize(row);
        std::uint32_t pivot_col = choose_pivot(row);
        pivot_of_col_[pivot_col] = pivots_.size();
        for (const auto& [c, v] : row) ++col_fill_[c];
        pivots_.push_back(Pivot{pivot_col, std::move(row)});
        return true;
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    struct Pivot {
        std::uint32_t col;
        Row row;
    };

    static Row prepare(const std::vector<std::pair<std::uint32_t, F>>& row_in) {
        Row row;
        row.reserve(row_in.size());
        if constexpr (std::is_same_v<F, Rational>) {
            Integer lcm = 1;
            for (const auto& [c, v] : row_in)
                if (v != 0) lcm = boost::multiprecision::lcm(lcm, denominator(v));
            for (const auto& [c, v] : row_in) {
                if (v == 0) continue;
                row.emplace_back(c, numerator(v) * (lcm / denominator(v)));
            }
        } else {
            for (const auto& [c, v] : row_in)
                if (!v.is_zero()) row.emplace_back(c, v);
        }
        return row;
    }

    /// Eliminate pivot columns from the row in increasing pivot insertion
    /// order; newly introduced pivot columns always have later insertion
    /// times, so this terminates after at most rank() eliminations.
    void reduce(Row& row) {
        for (;;) {
            std::size_t best = SIZE_MAX;
            Entry coeff{};
            for (const auto& [c, v] : row) {
                auto it = pivot_of_col_.find(c);
                if (it != pivot_of_col_.end() && it->second < best) {
                    best = it->second;
                    coeff = v;
                }
            }
            if (best == SIZE_MAX) return;
            eliminate(row, pivots_[best], coeff);
        }
    }

    void eliminate(Row& row, const Pivot& pivot, const Entry& row_coeff) {
        Row out;
        out.reserve(row.size() + pivot.row.size());
        Entry pivot_lead{};
        for (const auto& [c, v] : pivot.row)
            if (c == pivot.col) pivot_lead = v;

        auto a = row.begin();
        auto b = pivot.row.begin();
        while (a != row.end() || b != pivot.row.end()) {
            if (b == pivot.row.end() || (a != row.end() && a->first < b->first)) {
                out.emplace_back(a->first, multiply(a->second, pivot_lead));
                ++a;
            } else if (a == row.end() || b->first < a->first) {
                out.emplace_back(b->first, negate(multiply(b->second, row_coeff)));
                ++b;
            } else {
                Entry v = subtract(multiply(a->second, pivot_lead), multiply(b->second, row_coeff));
                if (!entry_zero(v)) out.emplace_back(a->first, std::move(v));
                ++a;
                ++b;
            }
        }
        if constexpr (std::is_same_v<F, Rational>) make_primitive(out);
        row = std::move(out);
    }

    void normalize(Row& row) {
        if constexpr (std::is_same_v<F, Rational>) {
            make_primitive(row);
            if (row.front().second < 0)
                for (auto& [c, v] : row) v = -v;
        } else {
            F inv = row.front().second.inverse();
            for (auto& [c, v] : row) v *= inv;
        }
    }

    std::uint32_t choose_pivot(const Row& row) const {
        std::uint32_t best_col = row.front().first;
        std::size_t best_fill = SIZE_MAX;
        for (const auto& [c, v] : row) {
            auto it = col_fill_.find(c);
            std::size_t fill = it == col_fill_.end() ? 0 : it->second;
            if (fill < best_fill || (fill == best_fill && c < best_col)) {
                best_fill = fill;
                best_col = c;
            }
        }
        return best_col;
    }

    static void make_primitive(Row& row) {
        if (row.empty()) return;
        Integer g = 0;
        for (const auto& [c, v] : row) {
            g = boost::multiprecision::gcd(g, v);
            if (g == 1) return;
        }
        for (auto& [c, v] : row) v /= g;
    }

    static Entry multiply(const Entry& a, const Entry& b) { return a * b; }
    static Entry subtract(const Entry& a, const Entry& b) { return a - b; }
    static Entry negate(const Entry& a) { return -a; }
    static bool entry_zero(const Entry& v) {
        if constexpr (std::is_same_v<F, Rational>) return v == 0;
        else return v.is_zero();
    }

    std::vector<Pivot> pivots_;
    std::unordered_map<std::uint32_t, std::size_t> pivot_of_col_;
    std::unordered_map<std::uint32_t, std::size_t> col_fill_;
};

} // namespace detail

template <typename F>
const char* field_name() {
    return std::is_same_v<F, Rational> ? "q" : "gfp";
}

/// Exact rank and codimension of an SPDP matrix over its field.
template <typename F>
RankReport rank(const SpdpMatrix<F>& mat) {
    detail::RankEngine<F> engine;
    for (const auto& row : mat.rows) {
        if (engine.rank() == mat.column_count()) break; // span is full
        engine.insert(row.entries);
    }
    RankReport report;
    report.gamma = engine.rank();
    report.ambient_dim = mat.column_count();
    report.codim = report.ambient_dim - report.gamma;
    report.row_count = mat.row_count();
    report.column_count = mat.column_count();
    report.field_mode = field_name<F>();
    return report;
}

/// Convenience composition: build the SPDP matrix of p and take its rank.
template <typename F>
RankReport codimension(const BasicPolynomial<F>& p, const SpdpParams& params) {
    return rank(build_matrix(p, params));
}

} // namespace spdp
