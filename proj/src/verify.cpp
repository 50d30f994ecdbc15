#include "spdp/verify.hpp"

#include "spdp/errors.hpp"
#include "spdp/format.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace spdp::verify {

Polynomial random_polynomial(int n, int max_degree, int max_terms, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Polynomial p(n, RingMode::multilinear);
    int terms = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        int deg = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_degree) + 1));
        std::uint64_t bits = 0;
        for (int j = 0; j < deg; ++j)
            bits |= std::uint64_t(1) << rng.next_below(static_cast<std::uint64_t>(n));
        long long coeff = static_cast<long long>(rng.next_below(6)) - 3;
        if (coeff >= 0) ++coeff; // skip zero
        p.add_term(Monomial::from_support(bits), Rational(coeff));
    }
    return p;
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    return perm;
}

BlockPartition random_partition(int n, int max_block, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> order = random_permutation(n, rng.next());
    std::vector<std::vector<int>> blocks;
    std::size_t pos = 0;
    while (pos < order.size()) {
        std::size_t size = 1 + rng.next_below(static_cast<std::uint64_t>(max_block));
        size = std::min(size, order.size() - pos);
        blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos),
                            order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        pos += size;
    }
    return BlockPartition(n, std::move(blocks));
}

std::size_t dense_rank_rows(const std::vector<std::vector<Rational>>& rows_in) {
    std::vector<std::vector<Rational>> m = rows_in;
    if (m.empty()) return 0;
    std::size_t n_cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_cols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[rank][col];
            for (std::size_t j = col; j < n_cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::vector<Rational>> densify(const SpdpMatrix<Rational>& mat) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(mat.rows.size());
    for (const auto& row : mat.rows) {
        std::vector<Rational> dense(mat.column_count(), Rational(0));
        for (const auto& [c, v] : row.entries) dense[c] = v;
        rows.push_back(std::move(dense));
    }
    return rows;
}

} // namespace

std::size_t dense_rank(const SpdpMatrix<Rational>& mat) {
    return dense_rank_rows(densify(mat));
}

std::size_t span_dimension(const SpdpMatrix<Rational>& mat) {
    std::vector<std::vector<Rational>> basis;
    auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s(0);
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    for (const auto& dense : densify(mat)) {
        std::vector<Rational> v = dense;
        for (const auto& b : basis) {
            Rational proj = dot(v, b) / dot(b, b);
            if (proj == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
        }
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
            basis.push_back(std::move(v));
    }
    return basis.size();
}

Integer enumerate_profiles(int r, int s_prime) {
    // count vectors (h_1,...,h_{s'}) of non-negative integers summing to r
    Integer count = 0;
    std::vector<int> h(static_cast<std::size_t>(s_prime), 0);
    // iterative odometer over the first s'-1 bins; the last absorbs the rest
    std::size_t k = static_cast<std::size_t>(s_prime) - 1;
    for (;;) {
        int used = 0;
        for (std::size_t i = 0; i < k; ++i) used += h[i];
        if (used <= r) ++count;
        // advance
        std::size_t pos = 0;
        while (pos < k) {
            if (++h[pos] > r) {
                h[pos] = 0;
                ++pos;
            } else {
                break;
            }
        }
        if (pos == k) break;
        if (k == 0) break;
    }
    if (s_prime == 1) return 1;
    return count;
}

Integer enumerate_realized_profiles(const LocalModel& model, int live_count, int kappa) {
    // all raw words of length <= kappa
    std::vector<std::string> words{""};
    std::vector<std::string> layer{""};
    for (int len = 1; len <= kappa; ++len) {
        std::vector<std::string> next;
        for (const auto& w : layer)
            for (char c : model.alphabet()) next.push_back(w + c);
        words.insert(words.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    std::set<std::map<std::string, int>> profiles;
    // multisets of live_count words via non-decreasing index sequences
    std::vector<std::size_t> pick(static_cast<std::size_t>(live_count), 0);
    for (;;) {
        bool valid = true;
        std::map<std::string, int> histogram;
        for (std::size_t i : pick) {
            std::string nf = model.normal_form(words[i]);
            if (static_cast<int>(nf.size()) > model.max_normal_form_length()) {
                valid = false;
                break;
            }
            ++histogram[nf];
        }
        if (valid) profiles.insert(std::move(histogram));
        // advance non-decreasing odometer
        int pos = live_count - 1;
        while (pos >= 0) {
            if (++pick[static_cast<std::size_t>(pos)] == words.size()) --pos;
            else break;
        }
        if (pos < 0) break;
        for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < pick.size(); ++i)
            pick[i] = pick[static_cast<std::size_t>(pos)];
    }
    if (live_count == 0) return 1;
    return Integer(profiles.size());
}

namespace {

struct Case {
    Polynomial poly;
    SpdpParams params;
    std::uint64_t seed;
};

Case random_case(std::uint64_t seed) {
    SplitMix64 rng(seed);
    int n = 3 + static_cast<int>(rng.next_below(6)); // 3..8
    Case c{random_polynomial(n, std::min(4, n), 10, rng.next()), SpdpParams{}, seed};
    c.params.kappa = 1 + static_cast<int>(rng.next_below(3)); // 1..3
    c.params.ell = static_cast<int>(rng.next_below(3));       // 0..2
    return c;
}

std::string describe(const Case& c) {
    std::ostringstream os;
    os << "seed=" << c.seed << " n=" << c.poly.n_vars() << " kappa=" << c.params.kappa
       << " ell=" << c.params.ell << " p = " << print_polynomial(c.poly);
    return os.str();
}

SuiteResult fail(SuiteResult r, const std::string& message) {
    r.ok = false;
    r.counterexample = message;
    return r;
}

SuiteResult suite_monotonicity(int count, std::uint64_t seed) {
    SuiteResult result{"monotonicity"};
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Case c = random_case(rng.next());
        ++result.checked;
        SpdpParams lo = c.params;
        SpdpParams hi = c.params;
        hi.ell = lo.ell + 1;
        std::size_t g_lo = codimension(c.poly, lo).gamma;
        std::size_t g_hi = codimension(c.poly, hi).gamma;
        if (g_lo > g_hi)
            return fail(result, "ell-monotonicity violated: Gamma(ell)=" + std::to_string(g_lo) +
                                    " > Gamma(ell+1)=" + std::to_string(g_hi) + " at " + describe(c));
        SpdpParams cum_lo = c.params;
        cum_lo.convention = Convention::cumulative;
        SpdpParams cum_hi = cum_lo;
        cum_hi.kappa = cum_lo.kappa + 1;
        std::size_t gc_lo = codimension(c.poly, cum_lo).gamma;
        std::size_t gc_hi = codimension(c.poly, cum_hi).gamma;
        if (gc_lo > gc_hi)
            return fail(result, "cumulative kappa-monotonicity violated: " + std::to_string(gc_lo) +
                                    " > " + std::to_string(gc_hi) + " at " + describe(c));
        // submatrix monotonicity: random row/column subsets
        auto mat = build_matrix(c.poly, c.params);
        std::size_t full = rank(mat).gamma;
        SplitMix64 pick(rng.next());
        SpdpMatrix<Rational> sub;
        sub.params = mat.params;
        sub.n_vars = mat.n_vars;
        sub.mode = mat.mode;
        sub.degree_cutoff = mat.degree_cutoff;
        std::vector<std::uint32_t> col_map(mat.column_count(), UINT32_MAX);
        for (std::uint32_t col = 0; col < mat.column_count(); ++col) {
            if (pick.next_bool()) {
                col_map[col] = static_cast<std::uint32_t>(sub.columns.size());
                sub.columns.push_back(mat.columns[col]);
            }
        }
        for (const auto& row : mat.rows) {
            if (!pick.next_bool()) continue;
            SparseRow<Rational> kept;
            kept.label = row.label;
            for (const auto& [col, v] : row.entries)
                if (col_map[col] != UINT32_MAX) kept.entries.emplace_back(col_map[col], v);
            sub.rows.push_back(std::move(kept));
        }
        std::size_t part = rank(sub).gamma;
        if (part > full)
            return fail(result, "submatrix rank " + std::to_string(part) + " exceeds full rank " +
                                    std::to_string(full) + " at " + describe(c));
    }
    return result;
}

SuiteResult suite_invariance(int count, std::uint64_t seed) {
    SuiteResult result{"invariance"};
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Case c = random_case(rng.next());
        ++result.checked;
        RankReport base = codimension(c.poly, c.params);
        auto perm = random_permutation(c.poly.n_vars(), rng.next());
        RankReport permuted = codimension(c.poly.permuted(perm), c.params);
        if (base.gamma != permuted.gamma || base.codim != permuted.codim)
            return fail(result, "permutation invariance violated: Gamma " +
                                    std::to_string(base.gamma) + " vs " +
                                    std::to_string(permuted.gamma) + " at " + describe(c));
        RankReport modp = codimension(to_gfp(c.poly), c.params);
        if (modp.gamma > base.gamma)
            return fail(result, "GF(p) rank exceeds rational rank at " + describe(c));
        if (modp.gamma != base.gamma)
            return fail(result, "GF(p) rank " + std::to_string(modp.gamma) +
                                    " disagrees with rational rank " + std::to_string(base.gamma) +
                                    " at " + describe(c));
    }
    return result;
}

SuiteResult suite_blocked(int count, std::uint64_t seed) {
    SuiteResult result{"blocked"};
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Case c = random_case(rng.next());
        ++result.checked;
        auto mat = build_matrix(c.poly, c.params);
        std::size_t full = rank(mat).gamma;
        auto partition = random_partition(c.poly.n_vars(), 3, rng.next());
        std::size_t blocked = rank(blocked_matrix(mat, partition)).gamma;
        if (blocked > full)
            return fail(result, "blocked rank " + std::to_string(blocked) + " exceeds " +
                                    std::to_string(full) + " at " + describe(c));
        auto trivial = blocked_matrix(mat, BlockPartition::singletons(c.poly.n_vars()),
                                      BlockPredicate{nullptr, nullptr});
        if (trivial.row_count() != mat.row_count() || rank(trivial).gamma != full)
            return fail(result, "all-admissible singleton restriction does not recover the matrix at " +
                                    describe(c));
    }
    return result;
}

SuiteResult suite_permanent(int count, std::uint64_t seed) {
    (void)count;
    (void)seed;
    SuiteResult result{"permanent"};
    for (int d = 2; d <= 5; ++d) {
        ++result.checked;
        int kappa = d / 2;
        SpdpParams params;
        params.kappa = kappa;
        params.ell = 0;
        Polynomial perm = permanent(d);
        RankReport report = codimension(perm, params);
        Integer bound = binomial(d, kappa);
        if (Integer(report.gamma) < bound)
            return fail(result, "Gamma_{" + std::to_string(kappa) + ",0}(Perm_" + std::to_string(d) +
                                    ") = " + std::to_string(report.gamma) + " < C(d,kappa) = " +
                                    bound.str());
        // marker monomials: each diagonal derivative p_R owns its diagonal
        // complement monomial exclusively
        auto subs = sub_permanent_generators(d, kappa);
        std::vector<Monomial> markers;
        std::vector<int> diag(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) diag[static_cast<std::size_t>(i)] = permanent_var(d, i, i);
        // reconstruct R sets in the same lexicographic order as the generators
        std::vector<std::vector<int>> r_sets;
        std::vector<int> r(static_cast<std::size_t>(kappa));
        for (int i = 0; i < kappa; ++i) r[static_cast<std::size_t>(i)] = i;
        for (;;) {
            r_sets.push_back(r);
            int k = kappa;
            int idx = k - 1;
            while (idx >= 0 && r[static_cast<std::size_t>(idx)] == d - (k - idx)) --idx;
            if (idx < 0) break;
            ++r[static_cast<std::size_t>(idx)];
            for (int j = idx + 1; j < k; ++j)
                r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j - 1)] + 1;
        }
        for (const auto& rset : r_sets) {
            std::uint64_t bits = 0;
            for (int i = 0; i < d; ++i)
                if (std::find(rset.begin(), rset.end(), i) == rset.end())
                    bits |= std::uint64_t(1) << permanent_var(d, i, i);
            markers.push_back(Monomial::from_support(bits));
        }
        for (std::size_t a = 0; a < subs.size(); ++a) {
            if (subs[a].coefficient(markers[a]) != 1)
                return fail(result, "marker monomial missing from its own derivative, d=" +
                                        std::to_string(d));
            for (std::size_t b = 0; b < subs.size(); ++b) {
                if (a == b) continue;
                if (subs[b].coefficient(markers[a]) != 0)
                    return fail(result, "marker monomial shared across derivatives, d=" +
                                            std::to_string(d));
            }
        }
    }
    return result;
}

SuiteResult suite_profiles(int count, std::uint64_t seed) {
    (void)count;
    (void)seed;
    SuiteResult result{"profiles"};
    for (int r = 0; r <= 8; ++r) {
        for (int s = 1; s <= 4; ++s) {
            ++result.checked;
            Integer formula = count_profiles(r, s);
            Integer brute = enumerate_profiles(r, s);
            if (formula != brute)
                return fail(result, "count_profiles(" + std::to_string(r) + "," + std::to_string(s) +
                                        ") = " + formula.str() + " but enumeration gives " +
                                        brute.str());
        }
    }
    for (int live : {8, 10}) {
        LocalModel model = LocalModel::default_model(live);
        Integer first = realized_profile_count(model, live, 2);
        for (int kappa = 2; kappa <= 8; ++kappa) {
            ++result.checked;
            Integer v = realized_profile_count(model, live, kappa);
            if (v != first)
                return fail(result, "realized profile count changed with kappa: R=" +
                                        std::to_string(live) + " kappa=" + std::to_string(kappa) +
                                        " count=" + v.str() + " vs " + first.str());
            if (v > count_profiles(live, static_cast<int>(model.sigma_leq_q_count()
                                                              .convert_to<long long>())))
                return fail(result, "realized profile count exceeds the compression bound");
        }
    }
    return result;
}

SuiteResult suite_oracle(int count, std::uint64_t seed) {
    SuiteResult result{"oracle"};
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
        SplitMix64 inner(rng.next());
        int n = 2 + static_cast<int>(inner.next_below(5)); // 2..6
        Case c{random_polynomial(n, std::min(3, n), 8, inner.next()), SpdpParams{}, seed};
        c.params.kappa = 1 + static_cast<int>(inner.next_below(2));
        c.params.ell = static_cast<int>(inner.next_below(3));
        ++result.checked;
        auto mat = build_matrix(c.poly, c.params);
        std::size_t sparse = rank(mat).gamma;
        std::size_t dense = dense_rank(mat);
        std::size_t span = span_dimension(mat);
        if (sparse != dense || sparse != span)
            return fail(result, "rank disagreement: sparse=" + std::to_string(sparse) + " dense=" +
                                    std::to_string(dense) + " span=" + std::to_string(span) +
                                    " at " + describe(c));
    }
    return result;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"monotonicity", "invariance", "blocked",
                                                   "permanent",    "profiles",   "oracle"};
    return names;
}

SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed) {
    if (name == "monotonicity") return suite_monotonicity(count, seed);
    if (name == "invariance") return suite_invariance(count, seed);
    if (name == "blocked") return suite_blocked(count, seed);
    if (name == "permanent") return suite_permanent(count, seed);
    if (name == "profiles") return suite_profiles(count, seed);
    if (name == "oracle") return suite_oracle(count, seed);
    throw ParseError("unknown verify suite '" + name + "'");
}

} // namespace spdp::verify
