#include "spdp/basis.hpp"

namespace spdp {
namespace {

void emit_multilinear(int n_vars, int degree, std::uint64_t bits, int next, int left,
                      std::vector<Monomial>& out) {
    if (left == 0) {
        out.push_back(Monomial::from_support(bits));
        return;
    }
    for (int v = next; v <= n_vars - left; ++v)
        emit_multilinear(n_vars, degree, bits | (std::uint64_t(1) << v), v + 1, left - 1, out);
}

void emit_standard(int n_vars, std::vector<std::uint16_t>& exps, int pos, int left,
                   std::vector<Monomial>& out) {
    if (pos == n_vars - 1) {
        exps[static_cast<std::size_t>(pos)] = static_cast<std::uint16_t>(left);
        out.push_back(Monomial::from_exponents(exps));
        exps[static_cast<std::size_t>(pos)] = 0;
        return;
    }
    // larger exponents on earlier variables sort first in canonical order
    for (int e = left; e >= 0; --e) {
        exps[static_cast<std::size_t>(pos)] = static_cast<std::uint16_t>(e);
        emit_standard(n_vars, exps, pos + 1, left - e, out);
    }
    exps[static_cast<std::size_t>(pos)] = 0;
}

} // namespace

int ambient_degree_cutoff(int poly_degree, const SpdpParams& params) {
    int effective_kappa = params.convention == Convention::cumulative ? 0 : params.kappa;
    int d = poly_degree - effective_kappa + params.ell;
    return d < 0 ? 0 : d;
}

Integer ambient_dimension(int n_vars, RingMode mode, int degree_cutoff) {
    return mode == RingMode::multilinear ? multilinear_count(n_vars, degree_cutoff)
                                         : standard_count(n_vars, degree_cutoff);
}

std::vector<Monomial> monomials_of_degree(int n_vars, RingMode mode, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    if (mode == RingMode::multilinear) {
        if (d > n_vars) return out;
        emit_multilinear(n_vars, d, 0, 0, d, out);
    } else {
        if (n_vars == 0) {
            if (d == 0) out.push_back(Monomial::one(mode, 0));
            return out;
        }
        std::vector<std::uint16_t> exps(static_cast<std::size_t>(n_vars), 0);
        emit_standard(n_vars, exps, 0, d, out);
    }
    return out;
}

std::vector<Monomial> monomials_upto(int n_vars, RingMode mode, int cutoff) {
    std::vector<Monomial> out;
    for (int d = 0; d <= cutoff; ++d) {
        auto layer = monomials_of_degree(n_vars, mode, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

AmbientBasis make_ambient_basis(int n_vars, RingMode mode, int degree_cutoff,
                                std::size_t column_budget) {
    Integer n = ambient_dimension(n_vars, mode, degree_cutoff);
    if (n > Integer(column_budget))
        throw BudgetError("ambient basis needs " + n.str() + " columns, budget is " +
                          std::to_string(column_budget));
    AmbientBasis basis;
    basis.n_vars = n_vars;
    basis.mode = mode;
    basis.degree_cutoff = degree_cutoff;
    basis.monomials = monomials_upto(n_vars, mode, degree_cutoff);
    basis.index.reserve(basis.monomials.size() * 2);
    for (std::uint32_t i = 0; i < basis.monomials.size(); ++i)
        basis.index.emplace(basis.monomials[i], i);
    return basis;
}

} // namespace spdp
