#pragma once

#include "spdp/bigint.hpp"
#include "spdp/errors.hpp"
#include "spdp/monomial.hpp"
#include "spdp/polynomial.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace spdp {

enum class Convention : std::uint8_t {
    exact_kappa, // derivative sets of size exactly kappa
    cumulative,  // derivative sets of size at most kappa
};

inline const char* convention_name(Convention c) {
    return c == Convention::exact_kappa ? "exact" : "cumulative";
}

struct SpdpParams {
    int kappa = 1;
    int ell = 1;
    Convention convention = Convention::exact_kappa;
    /// Keep rows whose derivative vanishes, so the row count matches the
    /// combinatorial definition. Rank is unaffected either way.
    bool keep_zero_rows = true;
    /// Hard cap on the ambient column count.
    std::size_t column_budget = 5'000'000;
};

/// The fixed ambient coefficient space: all monomials of total degree <= D,
/// D = max{0, deg(p) - kappa + ell}, in canonical order. Under the
/// cumulative convention the derivative set may be empty, so the cutoff is
/// deg(p) + ell to keep every generator inside the basis.
struct AmbientBasis {
    int n_vars = 0;
    RingMode mode = RingMode::multilinear;
    int degree_cutoff = 0;
    std::vector<Monomial> monomials;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;

    std::size_t size() const { return monomials.size(); }
};

int ambient_degree_cutoff(int poly_degree, const SpdpParams& params);

/// Exact column count for the given cutoff without materializing the basis.
Integer ambient_dimension(int n_vars, RingMode mode, int degree_cutoff);

/// Enumerate the ambient basis. Throws BudgetError when the column count
/// exceeds params.column_budget.
AmbientBasis make_ambient_basis(int n_vars, RingMode mode, int degree_cutoff,
                                std::size_t column_budget);

template <typename F>
AmbientBasis ambient_basis(const BasicPolynomial<F>& p, const SpdpParams& params) {
    return make_ambient_basis(p.n_vars(), p.mode(), ambient_degree_cutoff(p.degree(), params),
                              params.column_budget);
}

/// All monomials of total degree <= cutoff in canonical order, without the
/// index map (used for shift enumeration).
std::vector<Monomial> monomials_upto(int n_vars, RingMode mode, int cutoff);

/// All monomials of total degree == d in canonical order.
std::vector<Monomial> monomials_of_degree(int n_vars, RingMode mode, int d);

} // namespace spdp
