#pragma once

#include "spdp/families.hpp"
#include "spdp/localwidth.hpp"
#include "spdp/polynomial.hpp"
#include "spdp/rank.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spdp::verify {

/// Seeded random multilinear polynomial: up to max_terms monomials of degree
/// <= max_degree with nonzero coefficients in [-3, 3].
Polynomial random_polynomial(int n, int max_degree, int max_terms, std::uint64_t seed);

/// Random variable permutation.
std::vector<int> random_permutation(int n, std::uint64_t seed);

/// Random block partition with blocks of size <= max_block.
BlockPartition random_partition(int n, int max_block, std::uint64_t seed);

/// Dense Gaussian elimination over the rationals on a dense copy of the
/// matrix. Deliberately independent of the sparse fraction-free engine.
std::size_t dense_rank(const SpdpMatrix<Rational>& mat);
std::size_t dense_rank_rows(const std::vector<std::vector<Rational>>& rows);

/// Span dimension by orthogonalized insertion (exact Gram-Schmidt without
/// normalization). A second independent route to the rank.
std::size_t span_dimension(const SpdpMatrix<Rational>& mat);

/// Brute-force count of histograms over s_prime bins with total mass r.
Integer enumerate_profiles(int r, int s_prime);

/// Brute-force realized-profile count: enumerate all multisets of
/// live_count raw interface words of length <= kappa, keep windows whose
/// words all normalize within the q budget, and count distinct profiles.
Integer enumerate_realized_profiles(const LocalModel& model, int live_count, int kappa);

struct SuiteResult {
    std::string suite;
    int checked = 0;
    bool ok = true;
    std::string counterexample; // verbatim description of the first failure
};

/// Seeded property suites behind `spdp verify`. Any violation is reported
/// with the failing instance; count scales the number of random cases.
SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed);

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

} // namespace spdp::verify
