#pragma once

#include "spdp/polynomial.hpp"
#include "spdp/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spdp {

/// A CNF clause as signed 1-based literals (sign = polarity), the DIMACS
/// convention. Shared between the polynomial families and the pipeline.
using Clause = std::vector<int>;

enum class FamilyKind : std::uint8_t {
    permanent,
    diagonal_power,
    random_deg3,
    goldreich_like,
    toy_example,
    custom,
};

/// Deterministic description of a polynomial family instance:
/// (kind, parameters, seed) fully determines the polynomial.
struct FamilySpec {
    FamilyKind kind = FamilyKind::toy_example;
    int n = 0;               // ambient variable count (diagonal, random, goldreich)
    int dimension = 0;       // matrix dimension d (permanent)
    int exponent = 0;        // e (diagonal_power)
    int clause_count = 0;    // random_deg3
    int predicate_count = 0; // goldreich_like
    int locality = 5;        // goldreich_like
    std::uint64_t seed = 0;
    std::string polynomial_text; // custom
    std::string name() const;
};

/// Perm_d in d^2 variables x_{i,j} |-> index (i-1)*d + (j-1), one term per
/// permutation. Guarded at d <= 7 (d! terms).
Polynomial permanent(int d);

/// Variable index of x_{i,j} inside permanent(d), 0-based i, j.
int permanent_var(int d, int i, int j);

/// The C(d, kappa) diagonal derivatives d_R Perm_d, R running over
/// kappa-subsets of [d] in lexicographic order. Each is the permanent of the
/// complementary diagonal minor.
std::vector<Polynomial> sub_permanent_generators(int d, int kappa);

/// sum_i x_i^e in standard-ring mode.
Polynomial diagonal_power(int n, int e);

/// Seeded random width-3 clauses over n variables (distinct variables,
/// independent polarities).
std::vector<Clause> random_deg3_clauses(int n, int clause_count, std::uint64_t seed);

/// Arithmetization of one clause: 1 - prod(1 - lit), Boolean-reduced.
/// Agrees with the clause's truth value on {0,1}^n.
Polynomial arithmetize_clause(const Clause& clause, int n_vars);

/// Sum of the arithmetized clauses of random_deg3_clauses.
Polynomial random_deg3(int n, int clause_count, std::uint64_t seed);

/// Seeded local predicate applications: each predicate is the XOR of the
/// first locality-2 inputs XOR the AND of the last two, on a random tuple of
/// distinct variables.
Polynomial goldreich_like(int n, int predicate_count, int locality, std::uint64_t seed);

/// The tuples used by goldreich_like (for the pipeline's CNF encoding).
std::vector<std::vector<int>> goldreich_tuples(int n, int predicate_count, int locality,
                                               std::uint64_t seed);

/// x1*x2 + x2*x3 over three variables.
Polynomial toy_example();

/// Instantiate a family spec.
Polynomial make_polynomial(const FamilySpec& spec);

/// JSON form {kind, params, seed}; round-trips.
FamilySpec family_spec_from_json(const std::string& json_text);
std::string family_spec_to_json(const FamilySpec& spec);

} // namespace spdp
