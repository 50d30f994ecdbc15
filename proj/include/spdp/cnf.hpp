#pragma once

#include "spdp/circuit.hpp"
#include "spdp/families.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spdp {

/// CNF formula over 1-based variables; literals are signed variable indices.
struct Cnf {
    int n_vars = 0;
    std::vector<Clause> clauses;
    /// Optional provenance names, one per variable (preserved through
    /// DIMACS comments and restriction renumbering).
    std::vector<std::string> var_names;

    void validate() const;
};

/// DIMACS text with "c var <i> <name>" comments carrying the name map.
std::string write_dimacs(const Cnf& cnf);
Cnf parse_dimacs(const std::string& text);

/// Tseitin encoding: one auxiliary variable per non-input gate, the standard
/// clause templates (AND 3, OR 3, NOT 2, XOR 4) and a unit clause asserting
/// the output. Input i becomes variable i.
Cnf tseitin(const Circuit& circuit);

struct Restriction {
    std::map<int, bool> assignment; // variable -> value
};

/// Seeded random restriction assigning roughly density * n_vars variables.
Restriction random_restriction(const Cnf& cnf, double density, std::uint64_t seed);

struct RestrictResult {
    Cnf cnf;                  // pruned, densely renumbered
    bool conflict = false;    // an empty clause was derived
    std::vector<int> var_map; // new var (1-based index-1) -> original var
    std::map<int, bool> forced; // original vars fixed by the assignment + propagation
};

/// Apply a partial assignment: satisfied clauses are removed, falsified
/// literals deleted, unit propagation runs to fixpoint, and the surviving
/// variables are renumbered densely. A derived empty clause is reported as a
/// conflict, not an error.
RestrictResult restrict_prune(const Cnf& cnf, const Restriction& restriction);

/// Truth-table satisfiability for small formulas (test oracle support).
bool cnf_satisfied_by(const Cnf& cnf, const std::vector<bool>& assignment);

} // namespace spdp
