#include "spdp/cnf.hpp"

#include "spdp/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace spdp {

void Cnf::validate() const {
    for (const Clause& c : clauses)
        for (int lit : c) {
            int v = std::abs(lit);
            if (lit == 0 || v > n_vars) throw ParseError("CNF literal out of range");
        }
    if (!var_names.empty() && static_cast<int>(var_names.size()) != n_vars)
        throw ParseError("CNF variable name map has the wrong length");
}

std::string write_dimacs(const Cnf& cnf) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cnf.var_names.size(); ++i)
        os << "c var " << (i + 1) << " " << cnf.var_names[i] << "\n";
    os << "p cnf " << cnf.n_vars << " " << cnf.clauses.size() << "\n";
    for (const Clause& c : cnf.clauses) {
        for (int lit : c) os << lit << " ";
        os << "0\n";
    }
    return os.str();
}

Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    std::map<int, std::string> names;
    Clause current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "var") {
                int idx;
                std::string name;
                if (ls >> idx >> name) names[idx] = name;
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            int nv = 0, nc = 0;
            if (!(ls >> fmt >> nv >> nc) || fmt != "cnf") throw ParseError("bad DIMACS header");
            cnf.n_vars = nv;
            saw_header = true;
            continue;
        }
        if (!saw_header) throw ParseError("DIMACS clauses before header");
        ls.clear();
        ls.str(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) cnf.clauses.push_back(current);
    if (!saw_header) throw ParseError("missing DIMACS header");
    if (!names.empty()) {
        cnf.var_names.assign(static_cast<std::size_t>(cnf.n_vars), "");
        for (const auto& [idx, name] : names)
            if (idx >= 1 && idx <= cnf.n_vars) cnf.var_names[static_cast<std::size_t>(idx - 1)] = name;
    }
    cnf.validate();
    return cnf;
}

Cnf tseitin(const Circuit& circuit) {
    Cnf cnf;
    const auto& gates = circuit.gates();
    std::vector<int> var_of(gates.size());
    int next_var = 1;
    cnf.var_names.clear();
    // inputs first, in declaration order, so input i is variable i
    for (int gi : circuit.input_gates()) {
        var_of[static_cast<std::size_t>(gi)] = next_var++;
        cnf.var_names.push_back(gates[static_cast<std::size_t>(gi)].name);
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].op == GateOp::input) continue;
        var_of[i] = next_var++;
        cnf.var_names.push_back(gates[i].name);
    }
    cnf.n_vars = next_var - 1;

    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        int z = var_of[i];
        switch (g.op) {
            case GateOp::input: break;
            case GateOp::and_gate: {
                int a = var_of[static_cast<std::size_t>(g.inputs[0])];
                int b = var_of[static_cast<std::size_t>(g.inputs[1])];
                cnf.clauses.push_back({-z, a});
                cnf.clauses.push_back({-z, b});
                cnf.clauses.push_back({z, -a, -b});
                break;
            }
            case GateOp::or_gate: {
                int a = var_of[static_cast<std::size_t>(g.inputs[0])];
                int b = var_of[static_cast<std::size_t>(g.inputs[1])];
                cnf.clauses.push_back({z, -a});
                cnf.clauses.push_back({z, -b});
                cnf.clauses.push_back({-z, a, b});
                break;
            }
            case GateOp::not_gate: {
                int a = var_of[static_cast<std::size_t>(g.inputs[0])];
                cnf.clauses.push_back({z, a});
                cnf.clauses.push_back({-z, -a});
                break;
            }
            case GateOp::xor_gate: {
                int a = var_of[static_cast<std::size_t>(g.inputs[0])];
                int b = var_of[static_cast<std::size_t>(g.inputs[1])];
                cnf.clauses.push_back({-z, a, b});
                cnf.clauses.push_back({-z, -a, -b});
                cnf.clauses.push_back({z, a, -b});
                cnf.clauses.push_back({z, -a, b});
                break;
            }
        }
    }
    cnf.clauses.push_back({var_of[static_cast<std::size_t>(circuit.output())]});
    return cnf;
}

Restriction random_restriction(const Cnf& cnf, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0) throw std::invalid_argument("density must be in [0, 1]");
    SplitMix64 rng(seed);
    Restriction r;
    auto threshold = static_cast<std::uint64_t>(density * 4294967296.0);
    for (int v = 1; v <= cnf.n_vars; ++v) {
        bool pick = rng.next_below(4294967296ULL) < threshold;
        bool value = rng.next_bool();
        if (pick) r.assignment[v] = value;
    }
    return r;
}

RestrictResult restrict_prune(const Cnf& cnf, const Restriction& restriction) {
    cnf.validate();
    RestrictResult result;
    std::map<int, bool> fixed = restriction.assignment;
    for (const auto& [v, val] : fixed)
        if (v < 1 || v > cnf.n_vars) throw std::invalid_argument("restriction variable out of range");

    std::vector<Clause> work = cnf.clauses;
    bool conflict = false;
    // apply assignment + unit propagation to fixpoint
    for (bool changed = true; changed && !conflict;) {
        changed = false;
        std::vector<Clause> next;
        for (const Clause& c : work) {
            Clause reduced;
            bool satisfied = false;
            for (int lit : c) {
                auto it = fixed.find(std::abs(lit));
                if (it == fixed.end()) {
                    reduced.push_back(lit);
                } else if ((lit > 0) == it->second) {
                    satisfied = true;
                    break;
                } // falsified literal: drop
            }
            if (satisfied) {
                changed = true;
                continue;
            }
            if (reduced.empty()) {
                conflict = true;
                break;
            }
            if (reduced.size() == 1) {
                int lit = reduced[0];
                int v = std::abs(lit);
                bool val = lit > 0;
                auto it = fixed.find(v);
                if (it != fixed.end() && it->second != val) {
                    conflict = true;
                    break;
                }
                fixed[v] = val;
                changed = true;
                continue;
            }
            if (reduced.size() != c.size()) changed = true;
            next.push_back(std::move(reduced));
        }
        work = std::move(next);
    }

    result.conflict = conflict;
    result.forced = fixed;
    if (conflict) {
        result.cnf.n_vars = 0;
        return result;
    }

    // dense renumbering of surviving variables, ascending original index
    std::map<int, int> renumber;
    for (const Clause& c : work)
        for (int lit : c) renumber.emplace(std::abs(lit), 0);
    int next_var = 1;
    for (auto& [orig, fresh] : renumber) fresh = next_var++;

    result.cnf.n_vars = next_var - 1;
    result.var_map.reserve(renumber.size());
    for (const auto& [orig, fresh] : renumber) result.var_map.push_back(orig);
    if (!cnf.var_names.empty()) {
        for (int orig : result.var_map)
            result.cnf.var_names.push_back(cnf.var_names[static_cast<std::size_t>(orig - 1)]);
    }
    for (const Clause& c : work) {
        Clause mapped;
        mapped.reserve(c.size());
        for (int lit : c) {
            int fresh = renumber.at(std::abs(lit));
            mapped.push_back(lit > 0 ? fresh : -fresh);
        }
        result.cnf.clauses.push_back(std::move(mapped));
    }
    return result;
}

bool cnf_satisfied_by(const Cnf& cnf, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != cnf.n_vars)
        throw std::invalid_argument("assignment length mismatch");
    for (const Clause& c : cnf.clauses) {
        bool sat = false;
        for (int lit : c) {
            bool v = assignment[static_cast<std::size_t>(std::abs(lit) - 1)];
            if ((lit > 0) == v) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

} // namespace spdp
