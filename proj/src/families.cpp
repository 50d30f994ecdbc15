#include "spdp/families.hpp"

#include "spdp/errors.hpp"
#include "spdp/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace spdp {

std::string FamilySpec::name() const {
    switch (kind) {
        case FamilyKind::permanent: return "perm_" + std::to_string(dimension) + "x" + std::to_string(dimension);
        case FamilyKind::diagonal_power:
            return "diagonal_x^" + std::to_string(exponent);
        case FamilyKind::random_deg3: return "rand_deg3";
        case FamilyKind::goldreich_like: return "goldreich_like";
        case FamilyKind::toy_example: return "toy_example";
        case FamilyKind::custom: return "custom";
    }
    return "unknown";
}

int permanent_var(int d, int i, int j) {
    return i * d + j;
}

Polynomial permanent(int d) {
    if (d < 1) throw std::invalid_argument("permanent dimension must be >= 1");
    if (d > 7) throw BudgetError("permanent limited to d <= 7 (d! terms)");
    int n = d * d;
    Polynomial p(n, RingMode::multilinear);
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::uint64_t bits = 0;
        for (int i = 0; i < d; ++i)
            bits |= std::uint64_t(1) << permanent_var(d, i, perm[static_cast<std::size_t>(i)]);
        p.add_term(Monomial::from_support(bits), Rational(1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
}

std::vector<Polynomial> sub_permanent_generators(int d, int kappa) {
    if (kappa < 0 || kappa > d) throw std::invalid_argument("kappa must lie in [0, d]");
    Polynomial perm = permanent(d);
    std::vector<Polynomial> out;
    // enumerate kappa-subsets R of the diagonal in lexicographic order
    std::vector<int> R(static_cast<std::size_t>(kappa));
    std::iota(R.begin(), R.end(), 0);
    auto advance = [&]() {
        int k = kappa;
        for (int i = k - 1; i >= 0; --i) {
            if (R[static_cast<std::size_t>(i)] < d - (k - i)) {
                ++R[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    R[static_cast<std::size_t>(j)] = R[static_cast<std::size_t>(j - 1)] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        std::vector<int> vars;
        vars.reserve(static_cast<std::size_t>(kappa));
        for (int i : R) vars.push_back(permanent_var(d, i, i));
        out.push_back(perm.derive(vars));
    } while (kappa > 0 && advance());
    return out;
}

Polynomial diagonal_power(int n, int e) {
    if (e < 1) throw std::invalid_argument("exponent must be >= 1");
    Polynomial p(n, RingMode::standard);
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint16_t> exps(static_cast<std::size_t>(n), 0);
        exps[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e);
        p.add_term(Monomial::from_exponents(std::move(exps)), Rational(1));
    }
    return p;
}

namespace {

std::vector<int> sample_distinct(SplitMix64& rng, int n, int count) {
    std::vector<int> vars;
    vars.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(vars.size()) < count) {
        int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    return vars;
}

} // namespace

std::vector<Clause> random_deg3_clauses(int n, int clause_count, std::uint64_t seed) {
    if (n < 3 && clause_count > 0)
        throw std::invalid_argument("width-3 clauses need at least 3 variables");
    SplitMix64 rng(seed);
    std::vector<Clause> clauses;
    clauses.reserve(static_cast<std::size_t>(clause_count));
    for (int c = 0; c < clause_count; ++c) {
        std::vector<int> vars = sample_distinct(rng, n, 3);
        Clause clause;
        for (int v : vars) clause.push_back(rng.next_bool() ? (v + 1) : -(v + 1));
        clauses.push_back(std::move(clause));
    }
    return clauses;
}

Polynomial arithmetize_clause(const Clause& clause, int n_vars) {
    // 1 - prod over literals of (1 - lit), with lit = x for positive and
    // 1 - x for negative occurrences.
    Polynomial prod = Polynomial::constant(n_vars, RingMode::multilinear, Rational(1));
    for (int lit : clause) {
        int v = std::abs(lit) - 1;
        if (v < 0 || v >= n_vars) throw std::invalid_argument("clause literal out of range");
        Polynomial x = Polynomial::variable(n_vars, RingMode::multilinear, v);
        Polynomial factor = Polynomial::constant(n_vars, RingMode::multilinear, Rational(1));
        if (lit > 0) factor -= x; // 1 - x
        else factor = x;          // 1 - (1 - x)
        // prod *= factor, multilinear product via distribution
        Polynomial next(n_vars, RingMode::multilinear);
        for (const auto& [m, c] : factor.terms()) {
            Polynomial shifted = prod.times_monomial(m);
            next += shifted.scaled(c);
        }
        prod = std::move(next);
    }
    Polynomial one = Polynomial::constant(n_vars, RingMode::multilinear, Rational(1));
    return one - prod;
}

Polynomial random_deg3(int n, int clause_count, std::uint64_t seed) {
    Polynomial p(n, RingMode::multilinear);
    for (const Clause& clause : random_deg3_clauses(n, clause_count, seed))
        p += arithmetize_clause(clause, n);
    return p;
}

std::vector<std::vector<int>> goldreich_tuples(int n, int predicate_count, int locality,
                                               std::uint64_t seed) {
    if (locality < 3) throw std::invalid_argument("locality must be >= 3");
    if (n < locality && predicate_count > 0)
        throw std::invalid_argument("not enough variables for the predicate locality");
    SplitMix64 rng(seed);
    std::vector<std::vector<int>> tuples;
    tuples.reserve(static_cast<std::size_t>(predicate_count));
    for (int i = 0; i < predicate_count; ++i) tuples.push_back(sample_distinct(rng, n, locality));
    return tuples;
}

namespace {

Polynomial multiply_full(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.n_vars(), a.mode());
    for (const auto& [m, c] : b.terms()) out += a.times_monomial(m).scaled(c);
    return out;
}

/// XOR of the first locality-2 inputs, XOR the AND of the last two:
/// arithmetized via a XOR b = a + b - 2ab.
Polynomial xor_and_predicate(const std::vector<int>& tuple, int n_vars) {
    auto var = [&](std::size_t i) {
        return Polynomial::variable(n_vars, RingMode::multilinear, tuple[i]);
    };
    std::size_t k = tuple.size();
    Polynomial acc = var(0);
    auto xor_with = [&](const Polynomial& b) {
        Polynomial ab = multiply_full(acc, b);
        acc = acc + b - ab.scaled(Rational(2));
    };
    for (std::size_t i = 1; i + 2 < k; ++i) xor_with(var(i));
    xor_with(multiply_full(var(k - 2), var(k - 1)));
    return acc;
}

} // namespace

Polynomial goldreich_like(int n, int predicate_count, int locality, std::uint64_t seed) {
    Polynomial p(n, RingMode::multilinear);
    for (const auto& tuple : goldreich_tuples(n, predicate_count, locality, seed))
        p += xor_and_predicate(tuple, n);
    return p;
}

Polynomial toy_example() {
    Polynomial p(3, RingMode::multilinear);
    p.add_term(Monomial::from_support(0b011), Rational(1)); // x1*x2
    p.add_term(Monomial::from_support(0b110), Rational(1)); // x2*x3
    return p;
}

Polynomial make_polynomial(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::permanent: return permanent(spec.dimension);
        case FamilyKind::diagonal_power: return diagonal_power(spec.n, spec.exponent);
        case FamilyKind::random_deg3: return random_deg3(spec.n, spec.clause_count, spec.seed);
        case FamilyKind::goldreich_like:
            return goldreich_like(spec.n, spec.predicate_count, spec.locality, spec.seed);
        case FamilyKind::toy_example: return toy_example();
        case FamilyKind::custom: return parse_polynomial(spec.polynomial_text);
    }
    throw std::invalid_argument("unknown family kind");
}

namespace {

FamilyKind kind_from_name(const std::string& name) {
    if (name == "permanent") return FamilyKind::permanent;
    if (name == "diagonal_power") return FamilyKind::diagonal_power;
    if (name == "random_deg3") return FamilyKind::random_deg3;
    if (name == "goldreich_like") return FamilyKind::goldreich_like;
    if (name == "toy_example") return FamilyKind::toy_example;
    if (name == "custom") return FamilyKind::custom;
    throw ParseError("unknown family kind '" + name + "'");
}

const char* kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::permanent: return "permanent";
        case FamilyKind::diagonal_power: return "diagonal_power";
        case FamilyKind::random_deg3: return "random_deg3";
        case FamilyKind::goldreich_like: return "goldreich_like";
        case FamilyKind::toy_example: return "toy_example";
        case FamilyKind::custom: return "custom";
    }
    return "unknown";
}

} // namespace

FamilySpec family_spec_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("family spec JSON: ") + e.what());
    }
    try {
        FamilySpec spec;
        spec.kind = kind_from_name(j.at("kind").get<std::string>());
        spec.seed = j.value("seed", std::uint64_t{0});
        nlohmann::json params = j.value("params", nlohmann::json::object());
        spec.n = params.value("n", 0);
        spec.dimension = params.value("d", 0);
        spec.exponent = params.value("e", 0);
        spec.clause_count = params.value("clauses", 0);
        spec.predicate_count = params.value("count", 0);
        spec.locality = params.value("locality", 5);
        spec.polynomial_text = params.value("polynomial", std::string{});
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("family spec JSON: ") + e.what());
    }
}

std::string family_spec_to_json(const FamilySpec& spec) {
    nlohmann::ordered_json params;
    switch (spec.kind) {
        case FamilyKind::permanent: params["d"] = spec.dimension; break;
        case FamilyKind::diagonal_power:
            params["n"] = spec.n;
            params["e"] = spec.exponent;
            break;
        case FamilyKind::random_deg3:
            params["n"] = spec.n;
            params["clauses"] = spec.clause_count;
            break;
        case FamilyKind::goldreich_like:
            params["n"] = spec.n;
            params["count"] = spec.predicate_count;
            params["locality"] = spec.locality;
            break;
        case FamilyKind::toy_example: break;
        case FamilyKind::custom: params["polynomial"] = spec.polynomial_text; break;
    }
    nlohmann::ordered_json j;
    j["kind"] = kind_name(spec.kind);
    j["params"] = params;
    j["seed"] = spec.seed;
    return j.dump();
}

} // namespace spdp
