#include "spdp/pipeline.hpp"

#include "spdp/errors.hpp"
#include "spdp/format.hpp"
#include "spdp/rank.hpp"
#include "spdp/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace spdp {

int collapse_threshold(int n) {
    if (n < 0) throw std::invalid_argument("negative ambient size");
    int t = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    while (t * t < n) ++t;
    while (t > 0 && (t - 1) * (t - 1) >= n) --t;
    return t;
}

std::vector<IncidenceItem> incidence_of(const Cnf& cnf) {
    std::vector<IncidenceItem> items;
    items.reserve(cnf.clauses.size());
    for (const Clause& c : cnf.clauses) {
        IncidenceItem item;
        std::vector<std::pair<int, int>> lits;
        for (int lit : c) lits.emplace_back(std::abs(lit), lit > 0 ? 1 : -1);
        std::sort(lits.begin(), lits.end());
        for (auto [v, pol] : lits) {
            item.vars.push_back(v);
            item.polarities.push_back(pol);
        }
        items.push_back(std::move(item));
    }
    return items;
}

std::vector<IncidenceItem> incidence_of(const Polynomial& p) {
    std::vector<IncidenceItem> items;
    items.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) {
        IncidenceItem item;
        for (int v : m.support()) {
            item.vars.push_back(v + 1);
            item.polarities.push_back(c >= 0 ? 1 : -1);
        }
        if (!item.vars.empty()) items.push_back(std::move(item));
    }
    return items;
}

WindowSelection extract_window(const std::vector<IncidenceItem>& items, int n_vars, int kappa_win,
                               std::uint64_t seed) {
    WindowSelection sel;
    sel.kappa_win = kappa_win;
    sel.seed = seed;

    // occurrence lists over live (occurring) variables only
    std::map<int, std::vector<std::size_t>> occurs;
    for (std::size_t i = 0; i < items.size(); ++i)
        for (int v : items[i].vars) occurs[v].push_back(i);
    if (occurs.empty() || kappa_win <= 0) return sel;
    (void)n_vars;

    std::vector<int> live;
    live.reserve(occurs.size());
    for (const auto& [v, _] : occurs) live.push_back(v);

    SplitMix64 rng(seed);
    int pivot = live[static_cast<std::size_t>(rng.next_below(live.size()))];

    std::set<int> selected;
    std::set<std::size_t> used_items;
    std::deque<int> queue;
    auto select_var = [&](int v) {
        if (static_cast<int>(selected.size()) >= kappa_win) return false;
        if (selected.insert(v).second) queue.push_back(v);
        return true;
    };
    select_var(pivot);
    auto live_it = live.begin();
    while (static_cast<int>(selected.size()) < kappa_win) {
        if (queue.empty()) {
            // component exhausted; restart at the smallest unvisited variable
            while (live_it != live.end() && selected.count(*live_it)) ++live_it;
            if (live_it == live.end()) break;
            select_var(*live_it);
            continue;
        }
        int v = queue.front();
        queue.pop_front();
        for (std::size_t idx : occurs[v]) {
            if (used_items.count(idx)) continue;
            used_items.insert(idx);
            for (int w : items[idx].vars)
                if (!select_var(w)) break;
        }
    }
    sel.selected.assign(selected.begin(), selected.end());
    sel.live_vars = static_cast<int>(sel.selected.size());
    return sel;
}

ProfileClasses canonicalize_profiles(const WindowSelection& sel,
                                     const std::vector<IncidenceItem>& items) {
    ProfileClasses out;
    std::set<int> window(sel.selected.begin(), sel.selected.end());
    // finite signature: the set of (item width inside the window, polarity)
    // pairs the variable occurs with; bounded by the width/polarity alphabet
    // rather than the occurrence count
    std::map<std::vector<std::pair<int, int>>, std::vector<int>> by_signature;
    std::map<int, std::set<std::pair<int, int>>> signature;
    for (const IncidenceItem& item : items) {
        int width = 0;
        for (int v : item.vars)
            if (window.count(v)) ++width;
        if (width == 0) continue;
        for (std::size_t i = 0; i < item.vars.size(); ++i)
            if (window.count(item.vars[i]))
                signature[item.vars[i]].emplace(width, item.polarities[i]);
    }
    for (int v : sel.selected) {
        const auto& sig_set = signature[v]; // vars with no incident items share the empty signature
        std::vector<std::pair<int, int>> sig(sig_set.begin(), sig_set.end());
        by_signature[sig].push_back(v);
    }
    // classes ordered by smallest member, which is also the representative
    std::vector<std::pair<int, std::vector<int>>> classes;
    for (auto& [sig, vars] : by_signature) classes.emplace_back(vars.front(), vars);
    std::sort(classes.begin(), classes.end());

    out.count = static_cast<int>(classes.size());
    out.class_of.assign(sel.selected.size(), -1);
    std::map<int, std::size_t> position;
    for (std::size_t i = 0; i < sel.selected.size(); ++i) position[sel.selected[i]] = i;
    for (std::size_t cls = 0; cls < classes.size(); ++cls) {
        out.representative.push_back(classes[cls].first);
        for (int v : classes[cls].second)
            out.class_of[position.at(v)] = static_cast<int>(cls);
    }
    return out;
}

namespace {

/// Variable renumbering for the window polynomial: either each selected
/// variable (uncompressed) or each profile class (compressed) becomes one
/// fresh 0-based variable.
struct WindowVars {
    int count = 0;
    std::map<int, int> to_new; // original 1-based -> fresh 0-based
};

WindowVars window_vars(const WindowSelection& sel, const ProfileClasses* classes) {
    WindowVars wv;
    if (classes) {
        wv.count = classes->count;
        for (std::size_t i = 0; i < sel.selected.size(); ++i)
            wv.to_new[sel.selected[i]] = classes->class_of[i];
    } else {
        wv.count = static_cast<int>(sel.selected.size());
        for (std::size_t i = 0; i < sel.selected.size(); ++i)
            wv.to_new[sel.selected[i]] = static_cast<int>(i);
    }
    return wv;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace

Polynomial window_polynomial(const WindowSelection& sel, const Cnf& cnf,
                             const ProfileClasses* compress_classes) {
    WindowVars wv = window_vars(sel, compress_classes);
    Polynomial p(wv.count, RingMode::multilinear);
    if (sel.selected.empty()) return p;
    for (const Clause& c : cnf.clauses) {
        Clause local;
        for (int lit : c) {
            auto it = wv.to_new.find(std::abs(lit));
            if (it == wv.to_new.end()) continue;
            int fresh = it->second + 1;
            local.push_back(lit > 0 ? fresh : -fresh);
        }
        if (local.empty()) continue;
        p += arithmetize_clause(local, wv.count);
    }
    return p;
}

Polynomial window_restriction(const WindowSelection& sel, const Polynomial& poly,
                              const ProfileClasses* compress_classes) {
    WindowVars wv = window_vars(sel, compress_classes);
    Polynomial p(wv.count, poly.mode());
    for (const auto& [m, c] : poly.terms()) {
        Monomial img = Monomial::one(poly.mode(), wv.count);
        bool inside = true;
        for (int v : m.support()) {
            auto it = wv.to_new.find(v + 1);
            if (it == wv.to_new.end()) {
                inside = false; // variable outside the window is set to zero
                break;
            }
            for (int rep = 0; rep < m.exponent(v); ++rep)
                img = img.times(Monomial::variable(poly.mode(), wv.count, it->second));
        }
        if (inside) p.add_term(img, c);
    }
    return p;
}

namespace {

int auto_kappa(int n) {
    if (n <= 1) return 1;
    return std::max(1, static_cast<int>(std::llround(std::log2(static_cast<double>(n)) / 4.0)));
}

int window_budget(int n, double multiplier) {
    if (n <= 1) return 1;
    return std::max(1, static_cast<int>(std::ceil(multiplier * std::log2(static_cast<double>(n)))));
}

struct StageSeeds {
    std::uint64_t restriction;
    std::uint64_t window;
};

StageSeeds derive_seeds(std::uint64_t seed) {
    SplitMix64 rng(seed);
    return StageSeeds{rng.next(), rng.next()};
}

PipelineRun finish_run(PipelineRun run, const Polynomial& window_poly,
                       const PipelineParams& params) {
    SpdpParams sp;
    sp.kappa = run.kappa;
    sp.ell = run.ell;
    sp.convention = params.convention;
    sp.keep_zero_rows = false;
    sp.column_budget = params.column_budget;
    if (params.field == "gfp") {
        run.gamma = rank(build_matrix(to_gfp(window_poly), sp)).gamma;
    } else if (params.field == "q") {
        run.gamma = rank(build_matrix(window_poly, sp)).gamma;
    } else {
        throw ParseError("unknown field mode '" + params.field + "'");
    }
    run.threshold = collapse_threshold(run.n);
    run.pass = run.gamma < static_cast<std::size_t>(run.threshold);
    run.window_polynomial_text = print_polynomial(window_poly);
    run.polynomial_hash = fnv1a_hex(run.window_polynomial_text);
    return run;
}

PipelineRun run_on_cnf(const Cnf& cnf, int ambient_n, const PipelineParams& params,
                       std::uint64_t seed, const std::string& name) {
    PipelineRun run;
    run.family = name;
    run.n = ambient_n;
    run.seed = seed;
    run.ell = params.ell;
    run.kappa = params.kappa > 0 ? params.kappa : auto_kappa(ambient_n);
    run.kappa_win = window_budget(ambient_n, params.window_multiplier);
    run.window_multiplier = params.window_multiplier;
    run.restriction_density = params.restriction_density;
    run.compressed = params.compress_profiles.value_or(true);
    run.field_mode = params.field;
    run.convention = convention_name(params.convention);
    run.cnf_vars = cnf.n_vars;
    run.cnf_clauses = static_cast<int>(cnf.clauses.size());

    StageSeeds seeds = derive_seeds(seed);
    Restriction restriction = random_restriction(cnf, params.restriction_density, seeds.restriction);
    RestrictResult pruned = restrict_prune(cnf, restriction);
    run.conflict = pruned.conflict;
    run.pruned_vars = pruned.cnf.n_vars;
    run.pruned_clauses = static_cast<int>(pruned.cnf.clauses.size());

    auto items = incidence_of(pruned.cnf);
    WindowSelection sel = extract_window(items, pruned.cnf.n_vars, run.kappa_win, seeds.window);
    run.live_vars = sel.live_vars;
    ProfileClasses classes = canonicalize_profiles(sel, items);
    run.profiles = classes.count;

    Polynomial poly = window_polynomial(sel, pruned.cnf, run.compressed ? &classes : nullptr);
    return finish_run(std::move(run), poly, params);
}

PipelineRun run_on_polynomial(const Polynomial& p, const PipelineParams& params,
                              std::uint64_t seed, const std::string& name) {
    PipelineRun run;
    run.family = name;
    run.n = p.n_vars();
    run.seed = seed;
    run.ell = params.ell;
    run.kappa = params.kappa > 0 ? params.kappa : auto_kappa(run.n);
    run.kappa_win = window_budget(run.n, params.window_multiplier);
    run.window_multiplier = params.window_multiplier;
    run.restriction_density = 0.0; // polynomial families are not restricted
    run.compressed = params.compress_profiles.value_or(false);
    run.field_mode = params.field;
    run.convention = convention_name(params.convention);

    auto items = incidence_of(p);
    StageSeeds seeds = derive_seeds(seed);
    WindowSelection sel = extract_window(items, run.n, run.kappa_win, seeds.window);
    run.live_vars = sel.live_vars;
    ProfileClasses classes = canonicalize_profiles(sel, items);
    run.profiles = classes.count;

    Polynomial poly = window_restriction(sel, p, run.compressed ? &classes : nullptr);
    return finish_run(std::move(run), poly, params);
}

Cnf goldreich_cnf(int n, int predicate_count, int locality, std::uint64_t seed) {
    Cnf cnf;
    cnf.n_vars = n;
    auto tuples = goldreich_tuples(n, predicate_count, locality, seed);
    int L = locality;
    for (const auto& tuple : tuples) {
        for (int a = 0; a < (1 << L); ++a) {
            // predicate: XOR of the first L-2 bits XOR (AND of the last two)
            bool acc = false;
            for (int i = 0; i + 2 < L; ++i) acc ^= ((a >> i) & 1) != 0;
            acc ^= (((a >> (L - 2)) & 1) != 0) && (((a >> (L - 1)) & 1) != 0);
            if (acc) continue; // satisfying assignments stay allowed
            Clause block;
            for (int i = 0; i < L; ++i) {
                int v = tuple[static_cast<std::size_t>(i)] + 1;
                block.push_back(((a >> i) & 1) ? -v : v);
            }
            cnf.clauses.push_back(std::move(block));
        }
    }
    return cnf;
}

} // namespace

PipelineRun run_pipeline(const FamilySpec& spec, const PipelineParams& params,
                         std::uint64_t seed) {
    switch (spec.kind) {
        case FamilyKind::random_deg3: {
            int clauses = spec.clause_count > 0 ? spec.clause_count : 2 * spec.n;
            Cnf cnf;
            cnf.n_vars = spec.n;
            cnf.clauses = random_deg3_clauses(spec.n, clauses, spec.seed);
            return run_on_cnf(cnf, spec.n, params, seed, spec.name());
        }
        case FamilyKind::goldreich_like: {
            int count = spec.predicate_count > 0 ? spec.predicate_count : spec.n / 2;
            Cnf cnf = goldreich_cnf(spec.n, count, spec.locality, spec.seed);
            return run_on_cnf(cnf, spec.n, params, seed, spec.name());
        }
        default: return run_on_polynomial(make_polynomial(spec), params, seed, spec.name());
    }
}

PipelineRun run_pipeline(const Circuit& circuit, const PipelineParams& params, std::uint64_t seed,
                         const std::string& name) {
    return run_on_cnf(tseitin(circuit), circuit.n_inputs(), params, seed, name);
}

PipelineRun run_pipeline(const Cnf& cnf, int ambient_n, const PipelineParams& params,
                         std::uint64_t seed, const std::string& name) {
    return run_on_cnf(cnf, ambient_n, params, seed, name);
}

std::string pipeline_run_json(const PipelineRun& run) {
    nlohmann::ordered_json j;
    j["tool"] = "spdp";
    j["version"] = kVersion;
    j["family"] = run.family;
    j["n"] = run.n;
    j["live_vars"] = run.live_vars;
    j["profiles"] = run.profiles;
    j["gamma"] = run.gamma;
    j["threshold"] = run.threshold;
    j["pass"] = run.pass;
    j["config"] = {
        {"kappa", run.kappa},
        {"ell", run.ell},
        {"kappa_win", run.kappa_win},
        {"window_multiplier", run.window_multiplier},
        {"restriction_density", run.restriction_density},
        {"compressed", run.compressed},
        {"field", run.field_mode},
        {"convention", run.convention},
    };
    j["seed"] = run.seed;
    j["stages"] = {
        {"cnf_vars", run.cnf_vars},
        {"cnf_clauses", run.cnf_clauses},
        {"pruned_vars", run.pruned_vars},
        {"pruned_clauses", run.pruned_clauses},
        {"conflict", run.conflict},
        {"window_polynomial_hash", run.polynomial_hash},
    };
    return j.dump(2);
}

std::string pipeline_csv_header() {
    return "family,n,live_vars,profiles,rank,threshold,pass";
}

std::string pipeline_csv_row(const PipelineRun& run) {
    std::ostringstream os;
    os << run.family << "," << run.n << "," << run.live_vars << "," << run.profiles << ","
       << run.gamma << "," << run.threshold << "," << (run.pass ? "yes" : "no");
    return os.str();
}

std::vector<ManifestEntry> parse_manifest(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest JSON: ") + e.what());
    }
    std::vector<ManifestEntry> out;
    if (j.is_object()) j = nlohmann::json::array({j});
    if (!j.is_array()) throw ParseError("manifest must be a spec or an array of specs");
    for (const auto& item : j) {
        ManifestEntry entry;
        entry.spec = family_spec_from_json(item.dump());
        entry.seed = item.value("seed", std::uint64_t{0});
        out.push_back(std::move(entry));
    }
    return out;
}

const char* const kTable1ScaledManifest = R"json([
  {"kind": "random_deg3",    "params": {"n": 256,  "clauses": 512},  "seed": 11},
  {"kind": "random_deg3",    "params": {"n": 1024, "clauses": 2048}, "seed": 12},
  {"kind": "goldreich_like", "params": {"n": 256,  "count": 96, "locality": 5},  "seed": 13},
  {"kind": "goldreich_like", "params": {"n": 1024, "count": 384, "locality": 5}, "seed": 14},
  {"kind": "diagonal_power", "params": {"n": 1024, "e": 4}, "seed": 15},
  {"kind": "permanent",      "params": {"d": 3}, "seed": 16}
])json";

} // namespace spdp
