#pragma once

#include "spdp/basis.hpp"
#include "spdp/cnf.hpp"
#include "spdp/families.hpp"
#include "spdp/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spdp {

/// Tunables for the sanity pipeline. Every effective value is echoed in the
/// PipelineRun so outputs are reproducible byte for byte.
struct PipelineParams {
    double window_multiplier = 3.0;   // kappa_win = ceil(c_w * log2 n)
    double restriction_density = 0.3; // fraction of variables fixed before pruning
    int kappa = 0;                    // 0 = auto: max(1, round(log2(n) / 4))
    int ell = 2;
    Convention convention = Convention::exact_kappa;
    std::string field = "q"; // "q" or "gfp"
    std::optional<bool> compress_profiles; // default: on for CNF inputs, off for polynomial families
    std::size_t column_budget = 5'000'000;
};

/// Incidence structure the window stages operate on: for CNF input these are
/// the clauses; for a polynomial family each term contributes its support
/// with the coefficient sign as polarity.
struct IncidenceItem {
    std::vector<int> vars;        // 1-based, ascending
    std::vector<int> polarities;  // +1 / -1, parallel to vars
};

struct WindowSelection {
    int kappa_win = 0;
    std::uint64_t seed = 0;
    std::vector<int> selected; // 1-based variable ids, ascending
    int live_vars = 0;
};

/// Breadth-first variable neighborhood of a seeded pivot over the
/// variable-incidence graph, truncated to the window budget. When a
/// connected component is exhausted with budget left, the walk restarts at
/// the smallest unvisited occurring variable.
WindowSelection extract_window(const std::vector<IncidenceItem>& items, int n_vars, int kappa_win,
                               std::uint64_t seed);

struct ProfileClasses {
    int count = 0;                 // P
    std::vector<int> class_of;     // selected index -> class id
    std::vector<int> representative; // class id -> 1-based variable
};

/// Interface-anonymous canonicalization: each selected variable gets the
/// multiset of (local item width, polarity) pairs over the items that touch
/// it, restricted to the window; variables with equal signatures share a
/// class.
ProfileClasses canonicalize_profiles(const WindowSelection& sel,
                                     const std::vector<IncidenceItem>& items);

/// Everything a pipeline run records. pass <=> gamma < threshold.
struct PipelineRun {
    std::string family;
    int n = 0;
    int live_vars = 0;
    int profiles = 0;
    std::size_t gamma = 0;
    int threshold = 0;
    bool pass = false;

    int kappa = 0;
    int ell = 0;
    int kappa_win = 0;
    double window_multiplier = 0.0;
    double restriction_density = 0.0;
    bool compressed = false;
    std::string field_mode;
    std::string convention;
    std::uint64_t seed = 0;

    int cnf_vars = 0;
    int cnf_clauses = 0;
    int pruned_vars = 0;
    int pruned_clauses = 0;
    bool conflict = false;
    std::string polynomial_hash;
    std::string window_polynomial_text;
};

/// ceil(sqrt(n)), the collapse threshold.
int collapse_threshold(int n);

PipelineRun run_pipeline(const FamilySpec& spec, const PipelineParams& params, std::uint64_t seed);
PipelineRun run_pipeline(const Circuit& circuit, const PipelineParams& params, std::uint64_t seed,
                         const std::string& name = "circuit");
PipelineRun run_pipeline(const Cnf& cnf, int ambient_n, const PipelineParams& params,
                         std::uint64_t seed, const std::string& name = "cnf");

/// JSON with the full config echo; deterministic layout.
std::string pipeline_run_json(const PipelineRun& run);

std::string pipeline_csv_header();
std::string pipeline_csv_row(const PipelineRun& run);

/// One manifest entry: a family spec plus its seed (parsed from JSON).
struct ManifestEntry {
    FamilySpec spec;
    std::uint64_t seed = 0;
};

std::vector<ManifestEntry> parse_manifest(const std::string& json_text);

/// The bundled desk-scale manifest mirroring the qualitative collapse
/// pattern: pseudorandom CNF families collapse, the diagonal power sum and
/// the 3x3 permanent do not.
extern const char* const kTable1ScaledManifest;

} // namespace spdp
