#pragma once

#include "spdp/bigint.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spdp {

struct RewriteRule {
    std::string lhs;
    std::string rhs;
};

/// A concrete local-width computation model: finite alphabet, a strictly
/// length-reducing confluent rewrite system for local update words, the
/// normal-form length bound q, the per-step interface budget b, and the
/// width bound R. Construction validates termination (every rule shortens)
/// and confluence (critical pairs join); a non-confluent rule set is
/// rejected with a counterexample pair.
class LocalModel {
public:
    LocalModel(std::vector<char> alphabet, std::vector<RewriteRule> rules, int q, int b, int width);

    /// Smallest model satisfying the locality axioms: idempotent symbols a, b
    /// with rules aa -> a and bb -> b, q = 2, b = 2.
    static LocalModel default_model(int width = 8);

    /// Parse {alphabet, rules, q, b, R} from JSON text.
    static LocalModel from_json(const std::string& json_text);

    const std::vector<char>& alphabet() const { return alphabet_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    int max_normal_form_length() const { return q_; }
    int step_budget() const { return b_; }
    int width() const { return width_; }

    /// Unique irreducible word reachable from w. Deterministic strategy;
    /// confluence makes the strategy irrelevant.
    std::string normal_form(const std::string& w) const;

    /// All irreducible words of length <= max_len, shortlex order.
    std::vector<std::string> irreducible_words(int max_len) const;

    /// |Sigma^{<= q}|: every word of length <= q, the profile bin count used
    /// by the counting lemmas.
    Integer sigma_leq_q_count() const;

    /// Normal forms reachable as the canonical form of some raw update word
    /// of length <= raw_len (and within the model's q bound), shortlex order.
    std::vector<std::string> reachable_normal_forms(int raw_len) const;

private:
    void validate() const;

    std::vector<char> alphabet_;
    std::vector<RewriteRule> rules_;
    int q_;
    int b_;
    int width_;
};

/// A window of kappa derivative steps: each live interface carries the raw
/// local update word it accumulated across the window (at most one update
/// per derivative step, so raw words have length <= kappa). Construction
/// enforces the model bounds: live count <= R and normal forms of length
/// <= q; violating words are rejected, which is how the constant-change
/// budget is checked by construction.
struct Window {
    int kappa = 0;
    std::vector<std::string> interface_words;
    std::vector<int> interface_blocks; // optional block ids, parallel to words

    static Window make(const LocalModel& model, int kappa, std::vector<std::string> words,
                       std::vector<int> blocks = {});
};

/// Interface-anonymous profile: histogram over normal-form words with total
/// mass <= R.
struct Profile {
    std::map<std::string, int> histogram;

    int total_mass() const;
};

Profile profile_of(const Window& window, const LocalModel& model);

/// Number of histograms over s_prime bins with total mass exactly r:
/// C(r + s' - 1, s' - 1).
Integer count_profiles(int r, int s_prime);

/// Crude ordered-sequence bound: t_step^kappa.
Integer count_kappa_step_sequences(const Integer& t_step, int kappa);

/// Concrete circuit upper bound s^{c_gate * kappa} * C(n + ell, ell).
Integer circuit_rank_bound(int s, int n, int kappa, int ell, int c_gate = 2);

/// prod_sigma C(h(sigma) + d_sigma - 1, d_sigma - 1) where d_sigma is the
/// per-type local factor dimension (default_dim when absent from the map).
Integer profile_subspace_dim(const Profile& profile, const std::map<std::string, int>& local_dims,
                             int default_dim);

/// Exact count of profiles realized by length-kappa windows with exactly
/// live_count live interfaces: histograms of mass live_count over the
/// normal forms reachable within kappa raw updates. Saturates once kappa
/// reaches q, which is the finite-scale kappa-independence.
Integer realized_profile_count(const LocalModel& model, int live_count, int kappa);

/// The per-step transition count for the model at width R: the number of
/// distinct single-step profile transitions, counting the choice of at most
/// b (type, symbol) update slots. Used as T_step in the ordered-sequence
/// bound.
Integer step_transition_count(const LocalModel& model, int live_count);

} // namespace spdp
