#include "spdp/localwidth.hpp"

#include "spdp/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace spdp {
namespace {

bool contains_only(const std::string& w, const std::vector<char>& alphabet) {
    return std::all_of(w.begin(), w.end(), [&](char c) {
        return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
    });
}

} // namespace

LocalModel::LocalModel(std::vector<char> alphabet, std::vector<RewriteRule> rules, int q, int b,
                       int width)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)), q_(q), b_(b), width_(width) {
    validate();
}

LocalModel LocalModel::default_model(int width) {
    return LocalModel({'a', 'b'}, {{"aa", "a"}, {"bb", "b"}}, 2, 2, width);
}

void LocalModel::validate() const {
    if (alphabet_.empty()) throw ParseError("local model: empty alphabet");
    std::set<char> seen(alphabet_.begin(), alphabet_.end());
    if (seen.size() != alphabet_.size()) throw ParseError("local model: duplicate symbols");
    if (q_ < 0 || b_ < 1 || width_ < 0) throw ParseError("local model: invalid q/b/R");
    for (const auto& r : rules_) {
        if (r.lhs.empty()) throw ParseError("local model: empty rule left-hand side");
        if (r.rhs.size() >= r.lhs.size())
            throw ParseError("local model: rule '" + r.lhs + " -> " + r.rhs +
                             "' is not length-reducing, termination not guaranteed");
        if (!contains_only(r.lhs, alphabet_) || !contains_only(r.rhs, alphabet_))
            throw ParseError("local model: rule uses symbols outside the alphabet");
    }

    // Local confluence by critical pairs; with termination this gives
    // confluence (Newman). Under confluence both sides of every pair must
    // reach the same irreducible word under any strategy, so comparing
    // deterministic normal forms is exact in both directions.
    auto check_pair = [&](const std::string& word, const std::string& left,
                          const std::string& right) {
        if (normal_form(left) != normal_form(right))
            throw ParseError("local model: rewrite system is not confluent; word '" + word +
                             "' reduces to both '" + normal_form(left) + "' and '" +
                             normal_form(right) + "'");
    };
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            const auto& r1 = rules_[i];
            const auto& r2 = rules_[j];
            // overlap: a proper suffix of lhs1 equals a prefix of lhs2
            std::size_t max_k = std::min(r1.lhs.size(), r2.lhs.size());
            for (std::size_t k = 1; k < max_k; ++k) {
                if (r1.lhs.compare(r1.lhs.size() - k, k, r2.lhs, 0, k) != 0) continue;
                std::string word = r1.lhs + r2.lhs.substr(k);
                std::string left = r1.rhs + r2.lhs.substr(k);
                std::string right = r1.lhs.substr(0, r1.lhs.size() - k) + r2.rhs;
                check_pair(word, left, right);
            }
            // containment: lhs2 occurs inside lhs1
            if (r2.lhs.size() <= r1.lhs.size()) {
                for (std::size_t pos = 0; pos + r2.lhs.size() <= r1.lhs.size(); ++pos) {
                    if (i == j && pos == 0 && r1.lhs.size() == r2.lhs.size()) continue;
                    if (r1.lhs.compare(pos, r2.lhs.size(), r2.lhs) != 0) continue;
                    std::string right =
                        r1.lhs.substr(0, pos) + r2.rhs + r1.lhs.substr(pos + r2.lhs.size());
                    check_pair(r1.lhs, r1.rhs, right);
                }
            }
        }
    }
}

std::string LocalModel::normal_form(const std::string& w) const {
    std::string cur = w;
    for (;;) {
        bool rewrote = false;
        for (std::size_t pos = 0; pos < cur.size() && !rewrote; ++pos) {
            for (const auto& r : rules_) {
                if (pos + r.lhs.size() <= cur.size() && cur.compare(pos, r.lhs.size(), r.lhs) == 0) {
                    cur = cur.substr(0, pos) + r.rhs + cur.substr(pos + r.lhs.size());
                    rewrote = true;
                    break;
                }
            }
        }
        if (!rewrote) return cur;
    }
}

std::vector<std::string> LocalModel::irreducible_words(int max_len) const {
    std::vector<std::string> out{""};
    std::vector<std::string> layer{""};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& w : layer) {
            for (char c : alphabet_) {
                std::string ext = w + c;
                if (normal_form(ext) == ext) next.push_back(ext);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

Integer LocalModel::sigma_leq_q_count() const {
    Integer total = 0;
    for (int t = 0; t <= q_; ++t) total += ipow(Integer(alphabet_.size()), static_cast<unsigned>(t));
    return total;
}

std::vector<std::string> LocalModel::reachable_normal_forms(int raw_len) const {
    std::set<std::string> states{""};
    std::set<std::string> frontier{""};
    for (int step = 0; step < raw_len; ++step) {
        std::set<std::string> next;
        for (const auto& w : frontier) {
            for (char c : alphabet_) {
                std::string nf = normal_form(w + c);
                if (states.insert(nf).second) next.insert(nf);
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    std::vector<std::string> out;
    for (const auto& w : states)
        if (static_cast<int>(w.size()) <= q_) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

LocalModel LocalModel::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    try {
        std::vector<char> alphabet;
        for (const auto& s : j.at("alphabet")) {
            std::string sym = s.get<std::string>();
            if (sym.size() != 1) throw ParseError("model alphabet symbols must be single characters");
            alphabet.push_back(sym[0]);
        }
        std::vector<RewriteRule> rules;
        for (const auto& r : j.at("rules"))
            rules.push_back({r.at(0).get<std::string>(), r.at(1).get<std::string>()});
        return LocalModel(std::move(alphabet), std::move(rules), j.at("q").get<int>(),
                          j.at("b").get<int>(), j.value("R", 8));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
}

Window Window::make(const LocalModel& model, int kappa, std::vector<std::string> words,
                    std::vector<int> blocks) {
    if (kappa < 0) throw std::invalid_argument("window length must be >= 0");
    if (static_cast<int>(words.size()) > model.width())
        throw std::invalid_argument("window exceeds the width bound R");
    if (!blocks.empty() && blocks.size() != words.size())
        throw std::invalid_argument("block list length mismatch");
    for (const auto& w : words) {
        if (static_cast<int>(w.size()) > kappa)
            throw std::invalid_argument("interface word longer than the window");
        std::string nf = model.normal_form(w);
        if (static_cast<int>(nf.size()) > model.max_normal_form_length())
            throw std::invalid_argument("interface word '" + w + "' normalizes to '" + nf +
                                        "', exceeding the q = " +
                                        std::to_string(model.max_normal_form_length()) +
                                        " change budget");
    }
    return Window{kappa, std::move(words), std::move(blocks)};
}

int Profile::total_mass() const {
    int total = 0;
    for (const auto& [w, c] : histogram) total += c;
    return total;
}

Profile profile_of(const Window& window, const LocalModel& model) {
    Profile p;
    for (const auto& w : window.interface_words) ++p.histogram[model.normal_form(w)];
    return p;
}

Integer count_profiles(int r, int s_prime) {
    if (r < 0 || s_prime < 1) throw std::invalid_argument("count_profiles needs R >= 0, S' >= 1");
    return binomial(r + s_prime - 1, s_prime - 1);
}

Integer count_kappa_step_sequences(const Integer& t_step, int kappa) {
    if (t_step < 1 || kappa < 0)
        throw std::invalid_argument("count_kappa_step_sequences needs T >= 1, kappa >= 0");
    return ipow(t_step, static_cast<unsigned>(kappa));
}

Integer circuit_rank_bound(int s, int n, int kappa, int ell, int c_gate) {
    if (s < 1 || n < 1 || kappa < 0 || ell < 0 || c_gate < 1)
        throw std::invalid_argument("circuit_rank_bound needs positive inputs");
    return ipow(Integer(s), static_cast<unsigned>(c_gate) * static_cast<unsigned>(kappa)) *
           binomial(n + ell, ell);
}

Integer profile_subspace_dim(const Profile& profile, const std::map<std::string, int>& local_dims,
                             int default_dim) {
    Integer dim = 1;
    for (const auto& [word, count] : profile.histogram) {
        auto it = local_dims.find(word);
        int d = it == local_dims.end() ? default_dim : it->second;
        if (d < 1) throw std::invalid_argument("local factor dimensions must be positive");
        dim *= binomial(count + d - 1, d - 1);
    }
    return dim;
}

Integer realized_profile_count(const LocalModel& model, int live_count, int kappa) {
    if (live_count < 0 || kappa < 0)
        throw std::invalid_argument("realized_profile_count needs non-negative arguments");
    auto bins = model.reachable_normal_forms(kappa);
    return count_profiles(live_count, static_cast<int>(bins.size()));
}

Integer step_transition_count(const LocalModel& model, int live_count) {
    // A single step updates at most b live interfaces; anonymously a step is
    // a multiset of at most b (current type, appended symbol) slots.
    Integer type_symbol_pairs =
        Integer(model.irreducible_words(model.max_normal_form_length()).size()) *
        Integer(model.alphabet().size());
    int slots = std::min(model.step_budget(), live_count);
    Integer total = 0;
    for (int j = 0; j <= slots; ++j) {
        // multisets of j pairs
        Integer p = type_symbol_pairs;
        total += binomial(static_cast<std::int64_t>(p.convert_to<long long>()) + j - 1, j);
    }
    return total;
}

} // namespace spdp
