#include "spdp/circuit.hpp"

#include "spdp/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace spdp {
namespace {

int arity_of(GateOp op) {
    switch (op) {
        case GateOp::input: return 0;
        case GateOp::not_gate: return 1;
        default: return 2;
    }
}

GateOp op_from_name(const std::string& s) {
    if (s == "INPUT") return GateOp::input;
    if (s == "AND") return GateOp::and_gate;
    if (s == "OR") return GateOp::or_gate;
    if (s == "NOT") return GateOp::not_gate;
    if (s == "XOR") return GateOp::xor_gate;
    throw ParseError("unknown gate op '" + s + "'");
}

} // namespace

Circuit::Circuit(std::vector<Gate> gates, int output)
    : gates_(std::move(gates)), output_(output) {
    if (gates_.empty()) throw ParseError("circuit has no gates");
    if (output_ < 0 || output_ >= static_cast<int>(gates_.size()))
        throw ParseError("circuit output gate out of range");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        if (static_cast<int>(g.inputs.size()) != arity_of(g.op))
            throw ParseError("gate '" + g.name + "' has wrong arity");
        for (int in : g.inputs)
            if (in < 0 || in >= static_cast<int>(i))
                throw ParseError("gate '" + g.name + "' references an undefined gate");
        if (g.op == GateOp::input) input_gates_.push_back(static_cast<int>(i));
    }
    n_inputs_ = static_cast<int>(input_gates_.size());
    if (n_inputs_ == 0) throw ParseError("circuit has no inputs");
}

Circuit Circuit::parse(const std::string& text) {
    std::vector<Gate> gates;
    std::map<std::string, int> by_name;
    int output = -1;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first.empty() || first[0] == '#') continue;
        if (first == "output") {
            std::string name;
            if (!(ls >> name)) throw ParseError("output line needs a gate name");
            auto it = by_name.find(name);
            if (it == by_name.end()) throw ParseError("output references unknown gate '" + name + "'");
            output = it->second;
            continue;
        }
        std::string eq, opname;
        if (!(ls >> eq >> opname) || eq != "=")
            throw ParseError("bad gate line '" + line + "' (expected 'name = OP args...')");
        Gate g;
        g.name = first;
        g.op = op_from_name(opname);
        std::string arg;
        while (ls >> arg) {
            auto it = by_name.find(arg);
            if (it == by_name.end())
                throw ParseError("gate '" + first + "' references undefined gate '" + arg + "'");
            g.inputs.push_back(it->second);
        }
        if (by_name.count(g.name)) throw ParseError("gate '" + g.name + "' defined twice");
        by_name[g.name] = static_cast<int>(gates.size());
        gates.push_back(std::move(g));
    }
    if (gates.empty()) throw ParseError("circuit has no gates");
    if (output == -1) output = static_cast<int>(gates.size()) - 1;
    return Circuit(std::move(gates), output);
}

Circuit Circuit::random(int n_inputs, int size, std::uint64_t seed) {
    if (n_inputs < 1 || size < n_inputs + 1)
        throw std::invalid_argument("random circuit needs size > n_inputs >= 1");
    SplitMix64 rng(seed);
    std::vector<Gate> gates;
    for (int i = 0; i < n_inputs; ++i)
        gates.push_back({"x" + std::to_string(i + 1), GateOp::input, {}});
    static const GateOp kOps[] = {GateOp::and_gate, GateOp::or_gate, GateOp::not_gate,
                                  GateOp::xor_gate};
    while (static_cast<int>(gates.size()) < size) {
        GateOp op = kOps[rng.next_below(4)];
        Gate g;
        g.name = "g" + std::to_string(gates.size() + 1);
        g.op = op;
        int avail = static_cast<int>(gates.size());
        g.inputs.push_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(avail))));
        if (arity_of(op) == 2)
            g.inputs.push_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(avail))));
        gates.push_back(std::move(g));
    }
    return Circuit(std::move(gates), static_cast<int>(gates.size()) - 1);
}

bool Circuit::evaluate(const std::vector<bool>& inputs) const {
    if (static_cast<int>(inputs.size()) != n_inputs_)
        throw std::invalid_argument("input length mismatch");
    std::vector<bool> value(gates_.size());
    int next_input = 0;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        switch (g.op) {
            case GateOp::input: value[i] = inputs[static_cast<std::size_t>(next_input++)]; break;
            case GateOp::and_gate:
                value[i] = value[static_cast<std::size_t>(g.inputs[0])] &&
                           value[static_cast<std::size_t>(g.inputs[1])];
                break;
            case GateOp::or_gate:
                value[i] = value[static_cast<std::size_t>(g.inputs[0])] ||
                           value[static_cast<std::size_t>(g.inputs[1])];
                break;
            case GateOp::not_gate: value[i] = !value[static_cast<std::size_t>(g.inputs[0])]; break;
            case GateOp::xor_gate:
                value[i] = value[static_cast<std::size_t>(g.inputs[0])] !=
                           value[static_cast<std::size_t>(g.inputs[1])];
                break;
        }
    }
    return value[static_cast<std::size_t>(output_)];
}

Polynomial Circuit::arithmetize() const {
    int n = n_inputs_;
    auto mul = [&](const Polynomial& a, const Polynomial& b) {
        Polynomial out(n, RingMode::multilinear);
        for (const auto& [m, c] : b.terms()) out += a.times_monomial(m).scaled(c);
        return out;
    };
    Polynomial one = Polynomial::constant(n, RingMode::multilinear, Rational(1));
    std::vector<Polynomial> value;
    value.reserve(gates_.size());
    int next_input = 0;
    for (const Gate& g : gates_) {
        switch (g.op) {
            case GateOp::input:
                value.push_back(Polynomial::variable(n, RingMode::multilinear, next_input++));
                break;
            case GateOp::and_gate:
                value.push_back(mul(value[static_cast<std::size_t>(g.inputs[0])],
                                    value[static_cast<std::size_t>(g.inputs[1])]));
                break;
            case GateOp::or_gate: {
                const Polynomial& a = value[static_cast<std::size_t>(g.inputs[0])];
                const Polynomial& b = value[static_cast<std::size_t>(g.inputs[1])];
                value.push_back(a + b - mul(a, b));
                break;
            }
            case GateOp::not_gate:
                value.push_back(one - value[static_cast<std::size_t>(g.inputs[0])]);
                break;
            case GateOp::xor_gate: {
                const Polynomial& a = value[static_cast<std::size_t>(g.inputs[0])];
                const Polynomial& b = value[static_cast<std::size_t>(g.inputs[1])];
                value.push_back(a + b - mul(a, b).scaled(Rational(2)));
                break;
            }
        }
    }
    return value[static_cast<std::size_t>(output_)];
}

} // namespace spdp
