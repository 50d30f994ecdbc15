#pragma once

#include "spdp/polynomial.hpp"
#include "spdp/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spdp {

enum class GateOp : std::uint8_t { input, and_gate, or_gate, not_gate, xor_gate };

struct Gate {
    std::string name;
    GateOp op = GateOp::input;
    std::vector<int> inputs; // indices into Circuit::gates
};

/// A Boolean circuit in topological order: INPUT gates first come wherever
/// declared, every gate references only earlier gates (which also makes the
/// circuit acyclic by construction).
class Circuit {
public:
    Circuit(std::vector<Gate> gates, int output);

    /// One gate per line: "g3 = AND g1 g2", "g1 = INPUT"; an optional final
    /// "output gN" line selects the output, otherwise the last gate is it.
    static Circuit parse(const std::string& text);

    /// Seeded random circuit with the given input count and total size.
    static Circuit random(int n_inputs, int size, std::uint64_t seed);

    const std::vector<Gate>& gates() const { return gates_; }
    int output() const { return output_; }
    int n_inputs() const { return n_inputs_; }
    /// Circuit size s: total gate count including inputs.
    int size() const { return static_cast<int>(gates_.size()); }

    /// Input indices (positions in gates()) in declaration order.
    const std::vector<int>& input_gates() const { return input_gates_; }

    bool evaluate(const std::vector<bool>& inputs) const;

    /// The multilinear polynomial agreeing with the circuit on {0,1}^n,
    /// built gate by gate with Boolean reduction.
    Polynomial arithmetize() const;

private:
    std::vector<Gate> gates_;
    std::vector<int> input_gates_;
    int output_;
    int n_inputs_;
};

} // namespace spdp
