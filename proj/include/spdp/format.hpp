#pragma once

#include "spdp/polynomial.hpp"

#include <optional>
#include <string>

namespace spdp {

/// Text polynomial format: terms joined by "+" (or "-"), a term is an
/// optional integer coefficient followed by "x<i>" factors joined by "*".
/// Standard-ring mode additionally allows "x<i>^<e>". Examples:
///   "x1*x2 + x2*x3"     "2*x1 - x3"     "x1^4 + x2^4"     "0"
///
/// parse_polynomial followed by print_polynomial round-trips exactly on
/// canonical output.
///
/// n_vars: ambient variable count; when absent it is inferred as the largest
/// index mentioned. mode: forced ring mode; when absent, standard is chosen
/// iff an exponent >= 2 appears.
Polynomial parse_polynomial(const std::string& text,
                            std::optional<int> n_vars = std::nullopt,
                            std::optional<RingMode> mode = std::nullopt);

std::string print_polynomial(const Polynomial& p);
std::string print_monomial(const Monomial& m);

} // namespace spdp
