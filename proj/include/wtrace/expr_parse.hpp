// Parsers for the CLI operand language. Loop-algebra monomials are written
// "z^3 e1", "z e0" or "e2" (basis index into the configured algebra);
// operator expressions are '*'-separated products of the factors
//   D0            mode operator -i d/dt
//   eps           sign of the mode operator
//   Id            identity
//   |D+P|^s       power of the order-one weight (s optional, default 1)
//   (D^2+P)^s     power of the order-two weight
//   M(z^k)        multiplication by z^k (k optional, default 1)
// composed left to right. Both parsers throw std::invalid_argument with a
// description of the offending token.
#pragma once

#include <string>

#include "wtrace/band_operator.hpp"
#include "wtrace/loop_element.hpp"

namespace wtrace {

LoopElement parse_loop_monomial(const std::string& text,
                                const AlgebraPtr& alg);

BlockBandOperator parse_operator_expr(const std::string& text,
                                      Convention conv, int fibre_dim,
                                      int depth = 12);

}  // namespace wtrace
