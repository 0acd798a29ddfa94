#pragma once

#include <cstdint>
#include <vector>

#include "padyn/oracle.hpp"
#include "padyn/transducer.hpp"

namespace padyn::builtins {

// x -> x, one state.
TransducerPtr identity(std::uint64_t p);

// x -> x + 1 with states "carry" (initial) and "no-carry".
TransducerPtr odometer(std::uint64_t p);

// Digitwise a -> p - 1 - a, i.e. x -> -1 - x.
TransducerPtr complement(std::uint64_t p);

// Emits `letter` for every input letter.
TransducerPtr constant(std::uint64_t p, Letter letter);

// Asynchronous: silent for the first n letters, then echoes its input.
// Realizes x -> floor(x / p^n).
TransducerPtr echo(std::uint64_t p, int n);

/// Parametric family indexed by an addend m >= 0: state m emits
/// (a + m mod p) mod p on letter a and moves to floor(m / p), so A_m adds the
/// digits of m to the input without carries. At depth D the family's roots
/// are all addends below p^D; the initial state is m = 0.
TransducerPtr digitwise_add(std::uint64_t p);

// x -> floor(x / p^n), the canonical n-unit delay.
FunctionOracle shift(std::uint64_t p, int n);

// x -> 0 viewed as an n-delay map.
FunctionOracle zero(std::uint64_t p, int n);

// x -> c_0 + c_1 x + ... + c_d x^d with integer coefficients (delay 0).
FunctionOracle polynomial(std::uint64_t p, std::vector<std::int64_t> coefficients);

}  // namespace padyn::builtins
