#pragma once

// Reference programs shipped with the toolchain.

#include <string>
#include <utility>
#include <vector>

#include "foq/syntax.hpp"

namespace foq {

std::string qft_source();
std::string teleport_source();
/// Two-way recursion whose calls merge onto one ancilla per size; U is RY[pi/4].
std::string fibo_source();
/// Only rot[2] on the main register, for the two-qubit derivation.
std::string rot_source();
/// Two recursive calls in sequence: width 2, not PFOQ.
std::string double_recursion_source();

Program qft_program();
Program teleport_program();
Program fibo_program();

/// Named FOQ programs exercised by the test suites, all of them PFOQ.
std::vector<std::pair<std::string, std::string>> example_sources();

}  // namespace foq
