#pragma once

#include <string>

namespace photon {

// Decimal representation with 12 significant digits (std::to_chars, general
// format): deterministic, locale-free, and identical across runs, which is
// what keeps repeated CSV emissions byte-for-byte reproducible.
// NaN renders as "nan", infinities as "inf"/"-inf".
std::string format_sig12(double x);

}  // namespace photon
