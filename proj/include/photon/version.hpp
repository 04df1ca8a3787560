#pragma once

namespace photon {

// Single source of truth for the artifact version; stamped into every run
// manifest so outputs can be traced back to the build that produced them.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace photon
