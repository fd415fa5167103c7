#pragma once

namespace entailguard {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace entailguard
