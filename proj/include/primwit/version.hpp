#pragma once

namespace primwit {

inline constexpr const char* kToolVersion = "primwit-0.1.0";

}  // namespace primwit
