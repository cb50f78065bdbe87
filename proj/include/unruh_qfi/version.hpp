#pragma once

namespace unruh_qfi {

inline constexpr const char* kArtifactName = "unruh-qfi";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace unruh_qfi
