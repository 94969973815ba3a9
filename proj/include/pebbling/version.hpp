#pragma once

namespace pebbling {

// Bumped whenever solver semantics change; cache records and graph
// digests from other versions are ignored.
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace pebbling
