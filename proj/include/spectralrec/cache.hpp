#pragma once

#include <string>

#include "spectralrec/toprec.hpp"

namespace spectralrec {

/// On-disk persistence of the engine's correlation memo, one versioned file
/// per curve (keyed by the defining x and y). Records are length-prefixed
/// serializations of (g, n) -> multidifferential; any header mismatch (format
/// version bump, different curve) is treated as a miss.
bool load_engine_cache(Engine& engine, const std::string& dir);
bool save_engine_cache(Engine& engine, const std::string& dir);

}  // namespace spectralrec
