#pragma once

#include "gapcert/io.hpp"

namespace gapcert {

/// Seeded random instance with its hypothesis satisfied by construction and
/// a manifest of independently recomputable ground-truth integers.
/// kind in {pair, tetrad, reldim, morse, path}; 2 <= size <= 64.
Json generate_instance(const std::string& kind, uint64_t seed, int size);

}  // namespace gapcert
