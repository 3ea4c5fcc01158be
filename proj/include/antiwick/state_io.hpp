#pragma once

// StateVector files. Both formats carry the grid header (L, M, d, h) followed
// by M complex samples; Hermite states are written through their samples on
// SpatialGrid::for_modes.
//
// text:   "# antiwick-state L M d h" then M lines "re im" (17 significant digits)
// binary: 8-byte magic "AWSTATE1", double L, int64 M, int32 d, double h,
//         then 2M doubles (re, im interleaved), native byte order.

#include <string>

#include "antiwick/coherent.hpp"

namespace antiwick {

void write_state_text(const StateVector& f, const std::string& path);
void write_state_binary(const StateVector& f, const std::string& path);
/// Both readers throw ValidationError on malformed content and Error on I/O
/// failure; messages include the path.
StateVector read_state_text(const std::string& path);
StateVector read_state_binary(const std::string& path);

}  // namespace antiwick
