#pragma once
// Snapshot file format: one JSON header line (schema version, grid size, time,
// endianness marker, field table with byte offsets), then a raw little-endian
// float64 payload. Writer/reader round-trips are bit-exact.

#include <string>

#include "swlw/stepper.hpp"

namespace swlw {

void write_snapshot(const std::string& path, const SimState& state);
SimState read_snapshot(const std::string& path);

} // namespace swlw
