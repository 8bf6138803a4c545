#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopfluct/sampler.hpp"

namespace loopfluct {

/// Provenance written alongside every serialized loop.
struct LoopMeta {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string tool_version;
  std::string config_json;  // free-form; written into CSV comment lines
};

/// CSV: optional '#' comment lines (tool version, config, seed), then the header
/// "index,x,y" and one row per grid point 0..n-1. LF line endings.
void write_loop_csv(std::ostream& os, const LoopPath& loop, const LoopMeta& meta);

/// Binary dump, all fields little-endian:
///   char[8]  magic "LOOPFLCT"
///   u32      format version (1)
///   u32      reserved (0)
///   f64      T
///   u64      n
///   u64      seed
///   u64      stream_id
///   f64[2n]  x0, y0, x1, y1, ...
/// Several dumps may be concatenated in one file.
void write_loop_binary(std::ostream& os, const LoopPath& loop, const LoopMeta& meta);

struct LoadedLoop {
  LoopPath loop;
  std::uint64_t seed;
  std::uint64_t stream_id;
};

/// Reads one dump; returns false at clean end of stream. Throws Io on malformed input.
bool read_loop_binary(std::istream& is, std::vector<LoadedLoop>& out);
std::vector<LoadedLoop> read_all_loops_binary(std::istream& is);

}  // namespace loopfluct
