#include "loopfluct/loop_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

namespace loopfluct {

namespace {

constexpr std::array<char, 8> kMagic{'L', 'O', 'O', 'P', 'F', 'L', 'C', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), 8);
}

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> bytes;
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), 4);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

bool get_bytes(std::istream& is, char* dst, std::size_t count) {
  is.read(dst, static_cast<std::streamsize>(count));
  return static_cast<std::size_t>(is.gcount()) == count;
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b;
  if (!get_bytes(is, reinterpret_cast<char*>(b.data()), 8)) fail(ErrorCode::Io, "loop dump truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b;
  if (!get_bytes(is, reinterpret_cast<char*>(b.data()), 4)) fail(ErrorCode::Io, "loop dump truncated");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_loop_csv(std::ostream& os, const LoopPath& loop, const LoopMeta& meta) {
  if (!meta.tool_version.empty()) os << "# tool: loopfluct " << meta.tool_version << '\n';
  if (!meta.config_json.empty()) os << "# config: " << meta.config_json << '\n';
  os << "# seed: " << meta.seed << " stream_id: " << meta.stream_id << " T: " << loop.grid().T()
     << " n: " << loop.size() << '\n';
  os << "index,x,y\n";
  char buf[96];
  for (std::int64_t k = 0; k < loop.size(); ++k) {
    const Point2 p = loop[k];
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(k), p.x, p.y);
    os << buf;
  }
}

void write_loop_binary(std::ostream& os, const LoopPath& loop, const LoopMeta& meta) {
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, kFormatVersion);
  put_u32(os, 0);
  put_f64(os, loop.grid().T());
  put_u64(os, static_cast<std::uint64_t>(loop.size()));
  put_u64(os, meta.seed);
  put_u64(os, meta.stream_id);
  for (const Point2& p : loop.points()) {
    put_f64(os, p.x);
    put_f64(os, p.y);
  }
  if (!os) fail(ErrorCode::Io, "failed writing loop dump");
}

bool read_loop_binary(std::istream& is, std::vector<LoadedLoop>& out) {
  std::array<char, 8> magic;
  is.read(magic.data(), 8);
  if (is.gcount() == 0) return false;
  if (is.gcount() != 8 || magic != kMagic) fail(ErrorCode::Io, "loop dump: bad magic");
  const std::uint32_t version = get_u32(is);
  if (version != kFormatVersion) fail(ErrorCode::Io, "loop dump: unsupported version");
  get_u32(is);
  const double T = get_f64(is);
  const auto n = static_cast<std::int64_t>(get_u64(is));
  const std::uint64_t seed = get_u64(is);
  const std::uint64_t stream = get_u64(is);
  if (n < 2 || n > (std::int64_t{1} << 40)) fail(ErrorCode::Io, "loop dump: implausible n");
  // Grow as data arrives so a corrupt n fails on truncation, not on allocation.
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n, 1 << 20)));
  for (std::int64_t k = 0; k < n; ++k) {
    const double x = get_f64(is);
    const double y = get_f64(is);
    pts.push_back({x, y});
  }
  try {
    out.push_back({LoopPath(TimeGrid(T, n), std::move(pts)), seed, stream});
  } catch (const Error& e) {
    fail(ErrorCode::Io, std::string("loop dump: ") + e.what());
  }
  return true;
}

std::vector<LoadedLoop> read_all_loops_binary(std::istream& is) {
  std::vector<LoadedLoop> out;
  while (read_loop_binary(is, out)) {
  }
  return out;
}

}  // namespace loopfluct
