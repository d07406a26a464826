// NCX1 table files, little-endian:
//   "NCX1" | u16 version=1 | u8 library | u8 metric | u8 m | u8 flags=0 | u64 n_max
//   | n_max x u8 cost | n_max x (u8 tag, u64 operand) | u32 CRC-32 of all bytes after the magic

#include <zlib.h>

#include <array>
#include <fstream>
#include <iterator>

#include "ncx/engine.hpp"
#include "ncx/error.hpp"

namespace ncx {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {0x4E, 0x43, 0x58, 0x31};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 8;
constexpr std::size_t kRecordSize = 9;

void put(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get(std::span<const std::uint8_t> in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  return v;
}

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t chunk = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
    crc = crc32(crc, bytes.data() + pos, static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> encode_table(const ComplexityTable& t) {
  const std::uint64_t n_max = t.n_max();
  if (t.max_cost() > 255) {
    throw Error(ErrorCode::CapacityExceeded, "costs above 255 do not fit the 8-bit NCX1 cost field");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + n_max * (1 + kRecordSize) + 4);
  for (std::uint8_t b : kMagic) out.push_back(b);
  put(out, kVersion, 2);
  put(out, static_cast<std::uint8_t>(t.library().id()), 1);
  put(out, static_cast<std::uint8_t>(t.metric()), 1);
  put(out, t.library().m_param(), 1);
  put(out, 0, 1);
  put(out, n_max, 8);
  for (std::uint64_t n = 1; n <= n_max; ++n) out.push_back(static_cast<std::uint8_t>(t[n]));
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Provenance p = t.provenance(n);
    put(out, static_cast<std::uint8_t>(p.tag), 1);
    put(out, p.operand, 8);
  }
  put(out, crc_of(std::span(out).subspan(4)), 4);
  return out;
}

ComplexityTable decode_table(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::FormatMismatch, "missing NCX1 magic");
  }
  if (bytes.size() < kHeaderSize + 4) throw Error(ErrorCode::ChecksumMismatch, "file truncated");
  const std::size_t body_end = bytes.size() - 4;
  const std::uint32_t stored = static_cast<std::uint32_t>(get(bytes, body_end, 4));
  if (crc_of(bytes.subspan(4, body_end - 4)) != stored) {
    throw Error(ErrorCode::ChecksumMismatch, "CRC-32 does not match contents");
  }
  if (get(bytes, 4, 2) != kVersion) throw Error(ErrorCode::FormatMismatch, "unsupported version");
  const auto lib_id = static_cast<unsigned>(get(bytes, 6, 1));
  const auto metric_id = static_cast<unsigned>(get(bytes, 7, 1));
  const auto m_param = static_cast<unsigned>(get(bytes, 8, 1));
  const auto flags = get(bytes, 9, 1);
  const std::uint64_t n_max = get(bytes, 10, 8);
  if (lib_id >= kLibraryCount || metric_id > 1 || flags != 0) {
    throw Error(ErrorCode::FormatMismatch, "header fields out of range");
  }
  if (n_max < 1 || n_max > kTableLimit) throw Error(ErrorCode::FormatMismatch, "n_max out of range");
  if (body_end != kHeaderSize + n_max * (1 + kRecordSize)) {
    throw Error(ErrorCode::ChecksumMismatch, "length disagrees with n_max");
  }

  SymbolLibrary lib(static_cast<LibraryId>(lib_id), m_param);
  std::vector<cost_t> cost(n_max + 1, 0);
  std::vector<OpTag> tag(n_max + 1, OpTag::Atom);
  std::vector<std::uint32_t> operand(n_max + 1, 0);
  std::size_t pos = kHeaderSize;
  for (std::uint64_t n = 1; n <= n_max; ++n) cost[n] = bytes[pos++];
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto t = get(bytes, pos, 1);
    const auto op = get(bytes, pos + 1, 8);
    pos += kRecordSize;
    if (t > 3 || op > n) throw Error(ErrorCode::FormatMismatch, "bad provenance record");
    tag[n] = static_cast<OpTag>(t);
    operand[n] = static_cast<std::uint32_t>(op);
  }
  return ComplexityTable(lib, static_cast<CostMetric>(metric_id), std::move(cost), std::move(tag),
                         std::move(operand));
}

void save_table(const ComplexityTable& t, const std::filesystem::path& path) {
  const auto bytes = encode_table(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "short write to " + path.string());
}

ComplexityTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read failure on " + path.string());
  return decode_table(bytes);
}

}  // namespace ncx
