#include "taptrim/zip_archive.hpp"

#include <zlib.h>

#include <limits>
#include <set>

#include "taptrim/error.hpp"

namespace taptrim {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralSig = 0x06054b50;
constexpr std::uint16_t kMethodStored = 0;
constexpr std::uint16_t kMethodDeflate = 8;
constexpr int kDeflateLevel = 6;
constexpr std::size_t kEndOfCentralSize = 22;
constexpr std::size_t kCentralHeaderSize = 46;
constexpr std::size_t kLocalHeaderSize = 30;

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::MalformedArchive, why);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return static_cast<std::uint16_t>(data_[at] | (data_[at + 1] << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return static_cast<std::uint32_t>(data_[at]) |
           (static_cast<std::uint32_t>(data_[at + 1]) << 8) |
           (static_cast<std::uint32_t>(data_[at + 2]) << 16) |
           (static_cast<std::uint32_t>(data_[at + 3]) << 24);
  }
  std::span<const std::uint8_t> bytes(std::size_t at, std::size_t n) const {
    need(at, n);
    return data_.subspan(at, n);
  }
  std::size_t size() const { return data_.size(); }

 private:
  void need(std::size_t at, std::size_t n) const {
    if (at > data_.size() || n > data_.size() - at) {
      malformed("truncated archive");
    }
  }
  std::span<const std::uint8_t> data_;
};

void put16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t crc_of(std::span<const std::uint8_t> data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // crc32 takes uInt lengths; feed in chunks.
  std::size_t done = 0;
  while (done < data.size()) {
    auto chunk = static_cast<uInt>(
        std::min<std::size_t>(data.size() - done, std::numeric_limits<uInt>::max()));
    crc = crc32(crc, data.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

Bytes deflate_raw(std::span<const std::uint8_t> input) {
  z_stream zs{};
  if (deflateInit2(&zs, kDeflateLevel, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorKind::Io, "deflateInit2 failed");
  }
  Bytes out(deflateBound(&zs, static_cast<uLong>(input.size())));
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorKind::Io, "deflate failed");
  out.resize(zs.total_out);
  return out;
}

Bytes inflate_raw(std::span<const std::uint8_t> input, std::size_t expected) {
  // One spare byte: zlib refuses a null output buffer, and an overlong
  // stream shows up as extra output.
  Bytes out(expected + 1);
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) malformed("inflateInit2 failed");
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) malformed("corrupt deflate stream");
  if (produced != expected) malformed("size mismatch after inflate");
  out.resize(expected);
  return out;
}

}  // namespace

std::vector<ZipEntry> read_zip(std::span<const std::uint8_t> archive) {
  Reader r(archive);
  if (archive.size() < kEndOfCentralSize) malformed("too small to be a ZIP archive");

  // The end record sits in the last 22 + 65535 bytes (comment max length).
  std::size_t eocd = std::numeric_limits<std::size_t>::max();
  std::size_t lowest = archive.size() > kEndOfCentralSize + 0xFFFF
                           ? archive.size() - kEndOfCentralSize - 0xFFFF
                           : 0;
  for (std::size_t at = archive.size() - kEndOfCentralSize + 1; at-- > lowest;) {
    if (r.u32(at) == kEndOfCentralSig) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::numeric_limits<std::size_t>::max()) {
    malformed("end of central directory not found");
  }

  std::uint16_t count = r.u16(eocd + 10);
  std::uint32_t cd_offset = r.u32(eocd + 16);

  std::vector<ZipEntry> entries;
  std::set<std::string> seen;
  std::size_t at = cd_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralHeaderSig) malformed("bad central directory header");
    std::uint16_t flags = r.u16(at + 8);
    std::uint16_t method = r.u16(at + 10);
    std::uint32_t crc = r.u32(at + 16);
    std::uint32_t csize = r.u32(at + 20);
    std::uint32_t usize = r.u32(at + 24);
    std::uint16_t name_len = r.u16(at + 28);
    std::uint16_t extra_len = r.u16(at + 30);
    std::uint16_t comment_len = r.u16(at + 32);
    std::uint32_t local = r.u32(at + 42);
    auto name_bytes = r.bytes(at + kCentralHeaderSize, name_len);
    std::string name(name_bytes.begin(), name_bytes.end());
    at += kCentralHeaderSize + name_len + extra_len + comment_len;

    if (flags & 0x1) malformed("encrypted entry: " + name);
    if (name.empty()) malformed("entry with empty name");
    if (name.back() == '/') continue;
    if (!seen.insert(name).second) malformed("duplicate entry: " + name);

    if (r.u32(local) != kLocalHeaderSig) malformed("bad local header: " + name);
    std::size_t data_at =
        local + kLocalHeaderSize + r.u16(local + 26) + r.u16(local + 28);
    auto payload = r.bytes(data_at, csize);

    ZipEntry entry{std::move(name), {}};
    if (method == kMethodStored) {
      if (csize != usize) malformed("stored entry size mismatch: " + entry.path);
      entry.data.assign(payload.begin(), payload.end());
    } else if (method == kMethodDeflate) {
      entry.data = inflate_raw(payload, usize);
    } else {
      malformed("unsupported compression method " + std::to_string(method) +
                ": " + entry.path);
    }
    if (crc_of(entry.data) != crc) malformed("CRC mismatch: " + entry.path);
    entries.push_back(std::move(entry));
  }
  return entries;
}

Bytes write_zip(const std::vector<ZipEntry>& entries) {
  if (entries.size() > 0xFFFF) throw Error(ErrorKind::Io, "too many entries for ZIP");
  Bytes out;
  Bytes central;
  for (const auto& entry : entries) {
    Bytes packed = deflate_raw(entry.data);
    std::uint32_t crc = crc_of(entry.data);
    if (out.size() > std::numeric_limits<std::uint32_t>::max() ||
        entry.data.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorKind::Io, "archive exceeds ZIP32 limits");
    }
    auto offset = static_cast<std::uint32_t>(out.size());
    auto name_len = static_cast<std::uint16_t>(entry.path.size());

    put32(out, kLocalHeaderSig);
    put16(out, 20);  // version needed
    put16(out, 0);   // flags
    put16(out, kMethodDeflate);
    put16(out, 0);  // time
    put16(out, 0);  // date
    put32(out, crc);
    put32(out, static_cast<std::uint32_t>(packed.size()));
    put32(out, static_cast<std::uint32_t>(entry.data.size()));
    put16(out, name_len);
    put16(out, 0);
    out.insert(out.end(), entry.path.begin(), entry.path.end());
    out.insert(out.end(), packed.begin(), packed.end());

    put32(central, kCentralHeaderSig);
    put16(central, 20);  // version made by
    put16(central, 20);
    put16(central, 0);
    put16(central, kMethodDeflate);
    put16(central, 0);
    put16(central, 0);
    put32(central, crc);
    put32(central, static_cast<std::uint32_t>(packed.size()));
    put32(central, static_cast<std::uint32_t>(entry.data.size()));
    put16(central, name_len);
    put16(central, 0);  // extra
    put16(central, 0);  // comment
    put16(central, 0);  // disk
    put16(central, 0);  // internal attrs
    put32(central, 0);  // external attrs
    put32(central, offset);
    central.insert(central.end(), entry.path.begin(), entry.path.end());
  }
  auto cd_offset = static_cast<std::uint32_t>(out.size());
  auto cd_size = static_cast<std::uint32_t>(central.size());
  out.insert(out.end(), central.begin(), central.end());
  put32(out, kEndOfCentralSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, cd_size);
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace taptrim
