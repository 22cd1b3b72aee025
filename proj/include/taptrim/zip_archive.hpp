#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace taptrim {

using Bytes = std::vector<std::uint8_t>;

struct ZipEntry {
  std::string path;
  Bytes data;  // uncompressed
};

// Reads every file entry of a ZIP archive (stored or deflated, no zip64).
// Directory entries are skipped. Throws Error{MalformedArchive} on any
// structural problem or CRC mismatch.
std::vector<ZipEntry> read_zip(std::span<const std::uint8_t> archive);

// Writes entries in the given order with zeroed DOS timestamps and raw
// deflate at a fixed level, so identical input yields identical bytes.
Bytes write_zip(const std::vector<ZipEntry>& entries);

}  // namespace taptrim
