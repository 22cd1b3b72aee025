#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace taptrim {

enum class ErrorKind {
  MalformedArchive,
  MissingManifest,
  ManifestParseError,
  ClassParseError,
  DuplicateMethod,
  TableParseError,
  PathMismatch,
  InvalidPackage,
  CyclicHierarchy,
  MissingSeed,
  ConfigMismatch,
  ConfigError,
  EmptyPackage,
  EmptyCode,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library. `line` is 1-based and zero when the
// error is not tied to a text line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string path = {},
        std::size_t line = 0);

  ErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  ErrorKind kind_;
  std::string path_;
  std::size_t line_;
};

}  // namespace taptrim
