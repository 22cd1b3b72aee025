#include "taptrim/error.hpp"

namespace taptrim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedArchive: return "MalformedArchive";
    case ErrorKind::MissingManifest: return "MissingManifest";
    case ErrorKind::ManifestParseError: return "ManifestParseError";
    case ErrorKind::ClassParseError: return "ClassParseError";
    case ErrorKind::DuplicateMethod: return "DuplicateMethod";
    case ErrorKind::TableParseError: return "TableParseError";
    case ErrorKind::PathMismatch: return "PathMismatch";
    case ErrorKind::InvalidPackage: return "InvalidPackage";
    case ErrorKind::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorKind::MissingSeed: return "MissingSeed";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::EmptyPackage: return "EmptyPackage";
    case ErrorKind::EmptyCode: return "EmptyCode";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     const std::string& path, std::size_t line) {
  std::string out(to_string(kind));
  if (!path.empty()) {
    out += " [" + path;
    if (line != 0) out += ":" + std::to_string(line);
    out += "]";
  } else if (line != 0) {
    out += " [line " + std::to_string(line) + "]";
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string path,
             std::size_t line)
    : std::runtime_error(decorate(kind, message, path, line)),
      kind_(kind),
      path_(std::move(path)),
      line_(line) {}

}  // namespace taptrim
