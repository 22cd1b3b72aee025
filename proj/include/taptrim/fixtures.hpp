#pragma once

// Hand-built packages used by the acceptance suite, the tests and `gen
// --fixture`.

#include <string>
#include <vector>

#include "taptrim/package.hpp"

namespace taptrim {

// Single activity with two helper methods, one of them never called.
Package listing1_package();

// Android-shaped weather app sized to 1452.01 KB: images 65.63 KB, layouts
// 6.80 KB, code 1361.92 KB, manifest 2.42 KB, the rest in the resource
// table and value files. About 95.6% of its code sits in support-library
// classes.
Package weather_package();

// The same app shaped like its mini-program counterpart (81.84 KB).
Package weather_mini_package();

std::vector<std::string> fixture_names();
// Throws Error{ConfigError} for an unknown name.
Package fixture_package(const std::string& name);

}  // namespace taptrim
