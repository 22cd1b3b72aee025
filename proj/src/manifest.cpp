#include <algorithm>

#include "taptrim/error.hpp"
#include "taptrim/package.hpp"
#include "text_util.hpp"

namespace taptrim {

std::vector<std::string> Manifest::declared_classes() const {
  std::vector<std::string> out;
  if (application_class) out.push_back(*application_class);
  out.insert(out.end(), activities.begin(), activities.end());
  if (main_activity &&
      std::find(activities.begin(), activities.end(), *main_activity) == activities.end()) {
    out.push_back(*main_activity);
  }
  out.insert(out.end(), services.begin(), services.end());
  out.insert(out.end(), receivers.begin(), receivers.end());
  out.insert(out.end(), providers.begin(), providers.end());
  return out;
}

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  bool have_package = false;
  std::size_t line_no = 0;
  std::size_t main_line = 0;
  auto fail = [&](const std::string& why) -> void {
    throw Error(ErrorKind::ManifestParseError, why, std::string(kManifestPath), line_no);
  };

  for_each_line(text, [&](std::string_view raw) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected 'key: value'");
    std::string_view key = trim(line.substr(0, colon));
    std::string value(trim(line.substr(colon + 1)));
    if (!is_fqn(value)) fail("bad class or package name '" + value + "'");

    if (key == "package") {
      if (have_package) fail("duplicate 'package' key");
      m.package_name = value;
      have_package = true;
    } else if (key == "application") {
      if (m.application_class) fail("duplicate 'application' key");
      m.application_class = value;
    } else if (key == "activity") {
      m.activities.push_back(value);
    } else if (key == "main-activity") {
      if (m.main_activity) fail("duplicate 'main-activity' key");
      m.main_activity = value;
      main_line = line_no;
    } else if (key == "service") {
      m.services.push_back(value);
    } else if (key == "receiver") {
      m.receivers.push_back(value);
    } else if (key == "provider") {
      m.providers.push_back(value);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  });

  if (!have_package) {
    line_no = 0;
    fail("missing 'package' key");
  }
  if (m.main_activity && std::find(m.activities.begin(), m.activities.end(),
                                   *m.main_activity) == m.activities.end()) {
    line_no = main_line;
    fail("main-activity '" + *m.main_activity + "' is not listed as an activity");
  }
  return m;
}

std::string serialize_manifest(const Manifest& m) {
  std::string out = "package: " + m.package_name + "\n";
  if (m.application_class) out += "application: " + *m.application_class + "\n";
  for (const auto& a : m.activities) out += "activity: " + a + "\n";
  if (m.main_activity) out += "main-activity: " + *m.main_activity + "\n";
  for (const auto& s : m.services) out += "service: " + s + "\n";
  for (const auto& r : m.receivers) out += "receiver: " + r + "\n";
  for (const auto& p : m.providers) out += "provider: " + p + "\n";
  return out;
}

}  // namespace taptrim
