#include "taptrim/fixtures.hpp"

#include <random>

#include "taptrim/error.hpp"
#include "taptrim/generator.hpp"

namespace taptrim {

namespace {

constexpr std::uint64_t kKiB = 1024;

MethodDef method(std::string name, std::string descriptor, std::vector<Instruction> body = {}) {
  MethodDef m;
  m.name = std::move(name);
  m.descriptor = std::move(descriptor);
  m.body = std::move(body);
  return m;
}

ClassDef activity_class(const std::string& name, std::vector<Instruction> on_create_tail = {}) {
  ClassDef cls;
  cls.name = name;
  cls.superclass = "android.app.Activity";
  cls.methods.push_back(method("<init>", "()V", {Invoke{"android.app.Activity", "<init>", "()V"}}));
  std::vector<Instruction> body{
      Invoke{"android.app.Activity", "onCreate", "(Landroid/os/Bundle;)V"}};
  body.insert(body.end(), on_create_tail.begin(), on_create_tail.end());
  cls.methods.push_back(method("onCreate", "(Landroid/os/Bundle;)V", std::move(body)));
  return cls;
}

Bytes text_blob(const std::string& s) { return Bytes(s.begin(), s.end()); }

Bytes png_blob(std::mt19937_64& rng, std::uint64_t size) {
  Bytes out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  out.resize(std::max<std::uint64_t>(size, out.size()));
  for (std::size_t i = 8; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(rng() >> 56);
  out.resize(size);
  return out;
}

// Pads an XML document with a trailing comment so it is exactly `size`
// bytes long.
Bytes padded_xml(std::string xml, std::uint64_t size) {
  constexpr std::string_view kOpen = "<!--";
  constexpr std::string_view kClose = "-->\n";
  if (xml.size() + kOpen.size() + kClose.size() > size) {
    throw Error(ErrorKind::InvalidPackage, "fixture file too small for its content");
  }
  std::uint64_t fill = size - xml.size() - kOpen.size() - kClose.size();
  xml += kOpen;
  for (std::uint64_t i = 0; i < fill; ++i) xml.push_back(i % 64 == 63 ? '\n' : ' ');
  xml += kClose;
  return text_blob(xml);
}

std::vector<std::uint64_t> split(std::uint64_t total, std::size_t parts) {
  std::vector<std::uint64_t> out(parts, total / parts);
  out.back() += total % parts;
  return out;
}

struct SizedPlan {
  std::string package_name;
  std::size_t image_count = 0;
  std::uint64_t image_bytes = 0;
  std::vector<std::string> layouts;
  // Layout files alone, or layout files plus the table when no value files
  // are planned.
  std::uint64_t layout_bytes = 0;
  // Table plus res/values files; zero folds the table into layout_bytes.
  std::uint64_t other_res_bytes = 0;
  std::uint64_t code_bytes = 0;
  std::uint64_t library_bytes = 0;
  std::uint64_t config_bytes = 0;
  std::size_t pages = 0;
};

// Builds a small but fully linked app and pads every component to the
// planned byte count.
Package build_sized(const SizedPlan& plan) {
  std::mt19937_64 rng(20190901);
  Package pkg;
  const std::string& p = plan.package_name;
  std::string main = p + ".MainActivity";

  std::vector<std::uint32_t> drawable_ids;
  auto image_sizes = split(plan.image_bytes, plan.image_count);
  for (std::size_t k = 0; k < plan.image_count; ++k) {
    std::string name = "icon_" + std::to_string(k);
    std::string path = "res/drawable/" + name + ".png";
    std::uint32_t id = 0x7f020000u + static_cast<std::uint32_t>(k);
    pkg.resource_table.entries.push_back({id, ResourceType::Drawable, name, path});
    pkg.res_files[path] = png_blob(rng, image_sizes[k]);
    drawable_ids.push_back(id);
  }
  std::vector<std::uint32_t> layout_ids;
  for (std::size_t k = 0; k < plan.layouts.size(); ++k) {
    std::uint32_t id = 0x7f030000u + static_cast<std::uint32_t>(k);
    pkg.resource_table.entries.push_back(
        {id, ResourceType::Layout, plan.layouts[k], "res/layout/" + plan.layouts[k] + ".xml"});
    layout_ids.push_back(id);
  }
  bool values = plan.other_res_bytes > 0;
  if (values) {
    pkg.resource_table.entries.push_back({0x7f040000u, ResourceType::String, "app_name", {}});
    pkg.resource_table.entries.push_back({0x7f040001u, ResourceType::String, "forecast", {}});
  }

  std::uint64_t table = serialize_resource_table(pkg.resource_table).size();
  std::uint64_t layout_budget = values ? plan.layout_bytes : plan.layout_bytes - table;
  auto layout_sizes = split(layout_budget, plan.layouts.size());
  for (std::size_t k = 0; k < plan.layouts.size(); ++k) {
    std::string xml =
        "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
        "<LinearLayout xmlns:android=\"http://schemas.android.com/apk/res/android\">\n";
    for (std::size_t d = k; d < drawable_ids.size(); d += plan.layouts.size()) {
      xml += "  <ImageView android:src=\"@drawable/icon_" + std::to_string(d) + "\"/>\n";
    }
    if (values) xml += "  <TextView android:text=\"@string/forecast\"/>\n";
    xml += "</LinearLayout>\n";
    pkg.res_files["res/layout/" + plan.layouts[k] + ".xml"] = padded_xml(xml, layout_sizes[k]);
  }
  if (values) {
    std::string xml =
        "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<resources>\n"
        "  <string name=\"app_name\">Today Weather</string>\n"
        "  <string name=\"forecast\">Forecast</string>\n</resources>\n";
    pkg.res_files["res/values/strings.xml"] = padded_xml(xml, plan.other_res_bytes - table);
  }

  // Manifest: the main activity plus page activities; the last page name
  // absorbs whatever is left.
  pkg.manifest.package_name = p;
  pkg.manifest.activities.push_back(main);
  pkg.manifest.main_activity = main;
  for (std::size_t k = 0; k < plan.pages; ++k) {
    pkg.manifest.activities.push_back(p + ".ui.Page" + std::to_string(k));
  }
  std::uint64_t manifest = serialize_manifest(pkg.manifest).size();
  if (manifest > plan.config_bytes) throw Error(ErrorKind::InvalidPackage, "manifest over budget");
  std::string& last = pkg.manifest.activities.back();
  last += std::string(plan.config_bytes - manifest, 'x');
  if (pkg.manifest.activities.size() == 1) pkg.manifest.main_activity = last;

  // Classes.
  std::vector<Instruction> tail{ConstResource{layout_ids.front()},
                                Invoke{main, "setContentView", "(I)V"}};
  for (std::size_t k = 1; k < pkg.manifest.activities.size(); ++k) {
    std::string page = pkg.manifest.activities[k];
    tail.push_back(NewInstance{page});
    std::uint32_t layout = layout_ids[k % layout_ids.size()];
    pkg.classes.emplace(page, activity_class(page, {ConstResource{layout},
                                                    Invoke{page, "setContentView", "(I)V"}}));
  }
  for (auto id : drawable_ids) tail.push_back(ConstResource{id});
  main = pkg.manifest.activities.front();
  pkg.classes.emplace(main, activity_class(main, tail));

  std::uint64_t chunk = 64 * kKiB;
  std::uint64_t library = plan.library_bytes;
  for (int k = 0; library > 0; ++k) {
    std::uint64_t piece = library < 2 * chunk ? library : chunk;
    std::string name = "android.support.v7.widget.Support" + std::to_string(k);
    pkg.classes.emplace(name, make_padded_class(name, "java.lang.Object", piece));
    library -= piece;
  }
  std::uint64_t code = 0;
  for (const auto& [name, cls] : pkg.classes) code += serialize_class_text(cls).size();
  std::string filler = p + ".data.ForecastStore";
  pkg.classes.emplace(filler, make_padded_class(filler, "java.lang.Object", plan.code_bytes - code));

  validate_package(pkg);
  return pkg;
}

}  // namespace

Package listing1_package() {
  const std::string main = "com.example.MainActivity";
  Package pkg;
  pkg.manifest.package_name = "com.example";
  pkg.manifest.activities.push_back(main);
  pkg.manifest.main_activity = main;

  ClassDef cls = activity_class(
      main, {ConstResource{0x7f09001b}, Invoke{main, "setContentView", "(I)V"},
             Invoke{main, "sum", "(II)I"}});
  cls.methods.push_back(method("sum", "(II)I"));
  cls.methods.push_back(method("sub", "(II)I"));
  pkg.classes.emplace(main, std::move(cls));

  pkg.resource_table.entries.push_back(
      {0x7f09001b, ResourceType::Layout, "activity_main", "res/layout/activity_main.xml"});
  pkg.res_files["res/layout/activity_main.xml"] = text_blob(
      "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
      "<LinearLayout xmlns:android=\"http://schemas.android.com/apk/res/android\"/>\n");
  validate_package(pkg);
  return pkg;
}

Package weather_package() {
  SizedPlan plan;
  plan.package_name = "com.example.weather";
  plan.image_count = 12;
  plan.image_bytes = 67205;  // 65.63 KB
  plan.layouts = {"activity_main", "page_today", "page_week", "item_city"};
  plan.layout_bytes = 6963;  // 6.80 KB
  plan.other_res_bytes = 15606;
  plan.code_bytes = 1394606;  // 1361.92 KB
  plan.library_bytes = 1333084;
  plan.config_bytes = 2478;  // 2.42 KB
  plan.pages = 40;
  return build_sized(plan);
}

Package weather_mini_package() {
  SizedPlan plan;
  plan.package_name = "com.example.weather.mini";
  plan.image_count = 8;
  plan.image_bytes = 30894;  // 30.17 KB
  plan.layouts = {"index", "today", "week"};
  plan.layout_bytes = 43848;  // 42.82 KB including the table
  plan.code_bytes = 8581;     // 8.38 KB
  plan.config_bytes = 481;    // 0.47 KB
  plan.pages = 2;
  return build_sized(plan);
}

std::vector<std::string> fixture_names() { return {"listing1", "weather", "weather-mini"}; }

Package fixture_package(const std::string& name) {
  if (name == "listing1") return listing1_package();
  if (name == "weather") return weather_package();
  if (name == "weather-mini") return weather_mini_package();
  throw Error(ErrorKind::ConfigError, "unknown fixture '" + name + "'");
}

}  // namespace taptrim
