#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "taptrim/error.hpp"
#include "taptrim/package.hpp"
#include "text_util.hpp"

namespace taptrim {

namespace {

constexpr std::string_view kIndent = "    ";

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$';
}

bool is_method_name(std::string_view name) {
  if (name == kConstructorName || name == kStaticInitName) return true;
  return !name.empty() && std::all_of(name.begin(), name.end(), is_ident_char);
}

bool is_descriptor(std::string_view d) {
  return !d.empty() && std::none_of(d.begin(), d.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '"';
  });
}

bool is_method_descriptor(std::string_view d) {
  return is_descriptor(d) && d.front() == '(' && d.find(')') != std::string_view::npos;
}

std::string escape(std::string_view value) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(value.size() + 2);
  out.push_back('"');
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          out += "\\x";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xf]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

std::optional<std::string> unescape(std::string_view quoted) {
  if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') return std::nullopt;
  std::string_view body = quoted.substr(1, quoted.size() - 2);
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '"') return std::nullopt;
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= body.size()) return std::nullopt;
    switch (body[i]) {
      case '\\': out.push_back('\\'); break;
      case '"': out.push_back('"'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'x': {
        if (i + 2 >= body.size()) return std::nullopt;
        unsigned value = 0;
        auto hex = body.substr(i + 1, 2);
        auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
        if (ec != std::errc{} || ptr != hex.data() + 2) return std::nullopt;
        out.push_back(static_cast<char>(value));
        i += 2;
        break;
      }
      default:
        return std::nullopt;
    }
  }
  return out;
}

std::string render_instruction(const Instruction& insn) {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Invoke>) {
          return "invoke " + op.owner + "." + op.name + " " + op.descriptor;
        } else if constexpr (std::is_same_v<T, NewInstance>) {
          return "new-instance " + op.owner;
        } else if constexpr (std::is_same_v<T, FieldAccess>) {
          return "field-access " + op.owner + "." + op.field;
        } else if constexpr (std::is_same_v<T, ConstString>) {
          return "const-string " + escape(op.value);
        } else {
          return "const-resource " + format_resource_id(op.id);
        }
      },
      insn);
}

std::string render_method(const MethodDef& m) {
  std::string out = "\n.method ";
  if (m.is_native) out += "native ";
  out += m.name + " " + m.descriptor + "\n";
  for (const auto& insn : m.body) {
    out += kIndent;
    out += render_instruction(insn);
    out += "\n";
  }
  out += ".end method\n";
  return out;
}

class ClassParser {
 public:
  ClassParser(std::string_view text, std::string_view path) : text_(text), path_(path) {}

  ClassDef parse() {
    ClassDef cls;
    bool have_class = false;
    bool have_super = false;
    MethodDef* current = nullptr;
    std::set<std::pair<std::string, std::string>> signatures;
    std::size_t method_line = 0;

    for_each_line(text_, [&](std::string_view raw) {
      ++line_;
      std::string_view line = trim(raw);
      if (line.empty() || line.front() == '#') return;
      auto [head, rest] = split_first(line);

      if (current != nullptr) {
        if (head == ".end") {
          if (rest != "method") fail("expected '.end method'");
          current = nullptr;
          return;
        }
        if (current->is_native) fail("native method '" + current->name + "' has a body");
        current->body.push_back(parse_instruction(head, rest));
        return;
      }

      if (!have_class) {
        if (head != ".class") fail("expected '.class' directive first");
        expect_fqn(rest, "class name");
        cls.name = std::string(rest);
        have_class = true;
        return;
      }
      if (head == ".class") fail("duplicate '.class' directive");
      if (head == ".super") {
        if (have_super) fail("duplicate '.super' directive");
        expect_fqn(rest, "superclass");
        if (rest == cls.name) fail("class cannot extend itself");
        cls.superclass = std::string(rest);
        have_super = true;
      } else if (head == ".implements") {
        expect_fqn(rest, "interface");
        cls.interfaces.emplace_back(rest);
      } else if (head == ".field") {
        auto [name, desc] = split_first(rest);
        if (name.empty() || !std::all_of(name.begin(), name.end(), is_ident_char)) {
          fail("bad field name");
        }
        if (!is_descriptor(desc)) fail("bad field descriptor");
        cls.fields.push_back({std::string(name), std::string(desc)});
      } else if (head == ".method") {
        MethodDef m;
        auto [first, after] = split_first(rest);
        if (first == "native") {
          m.is_native = true;
          std::tie(first, after) = split_first(after);
        }
        if (!is_method_name(first)) fail("bad method name '" + std::string(first) + "'");
        if (!is_method_descriptor(after)) fail("bad method descriptor '" + std::string(after) + "'");
        m.name = std::string(first);
        m.descriptor = std::string(after);
        if (!signatures.emplace(m.name, m.descriptor).second) {
          throw Error(ErrorKind::DuplicateMethod,
                      "method " + m.name + " " + m.descriptor + " defined twice",
                      std::string(path_), line_);
        }
        cls.methods.push_back(std::move(m));
        current = &cls.methods.back();
        method_line = line_;
      } else {
        fail("unknown directive '" + std::string(head) + "'");
      }
    });

    if (!have_class) fail("missing '.class' directive");
    if (current != nullptr) {
      line_ = method_line;
      fail("method '" + current->name + "' lacks '.end method'");
    }
    return cls;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ClassParseError, why, std::string(path_), line_);
  }

  void expect_fqn(std::string_view s, const char* what) const {
    if (!is_fqn(s)) fail(std::string("bad ") + what + " '" + std::string(s) + "'");
  }

  std::pair<std::string, std::string> split_member(std::string_view ref) const {
    auto dot = ref.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == ref.size()) {
      fail("expected <class>.<member>, got '" + std::string(ref) + "'");
    }
    std::string_view owner = ref.substr(0, dot);
    expect_fqn(owner, "owner");
    return {std::string(owner), std::string(ref.substr(dot + 1))};
  }

  Instruction parse_instruction(std::string_view op, std::string_view rest) const {
    if (op == "invoke") {
      auto [target, desc] = split_first(rest);
      auto [owner, name] = split_member(target);
      if (!is_method_name(name)) fail("bad method name '" + name + "'");
      if (!is_method_descriptor(desc)) fail("bad method descriptor '" + std::string(desc) + "'");
      return Invoke{std::move(owner), std::move(name), std::string(desc)};
    }
    if (op == "new-instance") {
      expect_fqn(rest, "class");
      return NewInstance{std::string(rest)};
    }
    if (op == "field-access") {
      auto [owner, field] = split_member(rest);
      if (!std::all_of(field.begin(), field.end(), is_ident_char)) fail("bad field name");
      return FieldAccess{std::move(owner), std::move(field)};
    }
    if (op == "const-string") {
      auto value = unescape(rest);
      if (!value) fail("bad string literal");
      return ConstString{std::move(*value)};
    }
    if (op == "const-resource") {
      auto id = parse_resource_id(rest);
      if (!id) fail("bad resource id '" + std::string(rest) + "'");
      return ConstResource{*id};
    }
    fail("unknown instruction '" + std::string(op) + "'");
  }

  std::string_view text_;
  std::string_view path_;
  std::size_t line_ = 0;
};

}  // namespace

const MethodDef* ClassDef::find_method(std::string_view n, std::string_view d) const {
  for (const auto& m : methods) {
    if (m.name == n && m.descriptor == d) return &m;
  }
  return nullptr;
}

ClassDef parse_class_text(std::string_view text, std::string_view source_path) {
  return ClassParser(text, source_path).parse();
}

std::string serialize_class_text(const ClassDef& cls) {
  std::string out = ".class " + cls.name + "\n";
  if (!cls.superclass.empty()) out += ".super " + cls.superclass + "\n";
  for (const auto& i : cls.interfaces) out += ".implements " + i + "\n";
  for (const auto& f : cls.fields) out += ".field " + f.name + " " + f.descriptor + "\n";
  for (const auto& m : cls.methods) out += render_method(m);
  return out;
}

std::size_t method_text_size(const MethodDef& method) { return render_method(method).size(); }

std::string class_storage_path(std::string_view fqn) {
  std::string path = "classes/";
  for (char c : fqn) path.push_back(c == '.' ? '/' : c);
  path += ".cls";
  return path;
}

std::optional<std::string> class_name_from_path(std::string_view path) {
  constexpr std::string_view prefix = "classes/";
  constexpr std::string_view suffix = ".cls";
  if (!path.starts_with(prefix) || !path.ends_with(suffix)) return std::nullopt;
  std::string_view middle = path.substr(prefix.size(), path.size() - prefix.size() - suffix.size());
  if (middle.empty() || middle.find('.') != std::string_view::npos) return std::nullopt;
  std::string name;
  for (char c : middle) name.push_back(c == '/' ? '.' : c);
  if (!is_fqn(name)) return std::nullopt;
  return name;
}

std::string_view simple_name(std::string_view fqn) {
  auto dot = fqn.rfind('.');
  return dot == std::string_view::npos ? fqn : fqn.substr(dot + 1);
}

}  // namespace taptrim
