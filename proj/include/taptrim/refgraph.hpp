#pragma once

// Class hierarchy, method resolution and the reachability fixpoint that
// decides which classes and methods an app can actually use.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "taptrim/config.hpp"
#include "taptrim/package.hpp"

namespace taptrim {

struct MethodRef {
  std::string owner;
  std::string name;
  std::string descriptor;

  auto operator<=>(const MethodRef&) const = default;
  bool operator==(const MethodRef&) const = default;
};

std::string to_string(const MethodRef& ref);  // owner.name descriptor

struct ClassHierarchy {
  std::map<std::string, std::string> parent;  // internal class -> superclass
  std::map<std::string, std::set<std::string>> children;
  std::map<std::string, std::vector<std::string>> interfaces;
  std::map<std::string, std::set<std::string>> implementors;
  std::set<std::string> internal;

  bool is_internal(std::string_view fqn) const { return internal.contains(std::string(fqn)); }
  bool is_external(std::string_view fqn) const { return !is_internal(fqn); }

  // Transitive internal supertypes (superclasses and interfaces), self excluded.
  std::set<std::string> supertypes(const std::string& fqn) const;
  // Transitive internal subtypes, self excluded.
  std::set<std::string> subtypes(const std::string& fqn) const;
  // Superclass chain starting at `fqn`, ending at the first external class
  // (included) or at an internal root.
  std::vector<std::string> superclass_chain(const std::string& fqn) const;
};

// Throws Error{CyclicHierarchy} when internal classes form an inheritance
// cycle through superclass or interface edges.
ClassHierarchy build_hierarchy(const Package& pkg, const TrimConfig& cfg);

struct Resolution {
  enum class Kind { Internal, External, Missing };
  Kind kind = Kind::Missing;
  // Defining class for Internal, the class where lookup left the package
  // for External, empty for Missing.
  std::string owner;
  bool operator==(const Resolution&) const = default;
};

// Looks the method up along the internal superclass chain, then through
// internal interfaces (depth-first, declaration order).
Resolution resolve_method(const ClassHierarchy& h, const Package& pkg, std::string_view owner,
                          std::string_view name, std::string_view descriptor);

std::set<std::string> collect_seeds(const Package& pkg, const ClassHierarchy& h,
                                    const TrimConfig& cfg);

struct ReachabilityResult {
  std::uint64_t package_digest = 0;
  std::set<std::string> seeds;
  std::set<std::string> kept_classes;
  std::set<MethodRef> kept_methods;
  std::set<std::string> instantiated;
  std::set<std::uint32_t> used_resource_ids;
  std::set<std::string> asset_strings;
  std::set<MethodRef> external_refs;  // as written at the call site
  std::set<MethodRef> missing_refs;   // unresolvable, reported by verify
};

ReachabilityResult reach(const Package& pkg, const TrimConfig& cfg);

}  // namespace taptrim
