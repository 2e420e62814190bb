#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace heh {

// Source of lib/prelude.heh, embedded at build time.
std::string_view prelude_source();

struct PreludeEntry {
  std::string name;
  std::string definition;  // canonical printed form
  bool recursive = false;
};

// Top-level bindings of the prelude in load order.
std::vector<PreludeEntry> prelude_manifest();

}  // namespace heh
