#include "heh/prelude.hpp"
#include "heh/syntax/parser.hpp"

namespace heh {

std::vector<PreludeEntry> prelude_manifest() {
  std::vector<PreludeEntry> out;
  for (const auto& b : syntax::parse_program(prelude_source()).bindings)
    out.push_back({b.name, syntax::print(*b.value), b.recursive});
  return out;
}

}  // namespace heh
