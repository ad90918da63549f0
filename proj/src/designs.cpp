#include "syndsl/designs.hpp"

namespace syndsl::designs {

std::vector<DesignInfo> registry() {
  return {
      {"acc", "--n <width, default 8>"},
      {"add-datapath", "(no parameters)"},
      {"dly", "--width <default 8>"},
      {"dly-chain", "--count <delays, default 2> --width <default 8>"},
      {"reduce-left", "--width <default 8>"},
      {"reduce-right", "--width <default 8>"},
      {"regfile", "--count <registers, default 4> --width <default 8>"},
  };
}

bool known_design(const std::string& name) {
  for (const auto& d : registry())
    if (d.name == name) return true;
  return false;
}

unsigned index_width(unsigned count) {
  if (count < 2)
    raise(Err::WidthZero, "a register file with " + std::to_string(count) +
                              " register(s) has no index bits");
  unsigned w = 0;
  while ((1u << w) < count) ++w;
  return w;
}

}  // namespace syndsl::designs
