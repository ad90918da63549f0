#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "syndsl/eval.hpp"
#include "syndsl/netlist.hpp"

namespace syndsl {

// One divergent sample between the two interpretations of a design.
struct Divergence {
  size_t cycle;
  size_t port;
  BitVector eval_value;
  BitVector netlist_value;
};

// Drives both interpreters over `cycles` random input rows drawn from the
// seeded generator and compares outputs bit for bit.
std::optional<Divergence> check_coherence(const EvalBackend::Validated& design,
                                          const Netlist& netlist,
                                          std::uint64_t seed, size_t cycles);

namespace cli {

// Exit codes: 0 ok, 1 I/O failure, 2 usage or shape error, 3 divergence.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cli

}  // namespace syndsl
