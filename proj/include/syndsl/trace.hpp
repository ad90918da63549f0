#pragma once

#include <vector>

#include "syndsl/bitvec.hpp"
#include "syndsl/shapes.hpp"

namespace syndsl {

// Cycle-indexed rows of flattened port values. Row k holds one BitVector per
// leaf of the flattened port shape, in flatten order.
struct Trace {
  std::vector<std::vector<BitVector>> rows;

  size_t length() const { return rows.size(); }

  // Raises TraceShapeError when a row does not match `widths`.
  void check_against(const std::vector<unsigned>& widths) const;
};

}  // namespace syndsl
