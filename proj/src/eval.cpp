#include "syndsl/eval.hpp"

namespace syndsl {

void Trace::check_against(const std::vector<unsigned>& widths) const {
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != widths.size())
      raise(Err::TraceShapeError,
            "row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                " values, want " + std::to_string(widths.size()));
    for (size_t c = 0; c < row.size(); ++c)
      if (row[c].width() != widths[c])
        raise(Err::TraceShapeError,
              "row " + std::to_string(r) + " column " + std::to_string(c) +
                  " is " + std::to_string(row[c].width()) + " bits, want " +
                  std::to_string(widths[c]));
  }
}

Trace simulate(const EvalBackend::Validated& d, const Trace& inputs) {
  inputs.check_against(flatten(d.in));
  Trace out;
  out.rows.reserve(inputs.rows.size());
  StateValue st = d.init;
  for (const auto& row : inputs.rows) {
    SignalValue x = SignalValue::from_flat(d.in, row);
    auto [y, st1] = d.step(x, st);
    out.rows.push_back(y.flat());
    st = std::move(st1);
  }
  return out;
}

}  // namespace syndsl
