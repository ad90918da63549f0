#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syndsl/designs.hpp"
#include "syndsl/eval.hpp"
#include "syndsl/rng.hpp"

using namespace syndsl;

namespace {

Trace random_trace(SplitMix64& rng, const std::vector<unsigned>& widths,
                   size_t cycles) {
  Trace t;
  for (size_t i = 0; i < cycles; ++i) {
    std::vector<BitVector> row;
    for (unsigned w : widths) row.push_back(rng.bits(w));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

TEST_CASE("eval_comb constructs pure functions") {
  EvalBackend b;
  auto adder = b.lam(
      SignalShape::pair(SignalShape::bits(3), SignalShape::bits(3)),
      SignalShape::bits(4),
      [&b](const EvalBackend::Comb& x) { return b.add(b.proj1(x), b.proj2(x)); });
  auto fn = eval_comb(adder);
  auto in = SignalValue::pair(SignalValue::bits(BitVector(3, 7)),
                              SignalValue::bits(BitVector(3, 1)));
  CHECK(fn(in).scalar() == BitVector(4, 8));
  // Reentrant: calling twice gives the same answer.
  CHECK(fn(in) == fn(in));
}

TEST_CASE("eval of an addmod reduction folds the packed leaves") {
  EvalBackend b;
  SignalShape a = SignalShape::bits(8);
  auto addmod = b.lam(SignalShape::pair(a, a), a,
                      [&b](const EvalBackend::Comb& p) {
                        return b.slice(0, 8, b.add(b.proj1(p), b.proj2(p)));
                      });
  auto t = glue::reduce(b, addmod,
                        SignalShape::pair(SignalShape::pair(a, a), a));
  auto v = SignalValue::pair(
      SignalValue::pair(SignalValue::bits(BitVector(8, 1)),
                        SignalValue::bits(BitVector(8, 2))),
      SignalValue::bits(BitVector(8, 3)));
  CHECK(eval_comb(t)(v).scalar() == BitVector(8, 6));
}

TEST_CASE("step_seq exposes the state transition") {
  EvalBackend b;
  auto vd = designs::make_accumulator(b, 8);
  StepFunction step = step_seq(vd);
  auto [y, st] = step(SignalValue::bits(BitVector(8, 250)),
                      StateValue::reg(BitVector(8, 6)));
  CHECK(y.scalar() == BitVector(8, 0));
  CHECK(st.scalar() == BitVector(8, 0));
}

TEST_CASE("simulate is deterministic") {
  SplitMix64 rng(55);
  EvalBackend b1;
  auto d1 = designs::make_add_datapath(b1);
  Trace in = random_trace(rng, flatten(d1.in), 40);
  Trace out1 = simulate(d1, in);

  EvalBackend b2;
  auto d2 = designs::make_add_datapath(b2);
  Trace out2 = simulate(d2, in);
  CHECK(out1.rows == out2.rows);
}

TEST_CASE("outputs depend only on the input prefix") {
  SplitMix64 rng(56);
  EvalBackend b;
  auto d = designs::make_accumulator(b, 8);
  Trace in = random_trace(rng, {8}, 32);
  Trace full = simulate(d, in);
  for (size_t k : {1u, 7u, 31u}) {
    Trace prefix;
    prefix.rows.assign(in.rows.begin(), in.rows.begin() + k);
    Trace out = simulate(d, prefix);
    REQUIRE(out.rows.size() == k);
    for (size_t i = 0; i < k; ++i) CHECK(out.rows[i] == full.rows[i]);
  }
}

TEST_CASE("empty trace simulates to an empty trace") {
  EvalBackend b;
  auto d = designs::make_accumulator(b, 8);
  Trace out = simulate(d, Trace{});
  CHECK(out.rows.empty());
}

TEST_CASE("malformed rows raise TraceShapeError") {
  EvalBackend b;
  auto d = designs::make_accumulator(b, 8);
  try {
    simulate(d, Trace{{{BitVector(9, 0)}}});
    FAIL("wrong width accepted");
  } catch (const DslError& e) {
    CHECK(e.code() == Err::TraceShapeError);
  }
  CHECK_THROWS_AS(simulate(d, Trace{{{BitVector(8, 0), BitVector(8, 0)}}}),
                  DslError);
}

TEST_CASE("simulate length is preserved") {
  SplitMix64 rng(57);
  EvalBackend b;
  auto d = designs::build(b, "regfile", {});
  Trace in = random_trace(rng, flatten(d.in), 100);
  CHECK(simulate(d, in).rows.size() == 100);
}
