// Acceptance suite: one criterion per entry, one pass/fail line each.
// Run with --update-goldens to regenerate the frozen Verilog files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "syndsl/cli.hpp"
#include "syndsl/designs.hpp"
#include "syndsl/eval.hpp"
#include "syndsl/glue.hpp"
#include "syndsl/netlist.hpp"
#include "syndsl/rng.hpp"
#include "syndsl/transform.hpp"

using namespace syndsl;

#ifndef SYNDSL_GOLDEN_DIR
#define SYNDSL_GOLDEN_DIR "tests/golden"
#endif

namespace {

bool g_update_goldens = false;

struct Checker {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    " << what << "\n";
    }
  }
};

// --------------------------------------------------------------------------
// Shared helpers
// --------------------------------------------------------------------------

const std::vector<std::pair<std::string, designs::Params>>& catalogue() {
  static const std::vector<std::pair<std::string, designs::Params>> cases = {
      {"acc", {8u, {}, {}}},          {"dly", {{}, {}, 8u}},
      {"dly-chain", {{}, 2u, 8u}},    {"reduce-left", {{}, {}, 8u}},
      {"reduce-right", {{}, {}, 8u}}, {"regfile", {{}, 4u, 8u}},
      {"add-datapath", {}},
  };
  return cases;
}

SignalValue random_signal(const SignalShape& s, SplitMix64& rng) {
  switch (s.tag()) {
    case ShapeTag::Unit: return SignalValue::unit();
    case ShapeTag::Leaf: return SignalValue::bits(rng.bits(s.width()));
    case ShapeTag::Pair:
      return SignalValue::pair(random_signal(s.left(), rng),
                               random_signal(s.right(), rng));
  }
  raise(Err::ShapeError, "corrupt shape");
}

StateValue zero_state(const StateShape& s) {
  switch (s.tag()) {
    case ShapeTag::Unit: return StateValue::unit();
    case ShapeTag::Leaf: return StateValue::reg(BitVector(s.width(), 0));
    case ShapeTag::Pair:
      return StateValue::pair(zero_state(s.left()), zero_state(s.right()));
  }
  raise(Err::ShapeError, "corrupt shape");
}

StateShape state_of_signal(const SignalShape& s) {
  switch (s.tag()) {
    case ShapeTag::Unit: return StateShape::unit();
    case ShapeTag::Leaf: return StateShape::reg(s.width());
    case ShapeTag::Pair:
      return StateShape::pair(state_of_signal(s.left()),
                              state_of_signal(s.right()));
  }
  raise(Err::ShapeError, "corrupt shape");
}

// --------------------------------------------------------------------------
// 1. Interpreter coherence
// --------------------------------------------------------------------------

void criterion_coherence(Checker& c) {
  for (const auto& [name, params] : catalogue()) {
    EvalBackend eb;
    auto ed = designs::build(eb, name, params);
    NetlistBackend nb;
    auto nd = designs::build(nb, name, params);
    auto div = check_coherence(ed, nd.netlist, /*seed=*/1000 + name.size(),
                               /*cycles=*/1000);
    c.expect(!div.has_value(),
             name + ": divergence at cycle " +
                 (div ? std::to_string(div->cycle) : ""));
  }

  // Exhaustive over all (state, input) pairs for acc and dly at width <= 3.
  for (unsigned w = 1; w <= 3; ++w) {
    std::uint64_t m = std::uint64_t{1} << w;
    {
      EvalBackend eb;
      auto ed = designs::make_accumulator(eb, w);
      NetlistBackend nb;
      auto nd = designs::make_accumulator(nb, w);
      NetlistSim sim(nd.netlist);
      for (std::uint64_t st = 0; st < m; ++st)
        for (std::uint64_t in = 0; in < m; ++in) {
          auto [y, st1] = ed.step(SignalValue::bits(BitVector(w, in)),
                                  StateValue::reg(BitVector(w, st)));
          auto [outs, regs] =
              sim.step({BitVector(w, in)}, {BitVector(w, st)});
          c.expect(y.scalar() == outs[0] && st1.scalar() == regs[0],
                   "acc exhaustive mismatch at w=" + std::to_string(w));
        }
    }
    {
      EvalBackend eb;
      auto ed = designs::make_dly(eb, w);
      NetlistBackend nb;
      auto nd = designs::make_dly(nb, w);
      NetlistSim sim(nd.netlist);
      for (std::uint64_t st = 0; st < m; ++st)
        for (std::uint64_t in = 0; in < m; ++in) {
          auto [y, st1] = ed.step(SignalValue::bits(BitVector(w, in)),
                                  StateValue::reg(BitVector(w, st)));
          auto [outs, regs] =
              sim.step({BitVector(w, in)}, {BitVector(w, st)});
          c.expect(y.scalar() == outs[0] && st1.scalar() == regs[0],
                   "dly exhaustive mismatch at w=" + std::to_string(w));
        }
    }
  }
}

// --------------------------------------------------------------------------
// 2. dly law
// --------------------------------------------------------------------------

SignalShape gen_shape(SplitMix64& rng, int depth) {
  switch (rng.below(depth > 0 ? 4 : 2)) {
    case 0: return SignalShape::unit();
    case 1: return SignalShape::bits(1 + static_cast<unsigned>(rng.below(16)));
    default:
      return SignalShape::pair(gen_shape(rng, depth - 1),
                               gen_shape(rng, depth - 1));
  }
}

void criterion_dly_law(Checker& c) {
  SplitMix64 rng(2);
  for (int iter = 0; iter < 50; ++iter) {
    SignalShape a = gen_shape(rng, 3);
    StateShape s = state_of_signal(a);
    EvalBackend b;
    auto reg = b.reg_alloc(s, zero_state(s));
    auto vd = b.finalize({"dly", glue::dly(b, reg, a)});
    for (int k = 0; k < 200; ++k) {
      SignalValue x = random_signal(a, rng);
      StateValue st = StateValue::from_signal(random_signal(a, rng));
      auto [y, st1] = vd.step(x, st);
      c.expect(y == st.as_signal() && st1.as_signal() == x,
               "dly law failed on shape " + a.str());
    }
  }
  // Exhaustive at Bits(2).
  EvalBackend b;
  auto reg = b.reg_alloc(StateShape::reg(2), StateValue::reg(BitVector(2, 0)));
  auto vd = b.finalize({"dly2", glue::dly(b, reg, SignalShape::bits(2))});
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t st = 0; st < 4; ++st) {
      auto [y, st1] = vd.step(SignalValue::bits(BitVector(2, x)),
                              StateValue::reg(BitVector(2, st)));
      c.expect(y.scalar().value_u64() == st && st1.scalar().value_u64() == x,
               "dly law failed exhaustively at Bits(2)");
    }
}

// --------------------------------------------------------------------------
// 3. Accumulator trace
// --------------------------------------------------------------------------

void criterion_acc_trace(Checker& c) {
  // Independent fold oracle.
  std::vector<std::uint64_t> inputs = {1, 2, 3, 250};
  std::vector<std::uint64_t> expected;
  std::uint64_t st = 0;
  for (std::uint64_t x : inputs) {
    st = (st + x) % 256;
    expected.push_back(st);
  }
  c.expect(expected == std::vector<std::uint64_t>({1, 3, 6, 0}),
           "fold oracle disagrees with the pinned trace");

  EvalBackend b;
  auto vd = designs::make_accumulator(b, 8);
  Trace in;
  for (std::uint64_t x : inputs) in.rows.push_back({BitVector(8, x)});
  Trace out = simulate(vd, in);
  for (size_t i = 0; i < inputs.size(); ++i)
    c.expect(out.rows[i][0].value_u64() == expected[i],
             "acc trace mismatch at cycle " + std::to_string(i));
}

// --------------------------------------------------------------------------
// 4. Register-file / add law
// --------------------------------------------------------------------------

void criterion_add_rdata(Checker& c) {
  EvalBackend b;
  auto vd = designs::make_add_datapath(b);
  SplitMix64 rng(4);
  constexpr std::uint64_t mod = std::uint64_t{1} << 32;
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<BitVector> leaves;
    std::vector<std::uint64_t> vals;
    for (int i = 0; i < 32; ++i) {
      leaves.push_back(rng.bits(32));
      vals.push_back(leaves.back().value_u64());
    }
    StateValue st = StateValue::from_flat(repeat_state(32, 32), leaves);
    std::uint64_t rs1 = rng.below(32), rs2 = rng.below(32), rd = rng.below(32);
    SignalValue in = SignalValue::pair(
        SignalValue::bits(BitVector(5, rs1)),
        SignalValue::pair(SignalValue::bits(BitVector(5, rs2)),
                          SignalValue::bits(BitVector(5, rd))));
    auto [y, st1] = vd.step(in, st);
    std::uint64_t rdata = (vals[rs1] + vals[rs2]) % mod;
    c.expect(y.scalar().value_u64() == rdata, "rdata mismatch");
    std::vector<BitVector> post = st1.flat();
    bool state_ok = true;
    for (size_t i = 0; i < 32; ++i) {
      std::uint64_t want = i == rd ? rdata : vals[i];
      if (post[i].value_u64() != want) state_ok = false;
    }
    c.expect(state_ok, "post-state touched a register other than rd");
  }
}

// --------------------------------------------------------------------------
// 5. Normalization
// --------------------------------------------------------------------------

void criterion_normalization(Checker& c) {
  for (const auto& [name, params] : catalogue()) {
    // (a) eval equivalence on 1000 random inputs.
    EvalBackend plain;
    auto f_plain = designs::comb_core(plain, name, params);
    EvalBackend base;
    Normalizer<EvalBackend> norm(base);
    auto f_norm = norm(
        [&, n = name](auto& nb) { return designs::comb_core(nb, n, params); });
    auto evp = eval_comb(f_plain);
    auto evn = eval_comb(f_norm);
    SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      SignalValue x = random_signal(f_plain.meta.in, rng);
      c.expect(evp(x) == evn(x), name + ": normalise changed evaluation");
    }

    // (b) app-free after normalise.
    StatsBackend sb;
    Normalizer<StatsBackend> snorm(sb);
    (void)snorm(
        [&, n = name](auto& nb) { return designs::comb_core(nb, n, params); });
    c.expect(sb.stats().of("app") == 0,
             name + ": normalised term still contains app");

    // (d) idempotence: netlist-isomorphic and stats-identical.
    NetlistBackend b1;
    Normalizer<NetlistBackend> n1(b1);
    auto once = n1(
        [&, n = name](auto& nb) { return designs::comb_core(nb, n, params); });
    auto vd1 = b1.finalize({"once", b1.pure(once, StateShape::unit())});

    NetlistBackend b2;
    Normalizer<NetlistBackend> n2(b2);
    auto twice = n2([&, n = name](auto& outer) {
      Normalizer<std::decay_t<decltype(outer)>> inner_norm(outer);
      return inner_norm(
          [&](auto& inner) { return designs::comb_core(inner, n, params); });
    });
    auto vd2 = b2.finalize({"twice", b2.pure(twice, StateShape::unit())});
    c.expect(netlist_isomorphic(vd1.netlist, vd2.netlist),
             name + ": normalisation is not idempotent (netlist)");

    StatsBackend s1;
    Normalizer<StatsBackend> sn1(s1);
    (void)sn1(
        [&, n = name](auto& nb) { return designs::comb_core(nb, n, params); });
    StatsBackend s2;
    Normalizer<StatsBackend> sn2(s2);
    (void)sn2([&, n = name](auto& outer) {
      Normalizer<std::decay_t<decltype(outer)>> inner_norm(outer);
      return inner_norm(
          [&](auto& inner) { return designs::comb_core(inner, n, params); });
    });
    c.expect(s1.stats().counts == s2.stats().counts,
             name + ": normalisation is not idempotent (stats)");
  }

  // (c) the normalised accumulator equals the hand-inlined form.
  NetlistBackend nb;
  auto normed = designs::build(nb, "acc", {8u, {}, {}}, /*normalize=*/true);
  NetlistBackend ib;
  auto inlined = designs::make_accumulator_inlined(ib, 8);
  c.expect(netlist_isomorphic(normed.netlist, inlined.netlist),
           "normalised acc is not isomorphic to the inlined form");
}

// --------------------------------------------------------------------------
// 6. Linearity discipline
// --------------------------------------------------------------------------

void criterion_linearity(Checker& c) {
  SignalShape a8 = SignalShape::bits(8);
  StateShape s8 = StateShape::reg(8);
  auto expect_code = [&](Err want, const char* what, auto&& fn) {
    try {
      fn();
      c.expect(false, std::string(what) + ": no error raised");
    } catch (const DslError& e) {
      c.expect(e.code() == want,
               std::string(what) + ": raised " + e.what());
    }
  };

  // compose_shared reuse.
  expect_code(Err::LinearityViolation, "compose_shared", [&] {
    EvalBackend b;
    auto f = b.pure(b.constant(BitVector(8, 0)), s8);
    auto g = b.abst(a8, [&](const auto&) {
      return b.pure(b.constant(BitVector(8, 0)), s8);
    });
    auto t = b.compose_shared(std::move(g), std::move(f));
    auto h = b.abst(a8, [&](const auto&) {
      return b.pure(b.constant(BitVector(8, 0)), s8);
    });
    (void)b.compose_shared(std::move(h), std::move(f));
  });
  // compose_stacked reuse.
  expect_code(Err::LinearityViolation, "compose_stacked", [&] {
    EvalBackend b;
    auto f = b.pure(b.constant(BitVector(8, 0)), s8);
    auto g = b.abst(a8, [&](const auto&) {
      return b.pure(b.constant(BitVector(8, 0)), s8);
    });
    auto t = b.compose_stacked(std::move(g), std::move(f));
    auto h = b.abst(a8, [&](const auto&) {
      return b.pure(b.constant(BitVector(8, 0)), s8);
    });
    (void)b.compose_stacked(std::move(h), std::move(f));
  });
  // abst: a term captured by two bodies.
  expect_code(Err::LinearityViolation, "abst", [&] {
    EvalBackend b;
    auto inner = b.pure(b.constant(BitVector(8, 0)), s8);
    auto wrap = [&](const EvalBackend::Comb&) { return std::move(inner); };
    auto first = b.abst(a8, wrap);
    (void)b.abst(a8, wrap);
  });
  // pure: its single-use result consumed twice.
  expect_code(Err::LinearityViolation, "pure", [&] {
    EvalBackend b;
    auto p = b.pure(b.constant(BitVector(8, 0)), s8);
    auto t = b.abst(a8, [&](const auto&) { return std::move(p); });
    (void)b.abst(a8, [&](const auto&) { return std::move(p); });
  });
  // reg_get reuse.
  expect_code(Err::LinearityViolation, "reg_get", [&] {
    EvalBackend b;
    auto reg = b.reg_alloc(s8, StateValue::reg(BitVector(8, 0)));
    auto g1 = b.reg_get(reg, a8);
    (void)b.reg_get(reg, a8);
  });
  // reg_set reuse.
  expect_code(Err::LinearityViolation, "reg_set", [&] {
    EvalBackend b;
    auto reg = b.reg_alloc(s8, StateValue::reg(BitVector(8, 0)));
    auto s1 = b.reg_set(reg, b.constant(BitVector(8, 0)));
    (void)b.reg_set(reg, b.constant(BitVector(8, 1)));
  });
  // finalize with set omitted.
  expect_code(Err::UnderusedResource, "finalize", [&] {
    EvalBackend b;
    auto reg = b.reg_alloc(s8, StateValue::reg(BitVector(8, 0)));
    auto t = b.reg_get(reg, a8);
    (void)b.finalize({"no-set", std::move(t)});
  });
}

// --------------------------------------------------------------------------
// 7. Netlist well-formedness
// --------------------------------------------------------------------------

void criterion_wellformed(Checker& c) {
  for (const auto& [name, params] : catalogue()) {
    NetlistBackend b;
    auto vd = designs::build(b, name, params);
    auto rep = validate_netlist(vd.netlist);
    c.expect(rep.ok(), name + ": validation reported violations");
    c.expect(vd.netlist.regs.size() == flatten(vd.state).size(),
             name + ": register count != state leaves");
  }

  Netlist base;
  base.name = "fixture";
  base.in_shape = SignalShape::bits(4);
  base.out_shape = SignalShape::bits(4);
  base.wires = {Wire{0, 4}, Wire{1, 4}};
  base.inputs = {0};
  base.outputs = {1};
  base.nodes = {Node{2, NodeKind::Not, {}, {0}, 1}};
  c.expect(validate_netlist(base).ok(), "fixture baseline is invalid");

  Netlist cyc = base;
  cyc.nodes[0].inputs = {1};
  c.expect(validate_netlist(cyc).has(ViolationKind::CombinationalCycle),
           "self-feeding node not reported as CombinationalCycle");

  Netlist multi = base;
  multi.assigns.push_back(Assign{1, 0});
  c.expect(validate_netlist(multi).has(ViolationKind::MultipleDrivers),
           "double driver not reported as MultipleDrivers");

  Netlist undriven = base;
  undriven.wires.push_back(Wire{3, 4});
  undriven.nodes[0].inputs = {3};
  c.expect(validate_netlist(undriven).has(ViolationKind::UndrivenWire),
           "undriven wire not reported as UndrivenWire");

  Netlist dup = base;
  dup.wires.push_back(Wire{2, 4});
  c.expect(validate_netlist(dup).has(ViolationKind::DuplicateLabel),
           "duplicate label not reported as DuplicateLabel");
}

// --------------------------------------------------------------------------
// 8. Reduce shape-direction
// --------------------------------------------------------------------------

void criterion_reduce_direction(Checker& c) {
  // Host-side parenthesization oracle for f(x, y) = (2x + y) mod 256.
  auto f = [](std::uint64_t x, std::uint64_t y) {
    return ((2 * x) % 256 + y) % 256;
  };
  std::uint64_t left_expected = f(f(1, 2), 3);
  std::uint64_t right_expected = f(1, f(2, 3));
  c.expect(left_expected == 11 && right_expected == 9,
           "parenthesization oracle disagrees with the pinned values");

  EvalBackend b;
  auto tl = designs::reduce_core(b, true, 8);
  auto tr = designs::reduce_core(b, false, 8);
  auto one = SignalValue::bits(BitVector(8, 1));
  auto two = SignalValue::bits(BitVector(8, 2));
  auto three = SignalValue::bits(BitVector(8, 3));
  auto vl = SignalValue::pair(SignalValue::pair(one, two), three);
  auto vr = SignalValue::pair(one, SignalValue::pair(two, three));
  c.expect(eval_comb(tl)(vl).scalar().value_u64() == left_expected,
           "reduce over ((a,a),a) disagrees with the oracle");
  c.expect(eval_comb(tr)(vr).scalar().value_u64() == right_expected,
           "reduce over (a,(a,a)) disagrees with the oracle");
}

// --------------------------------------------------------------------------
// 9. Verilog golden files
// --------------------------------------------------------------------------

void criterion_goldens(Checker& c) {
  struct GoldenCase {
    const char* file;
    std::function<std::string()> emit;
  };
  std::vector<GoldenCase> cases = {
      {"acc8.v",
       [] {
         NetlistBackend b;
         return emit_verilog(designs::make_accumulator(b, 8).netlist);
       }},
      {"dly8.v",
       [] {
         NetlistBackend b;
         return emit_verilog(designs::make_dly(b, 8).netlist);
       }},
      {"add_datapath.v",
       [] {
         NetlistBackend b;
         return emit_verilog(designs::make_add_datapath(b).netlist);
       }},
  };
  std::filesystem::path dir(SYNDSL_GOLDEN_DIR);
  for (const auto& g : cases) {
    std::filesystem::path path = dir / g.file;
    std::string text = g.emit();
    if (g_update_goldens) {
      std::ofstream out(path, std::ios::binary);
      out << text;
      c.expect(static_cast<bool>(out), std::string("cannot write ") + g.file);
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      c.expect(false, std::string(g.file) +
                          " missing (run with --update-goldens to create)");
      continue;
    }
    std::ostringstream os;
    os << in.rdbuf();
    c.expect(os.str() == text,
             std::string(g.file) + " differs from the emitted text");
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--update-goldens") g_update_goldens = true;

  struct Criterion {
    const char* name;
    std::function<void(Checker&)> run;
  };
  std::vector<Criterion> criteria = {
      {"1. interpreter coherence (1000 random cycles + exhaustive w<=3)",
       criterion_coherence},
      {"2. dly law over generated shapes (exhaustive at Bits(2))",
       criterion_dly_law},
      {"3. accumulator trace vs fold oracle", criterion_acc_trace},
      {"4. register-file add law (1000 random states)", criterion_add_rdata},
      {"5. normalization: equivalence, app-freedom, inlined form, idempotence",
       criterion_normalization},
      {"6. linearity discipline (6 negative cases + underuse)",
       criterion_linearity},
      {"7. netlist well-formedness + corrupted fixtures",
       criterion_wellformed},
      {"8. reduce shape-direction ((a,a),a -> 11; a,(a,a) -> 9)",
       criterion_reduce_direction},
      {"9. Verilog golden files (byte-for-byte)", criterion_goldens},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Checker c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "    unexpected exception: " << e.what() << "\n";
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << cr.name << "\n";
    if (!c.ok) {
      std::cout << c.log.str();
      ++failures;
    }
  }
  if (failures > 0)
    std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
