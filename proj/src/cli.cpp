#include "syndsl/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "syndsl/designs.hpp"
#include "syndsl/rng.hpp"
#include "syndsl/trace_io.hpp"

namespace syndsl {

std::optional<Divergence> check_coherence(const EvalBackend::Validated& design,
                                          const Netlist& netlist,
                                          std::uint64_t seed, size_t cycles) {
  NetlistSim sim(netlist);
  SplitMix64 rng(seed);
  std::vector<unsigned> widths = flatten(design.in);

  StateValue st = design.init;
  std::vector<BitVector> regs = sim.initial_regs();
  for (size_t cycle = 0; cycle < cycles; ++cycle) {
    std::vector<BitVector> row;
    row.reserve(widths.size());
    for (unsigned w : widths) row.push_back(rng.bits(w));

    auto [ev_out, st1] = design.step(SignalValue::from_flat(design.in, row), st);
    auto [nl_out, regs1] = sim.step(row, regs);
    std::vector<BitVector> ev_flat = ev_out.flat();
    for (size_t p = 0; p < ev_flat.size(); ++p)
      if (ev_flat[p] != nl_out[p])
        return Divergence{cycle, p, ev_flat[p], nl_out[p]};
    st = std::move(st1);
    regs = std::move(regs1);
  }
  return std::nullopt;
}

namespace cli {

namespace {

struct DesignArgs {
  std::string name;
  designs::Params params;
};

void add_design_options(CLI::App* cmd, DesignArgs& a, unsigned& n,
                        unsigned& count, unsigned& width) {
  cmd->add_option("design", a.name, "design name (see `list`)")->required();
  cmd->add_option("--n", n, "width parameter");
  cmd->add_option("--count", count, "element count parameter");
  cmd->add_option("--width", width, "bit width parameter");
}

void collect_params(const CLI::App* cmd, DesignArgs& a, unsigned n,
                    unsigned count, unsigned width) {
  if (cmd->count("--n")) a.params.n = n;
  if (cmd->count("--count")) a.params.count = count;
  if (cmd->count("--width")) a.params.width = width;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("cannot read " + path);
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

void emit_output(const std::string& path, const std::string& text,
                 std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"synchronous component designs: simulate, emit, cross-check"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list available designs");

  DesignArgs sim_args;
  unsigned sim_n = 0, sim_count = 0, sim_width = 0;
  std::string sim_in, sim_out;
  auto* sim_cmd =
      app.add_subcommand("simulate", "run a design over an input trace");
  add_design_options(sim_cmd, sim_args, sim_n, sim_count, sim_width);
  sim_cmd->add_option("--in", sim_in, "input trace CSV")->required();
  sim_cmd->add_option("--out", sim_out, "output trace CSV (default stdout)");

  DesignArgs emit_args;
  unsigned emit_n = 0, emit_count = 0, emit_width = 0;
  std::string emit_target = "verilog", emit_out;
  bool emit_normalize = false;
  auto* emit_cmd = app.add_subcommand("emit", "emit Verilog or netlist JSON");
  add_design_options(emit_cmd, emit_args, emit_n, emit_count, emit_width);
  emit_cmd->add_option("--target", emit_target, "verilog | netlist-json");
  emit_cmd->add_flag("--normalize", emit_normalize,
                     "normalize the combinational core first");
  emit_cmd->add_option("--out", emit_out, "output path (default stdout)");

  DesignArgs check_args;
  unsigned check_n = 0, check_count = 0, check_width = 0;
  std::uint64_t check_seed = 0;
  size_t check_cycles = 256;
  auto* check_cmd = app.add_subcommand(
      "check", "compare the evaluator against the netlist simulation");
  add_design_options(check_cmd, check_args, check_n, check_count, check_width);
  check_cmd->add_option("--seed", check_seed, "PRNG seed (default 0)");
  check_cmd->add_option("--cycles", check_cycles,
                        "number of random cycles (default 256)");

  std::vector<const char*> argv;
  argv.push_back("syndsl");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& d : designs::registry())
        out << d.name << "  " << d.params_help << "\n";
      return 0;
    }

    if (sim_cmd->parsed()) {
      collect_params(sim_cmd, sim_args, sim_n, sim_count, sim_width);
      EvalBackend b;
      auto vd = designs::build(b, sim_args.name, sim_args.params);
      Trace in = trace_from_csv(read_file(sim_in), flatten(vd.in));
      Trace result = simulate(vd, in);
      emit_output(sim_out,
                  trace_to_csv(result, "out", flatten(vd.out).size()), out);
      return 0;
    }

    if (emit_cmd->parsed()) {
      collect_params(emit_cmd, emit_args, emit_n, emit_count, emit_width);
      if (emit_target != "verilog" && emit_target != "netlist-json") {
        err << "unknown target '" << emit_target
            << "' (want verilog or netlist-json)\n";
        return 2;
      }
      NetlistBackend b;
      auto vd = designs::build(b, emit_args.name, emit_args.params,
                               emit_normalize);
      std::string text = emit_target == "verilog"
                             ? emit_verilog(vd.netlist)
                             : emit_netlist_json(vd.netlist);
      emit_output(emit_out, text, out);
      return 0;
    }

    if (check_cmd->parsed()) {
      collect_params(check_cmd, check_args, check_n, check_count, check_width);
      EvalBackend eb;
      auto ed = designs::build(eb, check_args.name, check_args.params);
      NetlistBackend nb;
      auto nd = designs::build(nb, check_args.name, check_args.params);
      auto div = check_coherence(ed, nd.netlist, check_seed, check_cycles);
      if (div) {
        err << "divergence at cycle " << div->cycle << " port out"
            << div->port << ": evaluator " << div->eval_value.to_hex()
            << ", netlist " << div->netlist_value.to_hex() << "\n";
        return 3;
      }
      out << "coherent over " << check_cycles << " cycles (seed " << check_seed
          << ")\n";
      return 0;
    }
  } catch (const std::ios_base::failure& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const DslError& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no command\n";
  return 2;
}

}  // namespace cli
}  // namespace syndsl
