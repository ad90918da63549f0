#include "syndsl/netlist.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace syndsl {

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Add: return "ADD";
    case NodeKind::Concat: return "CONCAT";
    case NodeKind::Slice: return "SLICE";
    case NodeKind::Eq: return "EQ";
    case NodeKind::Mux21: return "MUX21";
    case NodeKind::And: return "AND";
    case NodeKind::Or: return "OR";
    case NodeKind::Xor: return "XOR";
    case NodeKind::Not: return "NOT";
    case NodeKind::Const: return "CONST";
  }
  return "?";
}

std::optional<NodeKind> node_kind_from(const std::string& name) {
  static const std::map<std::string, NodeKind> table = {
      {"ADD", NodeKind::Add},     {"CONCAT", NodeKind::Concat},
      {"SLICE", NodeKind::Slice}, {"EQ", NodeKind::Eq},
      {"MUX21", NodeKind::Mux21}, {"AND", NodeKind::And},
      {"OR", NodeKind::Or},       {"XOR", NodeKind::Xor},
      {"NOT", NodeKind::Not},     {"CONST", NodeKind::Const}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string_view violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::MultipleDrivers: return "MultipleDrivers";
    case ViolationKind::UndrivenWire: return "UndrivenWire";
    case ViolationKind::CombinationalCycle: return "CombinationalCycle";
    case ViolationKind::DuplicateLabel: return "DuplicateLabel";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate_netlist(const Netlist& n) {
  ValidationReport rep;

  std::unordered_set<std::uint64_t> labels;
  auto check_label = [&](std::uint64_t id, const char* what) {
    if (!labels.insert(id).second)
      rep.violations.push_back(
          {ViolationKind::DuplicateLabel,
           std::string(what) + " reuses label " + std::to_string(id)});
  };
  for (const Wire& w : n.wires) check_label(w.id, "wire");
  for (const Node& nd : n.nodes) check_label(nd.id, "node");
  for (const Register& r : n.regs) check_label(r.id, "register");

  std::unordered_set<std::uint64_t> wire_ids;
  for (const Wire& w : n.wires) wire_ids.insert(w.id);

  // Driver accounting.
  std::unordered_map<std::uint64_t, unsigned> drivers;
  auto drive = [&](std::uint64_t w) { drivers[w] += 1; };
  for (std::uint64_t w : n.inputs) drive(w);
  for (const Node& nd : n.nodes) drive(nd.output);
  for (const Assign& a : n.assigns) drive(a.dst);
  for (const Register& r : n.regs) drive(r.q);

  for (const Wire& w : n.wires) {
    auto it = drivers.find(w.id);
    unsigned count = it == drivers.end() ? 0 : it->second;
    if (count == 0)
      rep.violations.push_back({ViolationKind::UndrivenWire,
                                "wire " + std::to_string(w.id)});
    else if (count > 1)
      rep.violations.push_back(
          {ViolationKind::MultipleDrivers,
           "wire " + std::to_string(w.id) + " has " + std::to_string(count) +
               " drivers"});
  }

  // References to unknown wires are reported as undriven uses.
  auto check_ref = [&](std::uint64_t w, const char* what) {
    if (!wire_ids.count(w))
      rep.violations.push_back({ViolationKind::UndrivenWire,
                                std::string(what) + " references unknown wire " +
                                    std::to_string(w)});
  };
  for (const Node& nd : n.nodes) {
    for (std::uint64_t w : nd.inputs) check_ref(w, "node input");
    check_ref(nd.output, "node output");
  }
  for (const Assign& a : n.assigns) {
    check_ref(a.src, "assign source");
    check_ref(a.dst, "assign target");
  }
  for (const Register& r : n.regs) {
    check_ref(r.q, "register q");
    check_ref(r.d, "register d");
  }
  for (std::uint64_t w : n.inputs) check_ref(w, "input port");
  for (std::uint64_t w : n.outputs) check_ref(w, "output port");

  // Combinational acyclicity with registers removed: input ports, register Q
  // pins, and parameterless nodes are the sources.
  size_t total = n.nodes.size() + n.assigns.size();
  std::unordered_set<std::uint64_t> ready;
  for (std::uint64_t w : n.inputs) ready.insert(w);
  for (const Register& r : n.regs) ready.insert(r.q);
  std::vector<bool> done(total, false);
  size_t scheduled = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < total; ++i) {
      if (done[i]) continue;
      bool ok = true;
      std::uint64_t out;
      if (i < n.nodes.size()) {
        const Node& nd = n.nodes[i];
        for (std::uint64_t w : nd.inputs)
          if (!ready.count(w)) { ok = false; break; }
        out = nd.output;
      } else {
        const Assign& a = n.assigns[i - n.nodes.size()];
        ok = ready.count(a.src) != 0;
        out = a.dst;
      }
      if (ok) {
        done[i] = true;
        ready.insert(out);
        ++scheduled;
        progress = true;
      }
    }
  }
  if (scheduled != total)
    rep.violations.push_back(
        {ViolationKind::CombinationalCycle,
         std::to_string(total - scheduled) +
             " element(s) are stuck on a combinational loop or missing driver"});

  return rep;
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

NetlistSim::NetlistSim(const Netlist& n) : n_(n) {
  size_t total = n.nodes.size() + n.assigns.size();
  std::unordered_set<std::uint64_t> ready;
  for (std::uint64_t w : n.inputs) ready.insert(w);
  for (const Register& r : n.regs) ready.insert(r.q);
  std::vector<bool> done(total, false);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < total; ++i) {
      if (done[i]) continue;
      bool ok = true;
      std::uint64_t out;
      if (i < n.nodes.size()) {
        for (std::uint64_t w : n.nodes[i].inputs)
          if (!ready.count(w)) { ok = false; break; }
        out = n.nodes[i].output;
      } else {
        const Assign& a = n.assigns[i - n.nodes.size()];
        ok = ready.count(a.src) != 0;
        out = a.dst;
      }
      if (ok) {
        done[i] = true;
        ready.insert(out);
        schedule_.push_back(static_cast<unsigned>(i));
        progress = true;
      }
    }
  }
  if (schedule_.size() != total)
    raise(Err::ShapeError,
          "netlist is not schedulable (combinational loop or missing driver)");
}

std::vector<BitVector> NetlistSim::initial_regs() const {
  std::vector<BitVector> out;
  out.reserve(n_.regs.size());
  for (const Register& r : n_.regs) out.push_back(r.init);
  return out;
}

std::pair<std::vector<BitVector>, std::vector<BitVector>> NetlistSim::step(
    const std::vector<BitVector>& inputs,
    const std::vector<BitVector>& regs) const {
  if (inputs.size() != n_.inputs.size())
    raise(Err::TraceShapeError, "netlist step got " +
                                    std::to_string(inputs.size()) +
                                    " inputs, want " +
                                    std::to_string(n_.inputs.size()));
  if (regs.size() != n_.regs.size())
    raise(Err::TraceShapeError, "netlist step got " +
                                    std::to_string(regs.size()) +
                                    " register values, want " +
                                    std::to_string(n_.regs.size()));

  std::unordered_map<std::uint64_t, BitVector> value;
  for (size_t i = 0; i < inputs.size(); ++i)
    value.emplace(n_.inputs[i], inputs[i]);
  for (size_t i = 0; i < regs.size(); ++i) {
    if (regs[i].width() != n_.regs[i].width)
      raise(Err::TraceShapeError, "register value width mismatch");
    value.emplace(n_.regs[i].q, regs[i]);
  }

  auto get = [&](std::uint64_t w) -> const BitVector& {
    auto it = value.find(w);
    if (it == value.end())
      raise(Err::ShapeError, "wire " + std::to_string(w) + " has no value");
    return it->second;
  };

  for (unsigned idx : schedule_) {
    if (idx < n_.nodes.size()) {
      const Node& nd = n_.nodes[idx];
      BitVector v = BitVector(1, 0);
      switch (nd.kind) {
        case NodeKind::Add:
          v = bv_add(get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Concat:
          v = bv_concat(get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Slice:
          v = bv_slice(nd.params.lower, nd.params.upper, get(nd.inputs[0]));
          break;
        case NodeKind::Eq:
          v = bv_eq(get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Mux21:
          v = bv_mux21(get(nd.inputs[0]), get(nd.inputs[1]),
                       get(nd.inputs[2]));
          break;
        case NodeKind::And:
          v = bv_logic(LogicKind::And, get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Or:
          v = bv_logic(LogicKind::Or, get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Xor:
          v = bv_logic(LogicKind::Xor, get(nd.inputs[0]), get(nd.inputs[1]));
          break;
        case NodeKind::Not:
          v = bv_logic(LogicKind::Not, get(nd.inputs[0]));
          break;
        case NodeKind::Const:
          v = *nd.params.value;
          break;
      }
      value.insert_or_assign(nd.output, v);
    } else {
      const Assign& a = n_.assigns[idx - n_.nodes.size()];
      value.insert_or_assign(a.dst, get(a.src));
    }
  }

  std::vector<BitVector> outs;
  outs.reserve(n_.outputs.size());
  for (std::uint64_t w : n_.outputs) outs.push_back(get(w));
  std::vector<BitVector> next;
  next.reserve(n_.regs.size());
  for (const Register& r : n_.regs) next.push_back(get(r.d));
  return {std::move(outs), std::move(next)};
}

Trace NetlistSim::run(const Trace& inputs) const {
  Trace out;
  out.rows.reserve(inputs.rows.size());
  std::vector<BitVector> regs = initial_regs();
  for (const auto& row : inputs.rows) {
    auto [y, next] = step(row, regs);
    out.rows.push_back(std::move(y));
    regs = std::move(next);
  }
  return out;
}

std::pair<std::vector<BitVector>, std::vector<BitVector>> netlist_step(
    const Netlist& n, const std::vector<BitVector>& inputs,
    const std::vector<BitVector>& regs) {
  return NetlistSim(n).step(inputs, regs);
}

// ---------------------------------------------------------------------------
// Verilog emission
// ---------------------------------------------------------------------------

static std::string sanitize_module_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out.insert(out.begin(), 'm');
  return out;
}

static std::string verilog_literal(const BitVector& v) {
  std::string hex = v.to_hex();  // "0x.."
  return std::to_string(v.width()) + "'h" + hex.substr(2);
}

std::string emit_verilog(const Netlist& n) {
  std::unordered_map<std::uint64_t, size_t> input_index;
  for (size_t i = 0; i < n.inputs.size(); ++i) input_index.emplace(n.inputs[i], i);
  std::unordered_map<std::uint64_t, unsigned> width;
  for (const Wire& w : n.wires) width.emplace(w.id, w.width);

  auto ref = [&](std::uint64_t w) -> std::string {
    auto it = input_index.find(w);
    if (it != input_index.end()) return "in_" + std::to_string(it->second);
    return "w" + std::to_string(w);
  };

  std::ostringstream os;
  os << "module " << sanitize_module_name(n.name) << " (\n";
  os << "  input wire clk,\n";
  os << "  input wire rst";
  for (size_t i = 0; i < n.inputs.size(); ++i)
    os << ",\n  input wire [" << width.at(n.inputs[i]) - 1 << ":0] in_" << i;
  for (size_t i = 0; i < n.outputs.size(); ++i)
    os << ",\n  output wire [" << width.at(n.outputs[i]) - 1 << ":0] out_" << i;
  os << "\n);\n\n";

  for (const Wire& w : n.wires)
    if (!input_index.count(w.id))
      os << "  wire [" << w.width - 1 << ":0] w" << w.id << ";\n";
  os << "\n";

  for (const Node& nd : n.nodes) {
    os << "  assign w" << nd.output << " = ";
    switch (nd.kind) {
      case NodeKind::Add: {
        unsigned wout = width.at(nd.output);
        unsigned pad = wout - width.at(nd.inputs[0]);
        os << "{" << pad << "'b0, " << ref(nd.inputs[0]) << "} + {" << pad
           << "'b0, " << ref(nd.inputs[1]) << "}";
        break;
      }
      case NodeKind::Concat:
        os << "{" << ref(nd.inputs[0]) << ", " << ref(nd.inputs[1]) << "}";
        break;
      case NodeKind::Slice:
        os << ref(nd.inputs[0]) << "[" << nd.params.upper - 1 << ":"
           << nd.params.lower << "]";
        break;
      case NodeKind::Eq:
        os << ref(nd.inputs[0]) << " == " << ref(nd.inputs[1]);
        break;
      case NodeKind::Mux21:
        os << ref(nd.inputs[0]) << " ? " << ref(nd.inputs[1]) << " : "
           << ref(nd.inputs[2]);
        break;
      case NodeKind::And:
        os << ref(nd.inputs[0]) << " & " << ref(nd.inputs[1]);
        break;
      case NodeKind::Or:
        os << ref(nd.inputs[0]) << " | " << ref(nd.inputs[1]);
        break;
      case NodeKind::Xor:
        os << ref(nd.inputs[0]) << " ^ " << ref(nd.inputs[1]);
        break;
      case NodeKind::Not:
        os << "~" << ref(nd.inputs[0]);
        break;
      case NodeKind::Const:
        os << verilog_literal(*nd.params.value);
        break;
    }
    os << ";\n";
  }

  for (const Assign& a : n.assigns)
    os << "  assign " << ref(a.dst) << " = " << ref(a.src) << ";\n";

  for (const Register& r : n.regs) {
    os << "\n  reg [" << r.width - 1 << ":0] r" << r.id << ";\n";
    os << "  always @(posedge clk) r" << r.id << " <= rst ? "
       << verilog_literal(r.init) << " : " << ref(r.d) << ";\n";
    os << "  assign " << ref(r.q) << " = r" << r.id << ";\n";
  }

  if (!n.outputs.empty()) os << "\n";
  for (size_t i = 0; i < n.outputs.size(); ++i)
    os << "  assign out_" << i << " = " << ref(n.outputs[i]) << ";\n";

  os << "\nendmodule\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON exchange
// ---------------------------------------------------------------------------

using ojson = nlohmann::ordered_json;

static ojson shape_json(const SignalShape& s) {
  return ojson::parse(shape_to_json(s));
}

static SignalShape shape_from_json(const ojson& j) {
  if (j.contains("unit")) return SignalShape::unit();
  if (j.contains("bits")) return SignalShape::bits(j.at("bits").get<unsigned>());
  if (j.contains("pair"))
    return SignalShape::pair(shape_from_json(j.at("pair").at(0)),
                             shape_from_json(j.at("pair").at(1)));
  raise(Err::ShapeError, "netlist json: malformed shape");
}

std::string emit_netlist_json(const Netlist& n) {
  std::unordered_map<std::uint64_t, unsigned> width;
  for (const Wire& w : n.wires) width.emplace(w.id, w.width);

  ojson j;
  j["name"] = n.name;
  j["inputs"] = ojson::array();
  for (std::uint64_t w : n.inputs)
    j["inputs"].push_back({{"wire", w}, {"width", width.at(w)}});
  j["outputs"] = ojson::array();
  for (std::uint64_t w : n.outputs)
    j["outputs"].push_back({{"wire", w}, {"width", width.at(w)}});
  j["wires"] = ojson::array();
  for (const Wire& w : n.wires)
    j["wires"].push_back({{"id", w.id}, {"width", w.width}});
  j["nodes"] = ojson::array();
  for (const Node& nd : n.nodes) {
    ojson params = ojson::object();
    if (nd.kind == NodeKind::Slice) {
      params["lower"] = nd.params.lower;
      params["upper"] = nd.params.upper;
    } else if (nd.kind == NodeKind::Const) {
      params["value"] = nd.params.value->to_hex();
    }
    j["nodes"].push_back({{"id", nd.id},
                          {"kind", std::string(node_kind_name(nd.kind))},
                          {"params", params},
                          {"inputs", nd.inputs},
                          {"output", nd.output}});
  }
  j["assigns"] = ojson::array();
  for (const Assign& a : n.assigns)
    j["assigns"].push_back({{"dst", a.dst}, {"src", a.src}});
  j["regs"] = ojson::array();
  for (const Register& r : n.regs)
    j["regs"].push_back({{"id", r.id},
                         {"width", r.width},
                         {"q", r.q},
                         {"d", r.d},
                         {"init", r.init.to_hex_minimal()}});
  j["in_shape"] = shape_json(n.in_shape);
  j["out_shape"] = shape_json(n.out_shape);
  return j.dump(2) + "\n";
}

Netlist parse_netlist_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    raise(Err::ShapeError, std::string("netlist json: ") + e.what());
  }
  try {
    Netlist n;
    n.name = j.at("name").get<std::string>();
    for (const auto& w : j.at("wires"))
      n.wires.push_back(Wire{w.at("id").get<std::uint64_t>(),
                             w.at("width").get<unsigned>()});
    std::unordered_map<std::uint64_t, unsigned> width;
    for (const Wire& w : n.wires) width.emplace(w.id, w.width);
    for (const auto& p : j.at("inputs"))
      n.inputs.push_back(p.at("wire").get<std::uint64_t>());
    for (const auto& p : j.at("outputs"))
      n.outputs.push_back(p.at("wire").get<std::uint64_t>());
    for (const auto& nd : j.at("nodes")) {
      Node node;
      node.id = nd.at("id").get<std::uint64_t>();
      auto kind = node_kind_from(nd.at("kind").get<std::string>());
      if (!kind) raise(Err::ShapeError, "netlist json: unknown node kind");
      node.kind = *kind;
      node.output = nd.at("output").get<std::uint64_t>();
      for (const auto& i : nd.at("inputs"))
        node.inputs.push_back(i.get<std::uint64_t>());
      const auto& params = nd.at("params");
      if (node.kind == NodeKind::Slice) {
        node.params.lower = params.at("lower").get<unsigned>();
        node.params.upper = params.at("upper").get<unsigned>();
      } else if (node.kind == NodeKind::Const) {
        auto v = bv_parse_hex(params.at("value").get<std::string>(),
                              width.at(node.output));
        if (!v) raise(Err::ShapeError, "netlist json: bad const value");
        node.params.value = *v;
      }
      n.nodes.push_back(std::move(node));
    }
    for (const auto& a : j.at("assigns"))
      n.assigns.push_back(Assign{a.at("dst").get<std::uint64_t>(),
                                 a.at("src").get<std::uint64_t>()});
    for (const auto& r : j.at("regs")) {
      unsigned w = r.at("width").get<unsigned>();
      auto init = bv_parse_hex(r.at("init").get<std::string>(), w);
      if (!init) raise(Err::ShapeError, "netlist json: bad register init");
      n.regs.push_back(Register{r.at("id").get<std::uint64_t>(), w,
                                r.at("q").get<std::uint64_t>(),
                                r.at("d").get<std::uint64_t>(), *init});
    }
    n.in_shape = shape_from_json(j.at("in_shape"));
    n.out_shape = shape_from_json(j.at("out_shape"));
    return n;
  } catch (const DslError&) {
    throw;
  } catch (const std::exception& e) {
    raise(Err::ShapeError, std::string("netlist json: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Canonical relabeling
// ---------------------------------------------------------------------------

std::uint64_t resolve_alias(const Netlist& n, std::uint64_t wire) {
  std::unordered_map<std::uint64_t, std::uint64_t> alias;
  for (const Assign& a : n.assigns) alias.emplace(a.dst, a.src);
  size_t guard = n.assigns.size() + 1;
  while (guard-- > 0) {
    auto it = alias.find(wire);
    if (it == alias.end()) return wire;
    wire = it->second;
  }
  raise(Err::ShapeError, "alias cycle while resolving wire");
}

Netlist canonical_netlist(const Netlist& n) {
  std::map<std::uint64_t, std::uint64_t> canon;
  std::uint64_t next = 0;
  auto assign_canon = [&](std::uint64_t old) {
    canon.emplace(old, next);
    ++next;
  };

  for (std::uint64_t w : n.inputs)
    if (!canon.count(w)) assign_canon(w);

  // Registers ordered by (width, init, original position); Q pins become
  // sources before any element is scheduled.
  std::vector<size_t> reg_order(n.regs.size());
  for (size_t i = 0; i < reg_order.size(); ++i) reg_order[i] = i;
  std::stable_sort(reg_order.begin(), reg_order.end(), [&](size_t a, size_t b) {
    const Register& ra = n.regs[a];
    const Register& rb = n.regs[b];
    if (ra.width != rb.width) return ra.width < rb.width;
    return ra.init.value() < rb.init.value();
  });
  for (size_t i : reg_order) {
    assign_canon(n.regs[i].id);
    assign_canon(n.regs[i].q);
  }

  // Topological scheduling with a deterministic key: elements become ready
  // when every input wire is canonized; among ready elements the smallest
  // (kind, params, canonized inputs, original position) goes first.
  size_t total = n.nodes.size() + n.assigns.size();
  std::vector<bool> done(total, false);
  size_t remaining = total;
  while (remaining > 0) {
    long best = -1;
    std::pair<std::string, std::vector<std::uint64_t>> best_key;
    for (size_t i = 0; i < total; ++i) {
      if (done[i]) continue;
      std::pair<std::string, std::vector<std::uint64_t>> key;
      bool ok = true;
      if (i < n.nodes.size()) {
        const Node& nd = n.nodes[i];
        std::string desc = std::string(node_kind_name(nd.kind));
        if (nd.kind == NodeKind::Slice)
          desc += "[" + std::to_string(nd.params.lower) + "," +
                  std::to_string(nd.params.upper) + ")";
        if (nd.kind == NodeKind::Const) desc += "=" + nd.params.value->to_hex();
        key.first = "0:" + desc;
        for (std::uint64_t w : nd.inputs) {
          auto it = canon.find(w);
          if (it == canon.end()) { ok = false; break; }
          key.second.push_back(it->second);
        }
      } else {
        const Assign& a = n.assigns[i - n.nodes.size()];
        auto it = canon.find(a.src);
        if (it == canon.end()) ok = false;
        else {
          key.first = "1:ASSIGN";
          key.second.push_back(it->second);
        }
      }
      if (!ok) continue;
      if (best < 0 || key < best_key) {
        best = static_cast<long>(i);
        best_key = std::move(key);
      }
    }
    if (best < 0)
      raise(Err::ShapeError, "cannot canonicalize a cyclic netlist");
    done[static_cast<size_t>(best)] = true;
    --remaining;
    if (static_cast<size_t>(best) < n.nodes.size()) {
      const Node& nd = n.nodes[static_cast<size_t>(best)];
      assign_canon(nd.id);
      if (!canon.count(nd.output)) assign_canon(nd.output);
    } else {
      const Assign& a = n.assigns[static_cast<size_t>(best) - n.nodes.size()];
      if (!canon.count(a.dst)) assign_canon(a.dst);
    }
  }

  // Any wires still unlabeled (unused and undriven) come last, by width.
  std::vector<size_t> rest;
  for (size_t i = 0; i < n.wires.size(); ++i)
    if (!canon.count(n.wires[i].id)) rest.push_back(i);
  std::stable_sort(rest.begin(), rest.end(), [&](size_t a, size_t b) {
    return n.wires[a].width < n.wires[b].width;
  });
  for (size_t i : rest) assign_canon(n.wires[i].id);

  auto re = [&](std::uint64_t w) { return canon.at(w); };

  Netlist out;
  out.name = n.name;
  out.in_shape = n.in_shape;
  out.out_shape = n.out_shape;
  for (std::uint64_t w : n.inputs) out.inputs.push_back(re(w));
  for (std::uint64_t w : n.outputs) out.outputs.push_back(re(w));
  for (const Wire& w : n.wires) out.wires.push_back(Wire{re(w.id), w.width});
  for (const Node& nd : n.nodes) {
    Node m = nd;
    m.id = re(nd.id);
    m.output = re(nd.output);
    m.inputs.clear();
    for (std::uint64_t w : nd.inputs) m.inputs.push_back(re(w));
    out.nodes.push_back(std::move(m));
  }
  for (const Assign& a : n.assigns)
    out.assigns.push_back(Assign{re(a.dst), re(a.src)});
  for (const Register& r : n.regs)
    out.regs.push_back(Register{re(r.id), r.width, re(r.q), re(r.d), r.init});

  std::sort(out.wires.begin(), out.wires.end(),
            [](const Wire& a, const Wire& b) { return a.id < b.id; });
  std::sort(out.nodes.begin(), out.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  std::sort(out.assigns.begin(), out.assigns.end(),
            [](const Assign& a, const Assign& b) {
              return a.dst != b.dst ? a.dst < b.dst : a.src < b.src;
            });
  std::sort(out.regs.begin(), out.regs.end(),
            [](const Register& a, const Register& b) { return a.id < b.id; });
  return out;
}

bool netlist_isomorphic(const Netlist& a, const Netlist& b) {
  Netlist ca = canonical_netlist(a);
  Netlist cb = canonical_netlist(b);
  ca.name.clear();
  cb.name.clear();
  return ca == cb;
}

}  // namespace syndsl
