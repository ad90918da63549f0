#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syndsl/core.hpp"
#include "syndsl/trace.hpp"

namespace syndsl {

// ---------------------------------------------------------------------------
// The typed netlist IR. Labels for wires, nodes, and registers come from one
// per-elaboration counter, so the id multiset is duplicate-free.
// ---------------------------------------------------------------------------

enum class NodeKind { Add, Concat, Slice, Eq, Mux21, And, Or, Xor, Not, Const };

std::string_view node_kind_name(NodeKind k);
std::optional<NodeKind> node_kind_from(const std::string& name);

struct Wire {
  std::uint64_t id;
  unsigned width;
  bool operator==(const Wire&) const = default;
};

struct NodeParams {
  unsigned lower = 0;  // Slice
  unsigned upper = 0;  // Slice
  std::optional<BitVector> value;  // Const
  bool operator==(const NodeParams&) const = default;
};

struct Node {
  std::uint64_t id;
  NodeKind kind;
  NodeParams params;
  std::vector<std::uint64_t> inputs;
  std::uint64_t output;
  bool operator==(const Node&) const = default;
};

// Wire-to-wire alias; glue components lower to these.
struct Assign {
  std::uint64_t dst;
  std::uint64_t src;
  bool operator==(const Assign&) const = default;
};

struct Register {
  std::uint64_t id;
  unsigned width;
  std::uint64_t q;  // output wire, driven only by this register
  std::uint64_t d;  // input wire, driven exactly once
  BitVector init;
  bool operator==(const Register&) const = default;
};

struct Netlist {
  std::string name;
  SignalShape in_shape = SignalShape::unit();
  SignalShape out_shape = SignalShape::unit();
  std::vector<std::uint64_t> inputs;   // port wires in flatten order
  std::vector<std::uint64_t> outputs;  // port wires in flatten order
  std::vector<Wire> wires;
  std::vector<Node> nodes;
  std::vector<Assign> assigns;
  std::vector<Register> regs;

  bool operator==(const Netlist&) const = default;
};

// ---------------------------------------------------------------------------
// Well-formedness checking (report-based, never throws).
// ---------------------------------------------------------------------------

enum class ViolationKind {
  MultipleDrivers,
  UndrivenWire,
  CombinationalCycle,
  DuplicateLabel,
};

std::string_view violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    for (const auto& v : violations)
      if (v.kind == k) return true;
    return false;
  }
};

ValidationReport validate_netlist(const Netlist& n);

// ---------------------------------------------------------------------------
// Cycle-accurate netlist simulation. The schedule is topological over nodes
// and assigns, with input ports and register Q pins as sources.
// ---------------------------------------------------------------------------

class NetlistSim {
 public:
  explicit NetlistSim(const Netlist& n);

  std::vector<BitVector> initial_regs() const;

  // One reaction: returns (outputs, next register values).
  std::pair<std::vector<BitVector>, std::vector<BitVector>> step(
      const std::vector<BitVector>& inputs,
      const std::vector<BitVector>& regs) const;

  Trace run(const Trace& inputs) const;

 private:
  const Netlist& n_;
  std::vector<unsigned> schedule_;  // indices: node k -> k, assign k -> nodes+k
};

// Convenience single-step form.
std::pair<std::vector<BitVector>, std::vector<BitVector>> netlist_step(
    const Netlist& n, const std::vector<BitVector>& inputs,
    const std::vector<BitVector>& regs);

// ---------------------------------------------------------------------------
// Emission and exchange formats.
// ---------------------------------------------------------------------------

std::string emit_verilog(const Netlist& n);
std::string emit_netlist_json(const Netlist& n);
Netlist parse_netlist_json(const std::string& text);

// Canonical relabeling: inputs first, then registers by (width, init,
// original order), then nodes/assigns in topological order keyed by
// (kind, params, input arrival order). Structural comparison ignores names.
Netlist canonical_netlist(const Netlist& n);
bool netlist_isomorphic(const Netlist& a, const Netlist& b);

// Follows assign aliases from `wire` back to its driving wire.
std::uint64_t resolve_alias(const Netlist& n, std::uint64_t wire);

// ---------------------------------------------------------------------------
// The elaborating interpreter. Combinational terms are re-runnable port
// generators (each use instantiates fresh structure; placeholder signals fan
// out instead). Sequential terms elaborate exactly once, in composition
// order, which is also the state-threading order of the evaluator.
// ---------------------------------------------------------------------------

class NetlistBackend {
 public:
  struct NetCtx {
    std::uint64_t next_label = 0;
    std::vector<Wire> wires;
    std::vector<Node> nodes;
    std::vector<Assign> assigns;
    std::vector<Register> regs;

    std::uint64_t fresh() { return next_label++; }
    std::uint64_t wire(unsigned width) {
      std::uint64_t id = fresh();
      wires.push_back(Wire{id, width});
      return id;
    }
    std::vector<std::uint64_t> alloc_wires(const std::vector<unsigned>& ws) {
      std::vector<std::uint64_t> out;
      out.reserve(ws.size());
      for (unsigned w : ws) out.push_back(wire(w));
      return out;
    }
    void connect(const std::vector<std::uint64_t>& dst,
                 const std::vector<std::uint64_t>& src) {
      if (dst.size() != src.size())
        raise(Err::ShapeError, "internal: port arity mismatch in connect");
      for (size_t i = 0; i < dst.size(); ++i)
        assigns.push_back(Assign{dst[i], src[i]});
    }
    // Allocates the output wire and the node; returns the output wire.
    std::uint64_t node(NodeKind kind, NodeParams params,
                       std::vector<std::uint64_t> ins, unsigned out_width) {
      std::uint64_t nid = fresh();
      std::uint64_t ow = wire(out_width);
      nodes.push_back(Node{nid, kind, std::move(params), std::move(ins), ow});
      return ow;
    }
  };

  struct Ports {
    std::vector<std::uint64_t> in;
    std::vector<std::uint64_t> out;
  };

  using GenFn = std::function<Ports(NetCtx&)>;

  struct Comb {
    CombMeta meta;
    GenFn gen;
  };

  struct Seq {
    SeqMeta meta;
    unique_function<Ports(NetCtx&)> gen;

    Seq() = default;
    Seq(SeqMeta m, unique_function<Ports(NetCtx&)> g)
        : meta(std::move(m)), gen(std::move(g)) {}
    Seq(const Seq&) = delete;
    Seq& operator=(const Seq&) = delete;
    Seq(Seq&&) = default;
    Seq& operator=(Seq&&) = default;
  };

  struct RegLeaf {
    std::uint64_t q;
    std::uint64_t d;
    bool set_elaborated = false;
  };

  struct RegHandle {
    RegRecordPtr rec;
    std::shared_ptr<std::vector<RegLeaf>> leaves;

    RegHandle(RegRecordPtr r, std::shared_ptr<std::vector<RegLeaf>> l)
        : rec(std::move(r)), leaves(std::move(l)) {}
    RegHandle(const RegHandle&) = delete;
    RegHandle& operator=(const RegHandle&) = delete;
    RegHandle(RegHandle&&) = default;
    RegHandle& operator=(RegHandle&&) = default;
  };

  struct Validated {
    std::string name;
    StateShape state = StateShape::unit();
    SignalShape in = SignalShape::unit();
    SignalShape out = SignalShape::unit();
    Netlist netlist;
  };

  BuildContext& ctx() { return ctx_; }

  // -- combinational layer --------------------------------------------------

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    ScopedSite site(ctx_, "lam");
    // Shape probe: runs the body once against an inert placeholder. Nothing
    // is elaborated, so this only validates shapes.
    Comb probe{CombMeta{SignalShape::unit(), a}, [](NetCtx&) -> Ports {
                 raise(Err::ShapeError,
                       "shape probe placeholder cannot be elaborated");
               }};
    Comb probed = body(probe);
    rules::lam_body_result(ctx_, probed.meta, b);
    std::vector<unsigned> in_widths = flatten(a);
    return Comb{rules::lam(ctx_, a, b),
                [a, in_widths, body](NetCtx& c) -> Ports {
                  std::vector<std::uint64_t> in = c.alloc_wires(in_widths);
                  Comb ph{CombMeta{SignalShape::unit(), a},
                          [in](NetCtx&) { return Ports{{}, in}; }};
                  Ports bp = body(ph).gen(c);
                  return Ports{in, bp.out};
                }};
  }

  Comb app(const Comb& f, const Comb& x) {
    CombMeta m = rules::app(ctx_, f.meta, x.meta);
    GenFn fg = f.gen, xg = x.gen;
    return Comb{m, [fg, xg](NetCtx& c) -> Ports {
                  Ports xp = xg(c);
                  Ports fp = fg(c);
                  c.connect(fp.in, xp.out);
                  return Ports{{}, fp.out};
                }};
  }

  Comb prod(const Comb& x, const Comb& y) {
    CombMeta m = rules::prod(ctx_, x.meta, y.meta);
    GenFn xg = x.gen, yg = y.gen;
    return Comb{m, [xg, yg](NetCtx& c) -> Ports {
                  Ports xp = xg(c);
                  Ports yp = yg(c);
                  std::vector<std::uint64_t> out = xp.out;
                  out.insert(out.end(), yp.out.begin(), yp.out.end());
                  return Ports{{}, std::move(out)};
                }};
  }

  Comb proj1(const Comb& p) {
    CombMeta m = rules::proj1(ctx_, p.meta);
    size_t keep = flatten(m.out).size();
    GenFn pg = p.gen;
    return Comb{m, [pg, keep](NetCtx& c) -> Ports {
                  Ports pp = pg(c);
                  pp.out.resize(keep);
                  return Ports{{}, std::move(pp.out)};
                }};
  }

  Comb proj2(const Comb& p) {
    CombMeta m = rules::proj2(ctx_, p.meta);
    size_t drop = flatten(p.meta.out.left()).size();
    GenFn pg = p.gen;
    return Comb{m, [pg, drop](NetCtx& c) -> Ports {
                  Ports pp = pg(c);
                  pp.out.erase(pp.out.begin(),
                               pp.out.begin() + static_cast<long>(drop));
                  return Ports{{}, std::move(pp.out)};
                }};
  }

  Comb unit() {
    return Comb{rules::unit_term(), [](NetCtx&) { return Ports{}; }};
  }

  Comb constant(const BitVector& v) {
    return Comb{rules::constant(v), [v](NetCtx& c) -> Ports {
                  std::uint64_t w = c.node(
                      NodeKind::Const, NodeParams{0, 0, v}, {}, v.width());
                  return Ports{{}, {w}};
                }};
  }

  Comb add(const Comb& x, const Comb& y) {
    return scalar2(rules::add(ctx_, x.meta, y.meta), NodeKind::Add, x, y);
  }

  Comb concat(const Comb& x, const Comb& y) {
    return scalar2(rules::concat(ctx_, x.meta, y.meta), NodeKind::Concat, x, y);
  }

  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    CombMeta m = rules::slice(ctx_, lower, upper, x.meta);
    unsigned w = m.out.width();
    GenFn xg = x.gen;
    return Comb{m, [xg, lower, upper, w](NetCtx& c) -> Ports {
                  Ports xp = xg(c);
                  std::uint64_t o = c.node(NodeKind::Slice,
                                           NodeParams{lower, upper, {}},
                                           {xp.out[0]}, w);
                  return Ports{{}, {o}};
                }};
  }

  Comb eq(const Comb& x, const Comb& y) {
    return scalar2(rules::eq(ctx_, x.meta, y.meta), NodeKind::Eq, x, y);
  }

  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    CombMeta m = rules::mux21(ctx_, sel.meta, a.meta, b.meta);
    unsigned w = m.out.width();
    GenFn sg = sel.gen, ag = a.gen, bg = b.gen;
    return Comb{m, [sg, ag, bg, w](NetCtx& c) -> Ports {
                  Ports sp = sg(c);
                  Ports ap = ag(c);
                  Ports bp = bg(c);
                  std::uint64_t o =
                      c.node(NodeKind::Mux21, NodeParams{},
                             {sp.out[0], ap.out[0], bp.out[0]}, w);
                  return Ports{{}, {o}};
                }};
  }

  Comb logic(LogicKind kind, const Comb& x) {
    CombMeta m = rules::logic(ctx_, kind, x.meta, nullptr);
    unsigned w = m.out.width();
    GenFn xg = x.gen;
    return Comb{m, [xg, w](NetCtx& c) -> Ports {
                  Ports xp = xg(c);
                  std::uint64_t o =
                      c.node(NodeKind::Not, NodeParams{}, {xp.out[0]}, w);
                  return Ports{{}, {o}};
                }};
  }

  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    CombMeta m = rules::logic(ctx_, kind, x.meta, &y.meta);
    NodeKind nk = kind == LogicKind::And  ? NodeKind::And
                  : kind == LogicKind::Or ? NodeKind::Or
                                          : NodeKind::Xor;
    return scalar2(std::move(m), nk, x, y);
  }

  // -- sequential layer ------------------------------------------------------

  Seq abst(const SignalShape& a, unique_function<Seq(const Comb&)> body) {
    ScopedSite site(ctx_, "abst");
    std::vector<std::uint64_t> in = net_.alloc_wires(flatten(a));
    Comb ph{CombMeta{SignalShape::unit(), a},
            [in](NetCtx&) { return Ports{{}, in}; }};
    Seq inner = body(ph);
    SeqMeta m = rules::abst(ctx_, a, std::move(inner.meta));
    return Seq{std::move(m),
               [in, ig = std::move(inner.gen)](NetCtx& c) mutable -> Ports {
                 Ports ip = ig(c);
                 return Ports{in, ip.out};
               }};
  }

  Seq pure(const Comb& c, const StateShape& s) {
    SeqMeta m = rules::pure(ctx_, c.meta, s);
    GenFn cg = c.gen;
    return Seq{std::move(m), [cg](NetCtx& ctx) { return cg(ctx); }};
  }

  Seq compose_shared(Seq&& g, Seq&& f) {
    SeqMeta m =
        rules::compose_shared(ctx_, std::move(g.meta), std::move(f.meta));
    return Seq{std::move(m), chain(std::move(f.gen), std::move(g.gen))};
  }

  Seq compose_stacked(Seq&& g, Seq&& f) {
    SeqMeta m =
        rules::compose_stacked(ctx_, std::move(g.meta), std::move(f.meta));
    return Seq{std::move(m), chain(std::move(f.gen), std::move(g.gen))};
  }

  RegHandle reg_alloc(const StateShape& shape, const StateValue& init) {
    RegRecordPtr rec = ctx_.alloc_register(shape, init);
    auto leaves = std::make_shared<std::vector<RegLeaf>>();
    std::vector<BitVector> inits = init.flat();
    std::vector<unsigned> widths = flatten(shape);
    for (size_t i = 0; i < widths.size(); ++i) {
      std::uint64_t rid = net_.fresh();
      std::uint64_t q = net_.wire(widths[i]);
      std::uint64_t d = net_.wire(widths[i]);
      net_.regs.push_back(Register{rid, widths[i], q, d, inits[i]});
      leaves->push_back(RegLeaf{q, d, false});
    }
    return RegHandle{std::move(rec), std::move(leaves)};
  }

  Seq reg_get(RegHandle& r, const SignalShape& a) {
    SeqMeta m = rules::reg_get(ctx_, *r.rec, a);
    auto leaves = r.leaves;
    return Seq{std::move(m), [leaves](NetCtx&) -> Ports {
                 std::vector<std::uint64_t> out;
                 out.reserve(leaves->size());
                 // A get elaborated after the register's set observes the
                 // value written in the same reaction, matching the
                 // state-threading order of the evaluator.
                 for (const RegLeaf& l : *leaves)
                   out.push_back(l.set_elaborated ? l.d : l.q);
                 return Ports{{}, std::move(out)};
               }};
  }

  Seq reg_set(RegHandle& r, const Comb& v) {
    SeqMeta m = rules::reg_set(ctx_, *r.rec, v.meta);
    auto leaves = r.leaves;
    GenFn vg = v.gen;
    return Seq{std::move(m), [leaves, vg](NetCtx& c) -> Ports {
                 Ports vp = vg(c);
                 for (size_t i = 0; i < leaves->size(); ++i) {
                   c.assigns.push_back(Assign{(*leaves)[i].d, vp.out[i]});
                   (*leaves)[i].set_elaborated = true;
                 }
                 return Ports{};
               }};
  }

  Validated finalize(Design<Seq>&& d) {
    if (finalized_)
      raise(Err::ShapeError,
            "netlist backend already elaborated a design; use a fresh backend");
    rules::finalize_audit(ctx_, d.top.meta);
    Ports p = d.top.gen(net_);
    finalized_ = true;
    Validated v;
    v.name = d.name;
    v.state = d.top.meta.state;
    v.in = d.top.meta.in;
    v.out = d.top.meta.out;
    v.netlist.name = std::move(d.name);
    v.netlist.in_shape = v.in;
    v.netlist.out_shape = v.out;
    v.netlist.inputs = std::move(p.in);
    v.netlist.outputs = std::move(p.out);
    v.netlist.wires = std::move(net_.wires);
    v.netlist.nodes = std::move(net_.nodes);
    v.netlist.assigns = std::move(net_.assigns);
    v.netlist.regs = std::move(net_.regs);
    return v;
  }

 private:
  Comb scalar2(CombMeta m, NodeKind kind, const Comb& x, const Comb& y) {
    unsigned w = m.out.width();
    GenFn xg = x.gen, yg = y.gen;
    return Comb{std::move(m), [kind, xg, yg, w](NetCtx& c) -> Ports {
                  Ports xp = xg(c);
                  Ports yp = yg(c);
                  std::uint64_t o = c.node(kind, NodeParams{},
                                           {xp.out[0], yp.out[0]}, w);
                  return Ports{{}, {o}};
                }};
  }

  static unique_function<Ports(NetCtx&)> chain(
      unique_function<Ports(NetCtx&)> fg, unique_function<Ports(NetCtx&)> gg) {
    return [fg = std::move(fg), gg = std::move(gg)](NetCtx& c) mutable {
      Ports fp = fg(c);
      Ports gp = gg(c);
      c.connect(gp.in, fp.out);
      return Ports{std::move(fp.in), std::move(gp.out)};
    };
  }

  BuildContext ctx_;
  NetCtx net_;
  bool finalized_ = false;
};

static_assert(Builder<NetlistBackend>);

inline const Netlist& build_netlist(const NetlistBackend::Validated& v) {
  return v.netlist;
}

}  // namespace syndsl
