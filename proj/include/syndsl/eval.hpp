#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "syndsl/core.hpp"
#include "syndsl/trace.hpp"

namespace syndsl {

// Immutable binder environment threaded through evaluation. lam/abst bind
// their placeholder id at application time, so evaluated terms stay pure and
// reentrant.
class Env {
 public:
  Env() = default;

  Env push(std::int64_t id, SignalValue v) const {
    auto n = std::make_shared<const Node>(Node{id, std::move(v), head_});
    Env e;
    e.head_ = std::move(n);
    return e;
  }

  const SignalValue& lookup(std::int64_t id) const {
    for (const Node* n = head_.get(); n != nullptr; n = n->next.get())
      if (n->id == id) return n->val;
    raise(Err::ShapeError,
          "signal placeholder evaluated outside its binder");
  }

 private:
  struct Node {
    std::int64_t id;
    SignalValue val;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

// ---------------------------------------------------------------------------
// The interpreter to host functions: combinational terms evaluate to pure
// functions on signal values, sequential terms to state-transition steps.
// ---------------------------------------------------------------------------

class EvalBackend {
 public:
  using CombFn = std::function<SignalValue(const SignalValue&, const Env&)>;
  using StepFn = std::function<std::pair<SignalValue, StateValue>(
      const SignalValue&, const StateValue&, const Env&)>;

  struct Comb {
    CombMeta meta;
    CombFn fn;
  };

  struct Seq {
    SeqMeta meta;
    StepFn step;

    Seq() = default;
    Seq(SeqMeta m, StepFn s) : meta(std::move(m)), step(std::move(s)) {}
    Seq(const Seq&) = delete;
    Seq& operator=(const Seq&) = delete;
    Seq(Seq&&) = default;
    Seq& operator=(Seq&&) = default;
  };

  struct RegHandle {
    RegRecordPtr rec;
    explicit RegHandle(RegRecordPtr r) : rec(std::move(r)) {}
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
    StateValue init = StateValue::unit();
    std::function<std::pair<SignalValue, StateValue>(const SignalValue&,
                                                     const StateValue&)>
        step;
  };

  BuildContext& ctx() { return ctx_; }

  // -- combinational layer --------------------------------------------------

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    ScopedSite site(ctx_, "lam");
    std::int64_t id = ctx_.fresh_id();
    Comb placeholder{CombMeta{SignalShape::unit(), a},
                     [id](const SignalValue&, const Env& env) {
                       return env.lookup(id);
                     }};
    Comb r = body(placeholder);
    rules::lam_body_result(ctx_, r.meta, b);
    CombFn rf = r.fn;
    return Comb{rules::lam(ctx_, a, b),
                [id, rf](const SignalValue& x, const Env& env) {
                  return rf(SignalValue::unit(), env.push(id, x));
                }};
  }

  Comb app(const Comb& f, const Comb& x) {
    CombMeta m = rules::app(ctx_, f.meta, x.meta);
    CombFn ff = f.fn, xf = x.fn;
    return Comb{m, [ff, xf](const SignalValue&, const Env& env) {
                  return ff(xf(SignalValue::unit(), env), env);
                }};
  }

  Comb prod(const Comb& x, const Comb& y) {
    CombMeta m = rules::prod(ctx_, x.meta, y.meta);
    CombFn xf = x.fn, yf = y.fn;
    return Comb{m, [xf, yf](const SignalValue&, const Env& env) {
                  return SignalValue::pair(xf(SignalValue::unit(), env),
                                           yf(SignalValue::unit(), env));
                }};
  }

  Comb proj1(const Comb& p) {
    CombMeta m = rules::proj1(ctx_, p.meta);
    CombFn pf = p.fn;
    return Comb{m, [pf](const SignalValue&, const Env& env) {
                  return pf(SignalValue::unit(), env).left();
                }};
  }

  Comb proj2(const Comb& p) {
    CombMeta m = rules::proj2(ctx_, p.meta);
    CombFn pf = p.fn;
    return Comb{m, [pf](const SignalValue&, const Env& env) {
                  return pf(SignalValue::unit(), env).right();
                }};
  }

  Comb unit() {
    return Comb{rules::unit_term(), [](const SignalValue&, const Env&) {
                  return SignalValue::unit();
                }};
  }

  Comb constant(const BitVector& v) {
    return Comb{rules::constant(v), [v](const SignalValue&, const Env&) {
                  return SignalValue::bits(v);
                }};
  }

  Comb add(const Comb& x, const Comb& y) {
    return binary(rules::add(ctx_, x.meta, y.meta), x, y, bv_add);
  }

  Comb concat(const Comb& x, const Comb& y) {
    return binary(rules::concat(ctx_, x.meta, y.meta), x, y, bv_concat);
  }

  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    CombMeta m = rules::slice(ctx_, lower, upper, x.meta);
    CombFn xf = x.fn;
    return Comb{m, [lower, upper, xf](const SignalValue&, const Env& env) {
                  return SignalValue::bits(
                      bv_slice(lower, upper,
                               xf(SignalValue::unit(), env).scalar()));
                }};
  }

  Comb eq(const Comb& x, const Comb& y) {
    return binary(rules::eq(ctx_, x.meta, y.meta), x, y, bv_eq);
  }

  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    CombMeta m = rules::mux21(ctx_, sel.meta, a.meta, b.meta);
    CombFn sf = sel.fn, af = a.fn, bf = b.fn;
    return Comb{m, [sf, af, bf](const SignalValue&, const Env& env) {
                  return SignalValue::bits(
                      bv_mux21(sf(SignalValue::unit(), env).scalar(),
                               af(SignalValue::unit(), env).scalar(),
                               bf(SignalValue::unit(), env).scalar()));
                }};
  }

  Comb logic(LogicKind kind, const Comb& x) {
    CombMeta m = rules::logic(ctx_, kind, x.meta, nullptr);
    CombFn xf = x.fn;
    return Comb{m, [kind, xf](const SignalValue&, const Env& env) {
                  return SignalValue::bits(
                      bv_logic(kind, xf(SignalValue::unit(), env).scalar()));
                }};
  }

  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    CombMeta m = rules::logic(ctx_, kind, x.meta, &y.meta);
    CombFn xf = x.fn, yf = y.fn;
    return Comb{m, [kind, xf, yf](const SignalValue&, const Env& env) {
                  return SignalValue::bits(
                      bv_logic(kind, xf(SignalValue::unit(), env).scalar(),
                               yf(SignalValue::unit(), env).scalar()));
                }};
  }

  // -- sequential layer ------------------------------------------------------

  Seq abst(const SignalShape& a, unique_function<Seq(const Comb&)> body) {
    ScopedSite site(ctx_, "abst");
    std::int64_t id = ctx_.fresh_id();
    Comb placeholder{CombMeta{SignalShape::unit(), a},
                     [id](const SignalValue&, const Env& env) {
                       return env.lookup(id);
                     }};
    Seq inner = body(placeholder);
    SeqMeta m = rules::abst(ctx_, a, std::move(inner.meta));
    StepFn is = std::move(inner.step);
    return Seq{std::move(m),
               [id, is](const SignalValue& x, const StateValue& st,
                        const Env& env) {
                 return is(SignalValue::unit(), st, env.push(id, x));
               }};
  }

  Seq pure(const Comb& c, const StateShape& s) {
    SeqMeta m = rules::pure(ctx_, c.meta, s);
    CombFn cf = c.fn;
    return Seq{std::move(m),
               [cf](const SignalValue& x, const StateValue& st, const Env& env) {
                 return std::make_pair(cf(x, env), st);
               }};
  }

  Seq compose_shared(Seq&& g, Seq&& f) {
    SeqMeta m =
        rules::compose_shared(ctx_, std::move(g.meta), std::move(f.meta));
    StepFn fs = std::move(f.step), gs = std::move(g.step);
    return Seq{std::move(m),
               [fs, gs](const SignalValue& x, const StateValue& st,
                        const Env& env) {
                 auto [y, st1] = fs(x, st, env);
                 return gs(y, st1, env);
               }};
  }

  Seq compose_stacked(Seq&& g, Seq&& f) {
    SeqMeta m =
        rules::compose_stacked(ctx_, std::move(g.meta), std::move(f.meta));
    StepFn fs = std::move(f.step), gs = std::move(g.step);
    return Seq{std::move(m),
               [fs, gs](const SignalValue& x, const StateValue& st,
                        const Env& env) {
                 auto [y, st1] = fs(x, st.left(), env);
                 auto [z, st2] = gs(y, st.right(), env);
                 return std::make_pair(
                     z, StateValue::pair(std::move(st1), std::move(st2)));
               }};
  }

  RegHandle reg_alloc(const StateShape& shape, const StateValue& init) {
    return RegHandle{ctx_.alloc_register(shape, init)};
  }

  Seq reg_get(RegHandle& r, const SignalShape& a) {
    SeqMeta m = rules::reg_get(ctx_, *r.rec, a);
    return Seq{std::move(m),
               [](const SignalValue&, const StateValue& st, const Env&) {
                 return std::make_pair(st.as_signal(), st);
               }};
  }

  Seq reg_set(RegHandle& r, const Comb& v) {
    SeqMeta m = rules::reg_set(ctx_, *r.rec, v.meta);
    CombFn vf = v.fn;
    return Seq{std::move(m),
               [vf](const SignalValue&, const StateValue& st, const Env& env) {
                 (void)st;
                 return std::make_pair(
                     SignalValue::unit(),
                     StateValue::from_signal(vf(SignalValue::unit(), env)));
               }};
  }

  Validated finalize(Design<Seq>&& d) {
    rules::finalize_audit(ctx_, d.top.meta);
    Validated v;
    v.name = std::move(d.name);
    v.state = d.top.meta.state;
    v.in = d.top.meta.in;
    v.out = d.top.meta.out;
    v.init = initial_state(d.top.meta);
    StepFn step = std::move(d.top.step);
    v.step = [step](const SignalValue& x, const StateValue& st) {
      return step(x, st, Env{});
    };
    return v;
  }

 private:
  static Comb binary(CombMeta m, const Comb& x, const Comb& y,
                     BitVector (*op)(const BitVector&, const BitVector&)) {
    CombFn xf = x.fn, yf = y.fn;
    return Comb{std::move(m), [op, xf, yf](const SignalValue&, const Env& env) {
                  return SignalValue::bits(
                      op(xf(SignalValue::unit(), env).scalar(),
                         yf(SignalValue::unit(), env).scalar()));
                }};
  }

  StateValue initial_state(const SeqMeta& top) {
    // Per-register cursors over the flattened init values; binding leaves
    // name each state leaf's register in flatten order.
    std::map<std::int64_t, std::pair<std::vector<BitVector>, size_t>> inits;
    for (const auto& rec : ctx_.registers())
      inits.emplace(rec->resource_id,
                    std::make_pair(rec->init.flat(), size_t{0}));
    size_t cursor = 0;
    return init_walk(top.state, top.binding, cursor, inits);
  }

  static StateValue init_walk(
      const StateShape& s, const StateBinding& binding, size_t& cursor,
      std::map<std::int64_t, std::pair<std::vector<BitVector>, size_t>>&
          inits) {
    switch (s.tag()) {
      case ShapeTag::Unit:
        return StateValue::unit();
      case ShapeTag::Leaf: {
        auto& [leaves, pos] = inits.at(binding.leaves.at(cursor++));
        return StateValue::reg(leaves.at(pos++));
      }
      case ShapeTag::Pair: {
        StateValue l = init_walk(s.left(), binding, cursor, inits);
        StateValue r = init_walk(s.right(), binding, cursor, inits);
        return StateValue::pair(std::move(l), std::move(r));
      }
    }
    raise(Err::ShapeError, "corrupt state shape");
  }

  BuildContext ctx_;
};

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

// Combinational terms interpret to pure functions on signal values.
inline std::function<SignalValue(const SignalValue&)> eval_comb(
    const EvalBackend::Comb& t) {
  auto fn = t.fn;
  return [fn](const SignalValue& x) { return fn(x, Env{}); };
}

using StepFunction = std::function<std::pair<SignalValue, StateValue>(
    const SignalValue&, const StateValue&)>;

inline StepFunction step_seq(const EvalBackend::Validated& d) {
  return d.step;
}

static_assert(Builder<EvalBackend>);

// Iterates the step function over the input trace, threading the state from
// the register initial values. Length-preserving.
Trace simulate(const EvalBackend::Validated& d, const Trace& inputs);

}  // namespace syndsl
