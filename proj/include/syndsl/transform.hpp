#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "syndsl/core.hpp"

namespace syndsl {

// ---------------------------------------------------------------------------
// Re-embedding: a transparent tag over another interpreter. Generalising a
// tagged term just erases the tag.
// ---------------------------------------------------------------------------

namespace detail {

// Stand-in for sequential-layer types when the inner interpreter only
// implements the combinational layer (e.g. the partial evaluator).
struct AbsentType {};

template <class T, class = void>
struct seq_type { using type = AbsentType; };
template <class T>
struct seq_type<T, std::void_t<typename T::Seq>> { using type = typename T::Seq; };

template <class T, class = void>
struct reg_type { using type = AbsentType; };
template <class T>
struct reg_type<T, std::void_t<typename T::RegHandle>> {
  using type = typename T::RegHandle;
};

template <class T, class = void>
struct validated_type { using type = AbsentType; };
template <class T>
struct validated_type<T, std::void_t<typename T::Validated>> {
  using type = typename T::Validated;
};

}  // namespace detail

template <class Inner>
class ReEmbedBackend {
 public:
  struct Comb {
    CombMeta meta;
    typename Inner::Comb inner;
  };
  using Seq = typename detail::seq_type<Inner>::type;
  using RegHandle = typename detail::reg_type<Inner>::type;
  using Validated = typename detail::validated_type<Inner>::type;

  explicit ReEmbedBackend(Inner& inner) : inner_(inner) {}

  Inner& inner() { return inner_; }
  BuildContext& ctx() { return inner_.ctx(); }

  Comb wrap(typename Inner::Comb c) {
    CombMeta m = c.meta;
    return Comb{m, std::move(c)};
  }

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    return wrap(inner_.lam(a, b, [this, body](const typename Inner::Comb& x) {
      return body(Comb{x.meta, x}).inner;
    }));
  }
  Comb app(const Comb& f, const Comb& x) {
    return wrap(inner_.app(f.inner, x.inner));
  }
  Comb prod(const Comb& x, const Comb& y) {
    return wrap(inner_.prod(x.inner, y.inner));
  }
  Comb proj1(const Comb& p) { return wrap(inner_.proj1(p.inner)); }
  Comb proj2(const Comb& p) { return wrap(inner_.proj2(p.inner)); }
  Comb unit() { return wrap(inner_.unit()); }
  Comb constant(const BitVector& v) { return wrap(inner_.constant(v)); }
  Comb add(const Comb& x, const Comb& y) {
    return wrap(inner_.add(x.inner, y.inner));
  }
  Comb concat(const Comb& x, const Comb& y) {
    return wrap(inner_.concat(x.inner, y.inner));
  }
  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    return wrap(inner_.slice(lower, upper, x.inner));
  }
  Comb eq(const Comb& x, const Comb& y) {
    return wrap(inner_.eq(x.inner, y.inner));
  }
  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    return wrap(inner_.mux21(sel.inner, a.inner, b.inner));
  }
  Comb logic(LogicKind kind, const Comb& x) {
    return wrap(inner_.logic(kind, x.inner));
  }
  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    return wrap(inner_.logic(kind, x.inner, y.inner));
  }

  Seq abst(const SignalShape& a, unique_function<Seq(const Comb&)> body) {
    return inner_.abst(a, [this, body = std::move(body)](
                              const typename Inner::Comb& x) mutable {
      return body(Comb{x.meta, x});
    });
  }
  Seq pure(const Comb& c, const StateShape& s) {
    return inner_.pure(c.inner, s);
  }
  Seq compose_shared(Seq&& g, Seq&& f) {
    return inner_.compose_shared(std::move(g), std::move(f));
  }
  Seq compose_stacked(Seq&& g, Seq&& f) {
    return inner_.compose_stacked(std::move(g), std::move(f));
  }
  RegHandle reg_alloc(const StateShape& shape, const StateValue& init) {
    return inner_.reg_alloc(shape, init);
  }
  Seq reg_get(RegHandle& r, const SignalShape& a) {
    return inner_.reg_get(r, a);
  }
  Seq reg_set(RegHandle& r, const Comb& v) {
    return inner_.reg_set(r, v.inner);
  }
  Validated finalize(Design<Seq>&& d) { return inner_.finalize(std::move(d)); }

 private:
  Inner& inner_;
};

// Erases the re-embedding tag.
template <class Inner>
typename Inner::Comb generalise(const typename ReEmbedBackend<Inner>::Comb& t) {
  return t.inner;
}

// ---------------------------------------------------------------------------
// Partial evaluation: function terms stay host functions until they are
// applied; value terms live in the refinement target. Applications are
// beta-reduced away, so the refined term never contains one.
// ---------------------------------------------------------------------------

template <class Inner>
class PEBackend {
 public:
  struct FuncHolder;

  struct Comb {
    CombMeta meta;
    std::shared_ptr<const FuncHolder> func;          // built by lam
    std::optional<typename Inner::Comb> residual;    // signal-shaped value
  };

  struct FuncHolder {
    std::function<Comb(const Comb&)> fn;
  };

  explicit PEBackend(Inner& inner) : inner_(inner) {}

  Inner& inner() { return inner_; }
  BuildContext& ctx() { return inner_.ctx(); }

  Comb wrap(typename Inner::Comb c) {
    CombMeta m = c.meta;
    return Comb{m, nullptr, std::move(c)};
  }

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    return Comb{rules::lam(ctx(), a, b),
                std::make_shared<const FuncHolder>(FuncHolder{std::move(body)}),
                std::nullopt};
  }

  Comb app(const Comb& f, const Comb& x) {
    if (f.residual && !x.meta.out.is_unit())
      raise(Err::AssertUnitInput,
            "application of a value treats it as a constant; the argument "
            "must be the unit signal, got " +
                x.meta.out.str() + ctx().site_suffix());
    CombMeta m = rules::app(ctx(), f.meta, x.meta);
    if (f.residual) return f;  // the constant case
    Comb r = f.func->fn(x);
    rules::lam_body_result(ctx(), r.meta, m.out);
    return r;
  }

  Comb prod(const Comb& x, const Comb& y) {
    CombMeta m = rules::prod(ctx(), x.meta, y.meta);
    return Comb{m, nullptr, inner_.prod(to_residual(x), to_residual(y))};
  }
  Comb proj1(const Comb& p) {
    CombMeta m = rules::proj1(ctx(), p.meta);
    return Comb{m, nullptr, inner_.proj1(to_residual(p))};
  }
  Comb proj2(const Comb& p) {
    CombMeta m = rules::proj2(ctx(), p.meta);
    return Comb{m, nullptr, inner_.proj2(to_residual(p))};
  }
  Comb unit() { return wrap(inner_.unit()); }
  Comb constant(const BitVector& v) { return wrap(inner_.constant(v)); }
  Comb add(const Comb& x, const Comb& y) {
    return wrap(inner_.add(to_residual(x), to_residual(y)));
  }
  Comb concat(const Comb& x, const Comb& y) {
    return wrap(inner_.concat(to_residual(x), to_residual(y)));
  }
  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    return wrap(inner_.slice(lower, upper, to_residual(x)));
  }
  Comb eq(const Comb& x, const Comb& y) {
    return wrap(inner_.eq(to_residual(x), to_residual(y)));
  }
  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    return wrap(
        inner_.mux21(to_residual(sel), to_residual(a), to_residual(b)));
  }
  Comb logic(LogicKind kind, const Comb& x) {
    return wrap(inner_.logic(kind, to_residual(x)));
  }
  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    return wrap(inner_.logic(kind, to_residual(x), to_residual(y)));
  }

  // Extracts the underlying value of a signal-shaped term; a signal-shaped
  // function is eta-expanded by applying it to the unit signal.
  typename Inner::Comb to_residual(const Comb& t) {
    if (t.residual) return *t.residual;
    if (!t.meta.in.is_unit())
      raise(Err::ShapeError,
            "function term used where a signal is required" +
                ctx().site_suffix());
    Comb r = t.func->fn(unit());
    rules::lam_body_result(ctx(), r.meta, t.meta.out);
    return to_residual(r);
  }

 private:
  Inner& inner_;
};

// Sends a partially evaluated term into the target language; the result
// contains no application constructor.
template <class Inner>
typename Inner::Comb refine(PEBackend<Inner>& pe,
                            const typename PEBackend<Inner>::Comb& t) {
  if (t.residual) return *t.residual;
  auto holder = t.func;
  return pe.inner().lam(
      t.meta.in, t.meta.out,
      [&pe, holder](const typename Inner::Comb& x) ->
      typename Inner::Comb {
        typename PEBackend<Inner>::Comb r = holder->fn(pe.wrap(x));
        return pe.to_residual(r);
      });
}

// ---------------------------------------------------------------------------
// normalise = generalise . refine, packaged as a backend adapter: the
// combinational layer is partially evaluated over the re-embedding of the
// base interpreter, and every combinational term crossing into the
// sequential layer is normalised on the way through. Sequential structure is
// untouched.
// ---------------------------------------------------------------------------

template <class B>
class NormalizingBackend {
 public:
  using E0 = ReEmbedBackend<B>;
  using PE = PEBackend<E0>;
  using Comb = typename PE::Comb;
  using Seq = typename B::Seq;
  using RegHandle = typename B::RegHandle;
  using Validated = typename B::Validated;

  explicit NormalizingBackend(B& base) : base_(base), e0_(base), pe_(e0_) {}

  B& base() { return base_; }
  PE& pe() { return pe_; }
  BuildContext& ctx() { return base_.ctx(); }

  // generalise . refine
  typename B::Comb normalise(const Comb& t) {
    return generalise<B>(refine(pe_, t));
  }

  Comb wrap_base(const typename B::Comb& c) {
    return pe_.wrap(typename E0::Comb{c.meta, c});
  }

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    return pe_.lam(a, b, std::move(body));
  }
  Comb app(const Comb& f, const Comb& x) { return pe_.app(f, x); }
  Comb prod(const Comb& x, const Comb& y) { return pe_.prod(x, y); }
  Comb proj1(const Comb& p) { return pe_.proj1(p); }
  Comb proj2(const Comb& p) { return pe_.proj2(p); }
  Comb unit() { return pe_.unit(); }
  Comb constant(const BitVector& v) { return pe_.constant(v); }
  Comb add(const Comb& x, const Comb& y) { return pe_.add(x, y); }
  Comb concat(const Comb& x, const Comb& y) { return pe_.concat(x, y); }
  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    return pe_.slice(lower, upper, x);
  }
  Comb eq(const Comb& x, const Comb& y) { return pe_.eq(x, y); }
  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    return pe_.mux21(sel, a, b);
  }
  Comb logic(LogicKind kind, const Comb& x) { return pe_.logic(kind, x); }
  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    return pe_.logic(kind, x, y);
  }

  Seq abst(const SignalShape& a, unique_function<Seq(const Comb&)> body) {
    return base_.abst(a, [this, body = std::move(body)](
                             const typename B::Comb& x) mutable {
      return body(wrap_base(x));
    });
  }
  Seq pure(const Comb& c, const StateShape& s) {
    return base_.pure(normalise(c), s);
  }
  Seq compose_shared(Seq&& g, Seq&& f) {
    return base_.compose_shared(std::move(g), std::move(f));
  }
  Seq compose_stacked(Seq&& g, Seq&& f) {
    return base_.compose_stacked(std::move(g), std::move(f));
  }
  RegHandle reg_alloc(const StateShape& shape, const StateValue& init) {
    return base_.reg_alloc(shape, init);
  }
  Seq reg_get(RegHandle& r, const SignalShape& a) {
    return base_.reg_get(r, a);
  }
  Seq reg_set(RegHandle& r, const Comb& v) {
    return base_.reg_set(r, normalise(v));
  }
  Validated finalize(Design<Seq>&& d) { return base_.finalize(std::move(d)); }

 private:
  B& base_;
  E0 e0_;
  PE pe_;
};

// Builds a combinational term under the partial evaluator over `base` and
// sends it back: normalise = generalise . refine. The stack must stay in
// scope until the design using the result is finalized, since refined terms
// re-enter the partial evaluator when they elaborate.
template <class B>
class Normalizer {
 public:
  explicit Normalizer(B& base) : e0_(base), pe_(e0_) {}

  PEBackend<ReEmbedBackend<B>>& pe() { return pe_; }

  template <class F>
  typename B::Comb operator()(F&& build_core) {
    return generalise<B>(refine(pe_, std::forward<F>(build_core)(pe_)));
  }

 private:
  ReEmbedBackend<B> e0_;
  PEBackend<ReEmbedBackend<B>> pe_;
};

// ---------------------------------------------------------------------------
// Constructor statistics: the counting interpreter. Elaborating a term under
// it counts every builder call; an application-free term reports app = 0.
// ---------------------------------------------------------------------------

struct ConstructorStats {
  std::map<std::string, std::size_t> counts;

  std::size_t of(const std::string& name) const {
    auto it = counts.find(name);
    return it == counts.end() ? 0 : it->second;
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [k, v] : counts) t += v;
    return t;
  }
  ConstructorStats diff(const ConstructorStats& before) const {
    ConstructorStats d;
    for (const auto& [k, v] : counts) {
      std::size_t prev = before.of(k);
      if (v > prev) d.counts[k] = v - prev;
    }
    return d;
  }
};

class StatsBackend {
 public:
  struct Comb {
    CombMeta meta;
  };
  struct Seq {
    SeqMeta meta;
    Seq() = default;
    explicit Seq(SeqMeta m) : meta(std::move(m)) {}
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
  };

  BuildContext& ctx() { return ctx_; }
  const ConstructorStats& stats() const { return stats_; }

  Comb lam(const SignalShape& a, const SignalShape& b,
           std::function<Comb(const Comb&)> body) {
    bump("lam");
    Comb r = body(Comb{CombMeta{SignalShape::unit(), a}});
    rules::lam_body_result(ctx_, r.meta, b);
    return Comb{rules::lam(ctx_, a, b)};
  }
  Comb app(const Comb& f, const Comb& x) {
    bump("app");
    return Comb{rules::app(ctx_, f.meta, x.meta)};
  }
  Comb prod(const Comb& x, const Comb& y) {
    bump("prod");
    return Comb{rules::prod(ctx_, x.meta, y.meta)};
  }
  Comb proj1(const Comb& p) {
    bump("proj1");
    return Comb{rules::proj1(ctx_, p.meta)};
  }
  Comb proj2(const Comb& p) {
    bump("proj2");
    return Comb{rules::proj2(ctx_, p.meta)};
  }
  Comb unit() {
    bump("unit");
    return Comb{rules::unit_term()};
  }
  Comb constant(const BitVector& v) {
    bump("const");
    return Comb{rules::constant(v)};
  }
  Comb add(const Comb& x, const Comb& y) {
    bump("add");
    return Comb{rules::add(ctx_, x.meta, y.meta)};
  }
  Comb concat(const Comb& x, const Comb& y) {
    bump("concat");
    return Comb{rules::concat(ctx_, x.meta, y.meta)};
  }
  Comb slice(unsigned lower, unsigned upper, const Comb& x) {
    bump("slice");
    return Comb{rules::slice(ctx_, lower, upper, x.meta)};
  }
  Comb eq(const Comb& x, const Comb& y) {
    bump("eq");
    return Comb{rules::eq(ctx_, x.meta, y.meta)};
  }
  Comb mux21(const Comb& sel, const Comb& a, const Comb& b) {
    bump("mux21");
    return Comb{rules::mux21(ctx_, sel.meta, a.meta, b.meta)};
  }
  Comb logic(LogicKind kind, const Comb& x) {
    bump("not");
    return Comb{rules::logic(ctx_, kind, x.meta, nullptr)};
  }
  Comb logic(LogicKind kind, const Comb& x, const Comb& y) {
    bump(kind == LogicKind::And ? "and" : kind == LogicKind::Or ? "or" : "xor");
    return Comb{rules::logic(ctx_, kind, x.meta, &y.meta)};
  }

  Seq abst(const SignalShape& a, unique_function<Seq(const Comb&)> body) {
    bump("abst");
    Seq inner = body(Comb{CombMeta{SignalShape::unit(), a}});
    return Seq{rules::abst(ctx_, a, std::move(inner.meta))};
  }
  Seq pure(const Comb& c, const StateShape& s) {
    bump("pure");
    return Seq{rules::pure(ctx_, c.meta, s)};
  }
  Seq compose_shared(Seq&& g, Seq&& f) {
    bump("compose_shared");
    return Seq{rules::compose_shared(ctx_, std::move(g.meta), std::move(f.meta))};
  }
  Seq compose_stacked(Seq&& g, Seq&& f) {
    bump("compose_stacked");
    return Seq{rules::compose_stacked(ctx_, std::move(g.meta), std::move(f.meta))};
  }
  RegHandle reg_alloc(const StateShape& shape, const StateValue& init) {
    return RegHandle{ctx_.alloc_register(shape, init)};
  }
  Seq reg_get(RegHandle& r, const SignalShape& a) {
    bump("get");
    return Seq{rules::reg_get(ctx_, *r.rec, a)};
  }
  Seq reg_set(RegHandle& r, const Comb& v) {
    bump("set");
    return Seq{rules::reg_set(ctx_, *r.rec, v.meta)};
  }
  Validated finalize(Design<Seq>&& d) {
    rules::finalize_audit(ctx_, d.top.meta);
    return Validated{std::move(d.name), d.top.meta.state, d.top.meta.in,
                     d.top.meta.out};
  }

 private:
  void bump(const char* name) { stats_.counts[name] += 1; }

  BuildContext ctx_;
  ConstructorStats stats_;
};

static_assert(Builder<StatsBackend>);
static_assert(CombBuilder<PEBackend<StatsBackend>>);
static_assert(Builder<ReEmbedBackend<StatsBackend>>);
static_assert(Builder<NormalizingBackend<StatsBackend>>);

// Elaborates whatever `build` constructs under the counting interpreter and
// returns the tallies.
template <class F>
ConstructorStats count_constructors(F&& build) {
  StatsBackend b;
  std::forward<F>(build)(b);
  return b.stats();
}

}  // namespace syndsl
