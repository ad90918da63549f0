#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "syndsl/shapes.hpp"

namespace syndsl {

// ---------------------------------------------------------------------------
// unique_function: move-only callable wrapper. Sequential-term payloads own
// moved-in resources (register capabilities, other sequential terms), which
// std::function cannot hold.
// ---------------------------------------------------------------------------

template <class Sig>
class unique_function;

template <class R, class... Args>
class unique_function<R(Args...)> {
 public:
  unique_function() = default;
  unique_function(unique_function&&) noexcept = default;
  unique_function& operator=(unique_function&&) noexcept = default;

  template <class F,
            class = std::enable_if_t<
                !std::is_same_v<std::decay_t<F>, unique_function>>>
  unique_function(F&& f)
      : impl_(std::make_unique<Impl<std::decay_t<F>>>(std::forward<F>(f))) {}

  explicit operator bool() const { return impl_ != nullptr; }

  R operator()(Args... args) {
    return impl_->call(std::forward<Args>(args)...);
  }

 private:
  struct Base {
    virtual ~Base() = default;
    virtual R call(Args&&... args) = 0;
  };
  template <class F>
  struct Impl final : Base {
    explicit Impl(F f) : fn(std::move(f)) {}
    R call(Args&&... args) override { return fn(std::forward<Args>(args)...); }
    F fn;
  };
  std::unique_ptr<Base> impl_;
};

// ---------------------------------------------------------------------------
// Linearity. Sequential terms and register capabilities are single-use. Host
// move semantics catch most misuse at compile time; the dynamic token makes
// the remaining cases fail deterministically with LinearityViolation.
// ---------------------------------------------------------------------------

struct LinearToken {
  bool consumed = false;
  std::string origin;
};

using TokenPtr = std::shared_ptr<LinearToken>;

inline TokenPtr make_token(std::string origin) {
  auto t = std::make_shared<LinearToken>();
  t->origin = std::move(origin);
  return t;
}

// Marks the token used; raises on a second use or on a moved-from value.
inline void consume_token(const TokenPtr& t, const std::string& by) {
  if (!t)
    raise(Err::LinearityViolation,
          "use of a moved-from or already-consumed term in " + by);
  if (t->consumed)
    raise(Err::LinearityViolation,
          "term from " + t->origin + " used a second time in " + by);
  t->consumed = true;
}

// ---------------------------------------------------------------------------
// Register resources.
// ---------------------------------------------------------------------------

struct RegRecord {
  std::int64_t resource_id = 0;
  StateShape shape = StateShape::unit();
  StateValue init = StateValue::unit();
  std::string origin;
  bool get_used = false;
  bool set_used = false;
};

using RegRecordPtr = std::shared_ptr<RegRecord>;

// Leaf-aligned map from a state shape's Reg leaves to the register resources
// that realize them. kFree marks a leaf no register claims yet (pure terms).
struct StateBinding {
  static constexpr std::int64_t kFree = -1;

  std::vector<std::int64_t> leaves;

  static StateBinding all_free(const StateShape& s) {
    return StateBinding{std::vector<std::int64_t>(flatten(s).size(), kFree)};
  }
  static StateBinding of_resource(const StateShape& s, std::int64_t id) {
    return StateBinding{std::vector<std::int64_t>(flatten(s).size(), id)};
  }

  bool fully_bound() const {
    for (auto id : leaves)
      if (id == kFree) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Per-design build context: fresh ids, the register registry the finalize
// audit walks, and a breadcrumb path for error messages.
// ---------------------------------------------------------------------------

class BuildContext {
 public:
  std::int64_t fresh_id() { return next_id_++; }

  RegRecordPtr alloc_register(const StateShape& shape, const StateValue& init) {
    if (!init.conforms(shape))
      raise(Err::ShapeError, "register init " + init.str() +
                                 " does not conform to state shape " +
                                 shape.str() + site_suffix());
    auto rec = std::make_shared<RegRecord>();
    rec->resource_id = fresh_id();
    rec->shape = shape;
    rec->init = init;
    rec->origin = path();
    registers_.push_back(rec);
    return rec;
  }

  const std::vector<RegRecordPtr>& registers() const { return registers_; }

  void push_site(std::string s) { path_.push_back(std::move(s)); }
  void pop_site() { path_.pop_back(); }
  std::string path() const {
    std::string out;
    for (const auto& s : path_) {
      if (!out.empty()) out += "/";
      out += s;
    }
    return out.empty() ? std::string("<top>") : out;
  }
  std::string site_suffix() const { return " at " + path(); }

 private:
  std::int64_t next_id_ = 0;
  std::vector<RegRecordPtr> registers_;
  std::vector<std::string> path_;
};

class ScopedSite {
 public:
  ScopedSite(BuildContext& ctx, std::string s) : ctx_(ctx) {
    ctx_.push_site(std::move(s));
  }
  ~ScopedSite() { ctx_.pop_site(); }
  ScopedSite(const ScopedSite&) = delete;
  ScopedSite& operator=(const ScopedSite&) = delete;

 private:
  BuildContext& ctx_;
};

// ---------------------------------------------------------------------------
// Term metadata shared by every interpreter. A term's shapes are fixed at
// construction and observable; sequential terms add the state shape, the
// register binding, and the single-use token.
// ---------------------------------------------------------------------------

struct CombMeta {
  SignalShape in = SignalShape::unit();
  SignalShape out = SignalShape::unit();

  bool is_signal() const { return in.is_unit(); }
  std::string str() const { return in.str() + " -> " + out.str(); }
};

struct SeqMeta {
  StateShape state = StateShape::unit();
  SignalShape in = SignalShape::unit();
  SignalShape out = SignalShape::unit();
  StateBinding binding;
  TokenPtr token;

  std::string str() const {
    return "[" + state.str() + "] " + in.str() + " -> " + out.str();
  }
};

template <class SeqT>
struct Design {
  std::string name;
  SeqT top;
};

// ---------------------------------------------------------------------------
// The builder interface: the one definition of the language. A design is a
// host function over any implementation, so the same definition drives
// evaluation, netlist elaboration, transformation, and statistics without
// textual change. Combinational bodies are plain std::functions (terms are
// unrestricted); sequential bodies may own moved-in single-use resources.
// ---------------------------------------------------------------------------

template <class B>
concept CombBuilder = requires(
    B b, const SignalShape& sig, const BitVector& bv, const typename B::Comb& c,
    std::function<typename B::Comb(const typename B::Comb&)> comb_body) {
  { b.ctx() } -> std::same_as<BuildContext&>;
  { b.lam(sig, sig, comb_body) } -> std::same_as<typename B::Comb>;
  { b.app(c, c) } -> std::same_as<typename B::Comb>;
  { b.prod(c, c) } -> std::same_as<typename B::Comb>;
  { b.proj1(c) } -> std::same_as<typename B::Comb>;
  { b.proj2(c) } -> std::same_as<typename B::Comb>;
  { b.unit() } -> std::same_as<typename B::Comb>;
  { b.constant(bv) } -> std::same_as<typename B::Comb>;
  { b.add(c, c) } -> std::same_as<typename B::Comb>;
  { b.concat(c, c) } -> std::same_as<typename B::Comb>;
  { b.slice(0u, 1u, c) } -> std::same_as<typename B::Comb>;
  { b.eq(c, c) } -> std::same_as<typename B::Comb>;
  { b.mux21(c, c, c) } -> std::same_as<typename B::Comb>;
  { b.logic(LogicKind::Not, c) } -> std::same_as<typename B::Comb>;
  { b.logic(LogicKind::And, c, c) } -> std::same_as<typename B::Comb>;
};

template <class B>
concept Builder =
    CombBuilder<B> &&
    requires(B b, const SignalShape& sig, const StateShape& st,
             const StateValue& sv, const typename B::Comb& c,
             typename B::Seq s, typename B::RegHandle& r,
             unique_function<typename B::Seq(const typename B::Comb&)> seq_body,
             Design<typename B::Seq> d) {
      { b.abst(sig, std::move(seq_body)) } -> std::same_as<typename B::Seq>;
      { b.pure(c, st) } -> std::same_as<typename B::Seq>;
      { b.compose_shared(std::move(s), std::move(s)) } ->
          std::same_as<typename B::Seq>;
      { b.compose_stacked(std::move(s), std::move(s)) } ->
          std::same_as<typename B::Seq>;
      { b.reg_alloc(st, sv) } -> std::same_as<typename B::RegHandle>;
      { b.reg_get(r, sig) } -> std::same_as<typename B::Seq>;
      { b.reg_set(r, c) } -> std::same_as<typename B::Seq>;
      { b.finalize(std::move(d)) } -> std::same_as<typename B::Validated>;
    };

// ---------------------------------------------------------------------------
// rules: the one implementation of the language contracts. Every backend op
// calls the matching rule first; the rule validates shapes, consumes
// linearity, and computes the result metadata. Sequential rules consume
// tokens before touching any other field so that moved-from terms fail with
// LinearityViolation rather than undefined behaviour.
// ---------------------------------------------------------------------------

namespace rules {

void expect_signal(BuildContext& ctx, const CombMeta& t, const char* role);
unsigned expect_scalar(BuildContext& ctx, const CombMeta& t, const char* role);

CombMeta lam(BuildContext& ctx, const SignalShape& a, const SignalShape& b);
// Validates the invoked body's result against the declared output shape.
void lam_body_result(BuildContext& ctx, const CombMeta& body,
                     const SignalShape& declared_out);
CombMeta app(BuildContext& ctx, const CombMeta& f, const CombMeta& x);
CombMeta prod(BuildContext& ctx, const CombMeta& x, const CombMeta& y);
CombMeta proj1(BuildContext& ctx, const CombMeta& p);
CombMeta proj2(BuildContext& ctx, const CombMeta& p);
CombMeta unit_term();
CombMeta constant(const BitVector& v);
CombMeta add(BuildContext& ctx, const CombMeta& x, const CombMeta& y);
CombMeta concat(BuildContext& ctx, const CombMeta& x, const CombMeta& y);
CombMeta slice(BuildContext& ctx, unsigned lower, unsigned upper,
               const CombMeta& x);
CombMeta eq(BuildContext& ctx, const CombMeta& x, const CombMeta& y);
CombMeta mux21(BuildContext& ctx, const CombMeta& sel, const CombMeta& a,
               const CombMeta& b);
CombMeta logic(BuildContext& ctx, LogicKind kind, const CombMeta& x,
               const CombMeta* y);

SeqMeta abst(BuildContext& ctx, const SignalShape& a, SeqMeta&& body);
SeqMeta pure(BuildContext& ctx, const CombMeta& c, const StateShape& s);
SeqMeta compose_shared(BuildContext& ctx, SeqMeta&& g, SeqMeta&& f);
SeqMeta compose_stacked(BuildContext& ctx, SeqMeta&& g, SeqMeta&& f);
SeqMeta reg_get(BuildContext& ctx, RegRecord& rec, const SignalShape& a);
SeqMeta reg_set(BuildContext& ctx, RegRecord& rec, const CombMeta& v);

// Consumes the top term's token and audits the register registry: every
// register's get and set used exactly once, every state leaf backed by a
// register, and every allocated register reachable from the top term.
void finalize_audit(BuildContext& ctx, SeqMeta& top);

}  // namespace rules

}  // namespace syndsl
