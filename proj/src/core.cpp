#include "syndsl/core.hpp"

#include <algorithm>
#include <set>

namespace syndsl::rules {

void expect_signal(BuildContext& ctx, const CombMeta& t, const char* role) {
  if (!t.in.is_unit())
    raise(Err::ShapeError, std::string(role) + " must be a signal, got " +
                               t.str() + ctx.site_suffix());
}

unsigned expect_scalar(BuildContext& ctx, const CombMeta& t, const char* role) {
  expect_signal(ctx, t, role);
  if (!t.out.is_bits())
    raise(Err::ShapeError, std::string(role) + " must carry a bit-vector, got " +
                               t.out.str() + ctx.site_suffix());
  return t.out.width();
}

CombMeta lam(BuildContext&, const SignalShape& a, const SignalShape& b) {
  return CombMeta{a, b};
}

void lam_body_result(BuildContext& ctx, const CombMeta& body,
                     const SignalShape& declared_out) {
  if (!body.in.is_unit())
    raise(Err::ShapeError,
          "lam body produced a non-signal term " + body.str() +
              ctx.site_suffix());
  if (body.out != declared_out)
    raise(Err::ShapeError, "lam body has output " + body.out.str() +
                               ", declared " + declared_out.str() +
                               ctx.site_suffix());
}

CombMeta app(BuildContext& ctx, const CombMeta& f, const CombMeta& x) {
  expect_signal(ctx, x, "app argument");
  if (x.out != f.in)
    raise(Err::ShapeError, "app of " + f.str() + " to a " + x.out.str() +
                               " signal" + ctx.site_suffix());
  return CombMeta{SignalShape::unit(), f.out};
}

CombMeta prod(BuildContext& ctx, const CombMeta& x, const CombMeta& y) {
  expect_signal(ctx, x, "prod left operand");
  expect_signal(ctx, y, "prod right operand");
  return CombMeta{SignalShape::unit(), SignalShape::pair(x.out, y.out)};
}

CombMeta proj1(BuildContext& ctx, const CombMeta& p) {
  expect_signal(ctx, p, "proj1 operand");
  if (!p.out.is_pair())
    raise(Err::ShapeError,
          "proj1 of non-pair " + p.out.str() + ctx.site_suffix());
  return CombMeta{SignalShape::unit(), p.out.left()};
}

CombMeta proj2(BuildContext& ctx, const CombMeta& p) {
  expect_signal(ctx, p, "proj2 operand");
  if (!p.out.is_pair())
    raise(Err::ShapeError,
          "proj2 of non-pair " + p.out.str() + ctx.site_suffix());
  return CombMeta{SignalShape::unit(), p.out.right()};
}

CombMeta unit_term() {
  return CombMeta{SignalShape::unit(), SignalShape::unit()};
}

CombMeta constant(const BitVector& v) {
  return CombMeta{SignalShape::unit(), SignalShape::bits(v.width())};
}

CombMeta add(BuildContext& ctx, const CombMeta& x, const CombMeta& y) {
  unsigned wx = expect_scalar(ctx, x, "add left operand");
  unsigned wy = expect_scalar(ctx, y, "add right operand");
  if (wx != wy)
    raise(Err::WidthMismatch, "add operands are " + std::to_string(wx) +
                                  " and " + std::to_string(wy) + " bits" +
                                  ctx.site_suffix());
  if (wx + 1 > kMaxWidth)
    raise(Err::UnsupportedWidth,
          "add result exceeds " + std::to_string(kMaxWidth) + " bits" +
              ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(wx + 1)};
}

CombMeta concat(BuildContext& ctx, const CombMeta& x, const CombMeta& y) {
  unsigned wx = expect_scalar(ctx, x, "concat left operand");
  unsigned wy = expect_scalar(ctx, y, "concat right operand");
  if (wx + wy > kMaxWidth)
    raise(Err::UnsupportedWidth,
          "concat result exceeds " + std::to_string(kMaxWidth) + " bits" +
              ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(wx + wy)};
}

CombMeta slice(BuildContext& ctx, unsigned lower, unsigned upper,
               const CombMeta& x) {
  unsigned wx = expect_scalar(ctx, x, "slice operand");
  if (lower > upper || upper > wx)
    raise(Err::SliceBounds, "slice [" + std::to_string(lower) + ", " +
                                std::to_string(upper) + ") of a " +
                                std::to_string(wx) + "-bit signal" +
                                ctx.site_suffix());
  if (upper == lower)
    raise(Err::WidthZero, "empty slice [" + std::to_string(lower) + ", " +
                              std::to_string(upper) + ")" + ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(upper - lower)};
}

CombMeta eq(BuildContext& ctx, const CombMeta& x, const CombMeta& y) {
  unsigned wx = expect_scalar(ctx, x, "eq left operand");
  unsigned wy = expect_scalar(ctx, y, "eq right operand");
  if (wx != wy)
    raise(Err::WidthMismatch, "eq operands are " + std::to_string(wx) +
                                  " and " + std::to_string(wy) + " bits" +
                                  ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(1)};
}

CombMeta mux21(BuildContext& ctx, const CombMeta& sel, const CombMeta& a,
               const CombMeta& b) {
  unsigned ws = expect_scalar(ctx, sel, "mux21 select");
  if (ws != 1)
    raise(Err::SelWidth, "mux21 select is " + std::to_string(ws) +
                             " bits, want 1" + ctx.site_suffix());
  unsigned wa = expect_scalar(ctx, a, "mux21 first operand");
  unsigned wb = expect_scalar(ctx, b, "mux21 second operand");
  if (wa != wb)
    raise(Err::WidthMismatch, "mux21 operands are " + std::to_string(wa) +
                                  " and " + std::to_string(wb) + " bits" +
                                  ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(wa)};
}

CombMeta logic(BuildContext& ctx, LogicKind kind, const CombMeta& x,
               const CombMeta* y) {
  unsigned wx = expect_scalar(ctx, x, "logic operand");
  if (kind == LogicKind::Not) {
    if (y != nullptr)
      raise(Err::ArityError, "NOT takes one operand, got two" +
                                 ctx.site_suffix());
    return CombMeta{SignalShape::unit(), SignalShape::bits(wx)};
  }
  if (y == nullptr)
    raise(Err::ArityError, std::string(logic_name(kind)) +
                               " takes two operands, got one" +
                               ctx.site_suffix());
  unsigned wy = expect_scalar(ctx, *y, "logic operand");
  if (wx != wy)
    raise(Err::WidthMismatch, std::string(logic_name(kind)) +
                                  " operands are " + std::to_string(wx) +
                                  " and " + std::to_string(wy) + " bits" +
                                  ctx.site_suffix());
  return CombMeta{SignalShape::unit(), SignalShape::bits(wx)};
}

// --------------------------------------------------------------------------
// Sequential rules
// --------------------------------------------------------------------------

static StateBinding unify_bindings(BuildContext& ctx, const StateBinding& a,
                                   const StateBinding& b) {
  StateBinding out;
  out.leaves.reserve(a.leaves.size());
  for (size_t i = 0; i < a.leaves.size(); ++i) {
    std::int64_t la = a.leaves[i];
    std::int64_t lb = b.leaves[i];
    if (la != StateBinding::kFree && lb != StateBinding::kFree && la != lb)
      raise(Err::ShapeError,
            "shared-state composition would alias two distinct registers" +
                ctx.site_suffix());
    out.leaves.push_back(la == StateBinding::kFree ? lb : la);
  }
  return out;
}

SeqMeta abst(BuildContext& ctx, const SignalShape& a, SeqMeta&& body) {
  consume_token(body.token, "abst");
  if (!body.in.is_unit())
    raise(Err::ShapeError, "abst body must close over its input, got " +
                               body.str() + ctx.site_suffix());
  SeqMeta out;
  out.state = body.state;
  out.in = a;
  out.out = body.out;
  out.binding = std::move(body.binding);
  out.token = make_token("abst" + ctx.site_suffix());
  return out;
}

SeqMeta pure(BuildContext& ctx, const CombMeta& c, const StateShape& s) {
  SeqMeta out;
  out.state = s;
  out.in = c.in;
  out.out = c.out;
  out.binding = StateBinding::all_free(s);
  out.token = make_token("pure" + ctx.site_suffix());
  return out;
}

SeqMeta compose_shared(BuildContext& ctx, SeqMeta&& g, SeqMeta&& f) {
  consume_token(f.token, "compose_shared");
  consume_token(g.token, "compose_shared");
  if (f.state != g.state)
    raise(Err::ShapeError, "compose_shared over distinct state shapes " +
                               f.state.str() + " and " + g.state.str() +
                               ctx.site_suffix());
  if (f.out != g.in)
    raise(Err::ShapeError, "compose_shared output/input mismatch: " +
                               f.out.str() + " vs " + g.in.str() +
                               ctx.site_suffix());
  SeqMeta out;
  out.state = f.state;
  out.in = f.in;
  out.out = g.out;
  out.binding = unify_bindings(ctx, f.binding, g.binding);
  out.token = make_token("compose_shared" + ctx.site_suffix());
  return out;
}

SeqMeta compose_stacked(BuildContext& ctx, SeqMeta&& g, SeqMeta&& f) {
  consume_token(f.token, "compose_stacked");
  consume_token(g.token, "compose_stacked");
  if (f.out != g.in)
    raise(Err::ShapeError, "compose_stacked output/input mismatch: " +
                               f.out.str() + " vs " + g.in.str() +
                               ctx.site_suffix());
  // Disjoint states: a register may not appear on both sides.
  std::set<std::int64_t> seen;
  for (auto id : f.binding.leaves)
    if (id != StateBinding::kFree) seen.insert(id);
  for (auto id : g.binding.leaves)
    if (id != StateBinding::kFree && seen.count(id))
      raise(Err::ShapeError,
            "compose_stacked would place one register in both state halves" +
                ctx.site_suffix());
  SeqMeta out;
  out.state = StateShape::pair(f.state, g.state);
  out.in = f.in;
  out.out = g.out;
  out.binding.leaves = f.binding.leaves;
  out.binding.leaves.insert(out.binding.leaves.end(), g.binding.leaves.begin(),
                            g.binding.leaves.end());
  out.token = make_token("compose_stacked" + ctx.site_suffix());
  return out;
}

SeqMeta reg_get(BuildContext& ctx, RegRecord& rec, const SignalShape& a) {
  if (rec.get_used)
    raise(Err::LinearityViolation,
          "get capability of register " + rec.origin + " used a second time" +
              ctx.site_suffix());
  if (!same_shape(a, rec.shape))
    raise(Err::ShapeError, "get signal shape " + a.str() +
                               " is not similar to state shape " +
                               rec.shape.str() + ctx.site_suffix());
  rec.get_used = true;
  SeqMeta out;
  out.state = rec.shape;
  out.in = SignalShape::unit();
  out.out = a;
  out.binding = StateBinding::of_resource(rec.shape, rec.resource_id);
  out.token = make_token("get" + ctx.site_suffix());
  return out;
}

SeqMeta reg_set(BuildContext& ctx, RegRecord& rec, const CombMeta& v) {
  if (rec.set_used)
    raise(Err::LinearityViolation,
          "set capability of register " + rec.origin + " used a second time" +
              ctx.site_suffix());
  expect_signal(ctx, v, "set value");
  if (!same_shape(v.out, rec.shape))
    raise(Err::ShapeError, "set value shape " + v.out.str() +
                               " is not similar to state shape " +
                               rec.shape.str() + ctx.site_suffix());
  rec.set_used = true;
  SeqMeta out;
  out.state = rec.shape;
  out.in = SignalShape::unit();
  out.out = SignalShape::unit();
  out.binding = StateBinding::of_resource(rec.shape, rec.resource_id);
  out.token = make_token("set" + ctx.site_suffix());
  return out;
}

void finalize_audit(BuildContext& ctx, SeqMeta& top) {
  consume_token(top.token, "finalize");
  if (!top.binding.fully_bound())
    raise(Err::ShapeError,
          "design state has a leaf not backed by any register" +
              ctx.site_suffix());
  std::set<std::int64_t> bound(top.binding.leaves.begin(),
                               top.binding.leaves.end());
  for (const auto& rec : ctx.registers()) {
    if (!rec->get_used)
      raise(Err::UnderusedResource, "register " + rec->origin +
                                        " finalized with unused get" +
                                        ctx.site_suffix());
    if (!rec->set_used)
      raise(Err::UnderusedResource, "register " + rec->origin +
                                        " finalized with unused set" +
                                        ctx.site_suffix());
    // Unit-state registers occupy no leaves, so the reachability check does
    // not apply to them.
    if (!flatten(rec->shape).empty() && !bound.count(rec->resource_id))
      raise(Err::DanglingRegister,
            "register " + rec->origin +
                " was consumed but is not part of the finalized design" +
                ctx.site_suffix());
  }
}

}  // namespace syndsl::rules
