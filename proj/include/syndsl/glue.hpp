#pragma once

#include <utility>

#include "syndsl/core.hpp"

// Derived combinators built only from the builder interface, so they work
// unchanged under every interpreter.
//
// Capture discipline for bodies: combinational terms are captured by value
// (they are cheap shared handles and must outlive deferred elaboration);
// the backend and register handles are captured by reference and must stay
// alive until the design is finalized.

namespace syndsl::glue {

template <CombBuilder B>
typename B::Comb identity(B& b, const SignalShape& a) {
  return b.lam(a, a, [](const typename B::Comb& x) { return x; });
}

// Serial composition: feed f's output into g.
template <CombBuilder B>
typename B::Comb compose(B& b, const typename B::Comb& g,
                         const typename B::Comb& f) {
  return b.lam(f.meta.in, g.meta.out,
               [&b, g, f](const typename B::Comb& x) {
                 return b.app(g, b.app(f, x));
               });
}

// Parallel composition: componentwise application on a pair.
template <CombBuilder B>
typename B::Comb par(B& b, const typename B::Comb& f,
                     const typename B::Comb& g) {
  SignalShape in = SignalShape::pair(f.meta.in, g.meta.in);
  SignalShape out = SignalShape::pair(f.meta.out, g.meta.out);
  return b.lam(in, out, [&b, f, g](const typename B::Comb& xs) {
    return b.prod(b.app(f, b.proj1(xs)), b.app(g, b.proj2(xs)));
  });
}

// Applies a two-input folder along the pack structure of a homogeneous
// shape; a bare leaf reduces to the identity.
template <CombBuilder B>
typename B::Comb reduce(B& b, const typename B::Comb& f,
                        const SignalShape& in_shape) {
  const CombMeta& fm = f.meta;
  if (!fm.in.is_pair() || !fm.in.left().is_bits() ||
      fm.in.left() != fm.in.right() || fm.out != fm.in.left())
    raise(Err::ShapeError,
          "reduce folder must have shape (Bits(w), Bits(w)) -> Bits(w), got " +
              fm.str());
  unsigned w = fm.out.width();
  if (!homogeneous(in_shape, w))
    raise(Err::NotHomogeneous, "reduce input " + in_shape.str() +
                                   " is not homogeneous at width " +
                                   std::to_string(w));
  if (in_shape.is_bits()) return identity(b, in_shape);
  typename B::Comb l = reduce(b, f, in_shape.left());
  typename B::Comb r = reduce(b, f, in_shape.right());
  return compose(b, f, par(b, l, r));
}

// The reactive fold: turns f: (a, c) -> (b, c) plus a register similar to c
// into a Mealy component of shape a -> b. Consumes the register's get and
// set capabilities once each.
template <Builder B>
typename B::Seq scan(B& b, const typename B::Comb& f,
                     typename B::RegHandle& reg) {
  const CombMeta& fm = f.meta;
  if (!fm.in.is_pair() || !fm.out.is_pair() ||
      fm.in.right() != fm.out.right())
    raise(Err::ShapeError,
          "scan body must have shape (a, c) -> (b, c), got " + fm.str());
  SignalShape a = fm.in.left();
  SignalShape c = fm.in.right();
  SignalShape bs = fm.out.left();
  StateShape s = reg.rec->shape;
  if (!same_shape(c, s))
    raise(Err::ShapeError, "scan carried shape " + c.str() +
                               " is not similar to register shape " + s.str());
  SignalShape bc = SignalShape::pair(bs, c);
  return b.abst(a, [&b, &reg, f, c, bc, s](const typename B::Comb& x) {
    auto drive = b.compose_shared(
        b.pure(b.lam(c, bc,
                     [&b, f, x](const typename B::Comb& y) {
                       return b.app(f, b.prod(x, y));
                     }),
               s),
        b.reg_get(reg, c));
    auto store = b.abst(bc, [&b, &reg, s](const typename B::Comb& y) {
      return b.compose_shared(b.pure(b.proj1(y), s),
                              b.reg_set(reg, b.proj2(y)));
    });
    return b.compose_shared(std::move(store), std::move(drive));
  });
}

// Unit delay: emits the current state, stores the current input.
template <Builder B>
typename B::Seq dly(B& b, typename B::RegHandle& reg, const SignalShape& a) {
  SignalShape aa = SignalShape::pair(a, a);
  auto swap = b.lam(aa, aa, [&b](const typename B::Comb& x) {
    return b.prod(b.proj2(x), b.proj1(x));
  });
  return scan(b, swap, reg);
}

}  // namespace syndsl::glue
