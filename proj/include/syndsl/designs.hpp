#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syndsl/glue.hpp"
#include "syndsl/transform.hpp"

namespace syndsl::designs {

// ---------------------------------------------------------------------------
// Catalogue metadata.
// ---------------------------------------------------------------------------

struct Params {
  std::optional<unsigned> n;
  std::optional<unsigned> count;
  std::optional<unsigned> width;
};

struct DesignInfo {
  std::string name;
  std::string params_help;
};

// Sorted by name.
std::vector<DesignInfo> registry();
bool known_design(const std::string& name);

unsigned index_width(unsigned count);

// ---------------------------------------------------------------------------
// Register-file machinery. One get yields the whole file as a signal; the
// value then fans out freely while the get/set capabilities stay single-use.
// ---------------------------------------------------------------------------

// Selection chain: walks the file left to right, comparing the index against
// ascending leaf positions; the last leaf is the fall-through.
template <CombBuilder B>
typename B::Comb regfile_select(B& b, const typename B::Comb& idx,
                                const typename B::Comb& file, unsigned count,
                                unsigned base = 0) {
  if (count == 1) return file;
  unsigned iw = idx.meta.out.width();
  auto cur = b.proj1(file);
  auto rest = b.proj2(file);
  auto label = b.constant(BitVector(iw, base));
  return b.mux21(b.eq(idx, label), cur,
                 regfile_select(b, idx, rest, count - 1, base + 1));
}

// Next file contents: leaf i becomes val when idx selects it, else holds.
template <CombBuilder B>
typename B::Comb regfile_write_next(B& b, const typename B::Comb& file,
                                    const typename B::Comb& idx,
                                    const typename B::Comb& val, unsigned count,
                                    unsigned base = 0) {
  unsigned iw = idx.meta.out.width();
  auto hit = [&](const typename B::Comb& cur, unsigned pos) {
    return b.mux21(b.eq(idx, b.constant(BitVector(iw, pos))), val, cur);
  };
  if (count == 1) return hit(file, base);
  auto head = hit(b.proj1(file), base);
  auto tail =
      regfile_write_next(b, b.proj2(file), idx, val, count - 1, base + 1);
  return b.prod(head, tail);
}

template <class B>
void check_regfile_index(B& b, const CombMeta& idx, unsigned count,
                         const char* role) {
  unsigned iw = index_width(count);
  if (!idx.in.is_unit() || idx.out != SignalShape::bits(iw))
    raise(Err::ShapeError,
          std::string(role) + " index must be a " + std::to_string(iw) +
              "-bit signal for " + std::to_string(count) + " registers, got " +
              idx.out.str() + b.ctx().site_suffix());
}

// The two register-file components. Each builder is single-use: read consumes
// the file's get capability, write consumes both remaining capabilities (it
// reads the current contents to hold the unselected leaves). A closed design
// that both reads and writes is assembled from the select/write-next logic
// around one get/set pair instead (see make_regfile_design).
template <Builder B>
struct RegFileParts {
  unsigned count = 0;
  unsigned width = 0;
  unique_function<typename B::Seq(const typename B::Comb&,
                                  const typename B::Comb&)>
      read;
  unique_function<typename B::Seq(const typename B::Comb&,
                                  const typename B::Comb&)>
      write;
};

template <Builder B>
RegFileParts<B> make_regfile(B& b, typename B::RegHandle& reg, unsigned count,
                             unsigned width) {
  if (count < 1) raise(Err::ArityError, "register file needs count >= 1");
  SignalShape file_sig = repeat_sig(count, width);
  SignalShape vw = SignalShape::bits(width);
  StateShape s = repeat_state(count, width);
  if (reg.rec->shape != s)
    raise(Err::ShapeError, "register file handle has shape " +
                               reg.rec->shape.str() + ", want " + s.str());

  RegFileParts<B> parts;
  parts.count = count;
  parts.width = width;
  parts.read = [&b, &reg, count, file_sig, vw,
                s](const typename B::Comb& idx1,
                   const typename B::Comb& idx2) -> typename B::Seq {
    check_regfile_index(b, idx1.meta, count, "read");
    check_regfile_index(b, idx2.meta, count, "read");
    auto selector =
        b.lam(file_sig, SignalShape::pair(vw, vw),
              [&b, idx1, idx2, count](const typename B::Comb& file) {
                return b.prod(regfile_select(b, idx1, file, count),
                              regfile_select(b, idx2, file, count));
              });
    return b.compose_shared(b.pure(selector, s), b.reg_get(reg, file_sig));
  };
  parts.write = [&b, &reg, count, file_sig,
                 s](const typename B::Comb& idx,
                    const typename B::Comb& val) -> typename B::Seq {
    check_regfile_index(b, idx.meta, count, "write");
    auto storer =
        b.abst(file_sig, [&b, &reg, idx, val,
                          count](const typename B::Comb& file) {
          return b.reg_set(reg,
                           regfile_write_next(b, file, idx, val, count));
        });
    return b.compose_shared(std::move(storer), b.reg_get(reg, file_sig));
  };
  return parts;
}

// ---------------------------------------------------------------------------
// Catalogue designs.
// ---------------------------------------------------------------------------

// The scan body of the accumulator: dup << slice(0, n) << adder.
template <CombBuilder B>
typename B::Comb accumulator_core(B& b, unsigned n) {
  SignalShape an = SignalShape::bits(n);
  SignalShape an1 = SignalShape::bits(n + 1);
  auto adder = b.lam(SignalShape::pair(an, an), an1,
                     [&b](const typename B::Comb& x) {
                       return b.add(b.proj1(x), b.proj2(x));
                     });
  auto slicer = b.lam(an1, an, [&b, n](const typename B::Comb& x) {
    return b.slice(0, n, x);
  });
  auto dup = b.lam(an, SignalShape::pair(an, an),
                   [&b](const typename B::Comb& x) { return b.prod(x, x); });
  return glue::compose(b, dup, glue::compose(b, slicer, adder));
}

// When `normalize` is set, a design's combinational argument goes through
// the partial evaluator before it meets the sequential glue; the glue itself
// is untouched.
template <Builder B>
typename B::Validated make_accumulator(B& b, unsigned n,
                                       bool normalize = false) {
  if (n == 0) raise(Err::WidthZero, "accumulator width must be >= 1");
  ScopedSite site(b.ctx(), "acc");
  auto reg = b.reg_alloc(StateShape::reg(n), StateValue::reg(BitVector(n, 0)));
  Normalizer<B> norm(b);
  auto core = normalize
                  ? norm([n](auto& nb) { return accumulator_core(nb, n); })
                  : accumulator_core(b, n);
  return b.finalize({"acc", glue::scan(b, core, reg)});
}

// The hand-inlined accumulator body: the application-free form the
// normalization transform should reproduce.
template <CombBuilder B>
typename B::Comb accumulator_core_inlined(B& b, unsigned n) {
  SignalShape an = SignalShape::bits(n);
  return b.lam(SignalShape::pair(an, an), SignalShape::pair(an, an),
               [&b, n](const typename B::Comb& x) {
                 return b.prod(
                     b.slice(0, n, b.add(b.proj1(x), b.proj2(x))),
                     b.slice(0, n, b.add(b.proj1(x), b.proj2(x))));
               });
}

template <Builder B>
typename B::Validated make_accumulator_inlined(B& b, unsigned n) {
  if (n == 0) raise(Err::WidthZero, "accumulator width must be >= 1");
  ScopedSite site(b.ctx(), "acc-inlined");
  auto reg = b.reg_alloc(StateShape::reg(n), StateValue::reg(BitVector(n, 0)));
  auto core = accumulator_core_inlined(b, n);
  return b.finalize({"acc-inlined", glue::scan(b, core, reg)});
}

// The swap body dly is scanned from.
template <CombBuilder B>
typename B::Comb swap_core(B& b, const SignalShape& a) {
  SignalShape aa = SignalShape::pair(a, a);
  return b.lam(aa, aa, [&b](const typename B::Comb& x) {
    return b.prod(b.proj2(x), b.proj1(x));
  });
}

template <Builder B>
typename B::Validated make_dly(B& b, unsigned width, bool normalize = false) {
  if (width == 0) raise(Err::WidthZero, "dly width must be >= 1");
  ScopedSite site(b.ctx(), "dly");
  SignalShape a = SignalShape::bits(width);
  auto reg = b.reg_alloc(StateShape::reg(width),
                         StateValue::reg(BitVector(width, 0)));
  Normalizer<B> norm(b);
  auto core = normalize ? norm([a](auto& nb) { return swap_core(nb, a); })
                        : swap_core(b, a);
  return b.finalize({"dly", glue::scan(b, core, reg)});
}

template <Builder B>
typename B::Validated make_dly_chain(B& b, unsigned k, unsigned width,
                                     bool normalize = false) {
  if (k == 0) raise(Err::ArityError, "dly chain needs k >= 1");
  if (width == 0) raise(Err::WidthZero, "dly width must be >= 1");
  ScopedSite site(b.ctx(), "dly-chain");
  SignalShape a = SignalShape::bits(width);
  Normalizer<B> norm(b);
  auto mk = [&]() {
    auto reg = b.reg_alloc(StateShape::reg(width),
                           StateValue::reg(BitVector(width, 0)));
    auto core = normalize ? norm([a](auto& nb) { return swap_core(nb, a); })
                          : swap_core(b, a);
    return glue::scan(b, core, reg);
  };
  typename B::Seq t = mk();
  for (unsigned i = 1; i < k; ++i) t = b.compose_stacked(mk(), std::move(t));
  return b.finalize({"dly-chain", std::move(t)});
}

// Folder f(x, y) = (2x + y) mod 2^w; non-associative, so the reduction
// order is observable.
template <CombBuilder B>
typename B::Comb reduce_folder(B& b, unsigned w) {
  SignalShape a = SignalShape::bits(w);
  return b.lam(SignalShape::pair(a, a), a, [&b, w](const typename B::Comb& p) {
    auto twox = b.slice(0, w, b.add(b.proj1(p), b.proj1(p)));
    return b.slice(0, w, b.add(twox, b.proj2(p)));
  });
}

inline SignalShape reduce_shape(bool left_nested, unsigned w) {
  SignalShape a = SignalShape::bits(w);
  return left_nested ? SignalShape::pair(SignalShape::pair(a, a), a)
                     : SignalShape::pair(a, SignalShape::pair(a, a));
}

template <CombBuilder B>
typename B::Comb reduce_core(B& b, bool left_nested, unsigned w) {
  return glue::reduce(b, reduce_folder(b, w), reduce_shape(left_nested, w));
}

template <Builder B>
typename B::Validated make_reduce(B& b, bool left_nested, unsigned w,
                                  bool normalize = false) {
  if (w == 0) raise(Err::WidthZero, "reduce width must be >= 1");
  ScopedSite site(b.ctx(), left_nested ? "reduce-left" : "reduce-right");
  Normalizer<B> norm(b);
  auto core = normalize ? norm([left_nested, w](auto& nb) {
    return reduce_core(nb, left_nested, w);
  })
                        : reduce_core(b, left_nested, w);
  return b.finalize({left_nested ? "reduce-left" : "reduce-right",
                     b.pure(core, StateShape::unit())});
}

// Closed register file: reads two positions of the old contents and writes
// one position, every cycle. Inputs (idx1, (idx2, (widx, wval))), outputs
// (r[idx1], r[idx2]).
template <Builder B>
typename B::Validated make_regfile_design(B& b, unsigned count,
                                          unsigned width) {
  if (width == 0) raise(Err::WidthZero, "regfile width must be >= 1");
  ScopedSite site(b.ctx(), "regfile");
  unsigned iw = index_width(count);
  SignalShape idx = SignalShape::bits(iw);
  SignalShape vw = SignalShape::bits(width);
  SignalShape file_sig = repeat_sig(count, width);
  StateShape s = repeat_state(count, width);
  SignalShape in = SignalShape::pair(
      idx, SignalShape::pair(idx, SignalShape::pair(idx, vw)));

  StateValue zeros = StateValue::from_flat(
      s, std::vector<BitVector>(flatten(s).size(), BitVector(width, 0)));
  auto reg = b.reg_alloc(s, zeros);

  auto top = b.abst(in, [&b, &reg, count, file_sig, vw,
                         s](const typename B::Comb& ins) {
    auto idx1 = b.proj1(ins);
    auto idx2 = b.proj1(b.proj2(ins));
    auto widx = b.proj1(b.proj2(b.proj2(ins)));
    auto wval = b.proj2(b.proj2(b.proj2(ins)));
    auto work = b.abst(file_sig, [&b, &reg, idx1, idx2, widx, wval, count, vw,
                                  s](const typename B::Comb& file) {
      auto outs = b.prod(regfile_select(b, idx1, file, count),
                         regfile_select(b, idx2, file, count));
      return b.compose_shared(
          b.pure(outs, s),
          b.reg_set(reg, regfile_write_next(b, file, widx, wval, count)));
    });
    return b.compose_shared(std::move(work), b.reg_get(reg, file_sig));
  });
  return b.finalize({"regfile", std::move(top)});
}

// Read-side combinational core: (file, (idx1, idx2)) -> (v1, v2).
template <CombBuilder B>
typename B::Comb regfile_core(B& b, unsigned count, unsigned width) {
  unsigned iw = index_width(count);
  SignalShape file_sig = repeat_sig(count, width);
  SignalShape idx = SignalShape::bits(iw);
  SignalShape vw = SignalShape::bits(width);
  SignalShape in = SignalShape::pair(file_sig, SignalShape::pair(idx, idx));
  return b.lam(in, SignalShape::pair(vw, vw),
               [&b, count](const typename B::Comb& p) {
                 auto file = b.proj1(p);
                 auto idx1 = b.proj1(b.proj2(p));
                 auto idx2 = b.proj2(b.proj2(p));
                 return b.prod(regfile_select(b, idx1, file, count),
                               regfile_select(b, idx2, file, count));
               });
}

inline constexpr unsigned kIsaRegs = 32;
inline constexpr unsigned kIsaWidth = 32;

// Datapath core: (file, (rs1, rs2)) -> rdata, where rdata is the low 32 bits
// of r[rs1] + r[rs2].
template <CombBuilder B>
typename B::Comb add_datapath_core(B& b) {
  unsigned iw = index_width(kIsaRegs);
  SignalShape file_sig = repeat_sig(kIsaRegs, kIsaWidth);
  SignalShape idx = SignalShape::bits(iw);
  SignalShape in = SignalShape::pair(file_sig, SignalShape::pair(idx, idx));
  return b.lam(in, SignalShape::bits(kIsaWidth),
               [&b](const typename B::Comb& p) {
                 auto file = b.proj1(p);
                 auto rs1 = b.proj1(b.proj2(p));
                 auto rs2 = b.proj2(b.proj2(p));
                 return b.slice(0, kIsaWidth,
                                b.add(regfile_select(b, rs1, file, kIsaRegs),
                                      regfile_select(b, rs2, file, kIsaRegs)));
               });
}

// The add-instruction slice: inputs (rs1, (rs2, rd)); reads r[rs1] and
// r[rs2], writes their 32-bit sum to r[rd], and outputs it.
template <Builder B>
typename B::Validated make_add_datapath(B& b) {
  ScopedSite site(b.ctx(), "add-datapath");
  unsigned iw = index_width(kIsaRegs);
  SignalShape idx = SignalShape::bits(iw);
  SignalShape vw = SignalShape::bits(kIsaWidth);
  SignalShape file_sig = repeat_sig(kIsaRegs, kIsaWidth);
  StateShape s = repeat_state(kIsaRegs, kIsaWidth);
  SignalShape in = SignalShape::pair(idx, SignalShape::pair(idx, idx));

  StateValue zeros = StateValue::from_flat(
      s, std::vector<BitVector>(kIsaRegs, BitVector(kIsaWidth, 0)));
  auto reg = b.reg_alloc(s, zeros);

  auto top = b.abst(in, [&b, &reg, file_sig, vw,
                         s](const typename B::Comb& ins) {
    auto rs1 = b.proj1(ins);
    auto rs2 = b.proj1(b.proj2(ins));
    auto rd = b.proj2(b.proj2(ins));
    auto work = b.abst(file_sig, [&b, &reg, rs1, rs2, rd, vw,
                                  s](const typename B::Comb& file) {
      auto rdata = b.slice(
          0, kIsaWidth, b.add(regfile_select(b, rs1, file, kIsaRegs),
                              regfile_select(b, rs2, file, kIsaRegs)));
      auto commit =
          b.abst(vw, [&b, &reg, rd, file, s](const typename B::Comb& r) {
            return b.compose_shared(
                b.pure(r, s),
                b.reg_set(reg,
                          regfile_write_next(b, file, rd, r, kIsaRegs)));
          });
      return b.compose_shared(std::move(commit), b.pure(rdata, s));
    });
    return b.compose_shared(std::move(work), b.reg_get(reg, file_sig));
  });
  return b.finalize({"add-datapath", std::move(top)});
}

// ---------------------------------------------------------------------------
// Name-based dispatch.
// ---------------------------------------------------------------------------

// The register-file and datapath designs build their combinational logic as
// direct signal expressions with no lam/app to eliminate, so normalization
// leaves them unchanged by construction.
template <Builder B>
typename B::Validated build(B& b, const std::string& name, const Params& p,
                            bool normalize = false) {
  if (name == "acc") return make_accumulator(b, p.n.value_or(8), normalize);
  if (name == "dly") return make_dly(b, p.width.value_or(8), normalize);
  if (name == "dly-chain")
    return make_dly_chain(b, p.count.value_or(2), p.width.value_or(8),
                          normalize);
  if (name == "reduce-left")
    return make_reduce(b, true, p.width.value_or(8), normalize);
  if (name == "reduce-right")
    return make_reduce(b, false, p.width.value_or(8), normalize);
  if (name == "regfile")
    return make_regfile_design(b, p.count.value_or(4), p.width.value_or(8));
  if (name == "add-datapath") return make_add_datapath(b);
  raise(Err::UnknownDesign, "no design named '" + name + "'");
}

// The combinational core each design contributes, for transform checks.
template <CombBuilder B>
typename B::Comb comb_core(B& b, const std::string& name, const Params& p) {
  if (name == "acc") return accumulator_core(b, p.n.value_or(8));
  if (name == "dly" || name == "dly-chain")
    return swap_core(b, SignalShape::bits(p.width.value_or(8)));
  if (name == "reduce-left") return reduce_core(b, true, p.width.value_or(8));
  if (name == "reduce-right") return reduce_core(b, false, p.width.value_or(8));
  if (name == "regfile")
    return regfile_core(b, p.count.value_or(4), p.width.value_or(8));
  if (name == "add-datapath") return add_datapath_core(b);
  raise(Err::UnknownDesign, "no design named '" + name + "'");
}

}  // namespace syndsl::designs
