#pragma once

#include <memory>
#include <string>
#include <vector>

#include "syndsl/bitvec.hpp"
#include "syndsl/error.hpp"

namespace syndsl {

// ---------------------------------------------------------------------------
// Shape universes. Signals are Unit | Bits(w) | Pair(l, r); states are
// Unit | Reg(w) | Pair(l, r). Both are immutable trees shared by value.
// ---------------------------------------------------------------------------

enum class ShapeTag { Unit, Leaf, Pair };

namespace detail {

struct ShapeNode;
using ShapePtr = std::shared_ptr<const ShapeNode>;

struct ShapeNode {
  ShapeTag tag;
  unsigned width = 0;  // Leaf only
  ShapePtr left, right;  // Pair only
};

ShapePtr shape_unit();
ShapePtr shape_leaf(unsigned width);
ShapePtr shape_pair(ShapePtr l, ShapePtr r);
bool shape_equal(const ShapePtr& a, const ShapePtr& b);
std::string shape_str(const ShapePtr& s, const char* leaf_name);

}  // namespace detail

class SignalShape {
 public:
  static SignalShape unit() { return SignalShape(detail::shape_unit()); }
  static SignalShape bits(unsigned width) {
    if (width == 0) raise(Err::WidthZero, "Bits leaf width must be >= 1");
    return SignalShape(detail::shape_leaf(width));
  }
  static SignalShape pair(const SignalShape& l, const SignalShape& r) {
    return SignalShape(detail::shape_pair(l.node_, r.node_));
  }

  ShapeTag tag() const { return node_->tag; }
  bool is_unit() const { return node_->tag == ShapeTag::Unit; }
  bool is_bits() const { return node_->tag == ShapeTag::Leaf; }
  bool is_pair() const { return node_->tag == ShapeTag::Pair; }
  unsigned width() const;
  SignalShape left() const;
  SignalShape right() const;

  bool operator==(const SignalShape& o) const {
    return detail::shape_equal(node_, o.node_);
  }
  bool operator!=(const SignalShape& o) const { return !(*this == o); }

  std::string str() const { return detail::shape_str(node_, "Bits"); }

 private:
  friend class StateShape;
  explicit SignalShape(detail::ShapePtr n) : node_(std::move(n)) {}
  detail::ShapePtr node_;
};

class StateShape {
 public:
  static StateShape unit() { return StateShape(detail::shape_unit()); }
  static StateShape reg(unsigned width) {
    if (width == 0) raise(Err::WidthZero, "Reg leaf width must be >= 1");
    return StateShape(detail::shape_leaf(width));
  }
  static StateShape pair(const StateShape& l, const StateShape& r) {
    return StateShape(detail::shape_pair(l.node_, r.node_));
  }

  ShapeTag tag() const { return node_->tag; }
  bool is_unit() const { return node_->tag == ShapeTag::Unit; }
  bool is_reg() const { return node_->tag == ShapeTag::Leaf; }
  bool is_pair() const { return node_->tag == ShapeTag::Pair; }
  unsigned width() const;
  StateShape left() const;
  StateShape right() const;

  bool operator==(const StateShape& o) const {
    return detail::shape_equal(node_, o.node_);
  }
  bool operator!=(const StateShape& o) const { return !(*this == o); }

  std::string str() const { return detail::shape_str(node_, "Reg"); }

  // The signal shape a state can be read as / written from.
  SignalShape as_signal() const;

 private:
  explicit StateShape(detail::ShapePtr n) : node_(std::move(n)) {}
  detail::ShapePtr node_;
};

// Unit <-> Unit, Bits(n) <-> Reg(n), Pair <-> Pair, leafwise.
bool same_shape(const SignalShape& sig, const StateShape& st);

// Depth-first, left-to-right Bits widths; Unit contributes nothing.
std::vector<unsigned> flatten(const SignalShape& shape);
std::vector<unsigned> flatten(const StateShape& shape);

// Right-nested Pair of n identical leaves; n = 1 is the bare leaf.
SignalShape repeat_sig(unsigned n, unsigned width);
StateShape repeat_state(unsigned n, unsigned width);

// True iff every leaf is Bits(width) and no Unit occurs anywhere.
bool homogeneous(const SignalShape& shape, unsigned width);

// JSON text: {"unit":true} | {"bits":w} | {"pair":[l,r]}.
std::string shape_to_json(const SignalShape& shape);

// ---------------------------------------------------------------------------
// Runtime value trees, structurally identical to their shapes.
// ---------------------------------------------------------------------------

class SignalValue {
 public:
  static SignalValue unit();
  static SignalValue bits(BitVector v);
  static SignalValue pair(SignalValue l, SignalValue r);

  ShapeTag tag() const;
  const BitVector& scalar() const;
  SignalValue left() const;
  SignalValue right() const;

  SignalShape shape() const;
  bool conforms(const SignalShape& s) const { return shape() == s; }

  bool operator==(const SignalValue& o) const;
  bool operator!=(const SignalValue& o) const { return !(*this == o); }

  // Leaves, left to right.
  std::vector<BitVector> flat() const;
  // Rebuilds a value of `shape` from flat leaves; TraceShapeError on
  // count/width mismatch.
  static SignalValue from_flat(const SignalShape& shape,
                               const std::vector<BitVector>& leaves);

  std::string str() const;

 private:
  struct Node;
  explicit SignalValue(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Register contents live in the same tree representation as signals; the two
// aliases keep call sites honest about which side of the get/set boundary a
// value sits on.
class StateValue {
 public:
  static StateValue unit();
  static StateValue reg(BitVector v);
  static StateValue pair(StateValue l, StateValue r);

  ShapeTag tag() const { return v_.tag(); }
  const BitVector& scalar() const { return v_.scalar(); }
  StateValue left() const { return StateValue(v_.left()); }
  StateValue right() const { return StateValue(v_.right()); }

  StateShape shape() const;
  bool conforms(const StateShape& s) const { return shape() == s; }

  bool operator==(const StateValue& o) const { return v_ == o.v_; }
  bool operator!=(const StateValue& o) const { return !(*this == o); }

  std::vector<BitVector> flat() const { return v_.flat(); }
  static StateValue from_flat(const StateShape& shape,
                              const std::vector<BitVector>& leaves);

  std::string str() const { return v_.str(); }

  // Structure-preserving casts across the SameShape correspondence.
  SignalValue as_signal() const { return v_; }
  static StateValue from_signal(const SignalValue& v) { return StateValue(v); }

 private:
  explicit StateValue(SignalValue v) : v_(std::move(v)) {}
  SignalValue v_;
};

}  // namespace syndsl
