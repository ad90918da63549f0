#include "syndsl/shapes.hpp"

#include <sstream>

namespace syndsl {

namespace detail {

ShapePtr shape_unit() {
  static const ShapePtr u = std::make_shared<const ShapeNode>(
      ShapeNode{ShapeTag::Unit, 0, nullptr, nullptr});
  return u;
}

ShapePtr shape_leaf(unsigned width) {
  return std::make_shared<const ShapeNode>(
      ShapeNode{ShapeTag::Leaf, width, nullptr, nullptr});
}

ShapePtr shape_pair(ShapePtr l, ShapePtr r) {
  return std::make_shared<const ShapeNode>(
      ShapeNode{ShapeTag::Pair, 0, std::move(l), std::move(r)});
}

bool shape_equal(const ShapePtr& a, const ShapePtr& b) {
  if (a == b) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case ShapeTag::Unit: return true;
    case ShapeTag::Leaf: return a->width == b->width;
    case ShapeTag::Pair:
      return shape_equal(a->left, b->left) && shape_equal(a->right, b->right);
  }
  return false;
}

std::string shape_str(const ShapePtr& s, const char* leaf_name) {
  switch (s->tag) {
    case ShapeTag::Unit: return "Unit";
    case ShapeTag::Leaf:
      return std::string(leaf_name) + "(" + std::to_string(s->width) + ")";
    case ShapeTag::Pair:
      return "(" + shape_str(s->left, leaf_name) + ", " +
             shape_str(s->right, leaf_name) + ")";
  }
  return "?";
}

}  // namespace detail

unsigned SignalShape::width() const {
  if (!is_bits()) raise(Err::ShapeError, "width() on non-Bits shape " + str());
  return node_->width;
}

SignalShape SignalShape::left() const {
  if (!is_pair()) raise(Err::ShapeError, "left() on non-Pair shape " + str());
  return SignalShape(node_->left);
}

SignalShape SignalShape::right() const {
  if (!is_pair()) raise(Err::ShapeError, "right() on non-Pair shape " + str());
  return SignalShape(node_->right);
}

unsigned StateShape::width() const {
  if (!is_reg()) raise(Err::ShapeError, "width() on non-Reg shape " + str());
  return node_->width;
}

StateShape StateShape::left() const {
  if (!is_pair()) raise(Err::ShapeError, "left() on non-Pair shape " + str());
  return StateShape(node_->left);
}

StateShape StateShape::right() const {
  if (!is_pair()) raise(Err::ShapeError, "right() on non-Pair shape " + str());
  return StateShape(node_->right);
}

SignalShape StateShape::as_signal() const {
  switch (tag()) {
    case ShapeTag::Unit: return SignalShape::unit();
    case ShapeTag::Leaf: return SignalShape::bits(node_->width);
    case ShapeTag::Pair:
      return SignalShape::pair(left().as_signal(), right().as_signal());
  }
  raise(Err::ShapeError, "corrupt state shape");
}

bool same_shape(const SignalShape& sig, const StateShape& st) {
  if (sig.tag() != st.tag()) return false;
  switch (sig.tag()) {
    case ShapeTag::Unit: return true;
    case ShapeTag::Leaf: return sig.width() == st.width();
    case ShapeTag::Pair:
      return same_shape(sig.left(), st.left()) &&
             same_shape(sig.right(), st.right());
  }
  return false;
}

static void flatten_rec(const SignalShape& s, std::vector<unsigned>& out) {
  switch (s.tag()) {
    case ShapeTag::Unit: return;
    case ShapeTag::Leaf: out.push_back(s.width()); return;
    case ShapeTag::Pair:
      flatten_rec(s.left(), out);
      flatten_rec(s.right(), out);
      return;
  }
}

std::vector<unsigned> flatten(const SignalShape& shape) {
  std::vector<unsigned> out;
  flatten_rec(shape, out);
  return out;
}

std::vector<unsigned> flatten(const StateShape& shape) {
  return flatten(shape.as_signal());
}

SignalShape repeat_sig(unsigned n, unsigned width) {
  if (n == 0) raise(Err::ArityError, "repeat_sig needs n >= 1");
  SignalShape acc = SignalShape::bits(width);
  for (unsigned i = 1; i < n; ++i)
    acc = SignalShape::pair(SignalShape::bits(width), acc);
  return acc;
}

StateShape repeat_state(unsigned n, unsigned width) {
  if (n == 0) raise(Err::ArityError, "repeat_state needs n >= 1");
  StateShape acc = StateShape::reg(width);
  for (unsigned i = 1; i < n; ++i)
    acc = StateShape::pair(StateShape::reg(width), acc);
  return acc;
}

bool homogeneous(const SignalShape& shape, unsigned width) {
  switch (shape.tag()) {
    case ShapeTag::Unit: return false;
    case ShapeTag::Leaf: return shape.width() == width;
    case ShapeTag::Pair:
      return homogeneous(shape.left(), width) &&
             homogeneous(shape.right(), width);
  }
  return false;
}

std::string shape_to_json(const SignalShape& shape) {
  switch (shape.tag()) {
    case ShapeTag::Unit: return "{\"unit\":true}";
    case ShapeTag::Leaf:
      return "{\"bits\":" + std::to_string(shape.width()) + "}";
    case ShapeTag::Pair:
      return "{\"pair\":[" + shape_to_json(shape.left()) + "," +
             shape_to_json(shape.right()) + "]}";
  }
  return "null";
}

// ---------------------------------------------------------------------------
// Value trees
// ---------------------------------------------------------------------------

struct SignalValue::Node {
  ShapeTag tag;
  std::shared_ptr<const BitVector> leaf;
  std::shared_ptr<const Node> left, right;
};

SignalValue SignalValue::unit() {
  static const auto u = std::make_shared<const Node>(
      Node{ShapeTag::Unit, nullptr, nullptr, nullptr});
  return SignalValue(u);
}

SignalValue SignalValue::bits(BitVector v) {
  return SignalValue(std::make_shared<const Node>(
      Node{ShapeTag::Leaf, std::make_shared<const BitVector>(std::move(v)),
           nullptr, nullptr}));
}

SignalValue SignalValue::pair(SignalValue l, SignalValue r) {
  return SignalValue(std::make_shared<const Node>(
      Node{ShapeTag::Pair, nullptr, std::move(l.node_), std::move(r.node_)}));
}

ShapeTag SignalValue::tag() const { return node_->tag; }

const BitVector& SignalValue::scalar() const {
  if (node_->tag != ShapeTag::Leaf)
    raise(Err::ShapeError, "scalar() on non-leaf value");
  return *node_->leaf;
}

SignalValue SignalValue::left() const {
  if (node_->tag != ShapeTag::Pair)
    raise(Err::ShapeError, "left() on non-pair value");
  return SignalValue(node_->left);
}

SignalValue SignalValue::right() const {
  if (node_->tag != ShapeTag::Pair)
    raise(Err::ShapeError, "right() on non-pair value");
  return SignalValue(node_->right);
}

SignalShape SignalValue::shape() const {
  switch (node_->tag) {
    case ShapeTag::Unit: return SignalShape::unit();
    case ShapeTag::Leaf: return SignalShape::bits(node_->leaf->width());
    case ShapeTag::Pair:
      return SignalShape::pair(left().shape(), right().shape());
  }
  raise(Err::ShapeError, "corrupt value");
}

bool SignalValue::operator==(const SignalValue& o) const {
  if (node_ == o.node_) return true;
  if (node_->tag != o.node_->tag) return false;
  switch (node_->tag) {
    case ShapeTag::Unit: return true;
    case ShapeTag::Leaf: return *node_->leaf == *o.node_->leaf;
    case ShapeTag::Pair:
      return left() == o.left() && right() == o.right();
  }
  return false;
}

static void flat_rec(const SignalValue& v, std::vector<BitVector>& out) {
  switch (v.tag()) {
    case ShapeTag::Unit: return;
    case ShapeTag::Leaf: out.push_back(v.scalar()); return;
    case ShapeTag::Pair:
      flat_rec(v.left(), out);
      flat_rec(v.right(), out);
      return;
  }
}

std::vector<BitVector> SignalValue::flat() const {
  std::vector<BitVector> out;
  flat_rec(*this, out);
  return out;
}

static SignalValue from_flat_rec(const SignalShape& shape,
                                 const std::vector<BitVector>& leaves,
                                 size_t& pos) {
  switch (shape.tag()) {
    case ShapeTag::Unit: return SignalValue::unit();
    case ShapeTag::Leaf: {
      if (pos >= leaves.size())
        raise(Err::TraceShapeError, "too few values for shape " + shape.str());
      const BitVector& v = leaves[pos++];
      if (v.width() != shape.width())
        raise(Err::TraceShapeError,
              "value width " + std::to_string(v.width()) + " != leaf width " +
                  std::to_string(shape.width()));
      return SignalValue::bits(v);
    }
    case ShapeTag::Pair: {
      SignalValue l = from_flat_rec(shape.left(), leaves, pos);
      SignalValue r = from_flat_rec(shape.right(), leaves, pos);
      return SignalValue::pair(std::move(l), std::move(r));
    }
  }
  raise(Err::ShapeError, "corrupt shape");
}

SignalValue SignalValue::from_flat(const SignalShape& shape,
                                   const std::vector<BitVector>& leaves) {
  size_t pos = 0;
  SignalValue v = from_flat_rec(shape, leaves, pos);
  if (pos != leaves.size())
    raise(Err::TraceShapeError, "too many values for shape " + shape.str());
  return v;
}

std::string SignalValue::str() const {
  switch (node_->tag) {
    case ShapeTag::Unit: return "()";
    case ShapeTag::Leaf: return node_->leaf->to_hex();
    case ShapeTag::Pair:
      return "(" + left().str() + ", " + right().str() + ")";
  }
  return "?";
}

StateValue StateValue::unit() { return StateValue(SignalValue::unit()); }

StateValue StateValue::reg(BitVector v) {
  return StateValue(SignalValue::bits(std::move(v)));
}

StateValue StateValue::pair(StateValue l, StateValue r) {
  return StateValue(SignalValue::pair(l.v_, r.v_));
}

StateShape StateValue::shape() const {
  switch (tag()) {
    case ShapeTag::Unit: return StateShape::unit();
    case ShapeTag::Leaf: return StateShape::reg(scalar().width());
    case ShapeTag::Pair: return StateShape::pair(left().shape(), right().shape());
  }
  raise(Err::ShapeError, "corrupt state value");
}

StateValue StateValue::from_flat(const StateShape& shape,
                                 const std::vector<BitVector>& leaves) {
  return StateValue(SignalValue::from_flat(shape.as_signal(), leaves));
}

}  // namespace syndsl
