#include "ainf/multimap.hpp"

#include <sstream>

namespace ainf {

namespace {

size_t ipow(size_t b, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// One input slot of a composition: either a block map or the identity.
struct Slot {
  const MultiMap* map;  // nullptr for identity
  int arity;
};

struct Piece {
  size_t index;
  Form coeff;
  int parity;
};

// Splits the coefficients of a vector into (basis index, homogeneous-parity form) pieces.
std::vector<Piece> pieces_of(const std::vector<Form>& coeffs) {
  std::vector<Piece> out;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    Form even = coeffs[i].parity_part(0);
    Form odd = coeffs[i].parity_part(1);
    if (!even.is_zero()) out.push_back({i, std::move(even), 0});
    if (!odd.is_zero()) out.push_back({i, std::move(odd), 1});
  }
  return out;
}

// Adds sign * f(y_1..y_k) * theta to `out` for every choice of pieces, where the pieces are
// the arguments theta_i y_i. The sign collects the moves of theta_i past the internal part of
// f and past the shifted arguments y_j, j < i.
void apply_pieces(const MultiMap& f, const std::vector<std::vector<Piece>>& args, bool signed_,
                  std::vector<Form>& out) {
  const size_t k = args.size();
  const auto& src = *f.src();
  const int f_total = f.shifted_degree();
  std::vector<size_t> ys(k);
  struct Frame {
    Form theta;
    int moves;   // sum_i |theta_i| * sum_{j<i}(|y_j|-1)
    int parity;  // sum_i |theta_i|
    int shifted; // sum_j (|y_j|-1)
  };
  std::function<void(size_t, const Frame&)> rec = [&](size_t i, const Frame& fr) {
    if (i == k) {
      size_t tuple = f.encode(ys);
      for (size_t z = 0; z < out.size(); ++z) {
        const Form& w = f.at(tuple, z);
        if (w.is_zero()) continue;
        for (int wp = 0; wp < 2; ++wp) {
          Form part = w.parity_part(wp);
          if (part.is_zero()) continue;
          Form term = part * fr.theta;
          if (signed_ && ((fr.moves + fr.parity * (f_total - wp)) & 1)) term *= Scalar(-1);
          out[z] += term;
        }
      }
      return;
    }
    for (const auto& p : args[i]) {
      ys[i] = p.index;
      Frame next{fr.theta * p.coeff, fr.moves + p.parity * fr.shifted, fr.parity + p.parity,
                 fr.shifted + src.degree(p.index) - 1};
      if (next.theta.is_zero()) continue;
      rec(i + 1, next);
    }
  };
  rec(0, Frame{Form(1), 0, 0, 0});
}

MultiMap compose_core(const MultiMap& f, const std::vector<Slot>& slots, const SpacePtr& src, bool signed_) {
  if (static_cast<int>(slots.size()) != f.arity()) throw DomainError("composition: wrong number of blocks");
  int arity = 0;
  int shift = f.shift();
  for (const auto& s : slots) {
    arity += s.arity;
    if (s.map) shift += s.map->shift();
  }
  MultiMap result(src, f.dst(), arity, shift);
  const auto& in_space = *src;
  std::vector<std::vector<Piece>> args(slots.size());
  std::vector<Form> out(f.dst()->dim());
  for (size_t tuple = 0; tuple < result.tuple_count(); ++tuple) {
    std::vector<size_t> in = result.decode(tuple);
    int pos = 0;
    int prefix = 0;  // sum of (|a_i|-1) over inputs before the current block
    int sign_exp = 0;
    bool zero = false;
    for (size_t b = 0; b < slots.size(); ++b) {
      const Slot& s = slots[b];
      if (!s.map) {
        args[b] = {Piece{in[pos], Form(1), 0}};
      } else {
        std::vector<size_t> sub(in.begin() + pos, in.begin() + pos + s.arity);
        size_t st = s.map->encode(sub);
        std::vector<Form> coeffs(s.map->dst()->dim());
        for (size_t y = 0; y < coeffs.size(); ++y) coeffs[y] = s.map->at(st, y);
        args[b] = pieces_of(coeffs);
        if (args[b].empty()) {
          zero = true;
          break;
        }
        sign_exp += s.map->shifted_degree() * prefix;
      }
      for (int i = 0; i < s.arity; ++i) prefix += in_space.degree(in[pos + i]) - 1;
      pos += s.arity;
    }
    if (zero) continue;
    for (auto& o : out) o = Form();
    apply_pieces(f, args, signed_, out);
    for (size_t z = 0; z < out.size(); ++z) {
      if (out[z].is_zero()) continue;
      if (signed_ && (sign_exp & 1)) out[z] *= Scalar(-1);
      result.at(tuple, z) = std::move(out[z]);
    }
  }
  return result;
}

}  // namespace

MultiMap::MultiMap(SpacePtr src, SpacePtr dst, int arity, int shift)
    : src_(std::move(src)), dst_(std::move(dst)), arity_(arity), shift_(shift) {
  if (!src_ || !dst_) throw DomainError("multimap needs source and target spaces");
  if (arity < 0) throw DomainError("negative arity");
  tuples_ = ipow(src_->dim(), arity);
  table_.assign(tuples_ * dst_->dim(), Form());
}

MultiMap MultiMap::identity(SpacePtr space) {
  MultiMap m(space, space, 1, 0);
  for (size_t i = 0; i < space->dim(); ++i) m.at(i, i) = Form(1);
  return m;
}

std::vector<size_t> MultiMap::decode(size_t tuple) const {
  std::vector<size_t> in(arity_);
  const size_t d = src_->dim();
  for (int i = arity_ - 1; i >= 0; --i) {
    in[i] = tuple % d;
    tuple /= d;
  }
  return in;
}

size_t MultiMap::encode(const std::vector<size_t>& inputs) const {
  if (static_cast<int>(inputs.size()) != arity_) throw DomainError("input tuple has wrong arity");
  size_t t = 0;
  for (size_t i : inputs) t = t * src_->dim() + i;
  return t;
}

int MultiMap::input_degree_sum(size_t tuple) const {
  int s = 0;
  for (size_t i : decode(tuple)) s += src_->degree(i);
  return s;
}

void MultiMap::add(const std::vector<size_t>& in, size_t out, const Form& c) {
  size_t tuple = encode(in);
  int expected = input_degree_sum(tuple) + shift_ - dst_->degree(out);
  for (const auto& t : c.terms())
    if (t.degree() != expected)
      throw InvariantError("multimap-homogeneous", "entry " + witness_string(tuple, out) + " has form degree " +
                                                       std::to_string(t.degree()) + ", expected " +
                                                       std::to_string(expected));
  at(tuple, out) += c;
}

bool MultiMap::is_zero() const {
  for (const auto& f : table_)
    if (!f.is_zero()) return false;
  return true;
}

bool MultiMap::is_constant() const {
  for (const auto& f : table_)
    if (!f.is_constant()) return false;
  return true;
}

std::optional<std::pair<size_t, size_t>> MultiMap::first_nonzero() const {
  const size_t d = dst_ ? dst_->dim() : 0;
  for (size_t i = 0; i < table_.size(); ++i)
    if (!table_[i].is_zero()) return std::make_pair(i / d, i % d);
  return std::nullopt;
}

std::string MultiMap::witness_string(size_t tuple, size_t out) const {
  std::string s = "(";
  auto in = decode(tuple);
  for (size_t i = 0; i < in.size(); ++i) s += (i ? "," : "") + src_->label(in[i]);
  return s + ") -> " + dst_->label(out);
}

MultiMap& MultiMap::operator+=(const MultiMap& o) {
  if (arity_ != o.arity_ || shift_ != o.shift_ || !same_space(src_, o.src_) || !same_space(dst_, o.dst_))
    throw DomainError("adding maps of different type (arity " + std::to_string(arity_) + "/" +
                      std::to_string(o.arity_) + ", shift " + std::to_string(shift_) + "/" +
                      std::to_string(o.shift_) + ")");
  for (size_t i = 0; i < table_.size(); ++i) table_[i] += o.table_[i];
  return *this;
}

MultiMap& MultiMap::operator-=(const MultiMap& o) {
  MultiMap neg = o;
  neg *= Scalar(-1);
  return *this += neg;
}

MultiMap& MultiMap::operator*=(const Scalar& c) {
  for (auto& f : table_) f *= c;
  return *this;
}

bool MultiMap::operator==(const MultiMap& o) const {
  return arity_ == o.arity_ && shift_ == o.shift_ && same_space(src_, o.src_) && same_space(dst_, o.dst_) &&
         table_ == o.table_;
}

MultiMap MultiMap::map_coefficients(const std::function<Form(const Form&)>& op, int new_shift) const {
  MultiMap r(src_, dst_, arity_, new_shift);
  for (size_t i = 0; i < table_.size(); ++i)
    if (!table_[i].is_zero()) r.table_[i] = op(table_[i]);
  return r;
}

MultiMap MultiMap::left_multiply(const Form& omega) const {
  if (omega.is_zero()) return MultiMap(src_, dst_, arity_, shift_);
  int deg = omega.terms().front().degree();
  for (const auto& t : omega.terms())
    if (t.degree() != deg) throw DomainError("left_multiply needs a homogeneous form");
  return map_coefficients([&](const Form& f) { return omega * f; }, shift_ + deg);
}

MultiMap MultiMap::form_degree_part(int m) const {
  return map_coefficients([m](const Form& f) { return f.degree_part(m); }, shift_);
}

int MultiMap::max_form_degree() const {
  int m = 0;
  for (const auto& f : table_) m = std::max(m, f.max_degree());
  return m;
}

void MultiMap::validate(const std::string& name) const {
  const size_t d = dst_->dim();
  for (size_t i = 0; i < table_.size(); ++i) {
    if (table_[i].is_zero()) continue;
    size_t tuple = i / d, out = i % d;
    int expected = input_degree_sum(tuple) + shift_ - dst_->degree(out);
    for (const auto& t : table_[i].terms())
      if (t.degree() != expected)
        throw InvariantError("multimap-homogeneous", name + " entry " + witness_string(tuple, out) +
                                                         " violates degree shift " + std::to_string(shift_));
  }
}

std::string MultiMap::str() const {
  std::ostringstream os;
  os << "arity " << arity_ << ", shift " << shift_ << "\n";
  const size_t d = dst_->dim();
  for (size_t i = 0; i < table_.size(); ++i)
    if (!table_[i].is_zero()) os << "  " << witness_string(i / d, i % d) << ": " << table_[i].str() << "\n";
  return os.str();
}

MultiMap insert(const MultiMap& f, const MultiMap& g, int j, bool signed_) {
  if (j < 0 || j >= f.arity()) throw DomainError("insert: slot " + std::to_string(j) + " out of range");
  if (!same_space(g.dst(), f.src())) throw DomainError("insert: target of inner map differs from source of outer");
  if (f.arity() > 1 && !same_space(g.src(), f.src()))
    throw DomainError("insert: inner map source differs from outer source");
  std::vector<Slot> slots(f.arity(), Slot{nullptr, 1});
  slots[j] = Slot{&g, g.arity()};
  return compose_core(f, slots, g.src(), signed_);
}

MultiMap compose_blocks(const MultiMap& f, const std::vector<const MultiMap*>& blocks) {
  std::vector<Slot> slots;
  SpacePtr src;
  for (const MultiMap* b : blocks) {
    if (b) {
      if (!same_space(b->dst(), f.src())) throw DomainError("compose: block target differs from outer source");
      if (src && !same_space(src, b->src())) throw DomainError("compose: blocks have different sources");
      src = b->src();
      slots.push_back(Slot{b, b->arity()});
    } else {
      slots.push_back(Slot{nullptr, 1});
    }
  }
  bool has_identity = false;
  for (const auto& s : slots) has_identity |= (s.map == nullptr);
  if (!src) src = f.src();
  if (has_identity && !same_space(src, f.src())) throw DomainError("compose: identity block needs equal spaces");
  return compose_core(f, slots, src, true);
}

Element evaluate(const MultiMap& f, const std::vector<Element>& args) {
  if (static_cast<int>(args.size()) != f.arity())
    throw DomainError("evaluate: expected " + std::to_string(f.arity()) + " arguments, got " +
                      std::to_string(args.size()));
  std::vector<std::vector<Piece>> pieces;
  for (const auto& a : args) {
    if (!same_space(a.space, f.src())) throw DomainError("evaluate: argument in the wrong space");
    if (!a.is_zero() && !a.homogeneous_degree()) throw DomainError("evaluate: argument is not homogeneous");
    pieces.push_back(pieces_of(a.coeffs));
  }
  Element out = Element::zero(f.dst());
  apply_pieces(f, pieces, true, out.coeffs);
  return out;
}

}  // namespace ainf
