#include "ainf/form.hpp"

#include <algorithm>
#include <sstream>

namespace ainf {

namespace {

std::uint8_t bit_of(Var v) { return v == Var::S ? kDs : kDt; }

// Sign of (mask_a)(mask_b) -> (mask_a | mask_b) when reordered to ds dt.
int wedge_sign(std::uint8_t a, std::uint8_t b) { return ((a & kDt) && (b & kDs)) ? -1 : 1; }

}  // namespace

Form::Form(const Scalar& c) {
  if (c != 0) terms_.push_back({form_key(0, 0, 0), c});
}

Form Form::monomial(const Scalar& c, int ps, int pt, std::uint8_t mask) {
  if (ps < 0 || pt < 0 || ps > 0xffff || pt > 0xff || mask > 3) throw DomainError("monomial exponent out of range");
  Form f;
  if (c != 0) f.terms_.push_back({form_key(ps, pt, mask), c});
  return f;
}

bool Form::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }

Scalar Form::constant() const {
  if (!terms_.empty() && terms_[0].key == 0) return terms_[0].c;
  return 0;
}

void Form::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const FormTerm& a, const FormTerm& b) { return a.key < b.key; });
  std::vector<FormTerm> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().key == t.key)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const FormTerm& t) { return t.c == 0; });
  terms_ = std::move(out);
}

Form& Form::operator+=(const Form& o) {
  if (o.terms_.empty()) return *this;
  std::vector<FormTerm> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].c + o.terms_[j].c;
      if (c != 0) out.push_back({terms_[i].key, c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  Form neg = o;
  neg *= Scalar(-1);
  return *this += neg;
}

Form& Form::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  Form r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.is_constant()) return Form(b) *= a.terms_[0].c;
  if (b.is_constant()) return Form(a) *= b.terms_[0].c;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      if (x.mask() & y.mask()) continue;
      Scalar c = x.c * y.c;
      if (wedge_sign(x.mask(), y.mask()) < 0) c = -c;
      r.terms_.push_back({form_key(x.ps() + y.ps(), x.pt() + y.pt(), x.mask() | y.mask()), c});
    }
  }
  r.normalize();
  return r;
}

bool operator==(const Form& a, const Form& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

Form Form::degree_part(int m) const {
  Form r;
  for (const auto& t : terms_)
    if (t.degree() == m) r.terms_.push_back(t);
  return r;
}

Form Form::parity_part(int parity) const {
  Form r;
  for (const auto& t : terms_)
    if (t.degree() % 2 == parity) r.terms_.push_back(t);
  return r;
}

int Form::max_degree() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.degree());
  return m;
}

int Form::max_poly_degree() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.ps() + t.pt());
  return m;
}

bool Form::has_differential(std::uint8_t bit) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const FormTerm& t) { return (t.mask() & bit) != 0; });
}

bool Form::depends_on(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const FormTerm& t) {
    return (v == Var::S ? t.ps() : t.pt()) > 0 || (t.mask() & bit_of(v));
  });
}

Form Form::partial(Var v) const {
  Form r;
  for (const auto& t : terms_) {
    int p = v == Var::S ? t.ps() : t.pt();
    if (p == 0) continue;
    int ps = t.ps() - (v == Var::S ? 1 : 0);
    int pt = t.pt() - (v == Var::T ? 1 : 0);
    r.terms_.push_back({form_key(ps, pt, t.mask()), t.c * p});
  }
  r.normalize();
  return r;
}

Form Form::d_part(Var v) const {
  std::uint8_t bit = bit_of(v);
  Form r;
  for (const auto& t : terms_) {
    int p = v == Var::S ? t.ps() : t.pt();
    if (p == 0 || (t.mask() & bit)) continue;
    int ps = t.ps() - (v == Var::S ? 1 : 0);
    int pt = t.pt() - (v == Var::T ? 1 : 0);
    Scalar c = t.c * p;
    // dv placed on the left: dt ^ ds = -ds ^ dt.
    if (wedge_sign(bit, t.mask()) < 0) c = -c;
    r.terms_.push_back({form_key(ps, pt, t.mask() | bit), c});
  }
  r.normalize();
  return r;
}

Form Form::contract(Var v) const {
  std::uint8_t bit = bit_of(v);
  Form r;
  for (const auto& t : terms_) {
    if (!(t.mask() & bit)) continue;
    Scalar c = t.c;
    // iota(ds dt) = dt, iota_t(ds dt) = -ds
    if (v == Var::T && (t.mask() & kDs)) c = -c;
    r.terms_.push_back({form_key(t.ps(), t.pt(), t.mask() & ~bit), c});
  }
  r.normalize();
  return r;
}

Form Form::antiderivative(Var v) const {
  Form r;
  for (const auto& t : terms_) {
    int ps = t.ps() + (v == Var::S ? 1 : 0);
    int pt = t.pt() + (v == Var::T ? 1 : 0);
    int np = v == Var::S ? ps : pt;
    r.terms_.push_back({form_key(ps, pt, t.mask()), t.c / np});
  }
  r.normalize();
  return r;
}

Form Form::restrict(Var v, const Scalar& x) const {
  std::uint8_t bit = bit_of(v);
  Form r;
  for (const auto& t : terms_) {
    if (t.mask() & bit) continue;
    int p = v == Var::S ? t.ps() : t.pt();
    Scalar c = t.c;
    if (p > 0) {
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), p);
      mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), p);
      c *= Scalar(num, den);
    }
    if (c == 0) continue;
    int ps = v == Var::S ? 0 : t.ps();
    int pt = v == Var::T ? 0 : t.pt();
    r.terms_.push_back({form_key(ps, pt, t.mask()), c});
  }
  r.normalize();
  return r;
}

Form Form::swap_vars() const {
  Form r;
  for (const auto& t : terms_) {
    std::uint8_t m = t.mask();
    std::uint8_t nm = static_cast<std::uint8_t>(((m & kDs) ? kDt : 0) | ((m & kDt) ? kDs : 0));
    Scalar c = t.c;
    if (m == (kDs | kDt)) c = -c;
    r.terms_.push_back({form_key(t.pt(), t.ps(), nm), c});
  }
  r.normalize();
  return r;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(t.c);
    if (t.ps() > 0) os << "*s" << (t.ps() > 1 ? "^" + std::to_string(t.ps()) : "");
    if (t.pt() > 0) os << "*t" << (t.pt() > 1 ? "^" + std::to_string(t.pt()) : "");
    if (t.mask() & kDs) os << "*ds";
    if (t.mask() & kDt) os << "*dt";
  }
  return os.str();
}

}  // namespace ainf
