#include "ainf/quiver.hpp"

#include "ainf/examples.hpp"

namespace ainf {

namespace {

constexpr size_t kU0 = 0, kU1 = 1, kH = 2;

Scalar value_at(const Form& f, const Scalar& t) { return f.restrict(Var::T, t).constant(); }

int form_degree(const Form& f) {
  int m = f.max_degree();
  if (!(f.degree_part(m) == f)) throw DomainError("argument is not a homogeneous form");
  return m;
}

QuiverElement add(QuiverElement a, const QuiverElement& b, const Scalar& c = 1) {
  for (size_t i = 0; i < 3; ++i) a[i] += c * b[i];
  return a;
}

int quiver_degree(size_t i) { return i == kH ? 1 : 0; }

QuiverElement quiver_mu(const std::vector<QuiverElement>& xs) {
  QuiverElement r{0, 0, 0};
  if (xs.size() == 1) {
    for (size_t i = 0; i < 3; ++i) r = add(r, QuiverI::differential(i), -xs[0][i]);
  } else if (xs.size() == 2) {
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) {
        Scalar c = xs[0][i] * xs[1][j];
        if (c == 0) continue;
        r = add(r, QuiverI::product(i, j), quiver_degree(i) ? -c : c);
      }
  }
  return r;
}

}  // namespace

SpacePtr QuiverI::space() {
  static const SpacePtr v = make_space({{"u0", 0}, {"u1", 0}, {"h", 1}});
  return v;
}

std::array<Scalar, 3> QuiverI::product(size_t i, size_t j) {
  std::array<Scalar, 3> r{0, 0, 0};
  if (i == kU0 && j == kU0) r[kU0] = 1;
  if (i == kU1 && j == kU1) r[kU1] = 1;
  if ((i == kH && j == kU0) || (i == kU1 && j == kH)) r[kH] = 1;
  return r;
}

std::array<Scalar, 3> QuiverI::differential(size_t i) {
  std::array<Scalar, 3> r{0, 0, 0};
  if (i == kU0) r[kH] = 1;
  if (i == kU1) r[kH] = -1;
  return r;
}

AInfAlgebra QuiverI::algebra(int cap) {
  auto v = space();
  MultiMap d(v, v, 1, 1), prod(v, v, 2, 0);
  for (size_t i = 0; i < 3; ++i) {
    auto di = differential(i);
    for (size_t k = 0; k < 3; ++k)
      if (di[k] != 0) d.add({i}, k, Form(-di[k]));
    for (size_t j = 0; j < 3; ++j) {
      auto p = product(i, j);
      for (size_t k = 0; k < 3; ++k)
        if (p[k] != 0) prod.add({i, j}, k, Form(p[k]));
    }
  }
  return dga_algebra(v, d, prod, cap, "I");
}

Form omega_mu(const std::vector<Form>& args) {
  for (const auto& a : args)
    if (a.depends_on(Var::S)) throw DomainError("forms on I_t must not involve s");
  if (args.size() == 1) return args[0].d();
  if (args.size() == 2) {
    int p = form_degree(args[0]);
    return Scalar(sign_of_parity(p & 1)) * (args[0] * args[1]);
  }
  return Form();
}

QuiverElement phi(const std::vector<Form>& args) {
  QuiverElement r{0, 0, 0};
  if (args.empty()) return r;
  for (const auto& a : args)
    if (a.depends_on(Var::S)) throw DomainError("forms on I_t must not involve s");
  if (args.size() == 1) {
    Form a = args[0].degree_part(0), b = args[0].contract(Var::T);
    Form B = b.antiderivative(Var::T);
    r[kU0] = value_at(a, 0);
    r[kU1] = value_at(a, 1);
    r[kH] = value_at(B, 1) - value_at(B, 0);
    return r;
  }
  // Innermost integral first: I_k(t) = int_0^t b_k, I_j(t) = int_0^t b_j I_{j+1}.
  Form inner(1);
  for (size_t j = args.size(); j-- > 0;) {
    Form b = args[j].contract(Var::T);
    Form anti = (b * inner).antiderivative(Var::T);
    inner = anti - Form(value_at(anti, 0));
  }
  r[kH] = value_at(inner, 1);
  return r;
}

QuiverElement phi_defect(const std::vector<Form>& args) {
  const int n = static_cast<int>(args.size());
  std::vector<int> deg;
  for (const auto& a : args) deg.push_back(form_degree(a));
  QuiverElement r{0, 0, 0};
  // Sum over compositions of n: mu_I^k(Phi^{r_1}, ..., Phi^{r_k}), k <= 2.
  r = add(r, quiver_mu({phi(args)}));
  for (int split = 1; split < n; ++split) {
    std::vector<Form> left(args.begin(), args.begin() + split), right(args.begin() + split, args.end());
    r = add(r, quiver_mu({phi(left), phi(right)}));
  }
  // Minus Phi(1^j, mu^m, 1^rest) with sign (-1)^{sum_{i<=j} (|a_i| - 1)}.
  int prefix = 0;
  for (int j = 0; j < n; ++j) {
    for (int m = 1; m <= 2 && j + m <= n; ++m) {
      std::vector<Form> inner(args.begin() + j, args.begin() + j + m);
      std::vector<Form> outer(args.begin(), args.begin() + j);
      outer.push_back(omega_mu(inner));
      outer.insert(outer.end(), args.begin() + j + m, args.end());
      r = add(r, phi(outer), prefix % 2 ? 1 : -1);
    }
    prefix += deg[j] - 1;
  }
  return r;
}

AInfAlgebra tensor_dga(const AInfAlgebra& B) {
  if (B.internal_d) throw DomainError("algebra already has form coefficients");
  AInfAlgebra OB = B;
  OB.internal_d = true;
  OB.name = "Omega(I) x " + B.name;
  return OB;
}

Element tensor_mu(const AInfAlgebra& OB, const std::vector<Element>& args) {
  const int n = static_cast<int>(args.size());
  if (n < 0 || n > OB.cap) throw DomainError("arity beyond the cap");
  Element r = evaluate(OB.m(n), args);
  if (n == 1 && OB.internal_d)
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += args[0].coeffs[i].d_part(Var::T);
  return r;
}

}  // namespace ainf
