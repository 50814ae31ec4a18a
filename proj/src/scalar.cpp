#include "ainf/scalar.hpp"

#include <cctype>

namespace ainf {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string owned(s);
  if (!owned.empty() && owned[0] == '+') owned.erase(0, 1);
  return mpz_class(owned, 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) throw ParseError("malformed rational \"" + std::string(text) + "\"");
  if (slash == std::string_view::npos) return Scalar(parse_integer(num));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  mpz_class d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Scalar q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace ainf
