#include "maba/rational.hpp"

#include "maba/errors.hpp"

#include <stdexcept>

namespace maba {

std::string to_string(const Rational& x) {
  const Integer p = boost::multiprecision::numerator(x);
  const Integer q = boost::multiprecision::denominator(x);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

namespace {
Integer parse_integer(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) throw std::invalid_argument("empty integer in rational literal");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9')
      throw std::invalid_argument("bad digit in rational literal: " + std::string(s));
  }
  return Integer(std::string(s));
}
}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer p = parse_integer(text.substr(0, slash));
  const Integer q = parse_integer(text.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator in rational literal");
  return Rational(p, q);
}

template <typename Scalar>
Scalar ipow(const Scalar& x, int k) {
  if (k < 0) {
    if (x == 0) throw DomainError("negative power of zero");
    return Scalar(1) / ipow(x, -k);
  }
  Scalar result(1);
  Scalar base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

template Rational ipow<Rational>(const Rational&, int);

}  // namespace maba
