#include "schubert/scalar.hpp"

#include "schubert/errors.hpp"

namespace schubert {

Rat rat_from_decimal(const std::string& s) {
  if (s.empty()) throw DomainError("empty number");
  std::string body = s;
  bool neg = false;
  if (body[0] == '+' || body[0] == '-') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  auto dot = body.find('.');
  std::string digits = dot == std::string::npos ? body : body.substr(0, dot) + body.substr(dot + 1);
  size_t frac_len = dot == std::string::npos ? 0 : body.size() - dot - 1;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("not a decimal number: " + s);
  Int num(digits);
  Int den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rat out(num, den);
  return neg ? -out : out;
}

std::string rat_to_string(const Rat& x) {
  Int num = numerator(x), den = denominator(x);
  std::string out = num.str();
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace schubert
