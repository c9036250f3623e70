#include "decimal.hpp"

#include <cctype>
#include <cstdlib>

namespace psigrh::detail {

mpq decimal_to_mpq(const std::string& s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  bool neg = false;
  if (i < n && (s[i] == '+' || s[i] == '-')) {
    neg = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long long frac_digits = 0;
  bool any = false;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_digits;
      any = true;
    }
  }
  long long expo = 0;
  if (any && i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
      eneg = (s[i] == '-');
      ++i;
    }
    if (i >= n || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw DomainError("bad decimal literal: " + s);
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i])))
      expo = expo * 10 + (s[i++] - '0');
    if (eneg) expo = -expo;
  }
  if (!any || i != n) throw DomainError("bad decimal literal: " + s);

  mpz num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  mpq q(num);
  long long net = expo - frac_digits;
  mpz pow10 = boost::multiprecision::pow(mpz(10), static_cast<unsigned>(net < 0 ? -net : net));
  if (net >= 0)
    q *= mpq(pow10);
  else
    q /= mpq(pow10);
  return q;
}

std::string mpq_to_decimal(const mpq& q) {
  mpz num = boost::multiprecision::numerator(q);
  mpz den = boost::multiprecision::denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;

  long long a = 0, b = 0;
  mpz d = den;
  while (d % 2 == 0) {
    d /= 2;
    ++a;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++b;
  }
  if (d != 1) throw DomainError("rational has no finite decimal expansion");

  long long k = a > b ? a : b;
  mpz scaled = num * boost::multiprecision::pow(mpz(2), static_cast<unsigned>(k - a)) *
               boost::multiprecision::pow(mpz(5), static_cast<unsigned>(k - b));
  std::string digits = scaled.str();
  std::string out;
  if (k == 0) {
    out = digits;
  } else {
    if (static_cast<long long>(digits.size()) <= k)
      digits.insert(0, static_cast<std::size_t>(k + 1 - digits.size()), '0');
    std::string ip = digits.substr(0, digits.size() - static_cast<std::size_t>(k));
    std::string fp = digits.substr(digits.size() - static_cast<std::size_t>(k));
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    out = fp.empty() ? ip : ip + "." + fp;
  }
  if (neg && out != "0") out.insert(out.begin(), '-');
  return out;
}

}  // namespace psigrh::detail
