#include "ncb/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ncb {

namespace {

bool allDigits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

// Leading zeros would make the string constructor read octal.
boost::multiprecision::mpz_int decimal(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0')
    digits.remove_prefix(1);
  return boost::multiprecision::mpz_int(std::string(digits));
}

} // namespace

Rational parseRational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!allDigits(num) || !allDigits(den))
      return fail();
    boost::multiprecision::mpz_int d = decimal(den);
    if (d == 0)
      return fail();
    result = Rational(decimal(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !allDigits(whole)) ||
        (!frac.empty() && !allDigits(frac)))
      return fail();
    std::string digits = std::string(whole) + std::string(frac);
    boost::multiprecision::mpz_int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    result = Rational(decimal(digits), scale);
  } else {
    if (!allDigits(s))
      return fail();
    result = Rational(decimal(s));
  }
  return negative ? Rational(-result) : result;
}

std::string formatRational(const Rational &r) {
  if (denominator(r) == 1)
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

const Rational &ExtRational::value() const {
  if (infinite_)
    throw std::logic_error("value() of infinite ExtRational");
  return value_;
}

bool operator==(const ExtRational &a, const ExtRational &b) {
  if (a.infinite_ || b.infinite_)
    return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b) {
  if (a.infinite_ || b.infinite_)
    return int(a.infinite_) <=> int(b.infinite_);
  if (a.value_ < b.value_)
    return std::strong_ordering::less;
  if (b.value_ < a.value_)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational &a, const ExtRational &b) {
  if (a.infinite_ || b.infinite_)
    return ExtRational::infinity();
  return ExtRational(Rational(a.value_ + b.value_));
}

std::string ExtRational::str() const {
  return infinite_ ? "inf" : formatRational(value_);
}

ExtRational min(const ExtRational &a, const ExtRational &b) {
  return b < a ? b : a;
}

} // namespace ncb
