#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace ncb {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "7", "-3/4" or a decimal such as "0.125" exactly.
/// Throws std::invalid_argument on malformed input.
Rational parseRational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string formatRational(const Rational &r);

/// A rational or +infinity. Region constants use this for directions no
/// qualifying set bounds.
class ExtRational {
public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}
  ExtRational(long v) : value_(v) {}

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool isInfinite() const { return infinite_; }
  const Rational &value() const;

  friend bool operator==(const ExtRational &a, const ExtRational &b);
  friend std::strong_ordering operator<=>(const ExtRational &a,
                                          const ExtRational &b);
  friend ExtRational operator+(const ExtRational &a, const ExtRational &b);

  std::string str() const;

private:
  Rational value_{0};
  bool infinite_ = false;
};

ExtRational min(const ExtRational &a, const ExtRational &b);

} // namespace ncb
