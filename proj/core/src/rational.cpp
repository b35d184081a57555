#include "madc/rational.hpp"

#include <cctype>
#include <limits>

#include "madc/errors.hpp"

namespace madc {

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational fraction_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) {
      throw InvalidParameters("fraction_from_string: zero denominator in '" + text + "'");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidParameters("fraction_from_string: cannot parse '" + text + "'");
  }
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

long long to_int64(const BigInt& value) {
  if (value < std::numeric_limits<long long>::min() ||
      value > std::numeric_limits<long long>::max()) {
    throw InvalidParameters("to_int64: value " + value.str() + " out of range");
  }
  return value.convert_to<long long>();
}

std::uint64_t to_uint64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    throw InvalidParameters("to_uint64: value " + value.str() + " out of range");
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace madc
