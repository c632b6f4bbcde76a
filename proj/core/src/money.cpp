#include "wscn/money.hpp"

#include <cctype>
#include <stdexcept>

namespace wscn {

namespace {

using BigInt = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                            boost::multiprecision::et_off>;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(int exponent) {
  BigInt result = 1;
  for (int i = 0; i < exponent; ++i) result *= 10;
  return result;
}

[[noreturn]] void bad_money(std::string_view text) {
  throw std::invalid_argument("not a money value: '" + std::string(text) +
                              "' (expected an integer, decimal or fraction string)");
}

}  // namespace

Money parse_money(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) bad_money(text);

  Money magnitude;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_money(text);
    const BigInt n{std::string(num)};
    const BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    magnitude = Money(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_money(text);
    const BigInt scale = pow10(static_cast<int>(frac.size()));
    const BigInt whole_part{std::string(whole)};
    const BigInt frac_part{std::string(frac)};
    magnitude = Money(whole_part * scale + frac_part, scale);
  } else {
    if (!all_digits(body)) bad_money(text);
    const BigInt n{std::string(body)};
    magnitude = Money(n);
  }
  return negative ? -magnitude : magnitude;
}

std::string format_money(const Money& amount) {
  if (denominator(amount) == 1) return numerator(amount).str();
  return numerator(amount).str() + "/" + denominator(amount).str();
}

std::string format_decimal(const Money& amount, int places) {
  const bool negative = amount < 0;
  const BigInt num = negative ? BigInt(-numerator(amount)) : numerator(amount);
  const BigInt den = denominator(amount);

  BigInt scaled = num * pow10(places);
  BigInt quotient = scaled / den;
  BigInt remainder = scaled % den;
  if (remainder * 2 >= den) ++quotient;  // half away from zero

  std::string digits = quotient.str();
  std::string result;
  if (places == 0) {
    result = digits;
  } else {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, places + 1 - digits.size(), '0');
    }
    result = digits.substr(0, digits.size() - places) + "." +
             digits.substr(digits.size() - places);
  }
  if (negative && quotient != 0) result.insert(0, 1, '-');
  return result;
}

}  // namespace wscn
