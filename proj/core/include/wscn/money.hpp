#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace wscn {

/// Exact monetary amount. Everything downstream asserts budget identities
/// as equalities, so all arithmetic stays rational; never round to float.
/// Expression templates are off so every subexpression is a plain value.
using Money = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Parses "42", "4.50" or "13/3" into an exact rational.
/// Throws std::invalid_argument on anything else.
Money parse_money(std::string_view text);

/// Lossless rendering: "5" for integers, "13/3" otherwise.
/// parse_money(format_money(x)) == x for every x.
std::string format_money(const Money& amount);

/// Rounded decimal approximation, e.g. 13/3 -> "4.333333" at six places.
/// Rounds half away from zero.
std::string format_decimal(const Money& amount, int places = 6);

}  // namespace wscn
