#include <doctest.h>

#include "wscn/money.hpp"

#include <random>
#include <stdexcept>

using wscn::Money;

TEST_CASE("parse_money handles integers, decimals and fractions") {
  CHECK(wscn::parse_money("42") == Money(42));
  CHECK(wscn::parse_money("0") == Money(0));
  CHECK(wscn::parse_money("4.50") == Money(9) / 2);
  CHECK(wscn::parse_money("0.01") == Money(1) / 100);
  CHECK(wscn::parse_money("13/3") == Money(13) / 3);
  CHECK(wscn::parse_money("-3.25") == Money(-13) / 4);
  CHECK(wscn::parse_money("+7") == Money(7));
}

TEST_CASE("parse_money rejects malformed input") {
  for (const char* bad : {"", "abc", "1.2.3", "1e5", ".5", "5.", "1/0", "1/-2", "--2", "NaN"}) {
    CHECK_THROWS_AS(wscn::parse_money(bad), std::invalid_argument);
  }
}

TEST_CASE("format_money is lossless") {
  CHECK(wscn::format_money(Money(5)) == "5");
  CHECK(wscn::format_money(Money(13) / 3) == "13/3");
  CHECK(wscn::format_money(Money(-9) / 2) == "-9/2");

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Money value = Money(static_cast<long long>(rng() % 20001) - 10000) /
                  Money(static_cast<long long>(rng() % 99) + 1);
    CHECK(wscn::parse_money(wscn::format_money(value)) == value);
  }
}

TEST_CASE("format_decimal rounds half away from zero") {
  CHECK(wscn::format_decimal(Money(13) / 3) == "4.333333");
  CHECK(wscn::format_decimal(Money(1) / 8) == "0.125000");
  CHECK(wscn::format_decimal(Money(1) / 2, 0) == "1");
  CHECK(wscn::format_decimal(Money(-1) / 2, 0) == "-1");
  CHECK(wscn::format_decimal(Money(5), 2) == "5.00");
  CHECK(wscn::format_decimal(Money(-1) / 10000000) == "0.000000");  // no negative zero
}
