#include <doctest.h>

#include "parmax/exponents.hpp"

using namespace parmax;

TEST_CASE("exponent parsing and formatting") {
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("2") == Exponent::integer(2));
    CHECK(Exponent::parse("3/2") == Exponent::rational(3, 2));
    CHECK(Exponent::parse("1.5") == Exponent::rational(3, 2));
    CHECK(Exponent::parse("2.25") == Exponent::rational(9, 4));
    CHECK(Exponent::integer(2).str() == "2");
    CHECK(Exponent::rational(3, 2).str() == "3/2");
    CHECK(Exponent::infinity().str() == "inf");
    CHECK_THROWS(Exponent::parse("0.5"));  // below 1
    CHECK_THROWS(Exponent::rational(1, 0));
}

TEST_CASE("exponent ordering") {
    CHECK(Exponent::integer(2) < Exponent::integer(3));
    CHECK(Exponent::rational(3, 2) < Exponent::integer(2));
    CHECK(Exponent::integer(100) < Exponent::infinity());
    CHECK_FALSE(Exponent::infinity() < Exponent::infinity());
}

TEST_CASE("admissibility n/p + 1/q <= 1 is exact") {
    const auto pair = [](const char* p, const char* q) {
        return ExponentPair{Exponent::parse(p), Exponent::parse(q)};
    };
    for (int n : {1, 2}) {
        CHECK(pair("inf", "inf").admissible(n));
        CHECK(pair("inf", "1").admissible(n));
        CHECK(pair(std::to_string(n).c_str(), "inf").admissible(n));
        CHECK(pair(std::to_string(n + 1).c_str(), std::to_string(n + 1).c_str()).admissible(n));
        CHECK(pair(std::to_string(2 * n).c_str(), "2").admissible(n));
        // n/n + 1/1 = 2 > 1
        CHECK_FALSE(pair(std::to_string(n).c_str(), "1").admissible(n));
    }
    // Critical cases recognized exactly.
    CHECK(pair("2", "2").critical(1));
    CHECK(pair("3", "3").critical(2));
    CHECK(pair("4", "2").critical(2));
    CHECK_FALSE(pair("4", "4").critical(1));
    CHECK(pair("3/2", "3").critical(1));  // 1/(3/2) + 1/3 = 2/3 + 1/3 = 1
    // Just above critical fails: 1/(3/2) + 1/2 = 7/6 > 1.
    CHECK_FALSE(pair("3/2", "2").admissible(1));
}
