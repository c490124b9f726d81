#include "horofano/rational.hpp"

#include <doctest.h>

using namespace horofano;

TEST_SUITE("rational") {

TEST_CASE("parse and print") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-2")) == "-2");
    CHECK(to_string(parse_rational(" -0.25 ")) == "-1/4");
    CHECK(to_string(parse_rational("+3/9")) == "1/3");
    CHECK(to_string(parse_rational("1.")) == "1");
    CHECK(to_string(parse_rational(".5")) == "1/2");
    CHECK(to_string(parse_rational("010/08")) == "5/4");
    CHECK(to_string(parse_rational("-007")) == "-7");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
}

TEST_CASE("round trip") {
    for (int p = -7; p <= 7; ++p)
        for (int d = 1; d <= 5; ++d) {
            Rational x(p, d);
            CHECK(parse_rational(to_string(x)) == x);
        }
}

TEST_CASE("linear algebra") {
    RMat m{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK(determinant(m) == 1);
    CHECK(mat_mul(m, inverse(m)) == identity(2));
    CHECK(rank(RMat{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
    CHECK_THROWS_AS(inverse(RMat{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), std::invalid_argument);

    RVec x;
    CHECK(solve(m, {Rational(3), Rational(2)}, x));
    CHECK(x == RVec{Rational(1), Rational(1)});
    CHECK_FALSE(solve(RMat{{Rational(1)}, {Rational(1)}}, {Rational(1), Rational(2)}, x));
}

TEST_CASE("primitive scale") {
    RVec v{Rational(2, 3), Rational(-4, 9)};
    const Rational s = primitive_scale(v);
    CHECK(s > 0);
    CHECK(scale(s, v) == RVec{Rational(3), Rational(-2)});
}

TEST_CASE("affine dimension") {
    CHECK(affine_dimension({}) == -1);
    CHECK(affine_dimension({{Rational(1), Rational(1)}}) == 0);
    CHECK(affine_dimension({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}, {Rational(2), Rational(2)}}) == 1);
}

}
