#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "depa/matrix.hpp"

using namespace depa;

TEST_CASE("rational arithmetic is exact") {
    Scalar a = Scalar::rational(1, 3);
    Scalar b = Scalar::rational(2, 5);
    CHECK((a + b) == Scalar::rational(11, 15));
    CHECK((a * b) == Scalar::rational(2, 15));
    CHECK((a / b) == Scalar::rational(5, 6));
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(Scalar::rational(0).inv(), Error);
}

TEST_CASE("prime field arithmetic") {
    long long p = 32003;
    Scalar a = Scalar::mod(-1, p);
    CHECK(a == Scalar::mod(p - 1, p));
    Scalar b = Scalar::mod(12345, p);
    CHECK((b * b.inv()).is_one());
    CHECK_THROWS_AS(Scalar::mod(0, p).inv(), Error);
    CHECK_THROWS_AS(a + Scalar::rational(1), Error);
}

TEST_CASE("parse_scalar literals") {
    CHECK(parse_scalar("3/4", 0) == Scalar::rational(3, 4));
    CHECK(parse_scalar("-2", 0) == Scalar::rational(-2));
    CHECK(parse_scalar("1/2", 7) == Scalar::mod(4, 7));
    CHECK_THROWS_AS(parse_scalar("zz", 0), Error);
}

static Matrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c, 0);
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (int v : row) m.at(i, j++) = Scalar::rational(v);
        ++i;
    }
    return m;
}

TEST_CASE("rank and rref") {
    auto m = from_ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(m.rank() == 2);
    CHECK(Matrix::identity(4, 0).rank() == 4);
    auto null = m.nullspace();
    CHECK(null.rows() == 1);
    // check the nullspace vector actually annihilates
    Vec v(3);
    for (int j = 0; j < 3; ++j) v[j] = null.at(0, j);
    for (auto& x : m.apply(v)) CHECK(x.is_zero());
}

TEST_CASE("inverse and solve") {
    auto m = from_ints({{2, 1}, {1, 1}});
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK((m * *inv) == Matrix::identity(2, 0));
    Vec b{Scalar::rational(3), Scalar::rational(2)};
    auto x = m.solve(b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    auto sing = from_ints({{1, 2}, {2, 4}});
    CHECK_FALSE(sing.inverse().has_value());
    Vec bad{Scalar::rational(1), Scalar::rational(3)};
    CHECK_FALSE(sing.solve(bad).has_value());
}

TEST_CASE("RowSpan incremental rank agrees with batch rank") {
    auto m = from_ints({{1, 2, 3, 4}, {0, 1, 1, 0}, {1, 3, 4, 4}, {2, 0, 1, 1}});
    RowSpan span(0);
    for (int i = 0; i < 4; ++i) {
        Vec v(4);
        for (int j = 0; j < 4; ++j) v[j] = m.at(i, j);
        span.insert(v);
    }
    CHECK(span.rank() == m.rank());
    Vec dep(4);
    for (int j = 0; j < 4; ++j) dep.at(j) = m.at(0, j) + m.at(1, j);
    CHECK(span.contains(dep));
}

TEST_CASE("RowSpan over GF(p)") {
    RowSpan span(7);
    span.insert({Scalar::mod(2, 7), Scalar::mod(1, 7)});
    span.insert({Scalar::mod(4, 7), Scalar::mod(2, 7)});
    CHECK(span.rank() == 1);
    span.insert({Scalar::mod(0, 7), Scalar::mod(3, 7)});
    CHECK(span.rank() == 2);
}
