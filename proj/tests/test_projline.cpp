#include <catch2/catch_amalgamated.hpp>

#include "p1orbit/projline.hpp"
#include "support.hpp"

using namespace p1orbit;
using testsupport::Rng;

namespace {
P1Point<Rational> pt(const char* s) { return parse_point(s); }
}

TEST_CASE("canonical form of projective points") {
    CHECK(P1Point<Rational>(Rational(10), Rational(2)) == pt("5"));
    CHECK(P1Point<Rational>(Rational(3), Rational(0)) == pt("inf"));
    CHECK(P1Point<Rational>(Rational(0), Rational(-7)).is_zero());
    CHECK_THROWS_AS(P1Point<Rational>(Rational(0), Rational(0)), precondition_error);
    // idempotence: rebuilding from the canonical pair changes nothing
    auto x = P1Point<Rational>(Rational(-4), Rational(6));
    CHECK(P1Point<Rational>(x.first(), x.second()) == x);
}

TEST_CASE("point format round-trips") {
    for (const char* s : {"inf", "0", "5", "-1/2", "22/7", "-3"}) {
        CHECK(format_point(parse_point(s)) == s);
    }
    CHECK_THROWS_AS(parse_point("1/0"), parse_error);
    CHECK_THROWS_AS(parse_point("x"), parse_error);
    CHECK_THROWS_AS(parse_point("1/-2"), parse_error);
    CHECK(parse_point("2/4") == pt("1/2"));  // canonicalized on input

    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        auto x = testsupport::random_point(rng);
        CHECK(parse_point(format_point(x)) == x);
    }
}

TEST_CASE("moebius action on points") {
    Rational ex(0);
    auto id = Moebius<Rational>::identity(ex);
    CHECK(id(pt("5")) == pt("5"));

    // diag(t, 1/t) with t = 2 sends z to t^2 z = 4z
    Moebius<Rational> g(Rational(2), Rational(0), Rational(0), Rational(1, 2));
    CHECK(g(pt("3")) == pt("12"));

    Moebius<Rational> inv(Rational(0), Rational(1), Rational(1), Rational(0));
    CHECK(inv(pt("inf")) == pt("0"));
    CHECK(inv(pt("0")) == pt("inf"));
}

TEST_CASE("moebius canonical form and inverse") {
    // projective equality: scaling the matrix changes nothing
    Moebius<Rational> g(Rational(2), Rational(4), Rational(6), Rational(10));
    Moebius<Rational> h(Rational(1), Rational(2), Rational(3), Rational(5));
    CHECK(g == h);
    CHECK(g.entries()[0] == 1);  // first nonzero entry scaled to 1
    CHECK_THROWS_AS(Moebius<Rational>(Rational(1), Rational(2), Rational(2), Rational(4)),
                    precondition_error);

    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        auto m = testsupport::random_moebius(rng);
        CHECK(m * m.inverse() == Moebius<Rational>::identity(Rational(0)));
    }
}

TEST_CASE("cross-ratio examples") {
    // (inf, 0, 1, z) -> z, checked against the determinant oracle
    auto cr = cross_ratio(pt("inf"), pt("0"), pt("1"), pt("5"));
    CHECK(cr == pt("5"));
    auto oracle = testsupport::oracle_cross_ratio({testsupport::homogeneous(pt("inf")),
                                                   testsupport::homogeneous(pt("0")),
                                                   testsupport::homogeneous(pt("1")),
                                                   testsupport::homogeneous(pt("5"))});
    REQUIRE(oracle);
    CHECK(cr == P1Point<Rational>(oracle->first, oracle->second));

    CHECK(cross_ratio(pt("0"), pt("inf"), pt("1"), pt("5")) == pt("1/5"));
    CHECK(cross_ratio(pt("2"), pt("7"), pt("-1"), pt("-1")) == pt("1"));

    // degenerate: three coincident points
    CHECK_THROWS_AS(cross_ratio(pt("1"), pt("1"), pt("1"), pt("2")), precondition_error);
}

TEST_CASE("cross-ratio is moebius-invariant") {
    Rng rng(7);
    int done = 0;
    while (done < 200) {
        auto a = testsupport::random_point(rng), b = testsupport::random_point(rng);
        auto c = testsupport::random_point(rng), d = testsupport::random_point(rng);
        auto g = testsupport::random_moebius(rng);
        try {
            auto before = cross_ratio(a, b, c, d);
            auto after = cross_ratio(g(a), g(b), g(c), g(d));
            CHECK(before == after);
            ++done;
        } catch (const precondition_error&) {
            // degenerate draw, resample
        }
    }
}

TEST_CASE("find_moebius three-point transport") {
    auto e0 = pt("0"), e1 = pt("1"), einf = pt("inf");

    CHECK(find_moebius<Rational>({e0, e1, einf}, {e0, e1, einf}) ==
          Moebius<Rational>::identity(Rational(0)));

    auto inv = find_moebius<Rational>({einf, e0, e1}, {e0, einf, e1});
    CHECK(inv == Moebius<Rational>(Rational(0), Rational(1), Rational(1), Rational(0)));

    auto dbl = find_moebius<Rational>({e0, e1, einf}, {e0, pt("2"), einf});
    CHECK(dbl == Moebius<Rational>(Rational(2), Rational(0), Rational(0), Rational(1)));

    CHECK_THROWS_AS(find_moebius<Rational>({e0, e0, einf}, {e0, e1, einf}), precondition_error);
}

TEST_CASE("find_moebius verified by applying, and round-trips") {
    Rng rng(2718);
    for (int i = 0; i < 200; ++i) {
        auto src = testsupport::random_distinct_triple(rng);
        auto dst = testsupport::random_distinct_triple(rng);
        auto g = find_moebius<Rational>(src, dst);
        for (int k = 0; k < 3; ++k) CHECK(g(src[k]) == dst[k]);
        auto back = find_moebius<Rational>(dst, src);
        CHECK(back * g == Moebius<Rational>::identity(Rational(0)));
    }
}

TEST_CASE("group action composes") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        auto g = testsupport::random_moebius(rng);
        auto h = testsupport::random_moebius(rng);
        auto x = testsupport::random_point(rng);
        CHECK(g(h(x)) == (g * h)(x));
    }
}

TEST_CASE("prime field arithmetic") {
    Fp a(3, 7), b(5, 7);
    CHECK((a + b).value() == 1);
    CHECK((a * b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK(a.inverse().value() == 5);
    CHECK((a / a).value() == 1);
    CHECK_THROWS_AS(Fp(0, 7).inverse(), precondition_error);
    CHECK_THROWS_AS(Fp(1, 6), precondition_error);   // not prime
    CHECK_THROWS_AS(Fp(1, 65537), precondition_error);  // above 2^16

    // Fermat: a^(q-1) = 1
    for (std::uint32_t q : {5u, 13u, 251u}) {
        for (std::uint32_t v = 1; v < q; v += 3) {
            Fp x(v, q), acc(1, q);
            for (std::uint32_t k = 0; k + 1 < q; ++k) acc *= x;
            CHECK(acc.value() == 1);
        }
    }
}

TEST_CASE("mixed fields are rejected") {
    CHECK_THROWS_AS(Fp(1, 7) + Fp(1, 11), precondition_error);
    CHECK_THROWS_AS(Fp(1, 7) == Fp(1, 11), precondition_error);

    auto x7 = P1Point<Fp>::from_value(Fp(3, 7));
    auto x11 = P1Point<Fp>::from_value(Fp(3, 11));
    CHECK_THROWS_AS(x7 == x11, precondition_error);
    CHECK_THROWS_AS(P1Point<Fp>(Fp(1, 7), Fp(1, 11)), precondition_error);
}

TEST_CASE("projective line over a prime field") {
    // the same machinery runs over F_q
    auto g = find_moebius<Fp>({P1Point<Fp>::zero(Fp(0, 7)), P1Point<Fp>::from_value(Fp(1, 7)),
                               P1Point<Fp>::infinity(Fp(0, 7))},
                              {P1Point<Fp>::zero(Fp(0, 7)), P1Point<Fp>::from_value(Fp(2, 7)),
                               P1Point<Fp>::infinity(Fp(0, 7))});
    CHECK(g(P1Point<Fp>::from_value(Fp(3, 7))) == P1Point<Fp>::from_value(Fp(6, 7)));
}
