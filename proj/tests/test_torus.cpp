#include <catch2/catch_amalgamated.hpp>

#include "p1orbit/io.hpp"
#include "p1orbit/torus.hpp"
#include "support.hpp"

using namespace p1orbit;
using testsupport::Rng;

TEST_CASE("coordinatewise flow limits") {
    OneParamWeight w{1};
    auto q = parse_tuple("5,inf,0");
    CHECK(format_tuple(limit(w, q, Direction::Positive)) == "0,inf,0");
    CHECK(format_tuple(limit(w, q, Direction::Negative)) == "inf,inf,0");

    // negative weight swaps the two directions
    OneParamWeight neg{-2};
    CHECK(format_tuple(limit(neg, q, Direction::Positive)) == "inf,inf,0");
    CHECK(format_tuple(limit(neg, q, Direction::Negative)) == "0,inf,0");

    // fixed tuples are their own limits
    auto fixed = parse_tuple("0,inf,0,inf");
    CHECK(limit(w, fixed, Direction::Positive) == fixed);
    CHECK(limit(w, fixed, Direction::Negative) == fixed);

    CHECK_THROWS_AS(coordinate_limit(OneParamWeight{0}, parse_point("1"), Direction::Positive),
                    precondition_error);
}

TEST_CASE("limit properties on random tuples") {
    Rng rng(9);
    OneParamWeight w{1};
    for (int i = 0; i < 300; ++i) {
        PointTuple<Rational> q{testsupport::random_point(rng), testsupport::random_point(rng),
                               testsupport::random_point(rng), testsupport::random_point(rng)};
        auto pos = limit(w, q, Direction::Positive);
        auto neg = limit(w, q, Direction::Negative);
        CHECK(limit(w, pos, Direction::Positive) == pos);  // idempotent
        CHECK(limit(w, neg, Direction::Negative) == neg);
        bool fixed = q == pos && q == neg;
        if (!fixed) CHECK(pos != neg);  // the two limits differ off the fixed locus
    }
}

TEST_CASE("fixed tuple classification") {
    CHECK(classify_fixed_tuple(parse_tuple("0,0,0")) == FixedPointLabel::source());
    CHECK(classify_fixed_tuple(parse_tuple("inf,inf,inf,inf")) == FixedPointLabel::sink());
    CHECK(classify_fixed_tuple(parse_tuple("0,inf,0,0")) == FixedPointLabel::a(2));
    CHECK(classify_fixed_tuple(parse_tuple("inf,inf,0,inf")) == FixedPointLabel::b(3));
    CHECK_FALSE(classify_fixed_tuple(parse_tuple("0,0,inf,inf")));  // not a fixed shape in X, r=4
    CHECK_FALSE(classify_fixed_tuple(parse_tuple("0,0,5")));

    CHECK(format_tuple(fixed_tuple(FixedPointLabel::a(2), 4, Rational(0))) == "0,inf,0,0");
    CHECK(format_tuple(fixed_tuple(FixedPointLabel::sink(), 3, Rational(0))) == "inf,inf,inf");
}

TEST_CASE("fixed points by exhaustive enumeration") {
    // independent enumeration of {0, inf}^r against the membership test
    auto brute = [](const Embedding& X) {
        std::vector<PointTuple<Rational>> hits;
        const Rational ex(0);
        for (unsigned mask = 0; mask < (1u << X.r()); ++mask) {
            PointTuple<Rational> t;
            for (int i = 0; i < X.r(); ++i)
                t.push_back((mask >> i) & 1 ? P1Point<Rational>::infinity(ex)
                                            : P1Point<Rational>::zero(ex));
            if (contains(X, t)) hits.push_back(t);
        }
        return hits;
    };

    Embedding r3(parse_tuple("inf,0,1"));
    CHECK(fixed_points(r3).size() == 8);
    CHECK(brute(r3).size() == 8);

    Embedding r4(parse_tuple("inf,0,1,2"));
    auto fps4 = fixed_points(r4);
    CHECK(fps4.size() == 10);
    CHECK(brute(r4).size() == 10);

    Embedding r5(parse_tuple("inf,0,1,2,3"));
    CHECK(fixed_points(r5).size() == 12);
    CHECK(brute(r5).size() == 12);

    // labels, membership, and fixedness of every reported tuple
    for (const auto& [label, tuple] : fps4) {
        CHECK(contains(r4, tuple));
        CHECK(fixed_tuple(label, 4, Rational(0)) == tuple);
        CHECK(limit(OneParamWeight{1}, tuple, Direction::Positive) == tuple);
        CHECK(limit(OneParamWeight{1}, tuple, Direction::Negative) == tuple);
    }
    CHECK(fps4.front().first == FixedPointLabel::source());
    CHECK(fps4.back().first == FixedPointLabel::sink());
}

TEST_CASE("stratum classification of sampled points") {
    Embedding X(parse_tuple("inf,0,1,2"));
    Rng rng(21);

    // points of the i-th boundary line: everything infinite except slot i
    for (int i = 1; i <= 4; ++i) {
        PointTuple<Rational> q(4, P1Point<Rational>::infinity(Rational(0)));
        q[i - 1] = P1Point<Rational>::from_value(testsupport::small_rational(rng));
        auto s = stratum_of(X, q, Direction::Positive);
        CHECK(s.at == FixedPointLabel::b(i));
        CHECK(s.tag == StratumTag::Curve);
        CHECK(s.dimension == 1);
    }

    // divisor points: i-th coordinate zero, the rest generic
    for (int i = 1; i <= 4; ++i) {
        auto q = testsupport::random_generic_orbit_point(rng, X);
        // transport so that slot i lands on zero and the others stay generic
        int a = i % 4, b = (i + 1) % 4;
        auto g = find_moebius<Rational>(
            {q[static_cast<std::size_t>(i) - 1], q[static_cast<std::size_t>(a)],
             q[static_cast<std::size_t>(b)]},
            {P1Point<Rational>::zero(Rational(0)), P1Point<Rational>::from_value(Rational(17)),
             P1Point<Rational>::from_value(Rational(19))});
        auto moved = g(q);
        REQUIRE(contains(X, moved));
        auto s = stratum_of(X, moved, Direction::Negative);
        CHECK(s.at == FixedPointLabel::b(i));
        CHECK(s.tag == StratumTag::Divisor);
        CHECK(s.dimension == 2);
    }

    // generic orbit points flow to the sink and from the source
    for (int k = 0; k < 50; ++k) {
        auto q = testsupport::random_generic_orbit_point(rng, X);
        auto neg = stratum_of(X, q, Direction::Negative);
        CHECK(neg.at == FixedPointLabel::sink());
        CHECK(neg.tag == StratumTag::Open);
        CHECK(neg.dimension == 3);
        auto pos = stratum_of(X, q, Direction::Positive);
        CHECK(pos.at == FixedPointLabel::source());
        CHECK(pos.tag == StratumTag::Open);
    }

    CHECK_THROWS_WITH(stratum_of(X, parse_tuple("5,inf,0,3"), Direction::Negative),
                      Catch::Matchers::ContainsSubstring("not in X"));
}

TEST_CASE("strata at the A fixed points carry sampled dimensions") {
    Embedding X(parse_tuple("inf,0,1,2"));
    auto dims = sampled_a_dims(X);
    REQUIRE(dims.size() == 4);
    for (auto [dp, dn] : dims) {
        CHECK(dp == 2);
        CHECK(dn == 1);
    }

    // a point flowing to A(1): first coordinate infinite, others finite
    auto q = parse_tuple("inf,3,4,5");
    REQUIRE(contains(X, q));
    auto s = stratum_of(X, q, Direction::Positive);
    CHECK(s.at == FixedPointLabel::a(1));
    CHECK(s.tag == StratumTag::Point);
    CHECK(s.dimension == 2);

    // a point flowing to A(1) under the negative flow: only slot 1 nonzero
    auto qn = parse_tuple("9,0,0,0");
    auto sn = stratum_of(X, qn, Direction::Negative);
    CHECK(sn.at == FixedPointLabel::a(1));
    CHECK(sn.dimension == 1);
}

TEST_CASE("census counts grow with the expected exponents") {
    Embedding X(parse_tuple("inf,0,1,2"));
    auto [q1, q2] = good_strata_primes(X);
    CHECK(q1 == 5);
    CHECK(q2 == 7);
    auto t1 = ff_stratum_counts(X, q1);
    auto t2 = ff_stratum_counts(X, q2);

    auto dim_of = [&](FixedPointLabel l, Direction d) {
        return fit_dimension(t1[{l, d}], q1, t2[{l, d}], q2);
    };
    CHECK(dim_of(FixedPointLabel::source(), Direction::Positive) == 3);
    CHECK(dim_of(FixedPointLabel::source(), Direction::Negative) == 0);
    CHECK(dim_of(FixedPointLabel::sink(), Direction::Negative) == 3);
    CHECK(dim_of(FixedPointLabel::sink(), Direction::Positive) == 0);
    for (int i = 1; i <= 4; ++i) {
        CHECK(dim_of(FixedPointLabel::b(i), Direction::Positive) == 1);
        CHECK(dim_of(FixedPointLabel::b(i), Direction::Negative) == 2);
        CHECK(dim_of(FixedPointLabel::a(i), Direction::Positive) == 2);
        CHECK(dim_of(FixedPointLabel::a(i), Direction::Negative) == 1);
    }

    // exact per-prime identities for the A strata counts
    for (std::uint32_t q : {q1, q2}) {
        auto t = ff_stratum_counts(X, q);
        for (int i = 1; i <= 4; ++i) {
            CHECK(t[{FixedPointLabel::a(i), Direction::Positive}] == std::uint64_t(q) * q);
            CHECK(t[{FixedPointLabel::a(i), Direction::Negative}] == q);
        }
    }
}

TEST_CASE("strata summary table") {
    for (const char* pts : {"inf,0,1", "inf,0,1,2", "inf,0,1,2,3"}) {
        Embedding X(parse_tuple(pts));
        auto rows = strata_summary(X);
        REQUIRE(rows.size() == static_cast<std::size_t>(2 * X.r() + 2));
        CHECK(rows.front().at == FixedPointLabel::source());
        CHECK(rows.front().dim_positive == 3);
        CHECK(rows.front().dim_negative == 0);
        CHECK(rows.back().at == FixedPointLabel::sink());
        CHECK(rows.back().dim_negative == 3);
        for (const auto& row : rows) {
            CHECK(row.dim_positive + row.dim_negative >= 3);  // isolated fixed points
            if (row.at.kind == FixedPointLabel::Kind::B) {
                CHECK(row.dim_positive == 1);
                CHECK(row.dim_negative == 2);
                CHECK(row.tag_positive == StratumTag::Curve);
                CHECK(row.tag_negative == StratumTag::Divisor);
            }
            if (row.at.kind == FixedPointLabel::Kind::A) {
                CHECK(row.dim_positive == 2);
                CHECK(row.dim_negative == 1);
            }
        }
    }
}

TEST_CASE("strata summary serializes row per direction") {
    Embedding X(parse_tuple("inf,0,1,2"));
    auto j = io::strata_summary_to_json(strata_summary(X));
    REQUIRE(j.size() == 2 * (2 * 4 + 2));
    CHECK(j[0]["label"] == "source");
    CHECK(j[0]["direction"] == "positive");
    CHECK(j[0]["tag"] == "open");
    CHECK(j[0]["dimension"] == 3);
    CHECK(j[1]["direction"] == "negative");
}

TEST_CASE("open strata are dense: bulk orbit sampling") {
    Embedding X(parse_tuple("inf,0,1,2"));
    Rng rng(2025);
    OneParamWeight w{1};
    for (int i = 0; i < 1000; ++i) {
        auto q = testsupport::random_generic_orbit_point(rng, X);
        CHECK(classify_fixed_tuple(limit(w, q, Direction::Negative)) == FixedPointLabel::sink());
        CHECK(classify_fixed_tuple(limit(w, q, Direction::Positive)) == FixedPointLabel::source());
    }
}
