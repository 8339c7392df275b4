#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "billiards/stability.hpp"
#include "test_support.hpp"

using namespace billiards;

namespace {

const TriangleShape kEquilateral = TriangleShape::of_pi(Rational::of(1, 3), Rational::of(1, 3));
const TriangleShape k306090 = TriangleShape::of_pi(Rational::of(1, 6), Rational::of(1, 3));
const EdgeWord kFagnano = EdgeWord::of({1, 2, 3, 1, 2, 3});

WindingVector wv(std::initializer_list<long long> v) {
    WindingVector out;
    std::copy(v.begin(), v.end(), out.w.begin());
    return out;
}

}  // namespace

TEST_CASE("stability is tau membership") {
    CHECK(is_stable(kFagnano));
    CHECK(!is_stable(EdgeWord::of({1, 2, 1, 2, 3, 1, 3, 2})));
    CHECK(!is_stable(EdgeWord::of({1, 2, 3})));
    CHECK(!is_stable(EdgeWord::of({1, 2, 3, 1, 2})));
}

TEST_CASE("winding vectors of plain words") {
    CHECK(winding_vector(kFagnano) == wv({0, 0, 0}));
    const auto w1212 = winding_vector(EdgeWord::of({1, 2, 1, 2}));
    CHECK((w1212 == wv({0, 0, 2}) || w1212 == wv({0, 0, -2})));
    const auto w2323 = winding_vector(EdgeWord::of({2, 3, 2, 3}));
    CHECK((w2323 == wv({2, 0, 0}) || w2323 == wv({-2, 0, 0})));
    CHECK_THROWS(winding_vector(EdgeWord::of({1, 2, 3})));
    CHECK_THROWS(winding_vector(EdgeWord::of({1, 2}, 4)));
}

TEST_CASE("pivot windings match honestly swept angles") {
    // Words whose crossings all touch one vertex realize their class as a
    // genuine loop around that single point; the swept angle fixes sign and
    // magnitude of the winding convention geometrically.
    struct Case {
        EdgeWord w;
        TriangleShape t;
        int vertex;
    };
    const Case cases[] = {
        {EdgeWord::of({1, 2, 1, 2}), TriangleShape::of_pi(Rational::of(1, 4), Rational::of(1, 4)), 3},
        {EdgeWord::of({1, 2, 1, 2}), TriangleShape::of(0.7, kPi / 2 - 0.7), 3},
        {EdgeWord::of({2, 3, 2, 3, 2, 3}), TriangleShape::of(kPi / 3, 0.9), 1},
        {EdgeWord::of({3, 2, 3, 2, 3, 2}), TriangleShape::of(kPi / 3, 0.9), 1},
    };
    for (const auto& c : cases) {
        const auto p = PolygonShape::from_triangle(c.t);
        REQUIRE(eval_word(p, c.w).orthogonal_is_identity(1e-9));
        const double swept = testsupport::sweep_winding_at(p, c.w, c.vertex);
        const auto claimed = winding_vector(c.w);
        CHECK(swept == Catch::Approx(static_cast<double>(claimed.w[c.vertex - 1])).margin(1e-9));
        for (int i = 0; i < 3; ++i)
            if (i != c.vertex - 1) CHECK(claimed.w[i] == 0);
    }
}

TEST_CASE("winding solves the edge-crossing equations") {
    // Each edge of the doubled triangle is an arc between two punctures;
    // the signed crossing count d_i of the word through edge i must equal
    // the winding difference across its endpoints.
    const auto words = testsupport::all_cyclic_words(3, 10);
    for (const auto& w : words) {
        if (w.size() % 2 != 0) continue;
        const auto d = rotation_vector(w).d;
        const auto wind = winding_vector(w);
        // edge i joins vertices i+1 and i+2 (cyclically)
        CHECK(d[0] == wind.w[1] - wind.w[2]);
        CHECK(d[1] == wind.w[2] - wind.w[0]);
        CHECK(d[2] == wind.w[0] - wind.w[1]);
    }
}

TEST_CASE("stability iff null winding for all short even words") {
    const auto words = testsupport::all_cyclic_words(3, 10);
    for (const auto& w : words) {
        if (w.size() % 2 != 0) {
            CHECK(!is_stable(w));
            continue;
        }
        CHECK(is_stable(w) == winding_vector(w).is_null());
    }
}

TEST_CASE("decorating the Fagnano saddle against a nearby acute triangle") {
    const auto p = PolygonShape::from_triangle(k306090);
    const auto q = PolygonShape::from_triangle(kEquilateral);
    const auto d = decorate(p, kFagnano, q);
    REQUIRE(d.strikes.size() == 2);
    REQUIRE(d.decorations.size() == 2);
    // the two detours run in opposite directions
    CHECK(d.decorations[0] == flipped(d.decorations[1]));
    CHECK(winding_vector(kFagnano, d) == wv({0, 0, 0}));
    CHECK(arises_from_stable(d));
}

TEST_CASE("forcing all semicircles one way breaks null homology") {
    const auto p = PolygonShape::from_triangle(k306090);
    const auto q = PolygonShape::from_triangle(kEquilateral);
    auto d = decorate(p, kFagnano, q);
    for (auto& dir : d.decorations) dir = SemicircleDir::CCW;
    CHECK(!arises_from_stable(d));
    const auto w = winding_vector(kFagnano, d);
    CHECK(w == wv({0, 0, 2}));
}

TEST_CASE("an undecorated stable word arises from itself") {
    DecoratedPath d;
    d.word = kFagnano;
    CHECK(arises_from_stable(d));
}

TEST_CASE("decorate rejects non-saddle input") {
    const auto eq = PolygonShape::from_triangle(kEquilateral);
    const auto rt = PolygonShape::from_triangle(k306090);
    CHECK_THROWS_AS(decorate(eq, kFagnano, eq), std::domain_error);
    CHECK_THROWS_AS(decorate(rt, kFagnano, rt), std::domain_error);
}

TEST_CASE("decoration flip negates exactly the decoration contribution") {
    const auto p = PolygonShape::from_triangle(k306090);
    const auto q = PolygonShape::from_triangle(kEquilateral);
    const auto d = decorate(p, kFagnano, q);
    const auto base = winding_vector(kFagnano);
    const auto with = winding_vector(kFagnano, d);
    auto flipped_path = d;
    for (auto& dir : flipped_path.decorations) dir = flipped(dir);
    const auto against = winding_vector(kFagnano, flipped_path);
    for (int i = 0; i < 3; ++i)
        CHECK(with.w[i] - base.w[i] == -(against.w[i] - base.w[i]));
}

TEST_CASE("integer relations of unstable closing words") {
    CHECK(integer_relation(EdgeWord::of({1, 2, 1, 2})) ==
          std::array<long long, 3>{0, 0, 4});
    // six alternating pivots about v3 force 6*alpha3 = 0 mod 2*pi
    CHECK(integer_relation(EdgeWord::of({1, 2, 1, 2, 1, 2})) ==
          std::array<long long, 3>{0, 0, 6});
    CHECK(integer_relation(EdgeWord::of({3, 1, 3, 2})) ==
          std::array<long long, 3>{-2, 2, 0});
    CHECK_THROWS_AS(integer_relation(kFagnano), std::domain_error);
}

TEST_CASE("relations certify the closing locus") {
    // the relation of [1,2,1,2] holds exactly on right triangles
    std::mt19937_64 rng(42);
    const auto w = EdgeWord::of({1, 2, 1, 2});
    for (int i = 0; i < 20; ++i) {
        const auto t = testsupport::random_right_triangle(rng);
        CHECK(eval_word(PolygonShape::from_triangle(t), w).orthogonal_is_identity(1e-9));
        const auto skew = testsupport::random_triangle(rng);
        if (std::abs(skew.theta1.value + skew.theta2.value - kPi / 2) > 1e-3)
            CHECK(!eval_word(PolygonShape::from_triangle(skew), w)
                       .orthogonal_is_identity(1e-9));
    }
}

TEST_CASE("periodic words on generic triangles are stable") {
    std::mt19937_64 rng(43);
    const auto words = testsupport::all_cyclic_words(3, 8);
    int periodic_found = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto t = testsupport::random_triangle(rng);
        const auto p = PolygonShape::from_triangle(t);
        for (const auto& w : words) {
            if (w.size() % 2 != 0) continue;
            if (!in_tau(w)) continue;  // others cannot close on a generic triangle
            if (classify_word(p, w).verdict == WordClass::Periodic) {
                ++periodic_found;
                CHECK(is_stable(w));
            }
        }
    }
    CHECK(periodic_found > 0);
}
