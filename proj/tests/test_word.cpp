#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "billiards/polygon.hpp"
#include "billiards/word.hpp"
#include "test_support.hpp"

using namespace billiards;
using testsupport::uniform;

namespace {

const TriangleShape kEquilateral = TriangleShape::of_pi(Rational::of(1, 3), Rational::of(1, 3));
const TriangleShape k306090 = TriangleShape::of_pi(Rational::of(1, 6), Rational::of(1, 3));

std::vector<long long> dvec(const EdgeWord& w) { return rotation_vector(w).d; }

}  // namespace

TEST_CASE("triangle construction matches the labeling conventions") {
    const auto p = PolygonShape::from_triangle(kEquilateral);
    CHECK(p.vertex(3).approx({0.0, 0.0}));
    CHECK(p.vertex(2).approx({1.0, 0.0}));
    CHECK(p.vertex(1).approx({0.5, std::sqrt(3.0) / 2.0}, 1e-12));
    CHECK(p.shared_vertex_label(1, 2) == 3);
    CHECK(p.shared_vertex_label(2, 3) == 1);
    CHECK(p.shared_vertex_label(3, 1) == 2);

    const auto r = PolygonShape::from_triangle(k306090);
    CHECK(r.interior_angle(3).is_zero_mod_pi(1) == false);
    REQUIRE(r.interior_angle(3).pi_mult.has_value());
    CHECK(*r.interior_angle(3).pi_mult == Rational::of(1, 2));
}

TEST_CASE("edge word validation") {
    CHECK_THROWS(EdgeWord::of({1, 1, 2}));
    CHECK_THROWS(EdgeWord::of({0, 1}));
    CHECK_THROWS(EdgeWord::of({1, 4}, 3));
    CHECK(EdgeWord::of({1, 2, 3}).cyclic_valid());
    CHECK(!EdgeWord::of({1, 2, 1}).cyclic_valid());
}

TEST_CASE("reflecting across the base edge is an involution fixing it") {
    const auto p = PolygonShape::from_triangle(kEquilateral);
    const auto r = reflect_edge(p, 1);
    CHECK(r.is_reflection());
    REQUIRE(r.angle.pi_mult.has_value());
    CHECK(*r.angle.pi_mult == Rational::of(0, 1));
    CHECK(r.t.norm() < 1e-15);
    const auto rr = r.after(r);
    CHECK(rr.orthogonal_is_identity());
    CHECK(rr.t.norm() < 1e-12);
}

TEST_CASE("hypotenuse reflection of the right isosceles triangle") {
    // Unit legs at the right angle vertex v3; edge 3 is the hypotenuse.
    const auto p = PolygonShape::from_triangle(TriangleShape::of_pi(
        Rational::of(1, 4), Rational::of(1, 4)));
    CHECK(p.vertex(1).approx({0.0, 1.0}, 1e-12));
    const auto r = reflect_edge(p, 3);
    CHECK(r.apply(p.vertex(3)).approx({1.0, 1.0}, 1e-12));
    CHECK(r.apply(p.vertex(1)).approx(p.vertex(1), 1e-12));
    CHECK(r.apply(p.vertex(2)).approx(p.vertex(2), 1e-12));
}

TEST_CASE("reflection across edge 2 of the 30-60-90 triangle fixes v1 and v3") {
    const auto p = PolygonShape::from_triangle(k306090);
    const auto r = reflect_edge(p, 2);
    CHECK(r.apply(p.vertex(1)).approx(p.vertex(1), 1e-12));
    CHECK(r.apply(p.vertex(3)).approx(p.vertex(3), 1e-12));
    CHECK(!r.apply(p.vertex(2)).approx(p.vertex(2), 1e-6));
}

TEST_CASE("empty word evaluates to the identity") {
    const auto p = PolygonShape::from_triangle(kEquilateral);
    const auto g = eval_word(p, EdgeWord::of({}));
    CHECK(g.orthogonal_is_identity());
    CHECK(g.t.norm() == 0.0);
}

TEST_CASE("alternating word pivots about the shared vertex") {
    const auto p = PolygonShape::from_triangle(kEquilateral);
    const auto g = eval_word(p, EdgeWord::of({1, 2, 1, 2}));
    REQUIRE(g.kind == PlanarIsometry::Kind::Rotation);
    // rotation by +-4*pi/3 about v3 = (0,0), up to full turns
    REQUIRE(g.angle.pi_mult.has_value());
    const bool plus = (g.angle - Angle::pi_times(4, 3)).is_zero_mod_pi(2);
    const bool minus = (g.angle + Angle::pi_times(4, 3)).is_zero_mod_pi(2);
    CHECK((plus || minus));
    CHECK(g.apply(p.vertex(3)).approx(p.vertex(3), 1e-12));
}

TEST_CASE("the Fagnano word evaluates to a pure translation") {
    const auto p = PolygonShape::from_triangle(kEquilateral);
    const auto g = eval_word(p, EdgeWord::of({1, 2, 3, 1, 2, 3}));
    CHECK(g.orthogonal_is_identity());
    CHECK(g.t.norm() > 0.5);
}

TEST_CASE("rotation vectors count signed occurrences by position parity") {
    CHECK(dvec(EdgeWord::of({1, 2, 3, 1, 2, 3})) == std::vector<long long>{0, 0, 0});
    CHECK(dvec(EdgeWord::of({1, 2, 1, 2})) == std::vector<long long>{2, -2, 0});
    CHECK(dvec(EdgeWord::of({1})) == std::vector<long long>{1, 0, 0});
    CHECK(dvec(EdgeWord::of({1, 2})) == std::vector<long long>{1, -1, 0});
    CHECK(rotation_vector(EdgeWord::of({1})).parity == 1);
}

TEST_CASE("tau membership requires even length and vanishing d") {
    CHECK(in_tau(EdgeWord::of({1, 2, 3, 1, 2, 3})));
    CHECK(!in_tau(EdgeWord::of({1, 2, 1, 2})));
    CHECK(!in_tau(EdgeWord::of({1, 2})));
    CHECK(!in_tau(EdgeWord::of({1, 2, 3})));
}

TEST_CASE("concatenation law for rotation vectors") {
    std::mt19937_64 rng(21);
    std::vector<EdgeWord> words;
    testsupport::enumerate_words(3, 4, false, words);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& w1 = words[rng() % words.size()];
        const auto& w2 = words[rng() % words.size()];
        if (w1.letters.back() == w2.letters.front()) continue;
        const auto cat = rotation_vector(w1.concat(w2));
        const auto r1 = rotation_vector(w1);
        const auto r2 = rotation_vector(w2);
        CHECK(cat.parity == (r1.parity + r2.parity) % 2);
        const int sign = r1.parity == 0 ? 1 : -1;
        for (int i = 0; i < 3; ++i) CHECK(cat.d[i] == r1.d[i] + sign * r2.d[i]);
    }
}

TEST_CASE("even words evaluate to rotations by 2 sum d_i phi_i") {
    std::mt19937_64 rng(22);
    std::vector<EdgeWord> words;
    testsupport::enumerate_words(3, 6, false, words);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& w = words[rng() % words.size()];
        const auto t = testsupport::random_triangle(rng);
        const auto p = PolygonShape::from_triangle(t);
        const auto g = eval_word(p, w);
        REQUIRE(g.kind == PlanarIsometry::Kind::Rotation);
        const auto d = rotation_vector(w).d;
        double expect = 0.0;
        for (int i = 0; i < 3; ++i) expect += 2.0 * d[i] * p.edge_direction(i + 1).value;
        CHECK(std::remainder(g.angle.value - expect, 2.0 * kPi) ==
              Catch::Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("tau words have identity linear part on any polygon") {
    std::mt19937_64 rng(23);
    std::vector<EdgeWord> tri_words, quad_words;
    testsupport::enumerate_words(3, 6, false, tri_words);
    testsupport::enumerate_words(4, 6, false, quad_words);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 100; ++trial) {
        const bool quad = (rng() & 1) != 0;
        const auto& pool = quad ? quad_words : tri_words;
        const auto& w = pool[rng() % pool.size()];
        if (!in_tau(w)) continue;
        const PolygonShape p = quad
            ? testsupport::random_convex_polygon(rng, 4)
            : PolygonShape::from_triangle(testsupport::random_triangle(rng));
        CHECK(eval_word(p, w).orthogonal_is_identity(1e-9));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("words with nonzero d twist some triangle") {
    std::mt19937_64 rng(24);
    std::vector<EdgeWord> words;
    testsupport::enumerate_words(3, 6, false, words);
    for (const auto& w : words) {
        if (w.size() % 2 != 0 || in_tau(w)) continue;
        bool twisted = false;
        for (int i = 0; i < 20 && !twisted; ++i) {
            const auto p = PolygonShape::from_triangle(testsupport::random_triangle(rng));
            if (!eval_word(p, w).orthogonal_is_identity(1e-9)) twisted = true;
        }
        CHECK(twisted);
    }
}
