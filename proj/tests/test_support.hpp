#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/polygon.hpp"
#include "billiards/unfolding.hpp"
#include "billiards/word.hpp"

namespace testsupport {

using namespace billiards;

/// Deterministic uniform double in [lo, hi) independent of libstdc++
/// distribution internals.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

inline TriangleShape random_triangle(std::mt19937_64& rng) {
    for (;;) {
        const double t1 = uniform(rng, 0.15, kPi / 2.0 - 0.05);
        const double t2 = uniform(rng, 0.15, kPi / 2.0 - 0.05);
        if (t1 + t2 < kPi - 0.25) return TriangleShape::of(t1, t2);
    }
}

inline TriangleShape random_right_triangle(std::mt19937_64& rng) {
    const double t1 = uniform(rng, 0.25, kPi / 2.0 - 0.25);
    return TriangleShape::of(t1, kPi / 2.0 - t1);
}

/// Random convex polygon with n vertices (counterclockwise), used for
/// exercising the general-labeling path.
inline PolygonShape random_convex_polygon(std::mt19937_64& rng, int n) {
    std::vector<double> angles(n);
    for (auto& a : angles) a = uniform(rng, 0.0, 2.0 * kPi);
    std::sort(angles.begin(), angles.end());
    for (int i = 1; i < n; ++i)
        if (angles[i] - angles[i - 1] < 0.05) angles[i] = angles[i - 1] + 0.05;
    std::vector<Vec2> pts;
    const double r = uniform(rng, 0.5, 2.0);
    for (double a : angles) pts.push_back({r * std::cos(a), r * std::sin(a)});
    return PolygonShape::from_vertices(pts);
}

/// All words of the given length over {1..n} with distinct consecutive
/// letters and (when cyclic) first != last.
inline void enumerate_words(int n, int length, bool cyclic, std::vector<EdgeWord>& out) {
    std::vector<int> cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == length) {
            if (!cyclic || cur.front() != cur.back()) out.push_back(EdgeWord::of(cur, n));
            return;
        }
        for (int l = 1; l <= n; ++l) {
            if (!cur.empty() && cur.back() == l) continue;
            cur.push_back(l);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
}

inline std::vector<EdgeWord> all_cyclic_words(int n, int max_length) {
    std::vector<EdgeWord> out;
    for (int len = 2; len <= max_length; ++len) enumerate_words(n, len, true, out);
    return out;
}

/// Independent geometric winding-number oracle around a vertex every
/// crossed edge of the word is adjacent to.  The path of the word is
/// realized as the chain of chords through the midpoints of the crossed
/// strip edges; all lifts of the vertex coincide, so the swept angle around
/// that single point is honestly the path's angular progress.  On the
/// doubled punctured sphere the puncture is a cone point of angle
/// 2*alpha_v, so sweeping by that amount is one full loop.
inline double sweep_winding_at(const PolygonShape& p, const EdgeWord& w, int vertex) {
    const UnfoldingStrip strip = unfold(p, w);
    const Closure cl = closure(strip);
    if (!cl.is_translation) throw std::domain_error("sweep oracle: not translation-closed");
    const int K = strip.crossings();
    const Vec2 center = p.vertex(vertex);
    std::vector<Vec2> mid(K + 2);
    for (int k = 1; k <= K; ++k) {
        const auto ce = strip.crossed_edge(k);
        mid[k] = (ce.a + ce.b) * 0.5;
        if (strip.vertex_copy(k, vertex).approx(center, 1e-9) == false)
            throw std::domain_error("sweep oracle: crossing not adjacent to the vertex");
    }
    mid[K + 1] = cl.full.apply(mid[1]);

    double total = 0.0;
    for (int k = 1; k <= K; ++k) {
        const Vec2 a = mid[k] - center, b = mid[k + 1] - center;
        total += std::atan2(a.cross(b), a.dot(b));
    }
    return total / (2.0 * p.interior_angle(vertex).value);
}

}  // namespace testsupport
