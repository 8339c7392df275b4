#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "billiards/unfolding.hpp"
#include "billiards/word.hpp"

namespace billiards {

/// Winding numbers of a closed triangle word around the three punctures of
/// the doubled triangle.  The class is only defined modulo adding the same
/// integer to every entry (the three elementary loops sum to the boundary);
/// the canonical representative subtracts the median, so the zero class is
/// reported as (0,0,0).
struct WindingVector {
    std::array<long long, 3> w{0, 0, 0};

    bool is_null() const { return w[0] == w[1] && w[1] == w[2]; }

    bool operator==(const WindingVector& o) const { return w == o.w; }
};

enum class SemicircleDir { CW, CCW };

inline SemicircleDir flipped(SemicircleDir d) {
    return d == SemicircleDir::CW ? SemicircleDir::CCW : SemicircleDir::CW;
}

/// A saddle word together with its vertex strikes and the detour direction
/// chosen around each struck vertex.  Strikes follow the order of the
/// degenerate corridor's tight vertices along the period.
struct DecoratedPath {
    EdgeWord word;
    std::vector<TightVertex> strikes;
    std::vector<SemicircleDir> decorations;

    void validate() const {
        if (strikes.size() != decorations.size())
            throw std::domain_error("decorations must match strikes one to one");
    }
};

namespace detail {

/// Signed pivot counts per vertex: pairs of letters at (odd, even) 1-based
/// positions pivot about the vertex their two edges share, counted +1 in the
/// cyclic orientation (1,2)->v3, (2,3)->v1, (3,1)->v2 and -1 reversed.
/// The counterclockwise elementary loop around a vertex carries pivot count
/// -1 there (orientation checked on the equilateral triangle), so the
/// winding class of a word is the negated pivot vector up to the all-ones
/// ambiguity.
inline std::array<long long, 3> pivot_counts(const EdgeWord& w) {
    if (w.alphabet != 3)
        throw std::domain_error("winding vectors are only defined for triangle words");
    if (w.size() % 2 != 0)
        throw std::domain_error("winding vectors require even (closed) words");
    std::array<long long, 3> p{0, 0, 0};
    for (int i = 0; i + 1 < w.size(); i += 2) {
        const int a = w.letters[i], b = w.letters[i + 1];
        const int vertex = 6 - a - b;  // shared vertex of edges a and b
        const bool forward = (b - a + 3) % 3 == 1;  // (1,2),(2,3),(3,1)
        p[vertex - 1] += forward ? +1 : -1;
    }
    return p;
}

inline void subtract_median(std::array<long long, 3>& w) {
    std::array<long long, 3> s = w;
    std::sort(s.begin(), s.end());
    for (auto& x : w) x -= s[1];
}

}  // namespace detail

/// A periodic word is stable iff it lies in tau: every perturbation of a
/// polygon it closes on keeps it periodic exactly when its derivative
/// cocycle vanishes.
inline bool is_stable(const EdgeWord& w) { return in_tau(w); }

/// Winding vector of a triangle word, optionally decorated: each
/// counterclockwise semicircle at a struck vertex contributes +1 there and
/// each clockwise one -1 on top of the word's pivot class.
inline WindingVector winding_vector(const EdgeWord& w,
                                    const std::optional<DecoratedPath>& decorated = {}) {
    const auto p = detail::pivot_counts(w);
    WindingVector out;
    for (int i = 0; i < 3; ++i) out.w[i] = -p[i];
    detail::subtract_median(out.w);
    if (decorated) {
        decorated->validate();
        for (size_t i = 0; i < decorated->strikes.size(); ++i) {
            const int v = decorated->strikes[i].vertex_label;
            if (v < 1 || v > 3) throw std::domain_error("strike vertex label out of range");
            out.w[v - 1] += decorated->decorations[i] == SemicircleDir::CCW ? +1 : -1;
        }
    }
    return out;
}

/// Decorates a saddle word on P with semicircle directions read off a
/// nearby polygon Q on which the word is periodic: a struck vertex whose
/// copy lies left of Q's corridor midline gets a counterclockwise detour,
/// right gets clockwise.
inline DecoratedPath decorate(const PolygonShape& p, const EdgeWord& w,
                              const PolygonShape& q, double tol = kDefaultTol) {
    const Classification on_p = classify_word(p, w, tol);
    if (on_p.verdict != WordClass::Saddle)
        throw std::domain_error("decorate: word is not a saddle connection on P");
    const Classification on_q = classify_word(q, w, tol);
    if (on_q.verdict != WordClass::Periodic)
        throw std::domain_error("decorate: word is not periodic on the reference polygon");

    const UnfoldingStrip strip_q = unfold(q, w);
    const Corridor& cq = *on_q.corr;
    const Vec2 u = cq.direction;
    const Vec2 anchor = u.perp() * cq.midline();

    DecoratedPath d;
    d.word = w;
    d.strikes = on_p.strikes();
    for (const auto& s : d.strikes) {
        const Vec2 v = strip_q.vertex_copy(s.crossing, s.vertex_label);
        const double side = signed_offset(v, anchor, u);
        d.decorations.push_back(side > 0.0 ? SemicircleDir::CCW : SemicircleDir::CW);
    }
    return d;
}

/// A decorated saddle connection arises from a stable periodic trajectory
/// iff its decorated winding class is null.
inline bool arises_from_stable(const DecoratedPath& d) {
    return winding_vector(d.word, d).is_null();
}

/// The integer relation Sum_v c_v * alpha_v == 0 (mod 2*pi) that the
/// interior angles of any triangle closing an unstable word must satisfy;
/// c_v is twice the pivot count at v.  Stable words satisfy no such
/// nontrivial relation.
inline std::array<long long, 3> integer_relation(const EdgeWord& w) {
    if (is_stable(w))
        throw std::domain_error("integer_relation: word is stable, no relation");
    if (w.size() % 2 != 0)
        throw std::domain_error("integer_relation: odd words never close up");
    auto p = detail::pivot_counts(w);
    detail::subtract_median(p);
    return {2 * p[0], 2 * p[1], 2 * p[2]};
}

}  // namespace billiards
