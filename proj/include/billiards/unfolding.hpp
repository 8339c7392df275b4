#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/polygon.hpp"
#include "billiards/word.hpp"

namespace billiards {

/// The strip of reflected polygon copies along a word.  Copy k is the image
/// of the base polygon under placements[k]; crossing k (1-based) is the edge
/// shared by copies k-1 and k.
struct UnfoldingStrip {
    PolygonShape base;
    EdgeWord word;
    std::vector<PlanarIsometry> placements;

    int copies() const { return static_cast<int>(placements.size()); }
    int crossings() const { return copies() - 1; }

    /// Endpoints of the shared edge between copies k-1 and k, with the
    /// vertex labels of the base edge they descend from.
    struct CrossedEdge {
        Vec2 a, b;
        int label_a = 0, label_b = 0;
        int edge_label = 0;
    };

    CrossedEdge crossed_edge(int k) const {
        if (k < 1 || k > crossings()) throw std::out_of_range("crossing index");
        const int e = word.letters[k - 1];
        const auto [va, vb] = base.edge_vertex_labels(e);
        const auto& g = placements[k];
        return {g.apply(base.vertex(va)), g.apply(base.vertex(vb)), va, vb, e};
    }

    Vec2 vertex_copy(int copy, int vertex_label) const {
        return placements.at(copy).apply(base.vertex(vertex_label));
    }
};

inline UnfoldingStrip unfold(const PolygonShape& p, const EdgeWord& w) {
    return UnfoldingStrip{p, w, word_placements(p, w)};
}

/// The isometry carrying copy 0 to the final copy, tagged by whether its
/// linear part is the identity (in which case the strip closes up to a
/// translation and the word can support a straight periodic line).
struct Closure {
    PlanarIsometry full;
    bool is_translation = false;
    Vec2 translation{};
};

inline Closure closure(const UnfoldingStrip& strip, double tol = kDefaultTol) {
    Closure c;
    c.full = strip.placements.back();
    c.is_translation = c.full.orthogonal_is_identity(tol);
    if (c.is_translation) c.translation = c.full.t;
    return c;
}

enum class WordClass { Periodic, Saddle, Infeasible };

inline const char* to_string(WordClass c) {
    switch (c) {
        case WordClass::Periodic: return "periodic";
        case WordClass::Saddle: return "saddle";
        default: return "infeasible";
    }
}

/// A vertex copy that attains one of the corridor bounds.  `crossing` is the
/// 1-based crossing index whose constraint is tight; the vertex copy is
/// placements[crossing].apply(vertex).  Side is relative to the travel
/// direction: vertices pinching from below lie right of every corridor
/// line, vertices pinching from above lie left.
struct TightVertex {
    int crossing = 0;
    int vertex_label = 0;
    bool left = false;
    double along = 0.0;  // position along the direction, for ordering
    Vec2 where{};        // position of the vertex copy in the strip
};

/// Feasible band of parallel lines through an unfolding strip: every line
/// with direction `direction` and signed offset in the open interval
/// (lo, hi) crosses all strip edges in order.
struct Corridor {
    Vec2 direction{1.0, 0.0};
    double lo = 0.0, hi = 0.0;
    bool empty = false;
    std::vector<TightVertex> tight_lo, tight_hi;

    double width() const { return empty ? -std::numeric_limits<double>::infinity() : hi - lo; }
    double midline() const { return 0.5 * (lo + hi); }

    bool open(double tol = kDefaultTol) const { return !empty && width() > tol; }
    bool degenerate(double tol = kDefaultTol) const {
        return !empty && std::abs(width()) <= tol;
    }

    /// Tight vertices of a degenerate corridor in along-path order,
    /// deduplicated per (crossing, vertex) location.
    std::vector<TightVertex> strikes() const {
        std::vector<TightVertex> all = tight_lo;
        all.insert(all.end(), tight_hi.begin(), tight_hi.end());
        std::sort(all.begin(), all.end(), [](const TightVertex& x, const TightVertex& y) {
            if (x.along != y.along) return x.along < y.along;
            if (x.crossing != y.crossing) return x.crossing < y.crossing;
            return x.vertex_label < y.vertex_label;
        });
        std::vector<TightVertex> out;
        for (const auto& t : all) {
            bool dup = false;
            for (const auto& u : out)
                if (u.where.approx(t.where, 1e-7)) dup = true;
            if (!dup) out.push_back(t);
        }
        return out;
    }
};

namespace detail {

struct LinearOffset {  // tau(c) = t0 + t1 * c, the crossing point parameter
    double t0 = 0.0, t1 = 0.0;
    double at(double c) const { return t0 + t1 * c; }
};

struct CorridorBuilder {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool empty = false;
    std::vector<std::pair<double, TightVertex>> lower, upper;

    void add_lower(double bound, TightVertex tv) {
        lower.push_back({bound, tv});
        lo = std::max(lo, bound);
    }
    void add_upper(double bound, TightVertex tv) {
        upper.push_back({bound, tv});
        hi = std::min(hi, bound);
    }

    Corridor finish(Vec2 u, double tol) const {
        Corridor c;
        c.direction = u;
        c.empty = empty;
        c.lo = lo;
        c.hi = hi;
        if (!std::isfinite(lo) || !std::isfinite(hi)) c.empty = true;
        if (c.empty) return c;
        for (const auto& [b, tv] : lower)
            if (b >= lo - tol) c.tight_lo.push_back(tv);
        for (const auto& [b, tv] : upper)
            if (b <= hi + tol) c.tight_hi.push_back(tv);
        return c;
    }
};

}  // namespace detail

/// Corridor of a strip whose closure is a translation.  The offset interval
/// is the intersection of the bands cut by each crossed edge with the
/// half-lines enforcing forward progress of successive crossing points
/// (including the wrap-around constraint closing the period).  A word that
/// forces backtracking yields an empty corridor.
inline Corridor corridor(const UnfoldingStrip& strip, double tol = kDefaultTol) {
    const Closure cl = closure(strip, tol);
    if (!cl.is_translation)
        throw std::domain_error("corridor: strip closure is not a translation");
    const double period = cl.translation.norm();
    if (period <= tol)
        throw std::domain_error("corridor: closure translation is degenerate (zero)");
    const Vec2 u = cl.translation.normalized();
    const Vec2 nh = u.perp();

    const int K = strip.crossings();
    detail::CorridorBuilder cb;
    std::vector<detail::LinearOffset> tau(K + 1);

    for (int k = 1; k <= K; ++k) {
        const auto ce = strip.crossed_edge(k);
        const double na = nh.dot(ce.a), nb = nh.dot(ce.b);
        const double ta = u.dot(ce.a), tb = u.dot(ce.b);
        if (std::abs(nb - na) <= tol) {
            // Edge parallel to the travel direction: no transversal crossing.
            cb.empty = true;
            break;
        }
        const double slope = (tb - ta) / (nb - na);
        tau[k] = {ta - slope * na, slope};

        const bool a_low = na < nb;
        const TightVertex tva{k, ce.label_a, !a_low, ta, ce.a};
        const TightVertex tvb{k, ce.label_b, a_low, tb, ce.b};
        if (a_low) {
            cb.add_lower(na, tva);
            cb.add_upper(nb, tvb);
        } else {
            cb.add_lower(nb, tvb);
            cb.add_upper(na, tva);
        }
    }

    if (!cb.empty) {
        for (int k = 1; k <= K; ++k) {
            // Progress constraint between crossing k and its successor; the
            // successor of crossing K is the translate of crossing 1.
            const bool wrap = (k == K);
            const detail::LinearOffset next = wrap ? tau[1] : tau[k + 1];
            const double extra = wrap ? period : 0.0;
            const double g0 = next.t0 + extra - tau[k].t0;
            const double g1 = next.t1 - tau[k].t1;

            const int e1 = strip.word.letters[k - 1];
            const int e2 = wrap ? strip.word.letters[0] : strip.word.letters[k];
            const int pivot = strip.base.shared_vertex_label(e1, e2);

            if (std::abs(g1) <= tol) {
                if (g0 < -tol) {
                    cb.empty = true;
                    break;
                }
                continue;
            }
            const double cstar = -g0 / g1;
            const Vec2 coincide = u * tau[k].at(cstar) + nh * cstar;
            TightVertex tv{k, pivot, false, tau[k].at(cstar), coincide};
            if (g1 > 0.0) {
                tv.left = false;
                cb.add_lower(cstar, tv);
            } else {
                tv.left = true;
                cb.add_upper(cstar, tv);
            }
        }
    }

    Corridor c = cb.finish(u, tol);
    if (!c.empty && c.width() < -tol) {
        c.empty = true;
        c.tight_lo.clear();
        c.tight_hi.clear();
    }
    return c;
}

/// Full classification of a cyclic word on a polygon.
struct Classification {
    WordClass verdict = WordClass::Infeasible;
    Closure close;
    std::optional<Corridor> corr;

    double corridor_width() const {
        return corr && !corr->empty ? std::max(corr->width(), 0.0) : 0.0;
    }
    std::vector<TightVertex> strikes() const {
        return corr ? corr->strikes() : std::vector<TightVertex>{};
    }
};

inline Classification classify_word(const PolygonShape& p, const EdgeWord& w,
                                    double tol = kDefaultTol) {
    if (!w.cyclic_valid())
        throw std::domain_error("classify_word: word is not cyclically valid");
    Classification r;
    const UnfoldingStrip strip = unfold(p, w);
    r.close = closure(strip, tol);
    if (!r.close.is_translation || r.close.translation.norm() <= tol) {
        r.verdict = WordClass::Infeasible;
        return r;
    }
    r.corr = corridor(strip, tol);
    if (r.corr->open(tol))
        r.verdict = WordClass::Periodic;
    else if (r.corr->degenerate(tol))
        r.verdict = WordClass::Saddle;
    else
        r.verdict = WordClass::Infeasible;
    return r;
}

/// Re-classification of a word on another polygon with the same edge count
/// (the combinatorial transfer of a trajectory to a nearby polygon).
inline Classification transfer(const EdgeWord& w, const PolygonShape& p,
                               const PolygonShape& q, double tol = kDefaultTol) {
    if (p.n() != q.n())
        throw std::domain_error("transfer: polygons have different edge counts");
    const Classification on_p = classify_word(p, w, tol);
    if (on_p.verdict == WordClass::Infeasible)
        throw std::domain_error("transfer: word is infeasible on the source polygon");
    return classify_word(q, w, tol);
}

}  // namespace billiards
