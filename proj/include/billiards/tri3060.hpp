#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/polygon.hpp"
#include "billiards/unfolding.hpp"
#include "billiards/word.hpp"

namespace billiards::tri3060 {

// ---------------------------------------------------------------------------
// Hexagonal lattice model.  The unfolding of the 30-60-90 triangle is the
// unit regular hexagon centered at the origin (flat bottom edge) with
// opposite edges identified; lifts of a puncture form the lattice spanned by
// u1 = (0, sqrt3) and u2 = (-3/2, sqrt3/2).
// ---------------------------------------------------------------------------

inline Vec2 u1() { return {0.0, std::sqrt(3.0)}; }
inline Vec2 u2() { return {-1.5, std::sqrt(3.0) / 2.0}; }

struct LatticeVector {
    long long n = 0;  // coefficient of u1
    long long m = 0;  // coefficient of u2

    Vec2 embed() const {
        return u1() * static_cast<double>(n) + u2() * static_cast<double>(m);
    }
    bool primitive() const {
        return std::gcd(std::llabs(n), std::llabs(m)) == 1;
    }
    bool operator==(const LatticeVector& o) const { return n == o.n && m == o.m; }
};

/// Element of the level-two congruence subgroup: integer matrix
/// [[a,b],[c,d]] of determinant one congruent to the identity mod 2.
struct GMatrix {
    long long a = 1, b = 0, c = 0, d = 1;

    bool in_group() const {
        return a * d - b * c == 1 && (a & 1) && (d & 1) && !(b & 1) && !(c & 1);
    }
    GMatrix times(const GMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    GMatrix inverse() const { return {d, -b, -c, a}; }
    LatticeVector apply(const LatticeVector& v) const {
        return {a * v.n + b * v.m, c * v.n + d * v.m};
    }
    bool operator==(const GMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

namespace detail {

inline long long egcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return std::llabs(a);
    }
    long long x1, y1;
    const long long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace detail

/// Residue class of a primitive lattice vector mod 2.  The group action
/// preserves it, and within each class the action is transitive.
enum class ParityClass { OneZero, ZeroOne, OneOne };

inline ParityClass parity_of(const LatticeVector& v) {
    const bool n_odd = v.n & 1, m_odd = v.m & 1;
    if (n_odd && m_odd) return ParityClass::OneOne;
    if (n_odd) return ParityClass::OneZero;
    if (m_odd) return ParityClass::ZeroOne;
    throw std::domain_error("vector is not primitive: even parity");
}

inline LatticeVector base_vector(ParityClass p) {
    switch (p) {
        case ParityClass::OneZero: return {1, 0};
        case ParityClass::ZeroOne: return {0, 1};
        default: return {1, 1};
    }
}

struct VectorClass {
    ParityClass parity;
    LatticeVector base;
    GMatrix carrier;  // carrier.apply(base) == the classified vector
};

/// Finds the group element carrying the parity-class base vector onto v.
/// Built from the extended Euclidean algorithm with a parity correction;
/// existence for every primitive vector is the transitivity of the action
/// on each residue class.
inline VectorClass classify_vector(const LatticeVector& v) {
    if (!v.primitive()) throw std::domain_error("classify_vector: gcd(n, m) != 1");
    const ParityClass p = parity_of(v);
    GMatrix g;
    long long x, y;
    switch (p) {
        case ParityClass::OneZero: {
            // columns: (n, m) and (b, d) with n d - m b = 1
            detail::egcd(v.n, -v.m, x, y);
            long long d = x, b = y;
            if (b & 1) { b += v.n; d += v.m; }
            g = {v.n, b, v.m, d};
            break;
        }
        case ParityClass::ZeroOne: {
            // columns: (a, c) and (n, m) with a m - c n = 1
            detail::egcd(v.m, -v.n, x, y);
            long long a = x, c = y;
            if (c & 1) { a += v.n; c += v.m; }
            g = {a, v.n, c, v.m};
            break;
        }
        default: {
            // a + b = n, c + d = m with b, c even: n c' + m b' = n m - 1
            detail::egcd(v.n, v.m, x, y);
            const long long rhs = v.n * v.m - 1;
            long long c = x * rhs, b = y * rhs;
            if (b & 1) { c += v.m; b -= v.n; }
            g = {v.n - b, b, c, v.m - c};
            break;
        }
    }
    if (!g.in_group() || !(g.apply(base_vector(p)) == v))
        throw std::logic_error("classify_vector: carrier construction failed");
    return {p, base_vector(p), g};
}

// ---------------------------------------------------------------------------
// Homology bookkeeping on the punctured hexagon cover.  Classes are written
// in the reduced basis (s, u, v) where s is the total puncture-loop
// coefficient and (u, v) the two translation-loop coefficients; the covering
// map sends (s, u, v) to s - u - v.
// ---------------------------------------------------------------------------

struct H3Class {
    long long s = 0, u = 0, v = 0;
    bool operator==(const H3Class& o) const { return s == o.s && u == o.u && v == o.v; }
};

inline H3Class act(const GMatrix& g, const H3Class& h) {
    return {h.s + (1 - g.a - g.c) * h.u + (1 - g.b - g.d) * h.v,
            g.a * h.u + g.b * h.v,
            g.c * h.u + g.d * h.v};
}

inline long long pstar(const H3Class& h) { return h.s - h.u - h.v; }

// ---------------------------------------------------------------------------
// The four base saddle-connection families and their decorated classes.
// ---------------------------------------------------------------------------

enum class BaseCase { S1, S2, S3, S4 };

inline const char* to_string(BaseCase c) {
    switch (c) {
        case BaseCase::S1: return "s1";
        case BaseCase::S2: return "s2";
        case BaseCase::S3: return "s3";
        default: return "s4";
    }
}

/// A base case repeated `reps` times with a decoration assignment.  The s1
/// and s4 families strike v1 and v3 once per repetition; s2 and s3 strike
/// v3 twice per repetition and never v1.
struct CaseTag {
    BaseCase kind = BaseCase::S1;
    long long reps = 1;
    long long ccw_v1 = 0, cw_v1 = 0;
    long long ccw_v3 = 0, cw_v3 = 0;

    void validate() const {
        if (reps < 1) throw std::domain_error("case repetition count must be positive");
        if (ccw_v1 < 0 || cw_v1 < 0 || ccw_v3 < 0 || cw_v3 < 0)
            throw std::domain_error("negative decoration count");
        const bool strikes_v1 = kind == BaseCase::S1 || kind == BaseCase::S4;
        if (strikes_v1) {
            if (ccw_v1 + cw_v1 != reps || ccw_v3 + cw_v3 != reps)
                throw std::domain_error("s1/s4 decorate one v1 and one v3 strike per repetition");
        } else {
            if (ccw_v1 != 0 || cw_v1 != 0)
                throw std::domain_error("s2/s3 never strike v1");
            if (ccw_v3 + cw_v3 != 2 * reps)
                throw std::domain_error("s2/s3 decorate two v3 strikes per repetition");
        }
    }
};

/// Homology class of the decorated case.  Decoration flips shift only the
/// total puncture coefficient: a counterclockwise circle around a v1 lift
/// adds 3, a clockwise circle around a v3 lift subtracts 1.  The baselines
/// are n*(0,1,0) for the vertical families s1, s2 and n*(1,1,1) for the
/// diagonal families s3, s4, matching their translation classes.
inline H3Class case_class(const CaseTag& t) {
    t.validate();
    const long long n = t.reps;
    switch (t.kind) {
        case BaseCase::S1: return {3 * t.ccw_v1 - t.cw_v3, n, 0};
        case BaseCase::S2: return {t.ccw_v3, n, 0};
        case BaseCase::S3: return {t.ccw_v3 + n, n, n};
        default: return {3 * t.ccw_v1 - t.cw_v3 + n, n, n};
    }
}

enum class CaseVerdict { NotNullHomologous, RayExcluded, AcuteOnly };

inline const char* to_string(CaseVerdict v) {
    switch (v) {
        case CaseVerdict::NotNullHomologous: return "not-null-homologous";
        case CaseVerdict::RayExcluded: return "ray-excluded";
        default: return "acute-only";
    }
}

/// Congruence analysis of a decorated case carried by g: the image on the
/// twice-punctured sphere is null-homologous iff pstar of the transported
/// class vanishes; when it does, the geometric lemma of the family applies
/// (s1/s4 exclude a ray of flattening triangles, s2/s3 pin the tile to
/// acute triangles).
inline CaseVerdict decide_case(const CaseTag& t, const GMatrix& g) {
    if (!g.in_group()) throw std::domain_error("decide_case: matrix not in the group");
    if (pstar(act(g, case_class(t))) != 0) return CaseVerdict::NotNullHomologous;
    return (t.kind == BaseCase::S1 || t.kind == BaseCase::S4)
               ? CaseVerdict::RayExcluded
               : CaseVerdict::AcuteOnly;
}

/// A group element whose transport of the decorated class is null-homologous,
/// when one exists.  For the vertical families this needs the total class
/// shift S to be reps*(an integer congruent to 1 mod 4); for the diagonal
/// families S must be an odd multiple of 2*reps.
inline std::optional<GMatrix> null_carrier(const CaseTag& t) {
    const H3Class h = case_class(t);
    const long long n = t.reps;
    if (t.kind == BaseCase::S1 || t.kind == BaseCase::S2) {
        // need a + c == (S/n + 1) / 2, odd
        if (h.s % n != 0) return std::nullopt;
        const long long xn = h.s / n;
        if ((xn % 4 + 4) % 4 != 1) return std::nullopt;
        const long long k = (xn + 1) / 2;
        const GMatrix g{1, 0, k - 1, 1};
        if (pstar(act(g, h)) != 0) throw std::logic_error("null_carrier: bad construction");
        return g;
    }
    // need a + b + c + d == S / (2n) + 1, even
    if (h.s % (2 * n) != 0) return std::nullopt;
    const long long q = h.s / (2 * n);
    if (((q % 2) + 2) % 2 != 1) return std::nullopt;
    const GMatrix g{1, 0, q + 1 - 2, 1};
    if (pstar(act(g, h)) != 0) throw std::logic_error("null_carrier: bad construction");
    return g;
}

/// Half-hexagon pattern flanking the middle strike of the diagonal unfolding
/// with parameter 2k+1: k half-hexagons before it and k after, distributed
/// B (below) first.
inline std::pair<std::string, std::string> halfhex_pattern(long long k) {
    if (k < 0) throw std::domain_error("halfhex_pattern: negative parameter");
    const auto block = [](long long nb, long long na) {
        return std::string(static_cast<size_t>(nb), 'B') +
               std::string(static_cast<size_t>(na), 'A');
    };
    const long long hi = (k + 1) / 2, lo = k / 2;
    return {block(hi, lo), block(lo, hi)};
}

// ---------------------------------------------------------------------------
// Numerical probe: traces the lattice path of a carried s2 or s3 family
// through the triangulated hexagon plane, then replays the same reflection
// word on an arbitrary triangle to measure how the three strike points move.
// ---------------------------------------------------------------------------

namespace detail {

struct HexTriangle {
    std::array<Vec2, 3> v;  // lifts of v1, v2, v3

    double orientation() const { return (v[1] - v[0]).cross(v[2] - v[0]); }

    // edge i joins the two vertices other than i (1-based labels)
    std::pair<Vec2, Vec2> edge(int label) const {
        switch (label) {
            case 1: return {v[1], v[2]};
            case 2: return {v[0], v[2]};
            default: return {v[0], v[1]};
        }
    }

    HexTriangle reflected(int label) const {
        const auto [p, q] = edge(label);
        const Vec2 d = (q - p).normalized();
        HexTriangle out = *this;
        const int moving = label - 1;
        const Vec2 r = v[moving] - p;
        const Vec2 mirrored = d * (2.0 * d.dot(r)) - r;
        out.v[moving] = p + mirrored;
        return out;
    }

    bool contains(Vec2 p, double tol) const {
        const double o = orientation() > 0 ? 1.0 : -1.0;
        for (int i = 0; i < 3; ++i) {
            const Vec2 a = v[i], b = v[(i + 1) % 3];
            if (o * (b - a).cross(p - a) < -tol) return false;
        }
        return true;
    }
};

/// Seed cell of the kisrhombille triangulation of the unit hexagon: the
/// half-triangle with the small angle at the hexagon center, the large
/// vertex on the hexagon, and the right angle at an edge midpoint.
inline HexTriangle hex_seed() {
    return {{Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.75, std::sqrt(3.0) / 4.0}}};
}

inline HexTriangle locate(Vec2 p) {
    HexTriangle cur = hex_seed();
    for (int guard = 0; guard < 100000; ++guard) {
        const double o = cur.orientation() > 0 ? 1.0 : -1.0;
        int worst = 0;
        double worst_val = 1e300;
        for (int label = 1; label <= 3; ++label) {
            const auto [a, b] = cur.edge(label);
            // inward side test consistent with triangle orientation
            const Vec2 third = cur.v[label - 1];
            const Vec2 n = (b - a).perp();
            const double side = n.dot(p - a) * ((n.dot(third - a) > 0) ? 1.0 : -1.0);
            if (side < worst_val) {
                worst_val = side;
                worst = label;
            }
        }
        (void)o;
        if (worst_val >= -1e-12) return cur;
        cur = cur.reflected(worst);
    }
    throw std::runtime_error("hex locate: walk did not terminate");
}

struct StrikeId {
    int copy = -1;
    int vertex_label = 0;
};

struct HexTrace {
    std::vector<int> word;
    StrikeId X, Y, Z;
    double base_orientation = 1.0;  // sign of copy 0 in the hexagon plane
    std::vector<HexTriangle> cells;  // for diagram output
    Vec2 start{}, finish{};
};

inline std::optional<int> match_vertex(const HexTriangle& t, Vec2 p, double tol) {
    for (int i = 0; i < 3; ++i)
        if (t.v[i].approx(p, tol)) return i + 1;
    return std::nullopt;
}

/// Walks the segment from X to Z shifted slightly to the right of travel,
/// so every strike point sits on the path's left (counterclockwise detours).
inline HexTrace trace_hex_path(Vec2 X, Vec2 Z, double eps = 1e-5) {
    const Vec2 D = Z - X;
    const Vec2 u = D.normalized();
    const Vec2 shift = -u.perp() * eps;
    const Vec2 s0 = X + shift, s1 = Z + shift;
    const Vec2 Y = (X + Z) * 0.5;

    const double t_begin = 1e-8, t_end = 1.0 - 1e-8;
    HexTrace out;
    out.start = s0;
    out.finish = s1;
    HexTriangle cur = locate(s0 + D * t_begin);
    out.base_orientation = cur.orientation() > 0 ? 1.0 : -1.0;
    out.cells.push_back(cur);

    const auto strike_check = [&](double lo, double hi, int copy, const HexTriangle& tri) {
        const auto stamp = [&](Vec2 pt, double tpt, StrikeId& slot) {
            if (slot.copy >= 0 || tpt < lo - 1e-6 || tpt > hi + 1e-6) return;
            if (auto vl = match_vertex(tri, pt, 1e-7)) slot = {copy, *vl};
        };
        stamp(X, 0.0, out.X);
        stamp(Y, 0.5, out.Y);
        stamp(Z, 1.0, out.Z);
    };

    double t_cur = t_begin;
    int copy = 0;
    for (int guard = 0; guard < 100000; ++guard) {
        // earliest exit over the three edges
        double best_t = 1e300;
        int best_label = 0;
        for (int label = 1; label <= 3; ++label) {
            const auto [a, b] = cur.edge(label);
            const Vec2 e = b - a;
            const double denom = D.cross(e);
            if (std::abs(denom) < 1e-14) continue;
            const double t = (a - s0).cross(e) / denom;
            const double s = (a - s0).cross(D) / denom;
            if (t > t_cur + 1e-12 && s > -1e-9 && s < 1.0 + 1e-9 && t < best_t) {
                best_t = t;
                best_label = label;
            }
        }
        if (best_label == 0 || best_t >= t_end) {
            strike_check(t_cur, t_end, copy, cur);
            break;
        }
        strike_check(t_cur, best_t, copy, cur);
        out.word.push_back(best_label);
        cur = cur.reflected(best_label);
        out.cells.push_back(cur);
        t_cur = best_t;
        ++copy;
    }
    if (out.X.copy < 0 || out.Y.copy < 0 || out.Z.copy < 0)
        throw std::runtime_error("hex trace: failed to identify the strike vertices");
    return out;
}

inline Vec2 lattice_basepoint(BaseCase kind) {
    // s2 starts on a lower-right edge midpoint, s3 on the bottom one
    if (kind == BaseCase::S2) return u2() * -0.5;
    return u1() * -0.5;
}

inline LatticeVector carried_vector(BaseCase kind, long long param) {
    // the null-homologous members have c = 1 - a (s2) resp. c + d = 2 - a - b
    // (s3); their directions depend only on a resp. a + b
    if (kind == BaseCase::S2) return {param, 1 - param};
    return {param, 2 - param};
}

}  // namespace detail

struct ProbeResult {
    double residual = 0.0;          // distance of Y from line XZ on the right triangle
    double offset_perturbed = 0.0;  // signed offset after decreasing theta1 by `step`
    double derivative = 0.0;        // (perturbed - right) / step
};

/// Builds the unfolding of one repetition of the carried s2 or s3 family
/// (parameter a resp. a+b, odd and >= 3) on the given right triangle and
/// reports how far the middle strike Y sits from the chord XZ, together
/// with the change when theta1 decreases at fixed theta2.  Positive offsets
/// mean Y lies left of the ray X -> Z, which is "above" in the standard
/// horizontal picture.
inline ProbeResult collinearity_probe(BaseCase kind, long long param,
                                      const TriangleShape& t, double step = 1e-4) {
    if (kind != BaseCase::S2 && kind != BaseCase::S3)
        throw std::domain_error("collinearity_probe: only the diagonal v3 families have one");
    if (param < 3 || param % 2 == 0)
        throw std::domain_error("collinearity_probe: parameter must be odd and >= 3");
    if (!t.is_right(1e-9))
        throw std::domain_error("collinearity_probe: triangle must be right");

    const Vec2 X = detail::lattice_basepoint(kind);
    const Vec2 Z = X + detail::carried_vector(kind, param).embed();
    const detail::HexTrace trace = detail::trace_hex_path(X, Z);

    // Offsets are measured in the unfolding whose base copy is the standard
    // counterclockwise embedding of the triangle: positive means the middle
    // strike lies left of the ray from the first strike to the last.
    const auto offset_on = [&](const TriangleShape& shape) {
        const auto p = PolygonShape::from_triangle(shape);
        const auto strip = unfold(p, EdgeWord::of(trace.word, 3));
        const Vec2 px = strip.vertex_copy(trace.X.copy, trace.X.vertex_label);
        const Vec2 py = strip.vertex_copy(trace.Y.copy, trace.Y.vertex_label);
        const Vec2 pz = strip.vertex_copy(trace.Z.copy, trace.Z.vertex_label);
        return (pz - px).normalized().cross(py - px);
    };

    ProbeResult r;
    const double at_right = offset_on(t);
    r.residual = std::abs(at_right);
    r.offset_perturbed = offset_on(t.perturbed(-step, 0.0));
    r.derivative = (r.offset_perturbed - at_right) / step;
    return r;
}

/// The reflection word of one repetition of the carried family, for diagram
/// output and cross-checks.
inline std::vector<int> family_word(BaseCase kind, long long param) {
    const Vec2 X = detail::lattice_basepoint(kind);
    const Vec2 Z = X + detail::carried_vector(kind, param).embed();
    return detail::trace_hex_path(X, Z).word;
}

}  // namespace billiards::tri3060
