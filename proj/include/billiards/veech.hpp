#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/stability.hpp"

namespace billiards::veech {

inline bool power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

inline void check_n(int n) {
    if (n < 4 || !power_of_two(n))
        throw std::domain_error("n must be a power of two and at least 4");
}

/// One horizontal saddle-connection segment of the two-polygon unfolding of
/// the isosceles triangle with base angle pi/(2n): side L or R and an odd
/// height index k with |k| <= n-1.  The two boundary segments at height
/// +-(n-1) coincide on both sides and are canonicalized to L.
struct Component {
    bool left = true;
    int k = 0;

    static Component of(bool left, int k, int n) {
        check_n(n);
        if (k % 2 == 0 || std::abs(k) > n - 1)
            throw std::domain_error("component height must be odd with |k| <= n-1");
        if (std::abs(k) == n - 1) left = true;
        return Component{left, k};
    }

    bool boundary(int n) const { return std::abs(k) == n - 1; }

    bool operator==(const Component& o) const { return left == o.left && k == o.k; }
    bool operator<(const Component& o) const {
        return k != o.k ? k < o.k : left < o.left;
    }

    std::string name() const { return (left ? "L" : "R") + std::to_string(k); }
};

inline Component mirror(const Component& c, int n) {
    return Component::of(!c.left, c.k, n);
}

/// Transition table for a decorated horizontal saddle connection: crossing
/// the puncture at the end of a component with a clockwise or
/// counterclockwise semicircle determines the next component.  The bottom
/// boundary mirrors the top one with the directions exchanged, which is
/// forced by invariance of the cycles under the half-turn symmetry.
inline Component transition(const Component& c, SemicircleDir dir, int n) {
    check_n(n);
    const bool cw = dir == SemicircleDir::CW;
    if (c.k == n - 1) return Component::of(cw, n - 3, n);        // L on CW, R on CCW
    if (c.k == -(n - 1)) return Component::of(!cw, -(n - 3), n); // R on CW, L on CCW
    if (c.left) return Component::of(false, cw ? c.k + 2 : c.k - 2, n);
    return Component::of(true, cw ? c.k - 2 : c.k + 2, n);
}

/// The unique semicircle direction leading from one component to another,
/// when the pair is adjacent in the transition graph.
inline std::optional<SemicircleDir> direction_between(const Component& from,
                                                      const Component& to, int n) {
    for (const auto d : {SemicircleDir::CW, SemicircleDir::CCW})
        if (transition(from, d, n) == to) return d;
    return std::nullopt;
}

/// A closed decorated component cycle.  dirs[i] decorates the transition
/// from comps[i] to comps[(i+1) % size].
struct DecoratedCycle {
    int n = 4;
    std::vector<Component> comps;
    std::vector<SemicircleDir> dirs;

    int size() const { return static_cast<int>(comps.size()); }

    void validate() const {
        check_n(n);
        if (comps.empty() || comps.size() != dirs.size())
            throw std::domain_error("cycle needs one direction per component");
        for (int i = 0; i < size(); ++i) {
            const auto& next = comps[(i + 1) % size()];
            if (!(transition(comps[i], dirs[i], n) == next))
                throw std::domain_error("cycle breaks the transition table at step " +
                                        std::to_string(i));
        }
    }

    int boundary_count() const {
        int c = 0;
        for (const auto& comp : comps)
            if (comp.boundary(n)) ++c;
        return c;
    }

    bool contains(const Component& c) const {
        return std::find(comps.begin(), comps.end(), c) != comps.end();
    }

    std::string name() const {
        std::string s;
        for (int i = 0; i < size(); ++i) {
            if (i) s += ' ';
            s += comps[i].name();
            s += dirs[i] == SemicircleDir::CW ? "-" : "+";
        }
        return s;
    }
};

namespace detail {

inline std::vector<SemicircleDir> dirs_from_comps(const std::vector<Component>& comps,
                                                  int n) {
    std::vector<SemicircleDir> dirs;
    const int m = static_cast<int>(comps.size());
    for (int i = 0; i < m; ++i) {
        const auto d = direction_between(comps[i], comps[(i + 1) % m], n);
        if (!d) throw std::domain_error("components are not transition-adjacent");
        dirs.push_back(*d);
    }
    return dirs;
}

inline DecoratedCycle from_comps(std::vector<Component> comps, int n) {
    DecoratedCycle c;
    c.n = n;
    c.dirs = dirs_from_comps(comps, n);
    c.comps = std::move(comps);
    c.validate();
    return c;
}

inline std::vector<std::pair<int, int>> encode(const DecoratedCycle& c) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < c.size(); ++i)
        out.push_back({c.comps[i].k * 2 + (c.comps[i].left ? 1 : 0),
                       c.dirs[i] == SemicircleDir::CW ? 0 : 1});
    return out;
}

inline std::vector<std::pair<int, int>> rotation_min(const DecoratedCycle& c) {
    auto enc = encode(c);
    auto best = enc;
    for (size_t r = 1; r < enc.size(); ++r) {
        std::rotate(enc.begin(), enc.begin() + 1, enc.end());
        best = std::min(best, enc);
    }
    return best;
}

}  // namespace detail

/// Traversal of the same curve backwards: the component sequence reverses
/// while each transition keeps its semicircle label.
inline DecoratedCycle reversed(const DecoratedCycle& c) {
    std::vector<Component> comps;
    comps.push_back(c.comps[0]);
    for (int i = c.size() - 1; i >= 1; --i) comps.push_back(c.comps[i]);
    return detail::from_comps(std::move(comps), c.n);
}

/// Image under the half-turn involution: sides swap and every semicircle
/// flips.
inline DecoratedCycle mirrored(const DecoratedCycle& c) {
    std::vector<Component> comps;
    for (const auto& comp : c.comps) comps.push_back(mirror(comp, c.n));
    return detail::from_comps(std::move(comps), c.n);
}

/// The involution-invariance required of saddle connections that bound
/// isosceles orbit families: the mirrored reverse is the same cycle up to
/// rotation.
inline bool is_symmetric(const DecoratedCycle& c) {
    return detail::rotation_min(mirrored(reversed(c))) == detail::rotation_min(c);
}

/// Canonical key up to rotation and reversal (the two traversal directions
/// of one geometric curve).
inline std::vector<std::pair<int, int>> canonical_key(const DecoratedCycle& c) {
    return std::min(detail::rotation_min(c), detail::rotation_min(reversed(c)));
}

/// Occurrence counts m_k: boundary components count per occurrence; an
/// interior index requires equally many L and R traversals (true for all
/// symmetric cycles) and counts the pairs.
inline std::map<int, long long> multiplicities(const DecoratedCycle& c) {
    std::map<int, long long> left_count, right_count;
    for (const auto& comp : c.comps)
        (comp.left ? left_count : right_count)[comp.k] += 1;
    std::map<int, long long> m;
    for (int k = -(c.n - 1); k <= c.n - 1; k += 2) {
        const long long l = left_count.count(k) ? left_count[k] : 0;
        const long long r = right_count.count(k) ? right_count[k] : 0;
        if (std::abs(k) == c.n - 1) {
            if (l + r) m[k] = l + r;
            continue;
        }
        if (l != r)
            throw std::domain_error("unbalanced cycle: multiplicities are undefined");
        if (l) m[k] = l;
    }
    return m;
}

/// Homology class on the unfolding in the cylinder-core/puncture-loop basis.
struct GammaBetaClass {
    std::map<int, long long> gamma;  // gamma_i coefficients, even i
    long long beta1 = 0, beta_neg1 = 0;

    bool operator==(const GammaBetaClass& o) const {
        return gamma == o.gamma && beta1 == o.beta1 && beta_neg1 == o.beta_neg1;
    }
};

inline GammaBetaClass homology_of_cycle(const DecoratedCycle& c) {
    c.validate();
    const auto m = multiplicities(c);
    GammaBetaClass out;
    for (const auto& [k, mk] : m) {
        if (k >= 3) {
            out.gamma[k - 1] += mk;
        } else if (k == 1) {
            out.gamma[0] += mk;
            out.beta1 -= mk;
            out.beta_neg1 -= mk;
        } else {
            out.gamma[k + 1] += mk;
        }
    }
    for (auto it = out.gamma.begin(); it != out.gamma.end();)
        it = it->second == 0 ? out.gamma.erase(it) : std::next(it);
    return out;
}

/// The congruence invariant: the image of the cycle on the doubled triangle
/// pairs to an odd unit times S modulo 2n, so the cycle can only be
/// null-homologous when S vanishes mod 2n.
inline long long congruence_S(const DecoratedCycle& c) {
    const auto m = multiplicities(c);
    long long s = 0;
    for (const auto& [k, mk] : m) {
        if (k >= 3) s += mk * (c.n - k + 1);
        if (k <= -3) s += mk * (c.n - k - 1);
    }
    const long long mod = 2 * c.n;
    return ((s % mod) + mod) % mod;
}

inline bool congruence_obstructed(const DecoratedCycle& c) {
    return congruence_S(c) != 0;
}

/// Reported maximum of the congruence sum over admissible assignments with
/// a component budget x (even): two forced boundary occurrences plus a
/// chain of singly-visited heights.
inline long long max_S(long long x, int n) {
    check_n(n);
    if (x < 2 || x % 2 != 0) throw std::domain_error("component budget must be even and >= 2");
    return 2 + (x / 2 - 1) * (x / 2);
}

/// Lower bound on isosceles-vertex strikes for trajectories degenerating on
/// the triangle: 2*floor(sqrt(2n)) for n = 2^m >= 8.  The n = 4 case is
/// settled by the explicit family enumeration instead.
inline long long min_strikes(int n) {
    check_n(n);
    if (n == 4)
        throw std::domain_error(
            "n = 4 is handled by the explicit S_j enumeration, not the bound");
    return 2 * static_cast<long long>(std::floor(std::sqrt(2.0 * n)));
}

/// Invariant certifying that an all-one-way decorated multiple of the
/// central horizontal saddle connection is never null-homologous: the
/// symmetric puncture pairing takes the value +-2kn on it.
inline long long s0_check(long long k, int n) {
    check_n(n);
    if (k < 1) throw std::domain_error("s0_check requires at least one repetition");
    return 2 * k * n;
}

// ---------------------------------------------------------------------------
// Enumeration of admissible decorated cycles.
// ---------------------------------------------------------------------------

struct CycleConstraints {
    int boundary_occurrences = 2;   // strikes of the base midpoint
    bool symmetric_only = true;     // invariance under the half-turn
    std::vector<Component> require;
    std::vector<Component> forbid;
};

/// All decorated cycles with at most max_components components meeting the
/// constraints, canonicalized up to rotation and reversal.
inline std::vector<DecoratedCycle> enumerate_cycles(int n, int max_components,
                                                    const CycleConstraints& cons = {}) {
    check_n(n);
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<DecoratedCycle> out;

    const auto forbidden = [&](const Component& c) {
        return std::find(cons.forbid.begin(), cons.forbid.end(), c) != cons.forbid.end();
    };

    std::vector<Component> comps;
    std::vector<SemicircleDir> dirs;

    const auto finish = [&]() {
        DecoratedCycle cy{n, comps, dirs};
        cy.validate();
        if (cy.boundary_count() != cons.boundary_occurrences) return;
        for (const auto& r : cons.require)
            if (!cy.contains(r)) return;
        if (cons.symmetric_only && !is_symmetric(cy)) return;
        if (seen.insert(canonical_key(cy)).second) out.push_back(cy);
    };

    const auto dfs = [&](auto&& self, const Component& cur, int boundary_used) -> void {
        for (const auto d : {SemicircleDir::CW, SemicircleDir::CCW}) {
            const Component next = transition(cur, d, n);
            if (forbidden(next)) continue;
            const bool next_boundary = next.boundary(n);
            if (next == comps.front()) {
                dirs.push_back(d);
                finish();
                dirs.pop_back();
                // fall through: the cycle may also continue through this
                // boundary component if the budget allows another visit
            }
            if (static_cast<int>(comps.size()) >= max_components) continue;
            const int used = boundary_used + (next_boundary ? 1 : 0);
            if (used > cons.boundary_occurrences) continue;
            comps.push_back(next);
            dirs.push_back(d);
            self(self, next, used);
            comps.pop_back();
            dirs.pop_back();
        }
    };

    for (const auto start : {Component::of(true, n - 1, n), Component::of(true, 1 - n, n)}) {
        if (forbidden(start)) continue;
        if (cons.boundary_occurrences < 1) break;
        comps = {start};
        dirs.clear();
        dfs(dfs, start, 1);
    }
    return out;
}

/// The explicit family on the n = 4 unfolding: S_j runs along
/// L3 (L1 R-1)^j L-3 (L-1 R1)^j.
inline DecoratedCycle sj_cycle(int j) {
    if (j < 0) throw std::domain_error("S_j needs j >= 0");
    const int n = 4;
    std::vector<Component> comps;
    comps.push_back(Component::of(true, 3, n));
    for (int i = 0; i < j; ++i) {
        comps.push_back(Component::of(true, 1, n));
        comps.push_back(Component::of(false, -1, n));
    }
    comps.push_back(Component::of(true, -3, n));
    for (int i = 0; i < j; ++i) {
        comps.push_back(Component::of(true, -1, n));
        comps.push_back(Component::of(false, 1, n));
    }
    return detail::from_comps(std::move(comps), n);
}

inline std::vector<DecoratedCycle> sj_enumerate(int j_max) {
    std::vector<DecoratedCycle> out;
    for (int j = 0; j <= j_max; ++j) out.push_back(sj_cycle(j));
    return out;
}

// ---------------------------------------------------------------------------
// Derivative matrices of the affine automorphisms.
// ---------------------------------------------------------------------------

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mat2 rotation(double t) {
        return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    }
    Mat2 times(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inverse() const {
        const double det = a * d - b * c;
        return {d / det, -b / det, -c / det, a / det};
    }
    Mat2 pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Mat2 r;
        for (int i = 0; i < e; ++i) r = r.times(*this);
        return r;
    }
    double distance(const Mat2& o) const {
        return std::max(std::max(std::abs(a - o.a), std::abs(b - o.b)),
                        std::max(std::abs(c - o.c), std::abs(d - o.d)));
    }
};

/// Derivatives of the two simultaneous Dehn twists and the rotation by pi/n.
struct VeechGenerators {
    Mat2 dtau_e, dtau_o, c_n;

    static VeechGenerators of(int n) {
        check_n(n);
        const double cot = 1.0 / std::tan(kPi / n);
        VeechGenerators g;
        g.dtau_e = Mat2{1, 2 * cot, 0, 1};
        g.c_n = Mat2::rotation(kPi / n);
        g.dtau_o = g.c_n.times(g.dtau_e).times(g.c_n.inverse());
        return g;
    }
};

struct GeneratorReport {
    bool ok = false;
    double max_deviation = 0.0;
};

/// Numerically verifies that the twist derivatives generate the projective
/// automorphism group: the half-turn-of-the-polygon relation and the two
/// conjugated shear relations.
inline GeneratorReport generator_identities(int n, double tol = 1e-10) {
    check_n(n);
    if (n % 4 != 0) throw std::domain_error("identities require 4 | n");
    const auto g = VeechGenerators::of(n);
    const double cot = 1.0 / std::tan(kPi / n);
    const Mat2 alpha{1, 0, 2 * cot, 1};
    const Mat2 alpha_p = g.c_n.times(alpha).times(g.c_n.inverse());

    const Mat2 lhs1 = g.c_n.pow(2);
    const Mat2 rhs1 = g.dtau_o.times(g.dtau_e).pow(n / 2 + 1);
    const Mat2 conj = g.c_n.pow(n / 2);
    const Mat2 rhs2 = conj.inverse().times(g.dtau_e.inverse()).times(conj);
    const Mat2 rhs3 = conj.inverse().times(g.dtau_o.inverse()).times(conj);

    GeneratorReport r;
    r.max_deviation = std::max(
        {lhs1.distance(rhs1), alpha.distance(rhs2), alpha_p.distance(rhs3)});
    r.ok = r.max_deviation < tol;
    return r;
}

}  // namespace billiards::veech
