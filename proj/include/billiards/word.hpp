#pragma once

#include <stdexcept>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/polygon.hpp"

namespace billiards {

/// A finite sequence of edge labels over {1..n}.  Consecutive letters must
/// differ; a word used cyclically additionally needs first != last.
struct EdgeWord {
    int alphabet = 3;
    std::vector<int> letters;

    static EdgeWord of(std::vector<int> ls, int n = 3) {
        EdgeWord w{n, std::move(ls)};
        w.validate();
        return w;
    }

    int size() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    void validate() const {
        for (int i = 0; i < size(); ++i) {
            if (letters[i] < 1 || letters[i] > alphabet)
                throw std::domain_error("edge label out of range");
            if (i > 0 && letters[i] == letters[i - 1])
                throw std::domain_error("consecutive letters must differ");
        }
    }

    bool cyclic_valid() const {
        return size() >= 2 && letters.front() != letters.back();
    }

    EdgeWord prefix(int k) const {
        return EdgeWord{alphabet, {letters.begin(), letters.begin() + k}};
    }

    EdgeWord concat(const EdgeWord& w) const {
        if (w.alphabet != alphabet) throw std::domain_error("alphabet mismatch");
        EdgeWord r{alphabet, letters};
        r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
        r.validate();
        return r;
    }
};

/// Per-letter signed occurrence counts: d_i = (occurrences of i at odd
/// 1-based positions) - (occurrences at even positions), plus the word
/// length parity.  d is the complete linear-part invariant of a word: the
/// evaluation of an even word on any polygon is a rotation by
/// 2 * sum_i d_i * phi_i where phi_i is the direction angle of edge i.
struct RotationVector {
    std::vector<long long> d;
    int parity = 0;  // word length mod 2

    bool is_zero() const {
        for (long long v : d)
            if (v != 0) return false;
        return true;
    }
};

inline RotationVector rotation_vector(const EdgeWord& w) {
    RotationVector r;
    r.d.assign(w.alphabet, 0);
    for (int i = 0; i < w.size(); ++i) {
        const int sign = (i % 2 == 0) ? +1 : -1;  // 1-based odd positions count +1
        r.d[w.letters[i] - 1] += sign;
    }
    r.parity = w.size() % 2;
    return r;
}

/// Membership test for the subgroup of reflection words whose evaluation has
/// identity linear part on every polygon: even length and d == 0.
inline bool in_tau(const EdgeWord& w) {
    const RotationVector r = rotation_vector(w);
    return r.parity == 0 && r.is_zero();
}

/// The reflection of the plane fixing edge i of P pointwise.
inline PlanarIsometry reflect_edge(const PolygonShape& p, int edge_label) {
    const auto [a, b] = p.edge_endpoints(edge_label);
    (void)b;
    return PlanarIsometry::reflection(p.edge_direction(edge_label), a);
}

/// Placements of the polygon copies in the unfolding of P along w:
/// result[k] maps the base copy onto copy k.  Copy k is obtained from copy
/// k-1 by reflecting across copy (k-1)'s edge i_k, which in terms of the
/// base-edge reflections composes with the first letter outermost:
/// placement_k = R_{i_1} o R_{i_2} o ... o R_{i_k}.
inline std::vector<PlanarIsometry> word_placements(const PolygonShape& p, const EdgeWord& w) {
    std::vector<PlanarIsometry> out;
    out.reserve(w.size() + 1);
    out.push_back(PlanarIsometry::identity());
    for (int k = 0; k < w.size(); ++k)
        out.push_back(out.back().after(reflect_edge(p, w.letters[k])));
    return out;
}

/// Evaluation of the whole word: the placement of the final copy in the
/// unfolding of P along w.
inline PlanarIsometry eval_word(const PolygonShape& p, const EdgeWord& w) {
    PlanarIsometry g = PlanarIsometry::identity();
    for (int k = 0; k < w.size(); ++k) g = g.after(reflect_edge(p, w.letters[k]));
    return g;
}

}  // namespace billiards
