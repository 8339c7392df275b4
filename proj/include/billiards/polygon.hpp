#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

/// A triangle up to similarity, parametrized by the two angles theta1 (at
/// vertex v1) and theta2 (at vertex v2).  Both lie in (0, pi/2); the third
/// angle pi - theta1 - theta2 sits at v3 and may be obtuse.
struct TriangleShape {
    Angle theta1 = Angle::pi_times(1, 3);
    Angle theta2 = Angle::pi_times(1, 3);

    static TriangleShape of(double t1, double t2) {
        return make(Angle::radians(t1), Angle::radians(t2));
    }
    static TriangleShape of(Angle t1, Angle t2) { return make(t1, t2); }
    static TriangleShape of_pi(Rational r1, Rational r2) {
        return make(Angle::pi_times(r1), Angle::pi_times(r2));
    }

    Angle theta3() const { return Angle::pi_times(1, 1) - theta1 - theta2; }

    bool is_right(double tol = kDefaultTol) const {
        return std::abs(theta1.value + theta2.value - kPi / 2.0) <= tol;
    }
    bool is_acute(double tol = kDefaultTol) const {
        return theta1.value + theta2.value > kPi / 2.0 + tol;
    }

    TriangleShape perturbed(double d1, double d2) const {
        return of(theta1.value + d1, theta2.value + d2);
    }

  private:
    static TriangleShape make(Angle t1, Angle t2) {
        const double a = t1.value, b = t2.value;
        if (!(a > 0.0 && a < kPi / 2.0 && b > 0.0 && b < kPi / 2.0))
            throw std::domain_error("triangle angles must lie in (0, pi/2)");
        if (!(a + b < kPi)) throw std::domain_error("triangle angle sum too large");
        return TriangleShape{t1, t2};
    }
};

/// Labeled polygon.  Vertices are listed counterclockwise and labeled
/// 1..n; edges are labeled 1..n.  Two conventions are used:
///
///  * triangles: edge i is the side opposite vertex i (v3 at the origin,
///    v2 at (1,0), v1 above), so e1 is the bottom side v3->v2,
///    e2 = v1->v3 and e3 = v2->v1;
///  * general n-gons built from raw vertices: edge i joins vertex i to
///    vertex i+1 (mod n).
///
/// Edge direction angles are stored exactly when the defining triangle
/// angles are rational multiples of pi.
class PolygonShape {
  public:
    static PolygonShape from_vertices(std::vector<Vec2> verts) {
        const int n = static_cast<int>(verts.size());
        if (n < 3) throw std::domain_error("polygon needs at least 3 vertices");
        PolygonShape p;
        p.vertices_ = std::move(verts);
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            if (p.vertices_[i].approx(p.vertices_[j], 0.0))
                throw std::domain_error("consecutive polygon vertices coincide");
            p.edges_.push_back({i, j});
            const Vec2 d = p.vertices_[j] - p.vertices_[i];
            p.edge_dirs_.push_back(Angle::radians(std::atan2(d.y, d.x)));
        }
        if (p.signed_area() <= 0.0)
            throw std::domain_error("polygon vertices must be counterclockwise");
        return p;
    }

    static PolygonShape from_triangle(const TriangleShape& t) {
        PolygonShape p;
        p.triangle_ = t;
        const Angle th3 = t.theta3();
        const double len2 = std::sin(t.theta2.value) / std::sin(t.theta1.value);
        const Vec2 v1{len2 * std::cos(th3.value), len2 * std::sin(th3.value)};
        p.vertices_ = {v1, Vec2{1.0, 0.0}, Vec2{0.0, 0.0}};  // labels 1, 2, 3
        // Edge i opposite vertex i; endpoints ordered along the ccw boundary
        // cycle v3 -> v2 -> v1 -> v3.
        p.edges_ = {{2, 1}, {0, 2}, {1, 0}};
        p.edge_dirs_ = {
            Angle::zero(),                             // e1: v3 -> v2
            th3 - Angle::pi_times(1, 1),               // e2: v1 -> v3
            Angle::pi_times(1, 1) - t.theta2,          // e3: v2 -> v1
        };
        return p;
    }

    int n() const { return static_cast<int>(vertices_.size()); }

    Vec2 vertex(int label) const { return vertices_.at(check_vertex(label) - 1); }

    std::pair<Vec2, Vec2> edge_endpoints(int label) const {
        const auto& e = edges_.at(check_edge(label) - 1);
        return {vertices_[e[0]], vertices_[e[1]]};
    }

    std::pair<int, int> edge_vertex_labels(int label) const {
        const auto& e = edges_.at(check_edge(label) - 1);
        return {e[0] + 1, e[1] + 1};
    }

    Angle edge_direction(int label) const { return edge_dirs_.at(check_edge(label) - 1); }

    /// Label of the vertex shared by edges a and b, or 0 when they are not
    /// adjacent.  For triangles this is the vertex opposite neither edge.
    int shared_vertex_label(int a, int b) const {
        auto [a1, a2] = edge_vertex_labels(a);
        auto [b1, b2] = edge_vertex_labels(b);
        if (a1 == b1 || a1 == b2) return a1;
        if (a2 == b1 || a2 == b2) return a2;
        return 0;
    }

    /// Interior angle at the labeled vertex; exact for triangles with
    /// rational angles.
    Angle interior_angle(int label) const {
        check_vertex(label);
        if (triangle_) {
            if (label == 1) return triangle_->theta1;
            if (label == 2) return triangle_->theta2;
            return triangle_->theta3();
        }
        const int n_ = n();
        const int i = label - 1;
        const Vec2 prev = vertices_[(i + n_ - 1) % n_];
        const Vec2 next = vertices_[(i + 1) % n_];
        const Vec2 a = prev - vertices_[i], b = next - vertices_[i];
        double ang = std::atan2(a.cross(b), a.dot(b));
        if (ang < 0.0) ang += 2.0 * kPi;
        return Angle::radians(2.0 * kPi - ang);
    }

    const std::vector<Vec2>& vertices() const { return vertices_; }

    /// Vertex labels in counterclockwise boundary order.
    std::vector<int> boundary_cycle() const {
        if (triangle_) return {3, 2, 1};
        std::vector<int> cycle(n());
        for (int i = 0; i < n(); ++i) cycle[i] = i + 1;
        return cycle;
    }

    bool is_triangle_shape() const { return triangle_.has_value(); }
    const TriangleShape& triangle() const {
        if (!triangle_) throw std::domain_error("polygon was not built from a triangle shape");
        return *triangle_;
    }

    double signed_area() const {
        double s = 0.0;
        for (int i = 0; i < n(); ++i) {
            const Vec2 a = vertices_[i], b = vertices_[(i + 1) % n()];
            s += a.cross(b);
        }
        return 0.5 * s;
    }

  private:
    int check_edge(int label) const {
        if (label < 1 || label > n()) throw std::out_of_range("edge label out of range");
        return label;
    }
    int check_vertex(int label) const {
        if (label < 1 || label > n()) throw std::out_of_range("vertex label out of range");
        return label;
    }

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<Angle> edge_dirs_;
    std::optional<TriangleShape> triangle_;
};

}  // namespace billiards
