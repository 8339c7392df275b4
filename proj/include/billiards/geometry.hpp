#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace billiards {

inline constexpr double kPi = std::numbers::pi;

/// Global default tolerance for identity / closure / degeneracy tests.
inline constexpr double kDefaultTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double px, double py) : x(px), y(py) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    /// z-component of the 3-d cross product; positive when r is
    /// counterclockwise from *this.
    constexpr double cross(Vec2 r) const { return x * r.y - y * r.x; }
    /// Left-hand normal (rotation by +pi/2).
    constexpr Vec2 perp() const { return {-y, x}; }

    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }

    Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
        return {x / n, y / n};
    }

    Vec2 rotated(double angle) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }

    bool approx(Vec2 r, double tol = kDefaultTol) const {
        return std::abs(x - r.x) <= tol && std::abs(y - r.y) <= tol;
    }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Signed distance of point p from the line through a in unit direction u;
/// positive when p lies to the left of the ray.
inline double signed_offset(Vec2 p, Vec2 a, Vec2 u) {
    return u.perp().dot(p - a);
}

inline double point_line_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double n = d.norm();
    if (n == 0.0) return (p - a).norm();
    return std::abs(d.cross(p - a)) / n;
}

/// Reduced fraction p/q with q > 0.  Used for angles that are exact rational
/// multiples of pi.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long n, long long d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rational{n, d};
    }

    Rational operator+(Rational r) const { return of(num * r.den + r.num * den, den * r.den); }
    Rational operator-(Rational r) const { return of(num * r.den - r.num * den, den * r.den); }
    Rational operator-() const { return Rational{-num, den}; }
    Rational times(long long k) const { return of(num * k, den); }
    Rational dividedBy(long long k) const { return of(num, den * k); }

    bool operator==(const Rational& r) const { return num == r.num && den == r.den; }

    /// True iff the fraction is an integer divisible by m.
    bool is_integer_multiple_of(long long m) const { return den == 1 && num % m == 0; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// An angle in radians that remembers when it is an exact rational multiple
/// of pi.  Arithmetic preserves exactness whenever both operands carry it,
/// which keeps closure tests on rational-angle triangles free of drift.
struct Angle {
    double value = 0.0;
    std::optional<Rational> pi_mult;  // value == pi_mult * pi when present

    static Angle radians(double v) { return Angle{v, std::nullopt}; }
    static Angle pi_times(Rational r) { return Angle{r.value() * kPi, r}; }
    static Angle pi_times(long long p, long long q) { return pi_times(Rational::of(p, q)); }
    static Angle zero() { return pi_times(0, 1); }

    Angle operator+(Angle r) const {
        if (pi_mult && r.pi_mult) return pi_times(*pi_mult + *r.pi_mult);
        return radians(value + r.value);
    }
    Angle operator-(Angle r) const {
        if (pi_mult && r.pi_mult) return pi_times(*pi_mult - *r.pi_mult);
        return radians(value - r.value);
    }
    Angle operator-() const {
        if (pi_mult) return pi_times(-*pi_mult);
        return radians(-value);
    }
    Angle half() const {
        if (pi_mult) return pi_times(pi_mult->dividedBy(2));
        return radians(value / 2.0);
    }
    Angle doubled() const {
        if (pi_mult) return pi_times(pi_mult->times(2));
        return radians(value * 2.0);
    }

    /// True iff the angle is congruent to 0 modulo m*pi (exactly when the
    /// rational tag is present, within tol otherwise).
    bool is_zero_mod_pi(long long m, double tol = kDefaultTol) const {
        if (pi_mult) return pi_mult->is_integer_multiple_of(m);
        return std::abs(std::remainder(value, static_cast<double>(m) * kPi)) <= tol;
    }

    /// Representative in (-pi, pi].
    double wrapped() const {
        double r = std::remainder(value, 2.0 * kPi);
        if (r <= -kPi) r += 2.0 * kPi;
        return r;
    }
};

/// Orientation-preserving or -reversing plane isometry: a rotation by
/// `angle` or a reflection across the line of direction `angle` through the
/// origin, followed by the translation `t`.
class PlanarIsometry {
  public:
    enum class Kind { Rotation, Reflection };

    Kind kind = Kind::Rotation;
    Angle angle = Angle::zero();
    Vec2 t{};

    static PlanarIsometry identity() { return PlanarIsometry{}; }

    static PlanarIsometry rotation(Angle a, Vec2 center = {0.0, 0.0}) {
        PlanarIsometry r;
        r.kind = Kind::Rotation;
        r.angle = a;
        r.t = center - center.rotated(a.value);
        return r;
    }

    /// Reflection across the line through `through` with direction `axis`.
    static PlanarIsometry reflection(Angle axis, Vec2 through = {0.0, 0.0}) {
        PlanarIsometry r;
        r.kind = Kind::Reflection;
        r.angle = axis;
        r.t = through - mirror(through, axis.value);
        return r;
    }

    bool is_reflection() const { return kind == Kind::Reflection; }

    Vec2 apply_linear(Vec2 v) const {
        return kind == Kind::Rotation ? v.rotated(angle.value) : mirror(v, angle.value);
    }

    Vec2 apply(Vec2 p) const { return apply_linear(p) + t; }

    /// Composition: (*this) after g, i.e. g acts first.
    PlanarIsometry after(const PlanarIsometry& g) const {
        PlanarIsometry r;
        if (kind == Kind::Rotation && g.kind == Kind::Rotation) {
            r.kind = Kind::Rotation;
            r.angle = angle + g.angle;
        } else if (kind == Kind::Rotation && g.kind == Kind::Reflection) {
            r.kind = Kind::Reflection;
            r.angle = g.angle + angle.half();
        } else if (kind == Kind::Reflection && g.kind == Kind::Rotation) {
            r.kind = Kind::Reflection;
            r.angle = angle - g.angle.half();
        } else {
            r.kind = Kind::Rotation;
            r.angle = (angle - g.angle).doubled();
        }
        r.t = apply_linear(g.t) + t;
        return r;
    }

    PlanarIsometry inverse() const {
        PlanarIsometry r;
        r.kind = kind;
        if (kind == Kind::Rotation) {
            r.angle = -angle;
            r.t = (-t).rotated(-angle.value);
        } else {
            r.angle = angle;
            r.t = -mirror(t, angle.value);
        }
        return r;
    }

    /// True iff the linear part is the identity (rotation by a multiple of
    /// 2*pi); exact for rationally tagged angles.
    bool orthogonal_is_identity(double tol = kDefaultTol) const {
        return kind == Kind::Rotation && angle.is_zero_mod_pi(2, tol);
    }

    /// Rotation angle wrapped into (-pi, pi]; only meaningful for rotations.
    double rotation_angle_wrapped() const { return angle.wrapped(); }

  private:
    static Vec2 mirror(Vec2 v, double axis) {
        const double c = std::cos(2.0 * axis), s = std::sin(2.0 * axis);
        return {c * v.x + s * v.y, s * v.x - c * v.y};
    }
};

}  // namespace billiards
