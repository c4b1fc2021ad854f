#pragma once

namespace vsheet {

struct Vec2 {
    double x1 = 0.0, x2 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x1, c * a.x2}; }

// (a, b)^perp = (-b, a); rotation by +pi/2.
inline Vec2 perp(Vec2 a) { return {-a.x2, a.x1}; }

}  // namespace vsheet
