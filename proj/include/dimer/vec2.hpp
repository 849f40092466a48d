#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>

namespace dimer {

// Lattice vector in Z^2. Used for homology classes, Laurent exponents and
// polygon data. Comparison is lexicographic so it can key ordered maps.
struct Vec2 {
    int64_t x = 0;
    int64_t y = 0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    friend Vec2 operator*(int64_t k, Vec2 a) { return {k * a.x, k * a.y}; }
    Vec2& operator+=(Vec2 b) { x += b.x; y += b.y; return *this; }
    Vec2& operator-=(Vec2 b) { x -= b.x; y -= b.y; return *this; }

    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }
    friend bool operator<(Vec2 a, Vec2 b) {
        return std::tie(a.x, a.y) < std::tie(b.x, b.y);
    }

    bool is_zero() const { return x == 0 && y == 0; }

    std::string str() const {
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
};

inline int64_t dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Determinant of the 2x2 matrix with columns a, b.
inline int64_t det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Rotate by +90 degrees; for a convex polygon traversed counterclockwise this
// maps a boundary edge vector to the inward primitive normal direction.
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline int64_t content(Vec2 a) {
    return std::gcd(std::llabs(a.x), std::llabs(a.y));
}

inline bool is_primitive(Vec2 a) { return content(a) == 1; }

inline Vec2 primitive_of(Vec2 a) {
    int64_t g = content(a);
    return g == 0 ? a : Vec2{a.x / g, a.y / g};
}

}  // namespace dimer
