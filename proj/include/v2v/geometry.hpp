#pragma once

#include <cmath>

namespace v2v {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Minimum-image convention on a square torus of the given period: the
// displacement through the nearest periodic copy.
inline double min_image_delta(double d, double period) {
  if (period <= 0) return d;
  d = std::fmod(d, period);
  if (d > period / 2) d -= period;
  if (d < -period / 2) d += period;
  return d;
}

inline Vec2 min_image(const Vec2& d, double period) {
  return {min_image_delta(d.x, period), min_image_delta(d.y, period)};
}

inline double toroidal_distance(const Vec2& a, const Vec2& b, double period) {
  return min_image(b - a, period).norm();
}

}  // namespace v2v
