#pragma once

#include <cmath>

namespace lo2d {

struct Point {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point &, const Point &) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

} // namespace lo2d
