#pragma once

#include <cmath>
#include <string>

namespace reground {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return n > 0 ? Vec3{a.x / n, a.y / n, a.z / n} : a;
}

struct Box {
  Vec3 min;
  Vec3 max;

  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
};

// Observer pose. `facing` is a horizontal unit vector; the frame's lateral
// axis (the observer's left) is up x facing with up fixed to world +Z.
struct Viewpoint {
  std::string name;
  Vec3 position;
  Vec3 facing;

  Vec3 left_axis() const { return normalized(cross(Vec3{0, 0, 1}, facing)); }
  Vec3 up_axis() const { return {0, 0, 1}; }
  Vec3 front_axis() const { return normalized(facing); }
};

}  // namespace reground
