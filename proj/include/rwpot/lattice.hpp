#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rwpot {

inline constexpr int kMaxDim = 3;

// A point of Z^d. Coordinates beyond the working dimension are kept at zero so
// that value comparison and hashing are dimension-agnostic.
using Site = std::array<int, kMaxDim>;

Site make_site(std::initializer_list<int> coords);
Site unit_vector(int d, int axis);
Site scale(const Site& s, int n);
Site add(const Site& a, const Site& b);
long l1_norm(const Site& s, int d);
long linf_norm(const Site& s, int d);
long l1_distance(const Site& a, const Site& b, int d);
std::string to_string(const Site& s, int d);

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept;
};

// Axis-aligned product of integer intervals [lo_i, hi_i]. Linear indices run
// in lexicographic order of the coordinates (first axis slowest).
class Box {
 public:
  Box() = default;
  Box(int d, const Site& lo, const Site& hi);

  // Bounding box of two sites, inflated by `margin` sites on every face.
  static Box around(int d, const Site& a, const Site& b, int margin);

  int dim() const { return d_; }
  const Site& lo() const { return lo_; }
  const Site& hi() const { return hi_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int extent(int axis) const { return hi_[axis] - lo_[axis] + 1; }
  std::size_t stride(int axis) const { return stride_[axis]; }

  bool contains(const Site& s) const;
  // True when every lattice neighbour of s also lies in the box.
  bool interior(const Site& s) const;
  std::size_t index(const Site& s) const;
  Site site(std::size_t index) const;
  bool covers(const Box& other) const;

  bool operator==(const Box& other) const = default;

 private:
  int d_ = 1;
  Site lo_{};
  Site hi_{};
  std::array<std::size_t, kMaxDim> stride_{};
  std::size_t size_ = 0;
};

// Calls fn(neighbour) for the 2d nearest neighbours of s.
template <typename Fn>
void for_each_neighbour(const Site& s, int d, Fn&& fn) {
  for (int axis = 0; axis < d; ++axis) {
    Site t = s;
    t[axis] -= 1;
    fn(t);
    t[axis] += 2;
    fn(t);
  }
}

}  // namespace rwpot
