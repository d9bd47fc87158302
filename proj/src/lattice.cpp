#include "rwpot/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "rwpot/errors.hpp"

namespace rwpot {

Site make_site(std::initializer_list<int> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim)) {
    throw DomainError("make_site: too many coordinates");
  }
  Site s{};
  std::copy(coords.begin(), coords.end(), s.begin());
  return s;
}

Site unit_vector(int d, int axis) {
  if (axis < 0 || axis >= d) throw DomainError("unit_vector: axis out of range");
  Site s{};
  s[axis] = 1;
  return s;
}

Site scale(const Site& s, int n) {
  Site r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = s[i] * n;
  return r;
}

Site add(const Site& a, const Site& b) {
  Site r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

long l1_norm(const Site& s, int d) {
  long r = 0;
  for (int i = 0; i < d; ++i) r += std::labs(s[i]);
  return r;
}

long linf_norm(const Site& s, int d) {
  long r = 0;
  for (int i = 0; i < d; ++i) r = std::max(r, std::labs(s[i]));
  return r;
}

long l1_distance(const Site& a, const Site& b, int d) {
  long r = 0;
  for (int i = 0; i < d; ++i) r += std::labs(static_cast<long>(a[i]) - b[i]);
  return r;
}

std::string to_string(const Site& s, int d) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < d; ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << ')';
  return os.str();
}

std::size_t SiteHash::operator()(const Site& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

Box::Box(int d, const Site& lo, const Site& hi) : d_(d), lo_(lo), hi_(hi) {
  if (d < 1 || d > kMaxDim) throw DomainError("Box: dimension out of range");
  for (int i = d; i < kMaxDim; ++i) lo_[i] = hi_[i] = 0;
  size_ = 1;
  for (int i = d - 1; i >= 0; --i) {
    stride_[i] = size_;
    if (hi_[i] < lo_[i]) {
      size_ = 0;
      break;
    }
    size_ *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
  }
}

Box Box::around(int d, const Site& a, const Site& b, int margin) {
  Site lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = std::min(a[i], b[i]) - margin;
    hi[i] = std::max(a[i], b[i]) + margin;
  }
  return Box(d, lo, hi);
}

bool Box::contains(const Site& s) const {
  if (size_ == 0) return false;
  for (int i = 0; i < d_; ++i) {
    if (s[i] < lo_[i] || s[i] > hi_[i]) return false;
  }
  return true;
}

bool Box::interior(const Site& s) const {
  if (size_ == 0) return false;
  for (int i = 0; i < d_; ++i) {
    if (s[i] <= lo_[i] || s[i] >= hi_[i]) return false;
  }
  return true;
}

std::size_t Box::index(const Site& s) const {
  std::size_t idx = 0;
  for (int i = 0; i < d_; ++i) idx += static_cast<std::size_t>(s[i] - lo_[i]) * stride_[i];
  return idx;
}

Site Box::site(std::size_t index) const {
  Site s{};
  for (int i = 0; i < d_; ++i) {
    s[i] = lo_[i] + static_cast<int>(index / stride_[i]);
    index %= stride_[i];
  }
  return s;
}

bool Box::covers(const Box& other) const {
  if (other.empty()) return true;
  if (d_ != other.d_ || empty()) return false;
  for (int i = 0; i < d_; ++i) {
    if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
  }
  return true;
}

}  // namespace rwpot
