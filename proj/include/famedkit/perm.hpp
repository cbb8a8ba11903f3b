#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace famedkit {

// A permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
// perm[i] is the image of i.
class Perm4 {
public:
  constexpr Perm4() : images_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : images_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  static constexpr Perm4 identity() { return Perm4(); }

  // Transposition of a and b.
  static constexpr Perm4 swap(int a, int b) {
    Perm4 p;
    p.images_[a] = static_cast<std::uint8_t>(b);
    p.images_[b] = static_cast<std::uint8_t>(a);
    return p;
  }

  // The label reversal 0<->3, 1<->2.
  static constexpr Perm4 reversal() { return Perm4(3, 2, 1, 0); }

  // All 24 permutations in lexicographic order of their image lists.
  static const std::array<Perm4, 24>& all();

  constexpr int operator[](int i) const { return images_[i]; }

  // (a * b)[i] = a[b[i]]
  constexpr Perm4 operator*(const Perm4& rhs) const {
    return Perm4(images_[rhs[0]], images_[rhs[1]], images_[rhs[2]], images_[rhs[3]]);
  }

  constexpr Perm4 inverse() const {
    Perm4 inv;
    for (int i = 0; i < 4; ++i) inv.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return inv;
  }

  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (images_[i] > images_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  constexpr bool is_valid() const {
    int seen = 0;
    for (auto v : images_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }

  // Index in Perm4::all().
  int index() const;

  const std::array<std::uint8_t, 4>& images() const { return images_; }

  std::string str() const {
    return {char('0' + images_[0]), char('0' + images_[1]), char('0' + images_[2]),
            char('0' + images_[3])};
  }

  friend constexpr bool operator==(const Perm4&, const Perm4&) = default;
  friend constexpr auto operator<=>(const Perm4&, const Perm4&) = default;

private:
  std::array<std::uint8_t, 4> images_;
};

// Local edges of a tetrahedron, in the order 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
  if (a > b) {
    const int t = a;
    a = b;
    b = t;
  }
  for (int e = 0; e < 6; ++e)
    if (kTetEdges[e][0] == a && kTetEdges[e][1] == b) return e;
  return -1;
}

} // namespace famedkit
