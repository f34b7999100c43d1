#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dualcube {

// Raw vertex identifier. Bit position 1 (the leftmost character of the
// rendered string) is the most significant of the `width` low bits.
using Vertex = std::uint32_t;

inline constexpr int kMaxLabelWidth = 31;

constexpr Vertex position_mask(int position, int width) {
  return Vertex{1} << (width - position);
}

std::string to_bits(Vertex v, int width);

// A fixed-width bit string naming a vertex of D_n (width 2n-1) or Q_m (width m).
class Label {
 public:
  Label() = default;
  Label(Vertex bits, int width);

  // Accepts strings of '0'/'1' only; throws InvalidArgument otherwise.
  static Label parse(std::string_view text);

  Vertex bits() const { return bits_; }
  int width() const { return width_; }

  // position is 1-based, 1 = leftmost.
  int bit(int position) const;
  Label flipped(int position) const;
  std::string str() const { return to_bits(bits_, width_); }

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  Vertex bits_ = 0;
  int width_ = 1;
};

}  // namespace dualcube
