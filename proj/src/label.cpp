#include "dualcube/label.hpp"

#include "dualcube/errors.hpp"

namespace dualcube {

std::string to_bits(Vertex v, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int p = 1; p <= width; ++p) {
    if (v & position_mask(p, width)) out[static_cast<std::size_t>(p - 1)] = '1';
  }
  return out;
}

Label::Label(Vertex bits, int width) : bits_(bits), width_(width) {
  if (width < 1 || width > kMaxLabelWidth) {
    throw InvalidArgument("label width must be in 1.." + std::to_string(kMaxLabelWidth));
  }
  if (bits >> width) {
    throw InvalidArgument("label bits exceed width " + std::to_string(width));
  }
}

Label Label::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxLabelWidth)) {
    throw InvalidArgument("bad label length: '" + std::string(text) + "'");
  }
  Vertex bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw InvalidArgument("label must be a bit string: '" + std::string(text) + "'");
    }
    bits = (bits << 1) | static_cast<Vertex>(ch - '0');
  }
  return Label(bits, static_cast<int>(text.size()));
}

int Label::bit(int position) const {
  if (position < 1 || position > width_) {
    throw InvalidArgument("bit position out of range");
  }
  return (bits_ & position_mask(position, width_)) ? 1 : 0;
}

Label Label::flipped(int position) const {
  if (position < 1 || position > width_) {
    throw InvalidArgument("bit position out of range");
  }
  return Label(bits_ ^ position_mask(position, width_), width_);
}

}  // namespace dualcube
