#include "expthresh/subset_mask.hpp"

#include "expthresh/errors.hpp"

namespace expthresh {

SubsetMask SubsetMask::from_elements(unsigned width, std::span<const unsigned> elements) {
  SubsetMask m(width);
  for (unsigned x : elements) {
    require(x < width, ErrorCode::invalid_argument,
            "element " + std::to_string(x) + " outside ground set of size " + std::to_string(width));
    m.set(x);
  }
  return m;
}

SubsetMask SubsetMask::from_word(unsigned width, Word bits) {
  require(width <= 64, ErrorCode::invalid_argument, "from_word needs width <= 64");
  SubsetMask m(width);
  if (width == 0) return m;
  if (width < 64) bits &= (Word{1} << width) - 1;
  m.words_[0] = bits;
  return m;
}

SubsetMask SubsetMask::full(unsigned width) {
  SubsetMask m(width);
  for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] = ~Word{0};
  if (width % 64) m.words_.back() = (Word{1} << (width % 64)) - 1;
  return m;
}

SubsetMask SubsetMask::shifted(unsigned offset, unsigned new_width) const {
  require(offset + width_ <= new_width, ErrorCode::invalid_argument, "shifted mask exceeds target width");
  SubsetMask m(new_width);
  for_each([&](unsigned x) { m.set(x + offset); });
  return m;
}

SubsetMask SubsetMask::window(unsigned offset, unsigned size) const {
  SubsetMask m(size);
  for_each([&](unsigned x) {
    if (x >= offset && x < offset + size) m.set(x - offset);
  });
  return m;
}

bool SubsetMask::within(unsigned offset, unsigned size) const {
  if (empty()) return true;
  return lowest() >= offset && highest() < offset + size;
}

std::string SubsetMask::str() const {
  std::string s = "{";
  bool first = true;
  for_each([&](unsigned x) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  });
  return s + "}";
}

bool lex_less(const SubsetMask& a, const SubsetMask& b) {
  // d = lowest differing element; the side owning d is smaller iff the other
  // side still has some element above d.
  std::size_t nw = std::max(a.word_count(), b.word_count());
  for (std::size_t i = 0; i < nw; ++i) {
    SubsetMask::Word wa = i < a.word_count() ? a.word(i) : 0, wb = i < b.word_count() ? b.word(i) : 0;
    SubsetMask::Word x = wa ^ wb;
    if (!x) continue;
    unsigned d = static_cast<unsigned>(i * 64 + std::countr_zero(x));
    bool in_a = (wa >> (d & 63)) & 1u;
    const SubsetMask& other = in_a ? b : a;
    bool other_has_above = other.highest() != other.width() && other.highest() > d;
    return in_a ? other_has_above : !other_has_above;
  }
  return false;
}

}  // namespace expthresh
