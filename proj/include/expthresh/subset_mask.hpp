#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace expthresh {

/// A subset of {0, ..., width-1} as a bit vector. Up to 128 elements live
/// inline; wider masks (blow-ups) spill to the heap.
class SubsetMask {
 public:
  using Word = std::uint64_t;

  SubsetMask() = default;
  explicit SubsetMask(unsigned width) : width_(width), words_((width + 63) / 64, 0) {}

  static SubsetMask from_elements(unsigned width, std::span<const unsigned> elements);
  static SubsetMask from_elements(unsigned width, std::initializer_list<unsigned> elements) {
    return from_elements(width, std::span<const unsigned>(elements.begin(), elements.size()));
  }
  /// Low `width` bits of `bits` (width <= 64).
  static SubsetMask from_word(unsigned width, Word bits);
  static SubsetMask full(unsigned width);

  unsigned width() const { return width_; }
  std::size_t word_count() const { return words_.size(); }
  Word word(std::size_t i) const { return words_[i]; }
  Word to_word() const { return words_.empty() ? 0 : words_[0]; }

  bool test(unsigned i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(unsigned i) { words_[i >> 6] |= Word{1} << (i & 63); }
  void reset(unsigned i) { words_[i >> 6] &= ~(Word{1} << (i & 63)); }

  unsigned count() const {
    unsigned c = 0;
    for (Word w : words_) c += static_cast<unsigned>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }
  /// Smallest element, or width() when empty.
  unsigned lowest() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<unsigned>(i * 64 + std::countr_zero(words_[i]));
    return width_;
  }
  unsigned highest() const {
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i]) return static_cast<unsigned>(i * 64 + 63 - std::countl_zero(words_[i]));
    return width_;
  }

  bool is_subset_of(const SubsetMask& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const SubsetMask& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  unsigned intersection_count(const SubsetMask& other) const {
    unsigned c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<unsigned>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  SubsetMask& operator&=(const SubsetMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  SubsetMask& operator-=(const SubsetMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.width_ == b.width_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }
  /// Total order by width, then by the bit pattern read from the top word.
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        f(static_cast<unsigned>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    out.reserve(count());
    for_each([&](unsigned x) { out.push_back(x); });
    return out;
  }

  /// This mask placed at `offset` inside a ground set of width `new_width`.
  SubsetMask shifted(unsigned offset, unsigned new_width) const;
  /// Elements in [offset, offset+size) shifted down to start at 0.
  SubsetMask window(unsigned offset, unsigned size) const;
  /// True when every element lies in [offset, offset+size).
  bool within(unsigned offset, unsigned size) const;

  std::size_t hash() const {
    std::size_t h = width_ * 0x9e3779b97f4a7c15ull;
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

  std::string str() const;

 private:
  unsigned width_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

/// Lexicographic order of the sorted element lists ({0,5} < {1}).
bool lex_less(const SubsetMask& a, const SubsetMask& b);

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& s) const { return s.hash(); }
};

}  // namespace expthresh
