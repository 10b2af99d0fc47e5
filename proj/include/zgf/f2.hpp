#pragma once

#include <cstdint>
#include <vector>

namespace zgf {

/// Dense bit vector over F2 with the operations needed for column reduction.
class Bitvec {
public:
  Bitvec() = default;
  explicit Bitvec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }

  void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

  void operator^=(const Bitvec& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  /// Index of the highest set bit; -1 when empty.
  long pivot() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w]) return long(w * 64 + (63 - __builtin_clzll(words_[w])));
    }
    return -1;
  }

  bool operator==(const Bitvec& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nbits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace zgf
