#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace pop {

// Square boolean matrix packed into 64-bit row words. Rows support the bulk
// operations needed for transitive closure and reduction.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n)
      : n_(n), words_(n > 0 ? (n + 63) / 64 : 0), bits_(static_cast<std::size_t>(n_) * words_, 0) {}

  int size() const { return n_; }
  int row_words() const { return words_; }

  bool get(int r, int c) const {
    return (bits_[static_cast<std::size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(int r, int c) {
    bits_[static_cast<std::size_t>(r) * words_ + (c >> 6)] |= std::uint64_t(1) << (c & 63);
  }
  void clear(int r, int c) {
    bits_[static_cast<std::size_t>(r) * words_ + (c >> 6)] &= ~(std::uint64_t(1) << (c & 63));
  }

  const std::uint64_t* row(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }

  // row[dst] |= row[src]
  void or_row(int dst, int src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (int w = 0; w < words_; ++w) d[w] |= s[w];
  }

  bool row_subset_of(int a, int b) const {
    const std::uint64_t* ra = row(a);
    const std::uint64_t* rb = row(b);
    for (int w = 0; w < words_; ++w)
      if (ra[w] & ~rb[w]) return false;
    return true;
  }

  bool rows_equal(int a, int b) const {
    const std::uint64_t* ra = row(a);
    const std::uint64_t* rb = row(b);
    for (int w = 0; w < words_; ++w)
      if (ra[w] != rb[w]) return false;
    return true;
  }

  int row_popcount(int r) const {
    const std::uint64_t* p = row(r);
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount(p[w]);
    return c;
  }

  template <typename Fn>
  void for_each_in_row(int r, Fn&& fn) const {
    const std::uint64_t* p = row(r);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = p[w];
      while (bits) {
        int b = std::countr_zero(bits);
        fn(w * 64 + b);
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const BitMatrix& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace pop
