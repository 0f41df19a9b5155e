#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fibercode {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Bit-packed GF(2) vector.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_(words_for(size), 0) {}

  static BitVec from_words(std::size_t size, std::span<const std::uint64_t> words);
  static BitVec from_positions(std::size_t size, std::span<const std::size_t> positions);

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (v) words_[i / kWordBits] |= mask; else words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;
  std::vector<std::size_t> positions() const;

  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  bool operator==(const BitVec&) const = default;

  // '0'/'1' characters, position 0 first.
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix with row-major 64-bit packing. Bits past `cols` in
/// each row's last word are kept zero.
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BinMatrix identity(std::size_t n);
  static BinMatrix from_rows(std::size_t cols, std::span<const BitVec> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    auto& w = data_[r * stride_ + c / kWordBits];
    if (v) w |= mask; else w &= ~mask;
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + c / kWordBits] ^= std::uint64_t{1} << (c % kWordBits);
  }

  std::span<std::uint64_t> row_words(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
  std::span<const std::uint64_t> row_words(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  BitVec row(std::size_t r) const { return BitVec::from_words(cols_, row_words(r)); }
  BitVec column(std::size_t c) const;

  BinMatrix transpose() const;
  bool is_zero() const noexcept;
  std::size_t row_weight(std::size_t r) const noexcept;
  std::size_t max_row_weight() const noexcept;
  std::size_t max_col_weight() const;

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const BinMatrix& block);
  BinMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

  // Matrix-vector product M*v.
  BitVec apply(const BitVec& v) const;

  bool operator==(const BinMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

BinMatrix gf2_mul(const BinMatrix& a, const BinMatrix& b);
std::size_t gf2_rank(const BinMatrix& m);

// Basis of the right null space {x : M x = 0}; size is cols - rank.
std::vector<BitVec> kernel_basis(const BinMatrix& m);

// Two-sided inverse; nullopt when singular or non-square.
std::optional<BinMatrix> gf2_inverse(const BinMatrix& m);

// Permutation matrix test: square, one 1 per row and per column.
bool is_monomial(const BinMatrix& m);

/// Echelonized span of a set of vectors. Built once, then answers
/// membership queries without touching the generating matrix again.
class RowSpace {
 public:
  RowSpace() = default;
  // Span of the rows of `generators`.
  explicit RowSpace(const BinMatrix& generators);

  std::size_t dimension() const noexcept { return pivots_.size(); }
  std::size_t length() const noexcept { return length_; }
  bool contains(const BitVec& v) const;
  // Reduces `words` (a vector of length() bits) in place; zero afterwards iff it was in the span.
  void reduce(std::span<std::uint64_t> words) const noexcept;
  const BinMatrix& basis() const noexcept { return basis_; }

 private:
  std::size_t length_ = 0;
  BinMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Column space of M, for repeated "is v = M x solvable" queries.
class ColumnSpace {
 public:
  explicit ColumnSpace(const BinMatrix& m) : rows_(m.rows()), space_(m.transpose()) {}
  bool contains(const BitVec& v) const;
  std::size_t rank() const noexcept { return space_.dimension(); }

 private:
  std::size_t rows_;
  RowSpace space_;
};

bool solve_in_image(const BinMatrix& m, const BitVec& v);

// "rows cols" header, then one line of '0'/'1' per row.
std::string to_text(const BinMatrix& m);
BinMatrix from_text(std::string_view text);

}  // namespace fibercode
