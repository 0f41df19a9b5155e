#include "fibercode/binmatrix.hpp"

#include <algorithm>
#include <sstream>

#include "fibercode/error.hpp"

namespace fibercode {
namespace {

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

// Row-reduces `m` in place (reduced row echelon form) and returns the pivot
// column of each nonzero row, in row order.
std::vector<std::size_t> rref(BinMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != rank) {
      auto a = m.row_words(p), b = m.row_words(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const auto pivot_row = m.row_words(rank);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != rank && m.get(r, c)) xor_words(m.row_words(r), pivot_row);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

BitVec BitVec::from_words(std::size_t size, std::span<const std::uint64_t> words) {
  BitVec v(size);
  std::copy_n(words.begin(), v.words_.size(), v.words_.begin());
  return v;
}

BitVec BitVec::from_positions(std::size_t size, std::span<const std::size_t> positions) {
  BitVec v(size);
  for (auto p : positions) v.flip(p);
  return v;
}

std::size_t BitVec::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVec::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> BitVec::positions() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.size_ != size_) throw Error(Errc::dimension_mismatch, "bit vector length mismatch");
  xor_words(words_, other.words_);
  return *this;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinMatrix BinMatrix::from_rows(std::size_t cols, std::span<const BitVec> rows) {
  BinMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::dimension_mismatch, "row length mismatch");
    std::copy(rows[r].words().begin(), rows[r].words().end(), m.row_words(r).begin());
  }
  return m;
}

BitVec BinMatrix::column(std::size_t c) const {
  BitVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

BinMatrix BinMatrix::transpose() const {
  BinMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto words = row_words(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      for (std::uint64_t bits = words[w]; bits; bits &= bits - 1) {
        t.set(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)), r);
      }
    }
  }
  return t;
}

bool BinMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BinMatrix::row_weight(std::size_t r) const noexcept {
  std::size_t w = 0;
  for (auto word : row_words(r)) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::size_t BinMatrix::max_row_weight() const noexcept {
  std::size_t best = 0;
  for (std::size_t r = 0; r < rows_; ++r) best = std::max(best, row_weight(r));
  return best;
}

std::size_t BinMatrix::max_col_weight() const { return transpose().max_row_weight(); }

void BinMatrix::set_block(std::size_t r0, std::size_t c0, const BinMatrix& block) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) {
    throw Error(Errc::dimension_mismatch, "block does not fit");
  }
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) set(r0 + r, c0 + c, block.get(r, c));
  }
}

BinMatrix BinMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw Error(Errc::dimension_mismatch, "block out of range");
  BinMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.set(r, c, get(r0 + r, c0 + c));
  }
  return out;
}

BitVec BinMatrix::apply(const BitVec& v) const {
  if (v.size() != cols_) throw Error(Errc::dimension_mismatch, "matrix-vector length mismatch");
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto words = row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < stride_; ++w) acc ^= words[w] & v.words()[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BinMatrix gf2_mul(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::dimension_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                              "x" + std::to_string(b.cols()));
  }
  BinMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row_words(r);
    const auto src = a.row_words(r);
    for (std::size_t w = 0; w < a.stride(); ++w) {
      for (std::uint64_t bits = src[w]; bits; bits &= bits - 1) {
        xor_words(dst, b.row_words(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
      }
    }
  }
  return out;
}

std::size_t gf2_rank(const BinMatrix& m) {
  BinMatrix work = m;
  return rref(work).size();
}

std::vector<BitVec> kernel_basis(const BinMatrix& m) {
  BinMatrix work = m;
  const auto pivots = rref(work);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVec x(m.cols());
    x.set(f);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (work.get(r, f)) x.set(pivots[r]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<BinMatrix> gf2_inverse(const BinMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  BinMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, n + r);
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

bool is_monomial(const BinMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<std::size_t> col_count(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_weight(r) != 1) return false;
    const auto words = m.row_words(r);
    for (std::size_t w = 0; w < m.stride(); ++w) {
      if (words[w]) ++col_count[w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w]))];
    }
  }
  return std::all_of(col_count.begin(), col_count.end(), [](std::size_t c) { return c == 1; });
}

RowSpace::RowSpace(const BinMatrix& generators) : length_(generators.cols()) {
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < generators.rows(); ++r) {
    BitVec v = generators.row(r);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (v.get(pivots_[i])) v ^= rows[i];
    }
    if (v.is_zero()) continue;
    const auto words = v.words();
    std::size_t w = 0;
    while (words[w] == 0) ++w;
    pivots_.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w])));
    rows.push_back(std::move(v));
  }
  basis_ = BinMatrix::from_rows(length_, rows);
}

void RowSpace::reduce(std::span<std::uint64_t> words) const noexcept {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if ((words[p / kWordBits] >> (p % kWordBits)) & 1u) xor_words(words, basis_.row_words(i));
  }
}

bool RowSpace::contains(const BitVec& v) const {
  if (v.size() != length_) throw Error(Errc::dimension_mismatch, "vector length does not match the space");
  BitVec work = v;
  reduce(work.words());
  return work.is_zero();
}

bool ColumnSpace::contains(const BitVec& v) const {
  if (v.size() != rows_) throw Error(Errc::dimension_mismatch, "vector length does not match matrix rows");
  return space_.contains(v);
}

bool solve_in_image(const BinMatrix& m, const BitVec& v) { return ColumnSpace(m).contains(v); }

std::string to_text(const BinMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  out.reserve(out.size() + m.rows() * (m.cols() + 1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

BinMatrix from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "matrix text: missing header");
  std::istringstream header(line);
  long long rows = -1, cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || rows < 0 || cols < 0 || (header >> extra)) {
    throw Error(Errc::parse_error, "matrix text: header must be \"rows cols\", got \"" + line + "\"");
  }
  BinMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!std::getline(in, line)) {
      throw Error(Errc::parse_error, "matrix text: expected " + std::to_string(rows) + " rows, got " +
                                         std::to_string(r));
    }
    if (line.size() != m.cols()) {
      throw Error(Errc::parse_error, "matrix text: row " + std::to_string(r) + " has " +
                                         std::to_string(line.size()) + " characters, expected " +
                                         std::to_string(cols));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (line[c] == '1') m.set(r, c);
      else if (line[c] != '0') throw Error(Errc::parse_error, "matrix text: bad character in row " + std::to_string(r));
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw Error(Errc::parse_error, "matrix text: trailing data after last row");
  }
  return m;
}

}  // namespace fibercode
