#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fibercode/algebra.hpp"

namespace fibercode {

/// Rectangular matrix over F2[G], row-major.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(GroupPtr group, std::size_t rows, std::size_t cols);

  static RMatrix identity(GroupPtr group, std::size_t n);
  // g on the diagonal.
  static RMatrix scalar(GroupPtr group, std::size_t n, Elem g);
  static RMatrix from_rows(GroupPtr group, const std::vector<std::vector<AlgElem>>& rows);
  static RMatrix parse(GroupPtr group, const std::vector<std::vector<std::string>>& rows);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const AlgElem& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  AlgElem& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  bool is_identity() const;
  std::vector<std::vector<std::string>> to_strings() const;

  friend bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  GroupPtr group_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<AlgElem> entries_;
};

// Noncommutative product; entry (i,k) = sum_j a(i,j) * b(j,k).
RMatrix rmat_mul(const RMatrix& a, const RMatrix& b);
RMatrix rmat_add(const RMatrix& a, const RMatrix& b);

/// Binary expansion of an R-matrix with every entry replaced by its left
/// regular representation; (rows*l) x (cols*l).
BinMatrix expand_left(const RMatrix& m);

/// Twist attached to one base entry: a chain endomorphism (phi1, phi0) of the
/// fiber acting by left multiplication, composed with an optional parallel
/// transport by a group element acting on fiber coordinates from the right.
/// Right translation commutes with every left-regular fiber block.
struct Twist {
  RMatrix phi1;  // p x p
  RMatrix phi0;  // q x q
  Elem transport = 0;

  friend bool operator==(const Twist&, const Twist&) = default;
};

Twist identity_twist(const GroupPtr& group, std::size_t p, std::size_t q);

enum class TwistMode { identity, per_column, per_entry };

const char* twist_mode_name(TwistMode mode);

/// Twists for every (vertex i, edge j) pair. Per-column data (one twist per
/// base generator j) is stored expanded to every row i.
class TwistData {
 public:
  TwistData() = default;

  static TwistData identity(const GroupPtr& group, std::size_t m, std::size_t n, std::size_t p, std::size_t q);
  static TwistData per_column(std::size_t n, std::vector<Twist> columns);
  // entries[j][i]: twist on edge j at vertex i (m x n).
  static TwistData per_entry(std::vector<std::vector<Twist>> entries);

  TwistMode mode() const noexcept { return mode_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  const Twist& at(std::size_t i, std::size_t j) const { return entries_[j * n_ + i]; }
  // Uniform down column j; only meaningful when mode() != per_entry.
  const Twist& column(std::size_t j) const { return entries_[j * n_]; }
  // True when every column carries a single twist.
  bool column_uniform() const;

 private:
  TwistMode mode_ = TwistMode::identity;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Twist> entries_;
};

/// Pair (base coefficient, fiber coefficient) of a total-complex entry.
/// Expands to right_regular(base) * left_regular(fiber).
struct BiEntry {
  AlgElem base;
  AlgElem fiber;

  bool is_zero() const noexcept { return base.is_zero() || fiber.is_zero(); }
};

class BiMatrix {
 public:
  BiMatrix() = default;
  BiMatrix(GroupPtr group, std::size_t rows, std::size_t cols);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const BiEntry& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  BiEntry& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

 private:
  GroupPtr group_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BiEntry> entries_;
};

// Block (r,c) becomes right_regular(base) * left_regular(fiber); zero entries stay zero.
BinMatrix expand_bientry_matrix(const BiMatrix& m);

/// Three-term total complex C2 -> C1 -> C0 over R.
///
/// Index layout: C2 = B1 (x) F1 at j*p + u; C1 = (B1 (x) F0 at j*q + v) then
/// (B0 (x) F1 at m*q + i*p + u); C0 = B0 (x) F0 at i*q + v.
struct TotalComplex {
  GroupPtr group;
  std::size_t m = 0, n = 0, p = 0, q = 0;
  BiMatrix d2;  // (mq + np) x mp
  BiMatrix d1;  // nq x (mq + np)

  std::size_t rank_c2() const noexcept { return m * p; }
  std::size_t rank_c1() const noexcept { return m * q + n * p; }
  std::size_t rank_c0() const noexcept { return n * q; }
};

struct FlatnessItem {
  std::size_t generator;             // j
  std::optional<std::size_t> vertex;  // i, per-entry mode only
  bool flat;
};

struct FlatnessReport {
  std::vector<FlatnessItem> items;
  bool flat = true;
};

// phi0 * dF == dF * phi1 for every twist (per generator, or per entry).
FlatnessReport check_flatness(const RMatrix& fiber, const TwistData& twists);

TotalComplex build_twisted_complex(const RMatrix& base, const RMatrix& fiber, const TwistData& twists,
                                   bool allow_nonflat = false);

enum class TransposeMode { plain, antipode };

const char* transpose_mode_name(TransposeMode mode);

struct LiftedProduct {
  TotalComplex complex;  // identity-twist realization
  BiMatrix hz;           // [I (x) B^T, A^T (x) I], transposed entries per TransposeMode
  BinMatrix hz_expanded;
};

/// LP(A, B). Verifies H_X * H_Z^T = 0 for the materialized H_Z and throws
/// css_violation naming the offending block otherwise.
LiftedProduct build_lifted_product(const RMatrix& a, const RMatrix& b, TransposeMode mode);

enum class FiberAction { right_translation, left_scalar };

const char* fiber_action_name(FiberAction action);

/// Per-(edge, vertex) twists from a group-valued connection. `assignment[i][j]`
/// is laid out like the base matrix (n x m); entries may be empty where the
/// base entry is zero. right_translation transports fiber coordinates by x -> x*g;
/// left_scalar uses phi = g*I and is flat only where g commutes with the fiber.
TwistData connection_from_group(const RMatrix& base, const RMatrix& fiber,
                                const std::vector<std::vector<std::optional<Elem>>>& assignment,
                                FiberAction action = FiberAction::right_translation);

// Full-rank test on the left-regular expansion.
bool is_invertible_twist(const RMatrix& phi);

/// Binary expansion of a twist component: (I (x) right_regular(transport)) * expand_left(phi).
BinMatrix expand_twist(const RMatrix& phi, Elem transport);

}  // namespace fibercode
