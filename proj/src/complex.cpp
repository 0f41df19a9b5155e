#include "fibercode/complex.hpp"

#include <sstream>

#include "fibercode/error.hpp"

namespace fibercode {
namespace {

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

void require_shape(const RMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(Errc::dimension_mismatch, std::string(what) + " must be " + shape(rows, cols) + ", got " +
                                              shape(m.rows(), m.cols()));
  }
}

void require_twist_shape(const Twist& t, const RMatrix& fiber) {
  require_shape(t.phi1, fiber.cols(), fiber.cols(), "phi1");
  require_shape(t.phi0, fiber.rows(), fiber.rows(), "phi0");
  require_same_group(t.phi1.group(), fiber.group());
  require_same_group(t.phi0.group(), fiber.group());
  if (t.transport >= fiber.group()->order()) throw Error(Errc::invalid_argument, "transport element out of range");
}

bool twist_is_flat(const RMatrix& fiber, const Twist& t) {
  if (t.transport == 0) return rmat_mul(t.phi0, fiber) == rmat_mul(fiber, t.phi1);
  const BinMatrix f = expand_left(fiber);
  return gf2_mul(expand_twist(t.phi0, t.transport), f) == gf2_mul(f, expand_twist(t.phi1, t.transport));
}

AlgElem transported(const AlgElem& base, Elem transport) {
  if (transport == 0) return base;
  return AlgElem::of(base.group(), transport) * base;
}

}  // namespace

RMatrix::RMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), rows_(rows), cols_(cols), entries_(rows * cols, AlgElem(group_)) {
  if (!group_) throw Error(Errc::invalid_argument, "matrix needs a group");
}

RMatrix RMatrix::identity(GroupPtr group, std::size_t n) { return scalar(std::move(group), n, 0); }

RMatrix RMatrix::scalar(GroupPtr group, std::size_t n, Elem g) {
  RMatrix m(std::move(group), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = AlgElem::of(m.group_, g);
  return m;
}

RMatrix RMatrix::from_rows(GroupPtr group, const std::vector<std::vector<AlgElem>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RMatrix m(std::move(group), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::ragged_matrix, "row " + std::to_string(r) + " has a different length");
    for (std::size_t c = 0; c < cols; ++c) {
      require_same_group(rows[r][c].group(), m.group_);
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

RMatrix RMatrix::parse(GroupPtr group, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RMatrix m(std::move(group), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(Errc::ragged_matrix, "row " + std::to_string(r) + " has a different length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_element(m.group_, rows[r][c]);
  }
  return m;
}

bool RMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const AlgElem& e = (*this)(r, c);
      if (r == c ? !e.is_one() : !e.is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::string>> RMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).to_string());
  }
  return out;
}

RMatrix rmat_mul(const RMatrix& a, const RMatrix& b) {
  require_same_group(a.group(), b.group());
  if (a.cols() != b.rows()) {
    throw Error(Errc::dimension_mismatch, "cannot multiply " + shape(a.rows(), a.cols()) + " by " +
                                              shape(b.rows(), b.cols()));
  }
  RMatrix out(a.group(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.cols(); ++k) out(i, k) += a(i, j) * b(j, k);
    }
  }
  return out;
}

RMatrix rmat_add(const RMatrix& a, const RMatrix& b) {
  require_same_group(a.group(), b.group());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::dimension_mismatch, "cannot add matrices of different shapes");
  RMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

BinMatrix expand_left(const RMatrix& m) {
  const std::size_t l = m.group()->order();
  BinMatrix out(m.rows() * l, m.cols() * l);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) out.set_block(r * l, c * l, left_regular(m(r, c)));
    }
  }
  return out;
}

BinMatrix expand_twist(const RMatrix& phi, Elem transport) {
  BinMatrix out = expand_left(phi);
  if (transport == 0) return out;
  const std::size_t l = phi.group()->order();
  BinMatrix shift(phi.rows() * l, phi.rows() * l);
  const BinMatrix rho = right_regular(AlgElem::of(phi.group(), transport));
  for (std::size_t r = 0; r < phi.rows(); ++r) shift.set_block(r * l, r * l, rho);
  return gf2_mul(shift, out);
}

Twist identity_twist(const GroupPtr& group, std::size_t p, std::size_t q) {
  return Twist{RMatrix::identity(group, p), RMatrix::identity(group, q), 0};
}

const char* twist_mode_name(TwistMode mode) {
  switch (mode) {
    case TwistMode::identity: return "identity";
    case TwistMode::per_column: return "per_column";
    case TwistMode::per_entry: return "per_entry";
  }
  return "unknown";
}

TwistData TwistData::identity(const GroupPtr& group, std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  TwistData t = per_column(n, std::vector<Twist>(m, identity_twist(group, p, q)));
  t.mode_ = TwistMode::identity;
  return t;
}

TwistData TwistData::per_column(std::size_t n, std::vector<Twist> columns) {
  TwistData t;
  t.mode_ = TwistMode::per_column;
  t.m_ = columns.size();
  t.n_ = n;
  t.entries_.reserve(t.m_ * n);
  for (const auto& col : columns) {
    for (std::size_t i = 0; i < n; ++i) t.entries_.push_back(col);
  }
  return t;
}

TwistData TwistData::per_entry(std::vector<std::vector<Twist>> entries) {
  TwistData t;
  t.mode_ = TwistMode::per_entry;
  t.m_ = entries.size();
  t.n_ = entries.empty() ? 0 : entries.front().size();
  for (auto& col : entries) {
    if (col.size() != t.n_) throw Error(Errc::ragged_matrix, "per-entry twist table is ragged");
    for (auto& tw : col) t.entries_.push_back(std::move(tw));
  }
  return t;
}

bool TwistData::column_uniform() const {
  for (std::size_t j = 0; j < m_; ++j) {
    for (std::size_t i = 1; i < n_; ++i) {
      if (!(at(i, j) == at(0, j))) return false;
    }
  }
  return true;
}

BiMatrix::BiMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), rows_(rows), cols_(cols),
      entries_(rows * cols, BiEntry{AlgElem(group_), AlgElem(group_)}) {}

BinMatrix expand_bientry_matrix(const BiMatrix& m) {
  const std::size_t l = m.group()->order();
  BinMatrix out(m.rows() * l, m.cols() * l);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const BiEntry& e = m(r, c);
      if (e.is_zero()) continue;
      require_same_group(e.base.group(), m.group());
      out.set_block(r * l, c * l, mixed_regular(e.base, e.fiber));
    }
  }
  return out;
}

FlatnessReport check_flatness(const RMatrix& fiber, const TwistData& twists) {
  FlatnessReport report;
  if (twists.mode() == TwistMode::per_entry) {
    for (std::size_t j = 0; j < twists.m(); ++j) {
      for (std::size_t i = 0; i < twists.n(); ++i) {
        require_twist_shape(twists.at(i, j), fiber);
        const bool flat = twist_is_flat(fiber, twists.at(i, j));
        report.items.push_back({j, i, flat});
        report.flat = report.flat && flat;
      }
    }
  } else {
    for (std::size_t j = 0; j < twists.m(); ++j) {
      if (twists.n() == 0) break;
      require_twist_shape(twists.column(j), fiber);
      const bool flat = twist_is_flat(fiber, twists.column(j));
      report.items.push_back({j, std::nullopt, flat});
      report.flat = report.flat && flat;
    }
  }
  return report;
}

TotalComplex build_twisted_complex(const RMatrix& base, const RMatrix& fiber, const TwistData& twists,
                                   bool allow_nonflat) {
  require_same_group(base.group(), fiber.group());
  if (twists.m() != base.cols() || twists.n() != base.rows()) {
    throw Error(Errc::dimension_mismatch, "twist table is " + shape(twists.m(), twists.n()) +
                                              " (edges x vertices), base is " + shape(base.rows(), base.cols()));
  }
  const FlatnessReport flatness = check_flatness(fiber, twists);
  if (!flatness.flat && !allow_nonflat) {
    std::ostringstream msg;
    msg << "twists are not flat at";
    for (const auto& item : flatness.items) {
      if (item.flat) continue;
      msg << " j=" << item.generator;
      if (item.vertex) msg << "/i=" << *item.vertex;
    }
    throw Error(Errc::not_flat, msg.str());
  }

  const GroupPtr& g = base.group();
  TotalComplex t;
  t.group = g;
  t.n = base.rows();
  t.m = base.cols();
  t.q = fiber.rows();
  t.p = fiber.cols();
  const std::size_t m = t.m, n = t.n, p = t.p, q = t.q;
  const AlgElem one = AlgElem::one(g);

  t.d2 = BiMatrix(g, t.rank_c1(), t.rank_c2());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t v = 0; v < q; ++v) {
      for (std::size_t u = 0; u < p; ++u) t.d2(j * q + v, j * p + u) = {one, fiber(v, u)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (base(i, j).is_zero()) continue;
      const Twist& tw = twists.at(i, j);
      const AlgElem b = transported(base(i, j), tw.transport);
      for (std::size_t u2 = 0; u2 < p; ++u2) {
        for (std::size_t u = 0; u < p; ++u) t.d2(m * q + i * p + u2, j * p + u) = {b, tw.phi1(u2, u)};
      }
    }
  }

  t.d1 = BiMatrix(g, t.rank_c0(), t.rank_c1());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (base(i, j).is_zero()) continue;
      const Twist& tw = twists.at(i, j);
      const AlgElem b = transported(base(i, j), tw.transport);
      for (std::size_t v2 = 0; v2 < q; ++v2) {
        for (std::size_t v = 0; v < q; ++v) t.d1(i * q + v2, j * q + v) = {b, tw.phi0(v2, v)};
      }
    }
    for (std::size_t v = 0; v < q; ++v) {
      for (std::size_t u = 0; u < p; ++u) t.d1(i * q + v, m * q + i * p + u) = {one, fiber(v, u)};
    }
  }
  return t;
}

const char* transpose_mode_name(TransposeMode mode) {
  return mode == TransposeMode::plain ? "plain" : "antipode";
}

LiftedProduct build_lifted_product(const RMatrix& a, const RMatrix& b, TransposeMode mode) {
  require_same_group(a.group(), b.group());
  const GroupPtr& g = a.group();
  LiftedProduct lp;
  lp.complex = build_twisted_complex(a, b, TwistData::identity(g, a.cols(), a.rows(), b.cols(), b.rows()));
  const std::size_t m = lp.complex.m, n = lp.complex.n, p = lp.complex.p, q = lp.complex.q;
  const AlgElem one = AlgElem::one(g);
  auto tr = [mode](const AlgElem& x) { return mode == TransposeMode::antipode ? antipode(x) : x; };

  lp.hz = BiMatrix(g, m * p, m * q + n * p);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t u = 0; u < p; ++u) {
      for (std::size_t v = 0; v < q; ++v) lp.hz(j * p + u, j * q + v) = {one, tr(b(v, u))};
      for (std::size_t i = 0; i < n; ++i) lp.hz(j * p + u, m * q + i * p + u) = {tr(a(i, j)), one};
    }
  }
  lp.hz_expanded = expand_bientry_matrix(lp.hz);

  const BinMatrix product = gf2_mul(expand_bientry_matrix(lp.complex.d1), lp.hz_expanded.transpose());
  if (!product.is_zero()) {
    const std::size_t l = g->order();
    for (std::size_t r = 0; r < product.rows(); ++r) {
      for (std::size_t c = 0; c < product.cols(); ++c) {
        if (!product.get(r, c)) continue;
        const std::size_t row_block = r / l, col_block = c / l;
        throw Error(Errc::css_violation,
                    std::string("lifted product with ") + transpose_mode_name(mode) +
                        " transpose violates H_X*H_Z^T = 0 at C0 block (i=" + std::to_string(row_block / q) +
                        ", v=" + std::to_string(row_block % q) + ") x C2 block (j=" + std::to_string(col_block / p) +
                        ", u=" + std::to_string(col_block % p) + ")");
      }
    }
  }
  return lp;
}

const char* fiber_action_name(FiberAction action) {
  return action == FiberAction::right_translation ? "right_translation" : "left_scalar";
}

TwistData connection_from_group(const RMatrix& base, const RMatrix& fiber,
                                const std::vector<std::vector<std::optional<Elem>>>& assignment,
                                FiberAction action) {
  require_same_group(base.group(), fiber.group());
  const GroupPtr& g = base.group();
  if (assignment.size() != base.rows()) {
    throw Error(Errc::dimension_mismatch, "connection must have one row per base row");
  }
  std::vector<std::vector<Twist>> entries(base.cols(), std::vector<Twist>(base.rows()));
  for (std::size_t i = 0; i < base.rows(); ++i) {
    if (assignment[i].size() != base.cols()) {
      throw Error(Errc::ragged_matrix, "connection row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t j = 0; j < base.cols(); ++j) {
      const auto& a = assignment[i][j];
      if (!a && !base(i, j).is_zero()) {
        throw Error(Errc::missing_assignment, "no group element assigned to edge j=" + std::to_string(j) +
                                                  " at vertex i=" + std::to_string(i));
      }
      const Elem elem = a.value_or(0);
      if (elem >= g->order()) throw Error(Errc::invalid_argument, "connection element out of range");
      if (action == FiberAction::right_translation) {
        entries[j][i] = Twist{RMatrix::identity(g, fiber.cols()), RMatrix::identity(g, fiber.rows()), elem};
      } else {
        entries[j][i] = Twist{RMatrix::scalar(g, fiber.cols(), elem), RMatrix::scalar(g, fiber.rows(), elem), 0};
      }
    }
  }
  return TwistData::per_entry(std::move(entries));
}

bool is_invertible_twist(const RMatrix& phi) {
  if (!phi.is_square()) throw Error(Errc::dimension_mismatch, "twist must be square, got " + shape(phi.rows(), phi.cols()));
  return gf2_rank(expand_left(phi)) == phi.rows() * phi.group()->order();
}

}  // namespace fibercode
