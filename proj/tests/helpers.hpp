#pragma once

#include <functional>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

#include "fibercode/complex.hpp"
#include "fibercode/error.hpp"
#include "oracles.hpp"

namespace testing_util {

using namespace fibercode;

// Error code thrown by `fn`; throws std::logic_error if nothing is thrown.
inline Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("no error thrown");
}

inline AlgElem random_elem(std::mt19937_64& rng, const GroupPtr& g, double density = 0.3) {
  AlgElem e(g);
  std::bernoulli_distribution coin(density);
  for (Elem x = 0; x < g->order(); ++x)
    if (coin(rng)) e.toggle(x);
  return e;
}

inline RMatrix random_rmatrix(std::mt19937_64& rng, const GroupPtr& g, std::size_t rows, std::size_t cols,
                              double density = 0.3) {
  RMatrix m(g, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_elem(rng, g, density);
  return m;
}

inline BinMatrix random_binmatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
  BinMatrix m(rows, cols);
  std::bernoulli_distribution coin(density);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (coin(rng)) m.set(r, c);
  return m;
}

inline oracle::NaiveGroup naive_of(const GroupPtr& g) {
  if (g->kind() == "dihedral") return oracle::dihedral(g->parameter());
  return oracle::cyclic(g->order());
}

inline std::vector<std::vector<oracle::Alg>> naive_matrix(const RMatrix& m) {
  std::vector<std::vector<oracle::Alg>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(oracle::alg_of(m(r, c), m.group()->order()));
  return out;
}

inline oracle::NaiveTwist naive_twist(const Twist& t) {
  return {naive_matrix(t.phi1), naive_matrix(t.phi0), t.transport};
}

// Reference H_X / H_Z for the given twists.
inline oracle::NaiveCode naive_code(const RMatrix& base, const RMatrix& fiber, const TwistData& twists) {
  std::vector<std::vector<oracle::NaiveTwist>> table(base.rows());
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j) table[i].push_back(naive_twist(twists.at(i, j)));
  return oracle::build(naive_of(base.group()), naive_matrix(base), naive_matrix(fiber),
                       [&](std::size_t i, std::size_t j) -> const oracle::NaiveTwist& { return table[i][j]; });
}

// Random base/fiber with a random right-translation connection.
struct Instance {
  RMatrix base, fiber;
  TwistData twists;
};

inline Instance random_connection_instance(std::mt19937_64& rng, const GroupPtr& g, std::size_t m, std::size_t n,
                                           std::size_t p, std::size_t q) {
  Instance inst{random_rmatrix(rng, g, n, m, 0.4), random_rmatrix(rng, g, q, p, 0.4), {}};
  std::uniform_int_distribution<Elem> pick(0, g->order() - 1);
  std::vector<std::vector<std::optional<Elem>>> assignment(n, std::vector<std::optional<Elem>>(m));
  for (auto& row : assignment)
    for (auto& cell : row) cell = pick(rng);
  inst.twists = connection_from_group(inst.base, inst.fiber, assignment);
  return inst;
}

}  // namespace testing_util
