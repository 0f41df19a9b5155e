#include <doctest.h>

#include <functional>

#include "fibercode/error.hpp"
#include "fibercode/group.hpp"
#include "helpers.hpp"

using namespace fibercode;
using testing_util::code_of;

namespace {

// r^a s^b acts on Z_n as k -> a + (-1)^b k; composing maps multiplies.
std::size_t affine_product(std::size_t n, std::size_t x, std::size_t y) {
  const long a = static_cast<long>(x % n), b = static_cast<long>(x / n);
  const long c = static_cast<long>(y % n), d = static_cast<long>(y / n);
  const long sign = b ? -1 : 1;
  const long shift = ((a + sign * c) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n);
  return static_cast<std::size_t>(((b + d) % 2) * static_cast<long>(n) + shift);
}

}  // namespace

TEST_CASE("cyclic group") {
  const auto g = cyclic_group(6);
  CHECK(g->order() == 6);
  CHECK(g->kind() == "cyclic");
  CHECK(g->name(0) == "e");
  CHECK(g->name(1) == "g");
  CHECK(g->name(5) == "g^5");
  for (Elem a = 0; a < 6; ++a) {
    CHECK(g->mul(a, g->inverse(a)) == 0);
    for (Elem b = 0; b < 6; ++b) CHECK(g->mul(a, b) == (a + b) % 6);
  }
  CHECK(cyclic_group(1)->symbols().empty());
}

TEST_CASE("dihedral group matches affine maps on Z_n") {
  for (std::size_t n : {2u, 3u, 4u, 7u}) {
    const auto g = dihedral_group(n);
    REQUIRE(g->order() == 2 * n);
    for (Elem x = 0; x < 2 * n; ++x)
      for (Elem y = 0; y < 2 * n; ++y) CHECK(g->mul(x, y) == affine_product(n, x, y));
  }
  const auto d3 = dihedral_group(3);
  CHECK(d3->names() == std::vector<std::string>{"e", "r", "r^2", "s", "rs", "r^2s"});
  // s r s = r^{-1}
  const Elem r = *d3->find("r"), s = *d3->find("s");
  CHECK(d3->mul(d3->mul(s, r), s) == d3->inverse(r));
}

TEST_CASE("explicit tables are validated") {
  const std::vector<std::string> z3{"e", "a", "b"};
  const auto g = group_from_table(z3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(g->order() == 3);
  CHECK(g->symbols().size() == 2);
  CHECK(same_group(g, group_from_table(z3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})));

  CHECK(code_of([&] { group_from_table({"x", "a"}, {{0, 1}, {1, 0}}); }) == Errc::invalid_argument);
  CHECK(code_of([&] { group_from_table({"e", "e"}, {{0, 1}, {1, 0}}); }) == Errc::invalid_argument);
  CHECK(code_of([&] { group_from_table(z3, {{0, 1, 2}, {1, 2, 0}}); }) == Errc::dimension_mismatch);
  CHECK(code_of([&] { group_from_table(z3, {{1, 0, 2}, {0, 1, 2}, {2, 2, 1}}); }) == Errc::group_identity);
  CHECK(code_of([&] { group_from_table(z3, {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}); }) ==
        Errc::group_missing_inverse);
  CHECK(code_of([&] { group_from_table(z3, {{0, 1, 2}, {1, 0, 0}, {2, 1, 0}}); }) == Errc::group_not_latin);
  CHECK(code_of([&] { cyclic_group(kMaxGroupOrder + 1); }) == Errc::group_too_large);
  CHECK(code_of([&] { dihedral_group(1); }) == Errc::invalid_argument);
}

TEST_CASE("order-5 loop is rejected as non-associative") {
  // Latin square with identity and inverses, but (a*a)*b != a*(a*b).
  const std::vector<std::vector<Elem>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  // Brute-force confirmation that the table really is a non-associative loop.
  bool associative = true;
  for (Elem a = 0; a < 5; ++a)
    for (Elem b = 0; b < 5; ++b)
      for (Elem c = 0; c < 5; ++c)
        if (loop[loop[a][b]][c] != loop[a][loop[b][c]]) associative = false;
  REQUIRE_FALSE(associative);
  CHECK(code_of([&] { group_from_table({"e", "a", "b", "c", "d"}, loop); }) == Errc::group_not_associative);
}
