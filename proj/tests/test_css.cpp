#include <doctest.h>

#include "fibercode/css.hpp"
#include "helpers.hpp"

using namespace fibercode;
using testing_util::code_of;

namespace {

RMatrix parse(const GroupPtr& g, std::vector<std::vector<std::string>> rows) { return RMatrix::parse(g, rows); }

struct D3Setup {
  GroupPtr g = dihedral_group(3);
  RMatrix base = parse(g, {{"0", "r+r^2"}, {"1+r+r^2", "0"}});
  RMatrix fiber = parse(g, {{"1", "r"}, {"s", "1"}});
  RMatrix phi0 = parse(g, {{"1", "r+r^2"}, {"0", "r"}});
  RMatrix phi1 = parse(g, {{"1", "0"}, {"s+rs", "r"}});
  RMatrix swap = parse(g, {{"0", "r"}, {"s", "0"}});

  TwistData case1() const { return TwistData::per_column(2, {{phi1, phi0, 0}, {swap, swap, 0}}); }
  TwistData case2() const { return TwistData::per_column(2, {{phi1, phi0, 0}, {fiber, fiber, 0}}); }
  TwistData case3() const { return TwistData::per_column(2, {{fiber, fiber, 0}, {fiber, fiber, 0}}); }
};

CssCode hgp_trivial() {
  const auto g = cyclic_group(1);
  return assemble_css(build_twisted_complex(parse(g, {{"1", "1"}}), parse(g, {{"1"}, {"1"}}),
                                            TwistData::identity(g, 2, 1, 1, 2)));
}

void check_witness(const BinMatrix& checks, const BinMatrix& stabilizers, const SideDistance& side) {
  REQUIRE(side.witness.has_value());
  CHECK(side.witness->weight() == *side.d);
  CHECK(checks.apply(*side.witness).is_zero());
  CHECK_FALSE(RowSpace(stabilizers).contains(*side.witness));
}

}  // namespace

TEST_CASE("code parameters") {
  const D3Setup s;
  CHECK(code_parameters(assemble_css(build_twisted_complex(s.base, s.fiber, TwistData::identity(s.g, 2, 2, 2, 2)))) ==
        CodeParameters{48, 6, 21, 21});
  CHECK(code_parameters(assemble_css(build_twisted_complex(s.base, s.fiber, s.case1()))) == CodeParameters{48, 6, 21, 21});
  CHECK(code_parameters(assemble_css(build_twisted_complex(s.base, s.fiber, s.case2()))) == CodeParameters{48, 10, 19, 19});
  CHECK(code_parameters(assemble_css(build_twisted_complex(s.base, s.fiber, s.case3()))) == CodeParameters{48, 12, 18, 18});
  CHECK(code_parameters(hgp_trivial()) == CodeParameters{5, 1, 2, 2});
  CHECK(code_parameters(assemble_css(BinMatrix(0, 7), BinMatrix(0, 7))) == CodeParameters{7, 7, 0, 0});
}

TEST_CASE("assemble_css rejects non-commuting checks") {
  BinMatrix hx(1, 2), hz(1, 2);
  hx.set(0, 0);
  hz.set(0, 0);
  CHECK(code_of([&] { assemble_css(hx, hz); }) == Errc::css_violation);
  CHECK(code_of([&] { assemble_css(BinMatrix(1, 2), BinMatrix(1, 3)); }) == Errc::dimension_mismatch);
}

TEST_CASE("distance of the fixtures") {
  const D3Setup s;
  DistanceOptions opt;
  opt.weight_cap = 3;
  for (const auto& tw : {s.case1(), s.case2(), s.case3()}) {
    const CssCode code = assemble_css(build_twisted_complex(s.base, s.fiber, tw));
    const DistanceResult r = min_distance(code, opt);
    CHECK(r.x.d == std::optional<std::size_t>(2));
    CHECK(r.z.d == std::optional<std::size_t>(2));
    CHECK(r.exact());
    CHECK(r.d() == std::optional<std::size_t>(2));
    check_witness(code.hx, code.hz, r.x);
    check_witness(code.hz, code.hx, r.z);
  }
}

TEST_CASE("cap and budget never produce a wrong number") {
  const D3Setup s;
  const CssCode code = assemble_css(build_twisted_complex(s.base, s.fiber, s.case3()));
  DistanceOptions opt;
  opt.weight_cap = 1;
  DistanceResult r = min_distance(code, opt);
  CHECK_FALSE(r.x.d.has_value());
  CHECK_FALSE(r.x.exact);
  CHECK(r.x.cleared_weight == 1);
  CHECK_FALSE(r.d().has_value());

  opt.weight_cap = 6;
  opt.budget = 100;  // C(48, 2) = 1128 does not fit
  r = min_distance(code, opt);
  CHECK(r.x.budget_exhausted);
  CHECK_FALSE(r.x.exact);
  CHECK(r.x.cleared_weight == 1);
  CHECK(code_of([&] {
          DistanceOptions zero;
          zero.weight_cap = 0;
          min_logical_weight(code.hx, code.hz, zero);
        }) == Errc::invalid_argument);
}

TEST_CASE("thread count does not change the witness") {
  const D3Setup s;
  const CssCode code = assemble_css(build_twisted_complex(s.base, s.fiber, s.case2()));
  DistanceOptions one, many;
  one.threads = 1;
  many.threads = 8;
  const SideDistance a = min_logical_weight(code.hx, code.hz, one);
  const SideDistance b = min_logical_weight(code.hx, code.hz, many);
  CHECK(a.d == b.d);
  CHECK(a.witness == b.witness);
}

TEST_CASE("bounded search agrees with brute force on small codes") {
  std::mt19937_64 rng(41);
  int compared = 0;
  for (auto g : {cyclic_group(2), cyclic_group(3), dihedral_group(3), cyclic_group(1)}) {
    for (int t = 0; t < 12; ++t) {
      const std::size_t m = 1 + t % 2, n = 1 + (t / 2) % 2, p = 1 + t % 3, q = 1 + (t / 3) % 2;
      if ((m * q + n * p) * g->order() > 20) continue;
      const auto inst = testing_util::random_connection_instance(rng, g, m, n, p, q);
      const CssCode code = assemble_css(build_twisted_complex(inst.base, inst.fiber, inst.twists));
      DistanceOptions opt;
      opt.weight_cap = code.n;
      const DistanceResult r = min_distance(code, opt);
      const auto brute = oracle::brute_force_distance(oracle::dense(code.hx), oracle::dense(code.hz), code.n);
      CHECK(r.x.d == brute.dx);
      CHECK(r.z.d == brute.dz);
      CHECK(r.x.no_logicals == !brute.dx.has_value());
      CHECK(r.exact());
      opt.full_enumeration = true;
      const DistanceResult full = min_distance(code, opt);
      CHECK(full.method == DistanceMethod::full_enumeration);
      CHECK(full.x.d == brute.dx);
      CHECK(full.z.d == brute.dz);
      if (r.x.d) {
        CHECK(full.x.witness == r.x.witness);
        check_witness(code.hx, code.hz, r.x);
      }
      ++compared;
    }
  }
  CHECK(compared > 20);
}

TEST_CASE("trivial-group hypergraph product is [[5,1,2]]") {
  const CssCode code = hgp_trivial();
  DistanceOptions opt;
  opt.full_enumeration = true;
  const DistanceResult r = min_distance(code, opt);
  CHECK(r.method == DistanceMethod::full_enumeration);
  CHECK(r.d() == std::optional<std::size_t>(2));
  CHECK(r.exact());
  const auto brute = oracle::brute_force_distance(oracle::dense(code.hx), oracle::dense(code.hz), code.n);
  CHECK(brute.dx == std::optional<std::size_t>(2));
  CHECK(brute.dz == std::optional<std::size_t>(2));
}

TEST_CASE("degenerate fiber keeps only the base code's logicals") {
  const auto g = cyclic_group(1);
  const CssCode code = assemble_css(build_twisted_complex(parse(g, {{"1", "1"}}), parse(g, {{"0"}}),
                                                          TwistData::identity(g, 2, 1, 1, 1)));
  CHECK(code.n == 3);
  DistanceOptions opt;
  opt.full_enumeration = true;
  const DistanceResult r = min_distance(code, opt);
  const auto brute = oracle::brute_force_distance(oracle::dense(code.hx), oracle::dense(code.hz), code.n);
  CHECK(r.x.d == brute.dx);
  CHECK(r.z.d == brute.dz);
}

TEST_CASE("codes without logicals") {
  const CssCode code = assemble_css(BinMatrix::identity(3), BinMatrix(0, 3));
  const DistanceResult r = min_distance(code);
  CHECK(r.x.no_logicals);
  CHECK(r.z.no_logicals);
  CHECK(r.exact());
  CHECK_FALSE(r.d().has_value());
  CHECK(code_of([&] { min_logical_weight_full(BinMatrix(1, 40), BinMatrix(0, 40)); }) == Errc::invalid_argument);
}

TEST_CASE("chain isomorphism") {
  const D3Setup s;
  SUBCASE("invertible twists") {
    const IsoReport r = verify_chain_iso(s.base, s.fiber, s.case1());
    CHECK(r.applicable);
    CHECK(r.all_invertible);
    CHECK(r.square1_commutes);
    CHECK(r.square2_commutes);
    CHECK(r.ranks_equal);
    CHECK(r.rank_d1_twisted == 21);
    CHECK(r.rank_d2_twisted == 21);
    REQUIRE(r.twists.size() == 2);
    CHECK_FALSE(r.twists[0].phi0_monomial);
    CHECK_FALSE(r.distance_certified);
  }
  SUBCASE("identity twists") {
    const IsoReport r = verify_chain_iso(s.base, s.fiber, TwistData::identity(s.g, 2, 2, 2, 2));
    CHECK(r.applicable);
    CHECK(r.square1_commutes);
    CHECK(r.square2_commutes);
    CHECK(r.distance_certified);
  }
  SUBCASE("singular twist") {
    const IsoReport r = verify_chain_iso(s.base, s.fiber, s.case2());
    CHECK_FALSE(r.applicable);
    CHECK_FALSE(r.all_invertible);
    CHECK(r.twists[0].phi0_invertible);
    CHECK_FALSE(r.twists[1].phi0_invertible);
    CHECK(r.rank_d1_twisted == 19);
    CHECK(r.rank_d2_twisted == 19);
    CHECK(r.rank_d1_untwisted == 21);
    CHECK(r.rank_d2_untwisted == 21);
    CHECK_FALSE(r.reason.empty());
  }
  SUBCASE("group-scalar transports are monomial and keep the distance") {
    const Elem r = *s.g->find("r"), sr = *s.g->find("rs");
    const RMatrix id = RMatrix::identity(s.g, 2);
    const TwistData tw = TwistData::per_column(2, {{id, id, r}, {id, id, sr}});
    const IsoReport rep = verify_chain_iso(s.base, s.fiber, tw);
    CHECK(rep.applicable);
    CHECK(rep.square1_commutes);
    CHECK(rep.square2_commutes);
    CHECK(rep.distance_certified);
    DistanceOptions opt;
    opt.weight_cap = 3;
    const auto tw_d = min_distance(assemble_css(build_twisted_complex(s.base, s.fiber, tw)), opt);
    const auto un_d = min_distance(assemble_css(build_twisted_complex(s.base, s.fiber, TwistData::identity(s.g, 2, 2, 2, 2))), opt);
    CHECK(tw_d.d() == un_d.d());
  }
  SUBCASE("non-uniform per-entry twists are out of scope") {
    std::vector<std::vector<std::optional<Elem>>> a{{Elem{0}, Elem{1}}, {Elem{2}, Elem{0}}};
    const IsoReport r = verify_chain_iso(s.base, s.fiber, connection_from_group(s.base, s.fiber, a));
    CHECK_FALSE(r.applicable);
    CHECK(r.reason.find("per-entry") != std::string::npos);
  }
}
