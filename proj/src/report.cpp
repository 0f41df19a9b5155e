#include "fibercode/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace fibercode {
namespace {

using Clock = std::chrono::steady_clock;

Json tool_info() { return {{"name", "fibercode"}, {"version", FIBERCODE_VERSION}}; }

Json group_info(const GroupPtr& g) {
  Json out{{"kind", g->kind()}, {"order", g->order()}, {"elements", g->names()}};
  if (g->kind() == "cyclic") out["order_parameter"] = g->parameter();
  if (g->kind() == "dihedral") out["n"] = g->parameter();
  return out;
}

Json matrix_json(const RMatrix& m) { return m.to_strings(); }

Json twist_json(const Twist& t, const GroupPtr& g) {
  return {{"phi1", matrix_json(t.phi1)}, {"phi0", matrix_json(t.phi0)}, {"transport", g->name(t.transport)}};
}

Json options_json(const CodeOptions& o) {
  Json out{{"weight_cap", o.weight_cap},
           {"full_enumeration", o.full_enumeration},
           {"allow_nonflat", o.allow_nonflat},
           {"lp_transpose", transpose_mode_name(o.lp_transpose)},
           {"construction", construction_name(o.construction)}};
  out["budget"] = o.budget ? Json(*o.budget) : Json(nullptr);
  out["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  return out;
}

// Header shared by every report kind.
Json report_header(const CodeSpec& spec, const CodeOptions& options) {
  const std::size_t m = spec.base.cols(), n = spec.base.rows(), p = spec.fiber.cols(), q = spec.fiber.rows();
  Json out;
  out["tool"] = tool_info();
  out["input_digest"] = spec.digest;
  out["group"] = group_info(spec.group);
  out["dims"] = {{"ell", spec.group->order()}, {"m", m}, {"n", n}, {"p", p}, {"q", q}};
  out["construction"] = construction_name(options.construction);
  Json twists{{"mode", twist_mode_name(spec.twists.mode())}, {"source", spec.twist_source}};
  if (spec.twist_source == "connection") twists["action"] = fiber_action_name(spec.connection_action);
  out["twists"] = twists;
  out["options"] = options_json(options);
  return out;
}

Json flatness_json(const FlatnessReport& report) {
  Json items = Json::array();
  for (const auto& item : report.items) {
    Json e{{"generator", item.generator}, {"flat", item.flat}};
    if (item.vertex) e["vertex"] = *item.vertex;
    items.push_back(e);
  }
  return {{"flat", report.flat}, {"per_generator", items}};
}

bool full_rank(const BinMatrix& m) { return m.rows() == m.cols() && gf2_rank(m) == m.rows(); }

Json invertibility_json(const CodeSpec& spec) {
  Json out = Json::array();
  const TwistData& tw = spec.twists;
  const bool uniform = tw.column_uniform();
  for (std::size_t j = 0; j < tw.m(); ++j) {
    for (std::size_t i = 0; i < (uniform ? 1 : tw.n()); ++i) {
      const Twist& t = tw.at(i, j);
      Json e{{"generator", j},
             {"phi1", full_rank(expand_twist(t.phi1, t.transport))},
             {"phi0", full_rank(expand_twist(t.phi0, t.transport))}};
      if (!uniform) e["vertex"] = i;
      out.push_back(e);
    }
  }
  return out;
}

Json css_json(const CssCode& code) {
  return {{"n", code.n},
          {"k", code.k},
          {"rank_hx", code.rank_hx},
          {"rank_hz", code.rank_hz},
          {"css_ok", code.css_ok},
          {"check_weights",
           {{"max_row_weight_hx", code.hx.max_row_weight()},
            {"max_row_weight_hz", code.hz.max_row_weight()},
            {"max_col_weight_hx", code.hx.max_col_weight()},
            {"max_col_weight_hz", code.hz.max_col_weight()}}}};
}

// Exact value, or ">w" when every weight up to w was cleared, or null when
// the code has no logical operators on this side.
Json side_value(const SideDistance& s) {
  if (s.d) return *s.d;
  if (s.no_logicals) return nullptr;
  return ">" + std::to_string(s.cleared_weight);
}

Json side_json(const SideDistance& s) {
  Json out{{"value", side_value(s)},
           {"exact", s.exact},
           {"no_logicals", s.no_logicals},
           {"budget_exhausted", s.budget_exhausted},
           {"lower_bound", s.d ? *s.d : s.cleared_weight + 1},
           {"examined", s.examined}};
  out["witness"] = s.witness ? Json(s.witness->positions()) : Json(nullptr);
  return out;
}

Json distance_json(const DistanceResult& r) {
  Json out{{"d_x", side_value(r.x)}, {"d_z", side_value(r.z)}, {"exact_x", r.x.exact}, {"exact_z", r.z.exact},
           {"cap", r.weight_cap},
           {"method", r.method == DistanceMethod::full_enumeration ? "full_enumeration" : "bounded"},
           {"x", side_json(r.x)}, {"z", side_json(r.z)}};
  if (const auto d = r.d()) {
    out["d"] = *d;
  } else if (r.x.no_logicals && r.z.no_logicals) {
    out["d"] = nullptr;
  } else {
    out["d"] = ">" + std::to_string(std::min(r.x.no_logicals ? r.z.cleared_weight : r.x.cleared_weight,
                                             r.z.no_logicals ? r.x.cleared_weight : r.z.cleared_weight));
  }
  out["exact"] = r.exact();
  return out;
}

Json iso_json(const IsoReport& r) {
  Json inv = Json::array(), mono = Json::array();
  for (const auto& t : r.twists) {
    inv.push_back({{"generator", t.generator}, {"phi1", t.phi1_invertible}, {"phi0", t.phi0_invertible}});
    mono.push_back({{"generator", t.generator}, {"phi0_monomial", t.phi0_monomial}});
  }
  Json out{{"applicable", r.applicable},
           {"invertible_per_twist", inv},
           {"all_invertible", r.all_invertible},
           {"monomial_per_twist", mono},
           {"squares_commute", {{"d2", r.square2_commutes}, {"d1", r.square1_commutes}}},
           {"ranks",
            {{"d1_twisted", r.rank_d1_twisted},
             {"d2_twisted", r.rank_d2_twisted},
             {"d1_untwisted", r.rank_d1_untwisted},
             {"d2_untwisted", r.rank_d2_untwisted},
             {"equal", r.ranks_equal}}},
           {"distance_certified", r.distance_certified}};
  out["reason"] = r.reason.empty() ? Json(nullptr) : Json(r.reason);
  return out;
}

Json error_json(const Error& e) { return {{"code", errc_name(e.code())}, {"message", e.what()}}; }

DistanceOptions distance_options(const CodeOptions& o, const Overrides& ov) {
  DistanceOptions d;
  d.weight_cap = o.weight_cap;
  d.budget = o.budget;
  d.full_enumeration = o.full_enumeration;
  d.threads = ov.threads;
  return d;
}

void add_timing(Json& report, const Overrides& ov, Clock::time_point start) {
  if (!ov.timing) return;
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
  report["timing"] = {{"elapsed_ms", static_cast<double>(us) / 1000.0}};
}

// Builds the code, attaching construction results to `report` as they appear.
BuiltCode build_into(const CodeSpec& spec, const CodeOptions& options, Json& report) {
  BuiltCode out;
  if (options.construction == Construction::lifted_product) {
    out.flatness = check_flatness(spec.fiber, spec.twists);
    report["flatness"] = flatness_json(out.flatness);
    try {
      LiftedProduct lp = build_lifted_product(spec.base, spec.fiber, options.lp_transpose);
      out.css = assemble_css(expand_bientry_matrix(lp.complex.d1), std::move(lp.hz_expanded), spec.group);
      out.complex = std::move(lp.complex);
    } catch (const Error& e) {
      if (is_validation_error(e.code())) throw;
      report["css_ok"] = false;
      report["error"] = error_json(e);
      throw ReportFailure(e.code(), e.what(), report);
    }
    return out;
  }

  out.flatness = check_flatness(spec.fiber, spec.twists);
  report["flatness"] = flatness_json(out.flatness);
  report["invertibility"] = invertibility_json(spec);
  if (!out.flatness.flat && !options.allow_nonflat) {
    std::string failing;
    for (const auto& item : out.flatness.items) {
      if (item.flat) continue;
      failing += failing.empty() ? "" : ", ";
      failing += "j=" + std::to_string(item.generator);
      if (item.vertex) failing += " i=" + std::to_string(*item.vertex);
    }
    const Error e(Errc::not_flat, "twists are not flat (" + failing + "); pass --allow-nonflat to build anyway");
    report["error"] = error_json(e);
    throw ReportFailure(e.code(), e.what(), report);
  }
  out.complex = build_twisted_complex(spec.base, spec.fiber, spec.twists, /*allow_nonflat=*/true);
  try {
    out.css = assemble_css(out.complex);
  } catch (const Error& e) {
    report["css_ok"] = false;
    report["error"] = error_json(e);
    throw ReportFailure(e.code(), e.what(), report);
  }
  return out;
}

std::uint64_t digest_seed(const std::string& digest) {
  const auto colon = digest.find(':');
  return std::stoull(digest.substr(colon == std::string::npos ? 0 : colon + 1), nullptr, 16);
}

// ---- twist search ----

struct Pool {
  std::vector<Twist> twists;
  std::size_t offered = 0;  // before the flatness filter
  bool truncated = false;
};

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

// Algebra elements with support size at most `max_support`, by weight then support.
std::vector<AlgElem> small_elements(const GroupPtr& g, std::size_t max_support) {
  std::vector<AlgElem> out{AlgElem::zero(g)};
  std::vector<Elem> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (left == 0) {
      out.push_back(AlgElem::from_support(g, pick));
      return;
    }
    for (Elem e = start; e + left <= g->order(); ++e) {
      pick.push_back(e);
      rec(e + 1, left - 1);
      pick.pop_back();
    }
  };
  for (std::size_t w = 1; w <= std::min(max_support, g->order()); ++w) rec(0, w);
  return out;
}

// Square matrices of the given size over `alphabet`, in mixed-radix order.
std::vector<RMatrix> all_matrices(const GroupPtr& g, const std::vector<AlgElem>& alphabet, std::size_t size,
                                  std::size_t limit, bool& truncated) {
  const std::size_t cells = size * size;
  const std::uint64_t total = saturating_pow(alphabet.size(), cells);
  const std::uint64_t count = std::min<std::uint64_t>(total, limit);
  truncated = truncated || count < total;
  std::vector<RMatrix> out;
  out.reserve(count);
  std::vector<std::size_t> digits(cells, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    RMatrix mat(g, size, size);
    for (std::size_t k = 0; k < cells; ++k) mat(k / size, k % size) = alphabet[digits[k]];
    out.push_back(std::move(mat));
    for (std::size_t k = cells; k-- > 0;) {
      if (++digits[k] < alphabet.size()) break;
      digits[k] = 0;
    }
  }
  return out;
}

std::vector<std::uint64_t> matrix_key(const RMatrix& m) {
  const std::size_t words = words_for(m.group()->order());
  std::vector<std::uint64_t> key;
  key.reserve(m.rows() * m.cols() * words);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& bits = m(r, c).bits();
      key.insert(key.end(), bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(words));
    }
  }
  return key;
}

Pool make_pool(const CodeSpec& spec, const SearchSettings& settings) {
  const GroupPtr& g = spec.group;
  const std::size_t p = spec.fiber.cols(), q = spec.fiber.rows();
  Pool pool;
  switch (settings.pool) {
    case PoolKind::group_scalars:
      for (Elem e = 0; e < g->order(); ++e) {
        pool.twists.push_back({RMatrix::identity(g, p), RMatrix::identity(g, q), e});
      }
      pool.offered = pool.twists.size();
      break;
    case PoolKind::list:
      pool.offered = settings.list.size();
      for (const auto& t : settings.list) {
        if (check_flatness(spec.fiber, TwistData::per_column(1, {t})).flat) pool.twists.push_back(t);
      }
      break;
    case PoolKind::low_weight: {
      const auto alphabet = small_elements(g, settings.max_support);
      const auto phi1s = all_matrices(g, alphabet, p, settings.max_pool_matrices, pool.truncated);
      const auto phi0s = all_matrices(g, alphabet, q, settings.max_pool_matrices, pool.truncated);
      pool.offered = phi1s.size() * phi0s.size();
      // Flat pairs satisfy phi0 * dF == dF * phi1; match them through the product.
      std::map<std::vector<std::uint64_t>, std::vector<std::size_t>> by_product;
      for (std::size_t a = 0; a < phi1s.size(); ++a) by_product[matrix_key(rmat_mul(spec.fiber, phi1s[a]))].push_back(a);
      for (std::size_t b = 0; b < phi0s.size(); ++b) {
        const auto it = by_product.find(matrix_key(rmat_mul(phi0s[b], spec.fiber)));
        if (it == by_product.end()) continue;
        for (std::size_t a : it->second) pool.twists.push_back({phi1s[a], phi0s[b], 0});
      }
      break;
    }
  }
  return pool;
}

struct Candidate {
  std::vector<std::size_t> choice;
  std::size_t k = 0, rank_hx = 0, rank_hz = 0;
  bool ok = false;
  std::string error;
};

std::vector<std::vector<std::size_t>> candidate_choices(std::size_t pool_size, std::size_t slots,
                                                        std::size_t max_candidates, std::uint64_t seed,
                                                        bool& sampled) {
  std::vector<std::vector<std::size_t>> out;
  const std::uint64_t total = saturating_pow(pool_size, slots);
  if (total <= max_candidates) {
    sampled = false;
    std::vector<std::size_t> digits(slots, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      out.push_back(digits);
      for (std::size_t k = slots; k-- > 0;) {
        if (++digits[k] < pool_size) break;
        digits[k] = 0;
      }
    }
    return out;
  }
  sampled = true;
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::size_t>> seen;
  const std::size_t attempts = max_candidates * 8;
  for (std::size_t a = 0; a < attempts && seen.size() < max_candidates; ++a) {
    std::vector<std::size_t> choice(slots);
    for (auto& c : choice) c = static_cast<std::size_t>(rng() % pool_size);
    seen.insert(std::move(choice));
  }
  return {seen.begin(), seen.end()};
}

std::vector<Twist> tuple_of(const Pool& pool, const std::vector<std::size_t>& choice) {
  std::vector<Twist> out;
  for (std::size_t c : choice) out.push_back(pool.twists[c]);
  return out;
}

}  // namespace

CodeOptions resolve_options(const CodeSpec& spec, const Overrides& ov) {
  CodeOptions o = spec.options;
  if (ov.weight_cap) o.weight_cap = *ov.weight_cap;
  if (o.weight_cap == 0) throw Error(Errc::invalid_argument, "weight cap must be at least 1");
  o.full_enumeration = o.full_enumeration || ov.full_enumeration;
  o.allow_nonflat = o.allow_nonflat || ov.allow_nonflat;
  if (ov.lp_transpose) o.lp_transpose = *ov.lp_transpose;
  if (ov.seed) o.seed = ov.seed;
  if (ov.budget) o.budget = ov.budget;
  return o;
}

BuiltCode build_code(const CodeSpec& spec, const CodeOptions& options) {
  Json scratch = report_header(spec, options);
  return build_into(spec, options, scratch);
}

Json run_report(const CodeSpec& spec, const Overrides& ov) {
  const auto start = Clock::now();
  const CodeOptions options = resolve_options(spec, ov);
  Json report = report_header(spec, options);
  const BuiltCode code = build_into(spec, options, report);
  report.update(css_json(code.css));
  report["distance"] = distance_json(min_distance(code.css, distance_options(options, ov)));
  report["iso"] = iso_json(verify_chain_iso(spec.base, spec.fiber, spec.twists));
  add_timing(report, ov, start);
  return report;
}

Json flatness_report(const CodeSpec& spec, const Overrides& ov) {
  const auto start = Clock::now();
  const CodeOptions options = resolve_options(spec, ov);
  Json report = report_header(spec, options);
  const FlatnessReport flat = check_flatness(spec.fiber, spec.twists);
  report["flatness"] = flatness_json(flat);
  report["invertibility"] = invertibility_json(spec);
  add_timing(report, ov, start);
  return report;
}

Json distance_report(const CodeSpec& spec, const Overrides& ov) {
  const auto start = Clock::now();
  const CodeOptions options = resolve_options(spec, ov);
  Json report = report_header(spec, options);
  const BuiltCode code = build_into(spec, options, report);
  report.update(css_json(code.css));
  report["distance"] = distance_json(min_distance(code.css, distance_options(options, ov)));
  add_timing(report, ov, start);
  return report;
}

Json iso_report(const CodeSpec& spec, const Overrides& ov) {
  const auto start = Clock::now();
  const CodeOptions options = resolve_options(spec, ov);
  Json report = report_header(spec, options);
  report["flatness"] = flatness_json(check_flatness(spec.fiber, spec.twists));
  report["iso"] = iso_json(verify_chain_iso(spec.base, spec.fiber, spec.twists));
  add_timing(report, ov, start);
  return report;
}

std::optional<MatrixTarget> parse_matrix_target(std::string_view name) {
  if (name == "hx") return MatrixTarget::hx;
  if (name == "hz") return MatrixTarget::hz;
  if (name == "d1") return MatrixTarget::d1;
  if (name == "d2") return MatrixTarget::d2;
  return std::nullopt;
}

BinMatrix export_matrix(const BuiltCode& code, MatrixTarget target) {
  switch (target) {
    case MatrixTarget::hx: return code.css.hx;
    case MatrixTarget::hz: return code.css.hz;
    case MatrixTarget::d1: return expand_bientry_matrix(code.complex.d1);
    case MatrixTarget::d2: return expand_bientry_matrix(code.complex.d2);
  }
  return {};
}

Json search_twists(const CodeSpec& spec, const SearchSettings& settings, const Overrides& ov) {
  const auto start = Clock::now();
  CodeOptions options = resolve_options(spec, ov);
  const std::uint64_t seed = options.seed ? *options.seed : digest_seed(spec.digest);
  Json report;
  report["tool"] = tool_info();
  report["input_digest"] = spec.digest;
  report["group"] = group_info(spec.group);
  const std::size_t m = spec.base.cols(), n = spec.base.rows();
  report["dims"] = {{"ell", spec.group->order()}, {"m", m}, {"n", n}, {"p", spec.fiber.cols()}, {"q", spec.fiber.rows()}};
  report["options"] = options_json(options);

  const Pool pool = make_pool(spec, settings);
  report["pool"] = {{"kind", pool_kind_name(settings.pool)},
                    {"offered", pool.offered},
                    {"flat", pool.twists.size()},
                    {"truncated", pool.truncated},
                    {"max_support", settings.max_support}};
  if (pool.twists.empty()) {
    throw Error(Errc::empty_pool, std::string("the ") + pool_kind_name(settings.pool) + " pool has no flat twists");
  }

  bool sampled = false;
  const auto choices = candidate_choices(pool.twists.size(), m, settings.max_candidates, seed, sampled);
  std::vector<Candidate> results(choices.size());
  unsigned threads = ov.threads ? ov.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, choices.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next.fetch_add(1); c < choices.size(); c = next.fetch_add(1)) {
      Candidate& out = results[c];
      out.choice = choices[c];
      try {
        const TotalComplex tc =
            build_twisted_complex(spec.base, spec.fiber, TwistData::per_column(n, tuple_of(pool, choices[c])));
        const CssCode css = assemble_css(tc);
        out.k = css.k;
        out.rank_hx = css.rank_hx;
        out.rank_hz = css.rank_hz;
        out.ok = true;
      } catch (const Error& e) {
        out.error = e.what();
      }
    }
  };
  std::vector<std::thread> workers;
  for (unsigned t = 1; t < threads; ++t) workers.emplace_back(work);
  work();
  for (auto& w : workers) w.join();

  std::size_t failed = 0;
  std::vector<const Candidate*> ranked;
  for (const auto& r : results) {
    if (r.ok) ranked.push_back(&r);
    else ++failed;
  }
  std::sort(ranked.begin(), ranked.end(), [](const Candidate* a, const Candidate* b) {
    if (a->k != b->k) return a->k > b->k;
    return a->choice < b->choice;
  });

  const DistanceOptions dopt = distance_options(options, ov);
  Json list = Json::array();
  for (std::size_t r = 0; r < ranked.size() && r < settings.report_limit; ++r) {
    const Candidate& c = *ranked[r];
    Json twists = Json::array();
    for (std::size_t s : c.choice) twists.push_back(twist_json(pool.twists[s], spec.group));
    Json entry{{"rank", r + 1}, {"choice", c.choice}, {"k", c.k}, {"rank_hx", c.rank_hx},
               {"rank_hz", c.rank_hz}, {"twists", twists}};
    if (r < settings.top) {
      const TotalComplex tc = build_twisted_complex(spec.base, spec.fiber, TwistData::per_column(n, tuple_of(pool, c.choice)));
      entry["distance"] = distance_json(min_distance(assemble_css(tc), dopt));
    }
    list.push_back(entry);
  }
  report["search"] = {{"seed", seed},
                      {"sampled", sampled},
                      {"candidates_total", saturating_pow(pool.twists.size(), m)},
                      {"evaluated", results.size()},
                      {"failed", failed},
                      {"max_candidates", settings.max_candidates},
                      {"top", settings.top},
                      {"partial", sampled || pool.truncated}};
  report["results"] = list;
  add_timing(report, ov, start);
  return report;
}

std::string serialize(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace fibercode
