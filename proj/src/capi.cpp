#include "fibercode/fibercode.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fibercode/report.hpp"

struct fc_spec {
  fibercode::CodeSpec spec;
};

struct fc_code {
  fibercode::BuiltCode code;
};

struct fc_matrix {
  fibercode::BinMatrix m;
};

namespace {

using namespace fibercode;

thread_local std::string last_error;

static_assert(static_cast<int>(Errc::empty_pool) + 1 == FC_ERR_EMPTY_POOL, "fc_status must mirror Errc");

fc_status to_status(Errc code) { return static_cast<fc_status>(static_cast<int>(code) + 1); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn`, translating exceptions into status codes and last_error.
template <typename Fn>
fc_status guard(Fn&& fn, char** partial_out = nullptr) {
  try {
    last_error.clear();
    fn();
    return FC_OK;
  } catch (const ReportFailure& e) {
    last_error = e.what();
    if (partial_out) *partial_out = dup_string(serialize(e.partial()));
    return to_status(e.code());
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FC_ERR_INTERNAL;
  }
}

fc_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FC_ERR_INVALID_ARGUMENT;
}

Overrides to_overrides(const fc_options* o) {
  Overrides ov;
  if (!o) return ov;
  if (o->weight_cap) ov.weight_cap = o->weight_cap;
  ov.full_enumeration = o->full_enumeration != 0;
  ov.allow_nonflat = o->allow_nonflat != 0;
  if (o->lp_transpose == 0) ov.lp_transpose = TransposeMode::plain;
  if (o->lp_transpose == 1) ov.lp_transpose = TransposeMode::antipode;
  if (o->has_seed) ov.seed = o->seed;
  if (o->has_budget) ov.budget = o->budget;
  ov.timing = o->timing != 0;
  ov.threads = o->threads;
  return ov;
}

}  // namespace

extern "C" {

const char* fc_version(void) { return FIBERCODE_VERSION; }

const char* fc_status_name(fc_status status) {
  if (status == FC_OK) return "ok";
  if (status == FC_ERR_INTERNAL) return "internal";
  if (status > FC_OK && status < FC_ERR_INTERNAL) return errc_name(static_cast<Errc>(static_cast<int>(status) - 1));
  return "unknown";
}

int fc_status_is_validation(fc_status status) {
  if (status <= FC_OK || status >= FC_ERR_INTERNAL) return 0;
  return is_validation_error(static_cast<Errc>(static_cast<int>(status) - 1)) ? 1 : 0;
}

const char* fc_last_error(void) { return last_error.c_str(); }

void fc_string_free(char* s) { std::free(s); }

void fc_options_init(fc_options* options) {
  if (!options) return;
  *options = fc_options{};
  options->lp_transpose = -1;
}

void fc_search_options_init(fc_search_options* options) {
  if (!options) return;
  *options = fc_search_options{};
  options->pool = FC_POOL_FROM_SPEC;
}

fc_status fc_spec_parse(const char* text, size_t length, fc_spec** out) {
  if (!text || !out) return null_argument("text/out");
  *out = nullptr;
  return guard([&] { *out = new fc_spec{parse_code_spec(std::string_view(text, length))}; });
}

fc_status fc_spec_load(const char* path, fc_spec** out) {
  if (!path || !out) return null_argument("path/out");
  *out = nullptr;
  return guard([&] { *out = new fc_spec{load_code_spec(path)}; });
}

void fc_spec_free(fc_spec* spec) { delete spec; }

const char* fc_spec_digest(const fc_spec* spec) { return spec ? spec->spec.digest.c_str() : ""; }

fc_status fc_report(const fc_spec* spec, const fc_options* options, fc_report_kind kind, char** json_out) {
  if (!spec || !json_out) return null_argument("spec/json_out");
  *json_out = nullptr;
  return guard(
      [&] {
        const Overrides ov = to_overrides(options);
        Json report;
        switch (kind) {
          case FC_REPORT_PARAMS: report = run_report(spec->spec, ov); break;
          case FC_REPORT_FLATNESS: report = flatness_report(spec->spec, ov); break;
          case FC_REPORT_DISTANCE: report = distance_report(spec->spec, ov); break;
          case FC_REPORT_ISO: report = iso_report(spec->spec, ov); break;
          default: throw Error(Errc::invalid_argument, "unknown report kind");
        }
        *json_out = dup_string(serialize(report));
      },
      json_out);
}

fc_status fc_search_twists(const fc_spec* spec, const fc_options* options, const fc_search_options* search,
                           char** json_out) {
  if (!spec || !json_out) return null_argument("spec/json_out");
  *json_out = nullptr;
  return guard([&] {
    SearchSettings settings = spec->spec.search.value_or(SearchSettings{});
    if (search) {
      switch (search->pool) {
        case FC_POOL_FROM_SPEC: break;
        case FC_POOL_GROUP_SCALARS: settings.pool = PoolKind::group_scalars; break;
        case FC_POOL_LOW_WEIGHT: settings.pool = PoolKind::low_weight; break;
        case FC_POOL_LIST: settings.pool = PoolKind::list; break;
        default: throw Error(Errc::invalid_argument, "unknown pool kind");
      }
      if (search->pool_text) {
        settings.pool = PoolKind::list;
        settings.list = parse_twist_pool(search->pool_text, spec->spec);
      }
      if (search->max_support) settings.max_support = search->max_support;
      if (search->max_candidates) settings.max_candidates = search->max_candidates;
      if (search->has_top) settings.top = search->top;
    }
    *json_out = dup_string(serialize(search_twists(spec->spec, settings, to_overrides(options))));
  });
}

fc_status fc_code_build(const fc_spec* spec, const fc_options* options, fc_code** out) {
  if (!spec || !out) return null_argument("spec/out");
  *out = nullptr;
  return guard([&] {
    const CodeOptions resolved = resolve_options(spec->spec, to_overrides(options));
    *out = new fc_code{build_code(spec->spec, resolved)};
  });
}

void fc_code_free(fc_code* code) { delete code; }

fc_status fc_code_parameters(const fc_code* code, size_t* n, size_t* k, size_t* rank_hx, size_t* rank_hz) {
  if (!code) return null_argument("code");
  const CssCode& c = code->code.css;
  if (n) *n = c.n;
  if (k) *k = c.k;
  if (rank_hx) *rank_hx = c.rank_hx;
  if (rank_hz) *rank_hz = c.rank_hz;
  return FC_OK;
}

fc_status fc_code_matrix(const fc_code* code, fc_matrix_target target, fc_matrix** out) {
  if (!code || !out) return null_argument("code/out");
  *out = nullptr;
  return guard([&] {
    if (target < FC_MATRIX_HX || target > FC_MATRIX_D2) throw Error(Errc::invalid_argument, "unknown matrix target");
    *out = new fc_matrix{export_matrix(code->code, static_cast<MatrixTarget>(target))};
  });
}

fc_status fc_matrix_from_text(const char* text, size_t length, fc_matrix** out) {
  if (!text || !out) return null_argument("text/out");
  *out = nullptr;
  return guard([&] { *out = new fc_matrix{from_text(std::string_view(text, length))}; });
}

void fc_matrix_free(fc_matrix* matrix) { delete matrix; }

size_t fc_matrix_rows(const fc_matrix* matrix) { return matrix ? matrix->m.rows() : 0; }

size_t fc_matrix_cols(const fc_matrix* matrix) { return matrix ? matrix->m.cols() : 0; }

int fc_matrix_get(const fc_matrix* matrix, size_t row, size_t col) {
  if (!matrix || row >= matrix->m.rows() || col >= matrix->m.cols()) return -1;
  return matrix->m.get(row, col) ? 1 : 0;
}

size_t fc_matrix_rank(const fc_matrix* matrix) { return matrix ? gf2_rank(matrix->m) : 0; }

fc_status fc_matrix_mul_transpose(const fc_matrix* a, const fc_matrix* b, fc_matrix** out) {
  if (!a || !b || !out) return null_argument("a/b/out");
  *out = nullptr;
  return guard([&] {
    if (a->m.cols() != b->m.cols()) throw Error(Errc::dimension_mismatch, "matrix widths differ");
    *out = new fc_matrix{gf2_mul(a->m, b->m.transpose())};
  });
}

int fc_matrix_is_zero(const fc_matrix* matrix) { return matrix && matrix->m.is_zero() ? 1 : 0; }

fc_status fc_matrix_to_text(const fc_matrix* matrix, char** text_out) {
  if (!matrix || !text_out) return null_argument("matrix/text_out");
  *text_out = nullptr;
  return guard([&] { *text_out = dup_string(to_text(matrix->m)); });
}

}  // extern "C"
