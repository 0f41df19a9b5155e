// Command-line front end over the fibercode C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fibercode/fibercode.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConstruction = 2;

struct CommonArgs {
  std::string spec_path;
  std::optional<std::size_t> cap;
  bool full_enum = false;
  bool allow_nonflat = false;
  std::string lp_transpose;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
  bool timing = false;
  std::string out;
};

struct Owned {
  char* text = nullptr;
  ~Owned() { fc_string_free(text); }
};

using SpecPtr = std::unique_ptr<fc_spec, decltype(&fc_spec_free)>;

int exit_for(fc_status status) {
  if (status == FC_OK) return kExitOk;
  return fc_status_is_validation(status) ? kExitValidation : kExitConstruction;
}

int fail(fc_status status) {
  std::cerr << "error (" << fc_status_name(status) << "): " << fc_last_error() << "\n";
  return exit_for(status);
}

int emit(const CommonArgs& args, const char* text) {
  if (args.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return kExitOk;
  }
  std::ofstream file(args.out, std::ios::binary);
  if (!file || !(file << text)) {
    std::cerr << "error (io_error): cannot write " << args.out << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

fc_options to_options(const CommonArgs& args) {
  fc_options o;
  fc_options_init(&o);
  if (args.cap) o.weight_cap = *args.cap;
  o.full_enumeration = args.full_enum;
  o.allow_nonflat = args.allow_nonflat;
  if (args.lp_transpose == "plain") o.lp_transpose = 0;
  if (args.lp_transpose == "antipode") o.lp_transpose = 1;
  if (args.seed) {
    o.has_seed = 1;
    o.seed = *args.seed;
  }
  if (args.budget) {
    o.has_budget = 1;
    o.budget = *args.budget;
  }
  o.threads = args.threads;
  o.timing = args.timing;
  return o;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("spec", args.spec_path, "code spec file")->required();
  cmd->add_option("--cap", args.cap, "distance weight cap")->check(CLI::PositiveNumber);
  cmd->add_flag("--full-enum", args.full_enum, "exhaustive distance certification when n <= 28");
  cmd->add_flag("--allow-nonflat", args.allow_nonflat, "build even when the twists are not flat");
  cmd->add_option("--lp-transpose", args.lp_transpose, "lifted-product H_Z transpose mode")
      ->check(CLI::IsMember({"plain", "antipode"}));
  cmd->add_option("--seed", args.seed, "seed for randomized sampling");
  cmd->add_option("--budget", args.budget, "maximum vectors examined per distance side")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--timing", args.timing, "include wall-clock timing in the report");
  cmd->add_option("--out", args.out, "write output to this path instead of stdout");
}

std::optional<SpecPtr> load(const CommonArgs& args, int& code) {
  fc_spec* raw = nullptr;
  const fc_status status = fc_spec_load(args.spec_path.c_str(), &raw);
  if (status != FC_OK) {
    code = fail(status);
    return std::nullopt;
  }
  return SpecPtr(raw, &fc_spec_free);
}

int run_report(const CommonArgs& args, fc_report_kind kind) {
  int code = kExitOk;
  auto spec = load(args, code);
  if (!spec) return code;
  const fc_options options = to_options(args);
  Owned json;
  const fc_status status = fc_report(spec->get(), &options, kind, &json.text);
  if (status != FC_OK) {
    // Partial report with the failure verdict still goes to the output.
    if (json.text) emit(args, json.text);
    return fail(status);
  }
  return emit(args, json.text);
}

int run_expand(const CommonArgs& args, const std::string& target) {
  static const std::map<std::string, fc_matrix_target> targets{
      {"hx", FC_MATRIX_HX}, {"hz", FC_MATRIX_HZ}, {"d1", FC_MATRIX_D1}, {"d2", FC_MATRIX_D2}};
  int code = kExitOk;
  auto spec = load(args, code);
  if (!spec) return code;
  const fc_options options = to_options(args);
  fc_code* built = nullptr;
  fc_status status = fc_code_build(spec->get(), &options, &built);
  if (status != FC_OK) return fail(status);
  std::unique_ptr<fc_code, decltype(&fc_code_free)> guard(built, &fc_code_free);
  fc_matrix* matrix = nullptr;
  status = fc_code_matrix(built, targets.at(target), &matrix);
  if (status != FC_OK) return fail(status);
  std::unique_ptr<fc_matrix, decltype(&fc_matrix_free)> mguard(matrix, &fc_matrix_free);
  Owned text;
  status = fc_matrix_to_text(matrix, &text.text);
  if (status != FC_OK) return fail(status);
  return emit(args, text.text);
}

struct SearchArgs {
  std::string pool;
  std::string pool_file;
  std::size_t max_support = 0;
  std::size_t max_candidates = 0;
  std::optional<std::size_t> top;
};

int run_search(const CommonArgs& args, const SearchArgs& search) {
  int code = kExitOk;
  auto spec = load(args, code);
  if (!spec) return code;
  fc_search_options so;
  fc_search_options_init(&so);
  if (search.pool == "group_scalars") so.pool = FC_POOL_GROUP_SCALARS;
  if (search.pool == "low_weight") so.pool = FC_POOL_LOW_WEIGHT;
  if (search.pool == "list") so.pool = FC_POOL_LIST;
  std::string pool_text;
  if (!search.pool_file.empty()) {
    std::ifstream in(search.pool_file, std::ios::binary);
    if (!in) {
      std::cerr << "error (io_error): cannot open " << search.pool_file << "\n";
      return kExitValidation;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    pool_text = buf.str();
    so.pool_text = pool_text.c_str();
  }
  so.max_support = search.max_support;
  so.max_candidates = search.max_candidates;
  if (search.top) {
    so.has_top = 1;
    so.top = *search.top;
  }
  const fc_options options = to_options(args);
  Owned json;
  const fc_status status = fc_search_twists(spec->get(), &options, &so, &json.text);
  if (status != FC_OK) return fail(status);
  return emit(args, json.text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted fiber-bundle CSS codes over group algebras"};
  app.set_version_flag("--version", std::string(fc_version()));
  app.require_subcommand(1);

  CommonArgs params_args, flat_args, expand_args, distance_args, search_args, iso_args;
  std::string target;
  SearchArgs search;

  auto* params = app.add_subcommand("params", "build the code and print the full report");
  add_common(params, params_args);
  auto* flat = app.add_subcommand("check-flat", "report flatness and invertibility of each twist");
  add_common(flat, flat_args);
  auto* expand = app.add_subcommand("expand", "export a binary matrix as dense text");
  add_common(expand, expand_args);
  expand->add_option("--target", target, "matrix to export")
      ->required()
      ->check(CLI::IsMember({"hx", "hz", "d1", "d2"}));
  auto* distance = app.add_subcommand("distance", "code parameters and distance only");
  add_common(distance, distance_args);
  auto* search_cmd = app.add_subcommand("search-twists", "rank flat per-column twists from a pool");
  add_common(search_cmd, search_args);
  search_cmd->add_option("--pool", search.pool, "candidate pool")
      ->check(CLI::IsMember({"group_scalars", "low_weight", "list"}));
  search_cmd->add_option("--pool-file", search.pool_file, "pool document with [pool] phi1/phi0 lists");
  search_cmd->add_option("--max-support", search.max_support, "entry support bound for low_weight")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-candidates", search.max_candidates, "tuples evaluated before sampling")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--top", search.top, "candidates that also get a distance");
  auto* iso = app.add_subcommand("verify-iso", "check the twisted/untwisted chain isomorphism");
  add_common(iso, iso_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (params->parsed()) return run_report(params_args, FC_REPORT_PARAMS);
  if (flat->parsed()) return run_report(flat_args, FC_REPORT_FLATNESS);
  if (expand->parsed()) return run_expand(expand_args, target);
  if (distance->parsed()) return run_report(distance_args, FC_REPORT_DISTANCE);
  if (search_cmd->parsed()) return run_search(search_args, search);
  if (iso->parsed()) return run_report(iso_args, FC_REPORT_ISO);
  return kExitValidation;
}
