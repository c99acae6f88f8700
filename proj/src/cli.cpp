#include "axai/cli.hpp"

#include "axai/bench.hpp"
#include "axai/constructions.hpp"
#include "axai/error.hpp"
#include "axai/io.hpp"
#include "axai/queries.hpp"
#include "axai/random.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace axai {

namespace {

struct run_config {
  std::string model_path;
  std::string indicator_path;
  std::string input;
  std::string query = "mcr";
  std::optional<std::size_t> k;
  std::optional<std::string> subset;
  std::string mode = "auto";
  std::optional<std::uint64_t> cap;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::uint64_t seed = 1;
  std::string out;
  bool pretty = false;

  // reduce
  std::string reduction;
  std::string indicator_class;
  std::string values;
  std::optional<long long> target;
  std::string ssp_path;
  std::string encoding = "padded";

  // bench
  std::string bench_class = "perceptron";
  std::string modes = "fast";
  std::string sizes = "8,16,24,32";
  std::size_t width = 8;
  std::size_t repeats = 3;
};

std::uint64_t effective_cap(const run_config& c) {
  if (c.cap) return *c.cap;
  if (const char* env = std::getenv("ALIGNED_XAI_CAP")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    fail(error_kind::invalid_argument, "ALIGNED_XAI_CAP must be a non-negative integer");
  }
  return default_enumeration_cap;
}

solve_mode parse_mode(const std::string& s) {
  if (s == "auto") return solve_mode::automatic;
  if (s == "brute") return solve_mode::brute;
  if (s == "fast") return solve_mode::fast;
  fail(error_kind::invalid_argument, "mode must be auto, brute or fast");
}

query_kind parse_query(const std::string& s) {
  if (s == "msr") return query_kind::msr;
  if (s == "mcr") return query_kind::mcr;
  if (s == "cc") return query_kind::cc;
  fail(error_kind::invalid_argument, "query must be msr, mcr or cc");
}

model_class parse_class(const std::string& s) {
  if (s == "fbdd") return model_class::fbdd;
  if (s == "perceptron") return model_class::perceptron;
  if (s == "mlp") return model_class::mlp;
  fail(error_kind::invalid_argument, "class must be fbdd, perceptron or mlp");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::size_t parse_size(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(error_kind::invalid_argument, "expected a non-negative integer, got '" + s + "'");
}

solver_options options_of(const run_config& c) { return {parse_mode(c.mode), effective_cap(c), c.threads}; }

classifier load_indicator(const run_config& c, std::size_t n) {
  if (c.indicator_path.empty()) return constant_one{n};
  return load_classifier(c.indicator_path);
}

void emit(const run_config& c, std::ostream& out, const json& doc) {
  if (!c.out.empty()) write_json_file(c.out, doc, c.pretty);
  out << dump(doc, c.pretty) << '\n';
}

// eval ---------------------------------------------------------------------

int cmd_eval(const run_config& c, std::ostream& out) {
  const auto f = load_classifier(c.model_path);
  const auto x = bit_vector::parse(c.input);
  emit(c, out, json{{"value", evaluate(f, x) ? 1 : 0}});
  return exit_ok;
}

// query --------------------------------------------------------------------

int cmd_query(const run_config& c, std::ostream& out) {
  const auto f = load_classifier(c.model_path);
  const auto x = bit_vector::parse(c.input);
  require_same_arity(arity(f), x.size(), "model and input");
  const auto pi = load_indicator(c, x.size());
  const auto q = parse_query(c.query);
  const auto options = options_of(c);
  std::optional<feature_subset> s;
  if (c.subset) s = feature_subset::parse(x.size(), *c.subset);
  if (c.k && s) fail(error_kind::invalid_argument, "give either --k or --subset, not both");

  query_result r;
  if (q == query_kind::cc) {
    if (!s) fail(error_kind::invalid_argument, "cc needs --subset");
    r = cc_query(f, pi, x, *s, options);
  } else if (s) {
    r = subset_check(q, f, pi, x, *s, options);
  } else if (c.k) {
    r = q == query_kind::msr ? msr_decide(f, pi, x, *c.k, options) : mcr_decide(f, pi, x, *c.k, options);
  } else {
    r = q == query_kind::msr ? msr_minimum(f, pi, x, options) : mcr_minimum(f, pi, x, options);
  }
  emit(c, out, to_json(r));
  return exit_ok;
}

// reduce -------------------------------------------------------------------

query_parameter parameter_of(const run_config& c, std::size_t n) {
  if (c.k && c.subset) fail(error_kind::invalid_argument, "give either --k or --subset, not both");
  if (c.subset) return feature_subset::parse(n, *c.subset);
  if (c.k) {
    if (*c.k > n) fail(error_kind::invalid_argument, "k exceeds the number of features");
    return *c.k;
  }
  fail(error_kind::invalid_argument, "reduce needs --k or --subset");
}

std::string contract_for(const std::string& provenance) {
  if (provenance == "subset_sum")
    return "aligned mcr decision on (model, indicator, input, k) equals the subset-sum answer of the source";
  return "aligned msr, mcr and cc answers on (model, indicator, input) equal the misaligned answers on the source "
         "instance for every k and subset";
}

int write_bundle(const run_config& c, std::ostream& out, const classifier& model, const classifier& indicator,
                 const bit_vector& input, const query_parameter& param, const std::string& provenance,
                 const std::string& source, json extra = json::object()) {
  if (c.out.empty()) fail(error_kind::invalid_argument, "reduce needs --out DIR");
  const std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(error_kind::invalid_argument, "cannot create " + dir.string() + ": " + ec.message());
  write_json_file(dir / "model.json", to_json(model), true);
  write_json_file(dir / "indicator.json", to_json(indicator), true);
  json manifest = {{"provenance", provenance},
                   {"source", source},
                   {"model", "model.json"},
                   {"indicator", "indicator.json"},
                   {"input", input.to_string()}};
  if (const auto* k = std::get_if<std::size_t>(&param)) manifest["k"] = *k;
  else manifest["subset"] = std::get<feature_subset>(param).to_string();
  manifest["contract"] = contract_for(provenance);
  for (auto& [key, value] : extra.items()) manifest[key] = value;
  write_json_file(dir / "manifest.json", manifest, true);
  out << dump(manifest, c.pretty) << '\n';
  return exit_ok;
}

int write_reduced(const run_config& c, std::ostream& out, const reduced_instance& r, json extra = json::object()) {
  return write_bundle(c, out, r.model, r.indicator, r.input, r.parameter, std::string(reduction_name(r.provenance)),
                      r.source, std::move(extra));
}

ssp_instance ssp_of(const run_config& c) {
  if (!c.ssp_path.empty()) return ssp_from_json(read_json_file(c.ssp_path));
  if (c.values.empty() || !c.k || !c.target) fail(error_kind::invalid_argument, "reduce ssp needs --ssp FILE or --values, --k and --T");
  std::vector<integer> values;
  for (const auto& v : split(c.values)) {
    try {
      values.emplace_back(v);
    } catch (const std::exception&) {
      fail(error_kind::invalid_argument, "bad value '" + v + "'");
    }
  }
  return ssp_instance(std::move(values), *c.k, *c.target);
}

int cmd_reduce(const run_config& c, std::ostream& out) {
  if (c.reduction == "ssp") {
    const auto inst = ssp_of(c);
    const auto encoding = c.encoding == "literal" ? ssp_encoding::literal
                          : c.encoding == "padded"
                              ? ssp_encoding::padded
                              : (fail(error_kind::invalid_argument, "encoding must be padded or literal"), ssp_encoding::padded);
    const auto r = ssp_to_mcr(inst, encoding);
    return write_reduced(c, out, r, {{"encoding", c.encoding}, {"expected_answer", ssp_solve(inst)}});
  }
  const auto f = load_classifier(c.model_path);
  const auto x = bit_vector::parse(c.input);
  require_same_arity(arity(f), x.size(), "model and input");
  const auto param = parameter_of(c, x.size());
  if (c.reduction == "misaligned") {
    const auto k = c.indicator_class.empty() ? class_of(f) : parse_class(c.indicator_class);
    return write_reduced(c, out, embed_misaligned(f, x, param, k == model_class::constant_one ? model_class::fbdd : k));
  }
  if (c.reduction == "indicator") {
    return write_reduced(c, out,
                         c.indicator_class.empty() ? indicator_reduction(f, x, param)
                                                   : indicator_reduction(f, x, param, parse_class(c.indicator_class)));
  }
  if (c.reduction == "selfalign") {
    const auto pi = load_indicator(c, x.size());
    const auto g = self_align(f, pi, x);
    const auto k = class_of(g);
    return write_bundle(c, out, g, constant_one_of(k == model_class::constant_one ? model_class::fbdd : k, x.size()),
                        x, param, "self_alignment",
                        std::string(class_name(class_of(f))) + " model with indicator at x=" + x.to_string());
  }
  fail(error_kind::invalid_argument, "reduction must be ssp, misaligned, indicator or selfalign");
}

// bench --------------------------------------------------------------------

int cmd_bench(const run_config& c, std::ostream& out) {
  bench_config b;
  b.model = parse_class(c.bench_class);
  b.query = parse_query(c.query);
  b.modes.clear();
  for (const auto& m : split(c.modes)) b.modes.push_back(parse_mode(m));
  b.sizes.clear();
  for (const auto& s : split(c.sizes)) b.sizes.push_back(parse_size(s));
  b.width = c.width;
  b.repeats = c.repeats;
  b.seed = c.seed;
  b.cap = effective_cap(c);
  b.threads = c.threads;
  const auto rows = run_bench(b);
  if (!c.out.empty()) {
    std::ofstream file(c.out);
    if (!file) fail(error_kind::invalid_argument, "cannot write " + c.out);
    write_csv(file, rows);
  }
  write_csv(out, rows);
  return exit_ok;
}

// verify -------------------------------------------------------------------

struct verifier {
  std::size_t checks = 0;
  std::vector<std::string> mismatches;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && mismatches.size() < 1000) mismatches.push_back(what);
  }
};

/// Compares two instances query by query, all through brute force.
void compare_instances(verifier& v, const std::string& label, const classifier& f1, const classifier& pi1,
                       const classifier& f2, const classifier& pi2, const bit_vector& x,
                       const std::vector<feature_subset>& subsets, const solver_options& brute) {
  const auto a = msr_minimum(f1, pi1, x, brute);
  const auto b = msr_minimum(f2, pi2, x, brute);
  v.expect(a.minimum == b.minimum, label + ": msr minimum");
  const auto c = mcr_minimum(f1, pi1, x, brute);
  const auto d = mcr_minimum(f2, pi2, x, brute);
  v.expect(c.minimum == d.minimum, label + ": mcr minimum");
  for (const auto& s : subsets)
    v.expect(cc_query(f1, pi1, x, s, brute).count == cc_query(f2, pi2, x, s, brute).count,
             label + ": cc at " + s.to_string());
}

int cmd_verify(const run_config& c, std::ostream& out) {
  const auto f = load_classifier(c.model_path);
  const auto x = bit_vector::parse(c.input);
  const std::size_t n = x.size();
  require_same_arity(arity(f), n, "model and input");
  const auto pi = load_indicator(c, n);
  const std::uint64_t cap = effective_cap(c);
  const solver_options brute{solve_mode::brute, cap, c.threads};
  const solver_options automatic{solve_mode::automatic, cap, c.threads};
  verifier v;

  std::vector<feature_subset> subsets;
  if (n <= 10) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) subsets.push_back(feature_subset::from_mask(n, m));
  } else {
    rng r(c.seed);
    for (int i = 0; i < 256; ++i) subsets.push_back(random_subset(r, n));
  }

  // fast paths (where available) against brute force
  for (const auto q : {query_kind::msr, query_kind::mcr}) {
    const auto name = std::string(query_name(q));
    const auto fast = q == query_kind::msr ? msr_minimum(f, pi, x, automatic) : mcr_minimum(f, pi, x, automatic);
    const auto slow = q == query_kind::msr ? msr_minimum(f, pi, x, brute) : mcr_minimum(f, pi, x, brute);
    v.expect(fast.minimum == slow.minimum && fast.witness == slow.witness, name + " minimum: auto vs brute");
    if (slow.witness) v.expect(subset_check(q, f, pi, x, *slow.witness, brute).decision, name + " witness re-verifies");
    for (std::size_t k = 0; k <= n; ++k) {
      const auto a = q == query_kind::msr ? msr_decide(f, pi, x, k, automatic) : mcr_decide(f, pi, x, k, automatic);
      const auto b = q == query_kind::msr ? msr_decide(f, pi, x, k, brute) : mcr_decide(f, pi, x, k, brute);
      v.expect(a.decision == b.decision && a.witness == b.witness, name + " at k=" + std::to_string(k));
      v.expect(b.decision == (slow.minimum && *slow.minimum <= k), name + " decision vs minimum at k=" + std::to_string(k));
    }
  }
  for (const auto& s : subsets) {
    const auto tag = " at " + s.to_string();
    v.expect(cc_query(f, pi, x, s, automatic).count == cc_query(f, pi, x, s, brute).count, "cc auto vs brute" + tag);
    const bool suff = subset_check(query_kind::msr, f, pi, x, s, brute).decision;
    v.expect(subset_check(query_kind::msr, f, pi, x, s, automatic).decision == suff, "sufficiency auto vs brute" + tag);
    v.expect(subset_check(query_kind::mcr, f, pi, x, s, automatic).decision ==
                 subset_check(query_kind::mcr, f, pi, x, s, brute).decision,
             "contrastiveness auto vs brute" + tag);
    v.expect(suff == !subset_check(query_kind::mcr, f, pi, x, s.complement(), brute).decision, "duality" + tag);
  }

  // reductions built from this instance
  if (is_constant_one(pi) && !std::holds_alternative<constant_one>(f)) {
    const auto r = indicator_reduction(f, x, std::size_t{0});
    compare_instances(v, "indicator reduction", f, pi, r.model, r.indicator, x, subsets, brute);
  }
  const bool same_family = (std::holds_alternative<fbdd>(f) && std::holds_alternative<fbdd>(pi)) ||
                           (std::holds_alternative<mlp>(f) && std::holds_alternative<mlp>(pi));
  if (same_family) {
    const auto g = self_align(f, pi, x);
    v.expect(evaluate(g, x) == evaluate(f, x), "self-alignment keeps f(x)");
    compare_instances(v, "self-alignment", f, pi, g, constant_one{n}, x, subsets, brute);
  }

  json report = {{"checks", v.checks}, {"mismatches", v.mismatches.size()}, {"details", v.mismatches}};
  emit(c, out, report);
  return v.mismatches.empty() ? exit_ok : exit_failure;
}

int code_of(error_kind k) {
  switch (k) {
    case error_kind::schema: return exit_schema;
    case error_kind::dimension: return exit_arity;
    case error_kind::enumeration_limit: return exit_cap;
    case error_kind::no_fast_path: return exit_no_fast_path;
    case error_kind::no_constructor: return exit_no_constructor;
    case error_kind::invalid_argument: return exit_schema;
  }
  return exit_failure;
}

std::string_view kind_name(error_kind k) {
  switch (k) {
    case error_kind::schema: return "schema";
    case error_kind::dimension: return "arity";
    case error_kind::enumeration_limit: return "enumeration_limit";
    case error_kind::no_fast_path: return "no_fast_path";
    case error_kind::no_constructor: return "no_constructor";
    case error_kind::invalid_argument: return "invalid_argument";
  }
  return "error";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  run_config c;
  CLI::App app{"Aligned formal explanations for FBDDs, perceptrons and ReLU MLPs", "aligned-xai"};
  app.require_subcommand(1);

  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", c.threads, "Worker threads (default: available parallelism)")->check(CLI::PositiveNumber);
    sub->add_option("--cap", c.cap, "Enumeration cap (default 2^24, or ALIGNED_XAI_CAP)");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate a model at an input");
  eval->add_option("--model", c.model_path, "Model file")->required();
  eval->add_option("--input", c.input, "Input bits, feature 1 leftmost")->required();
  eval->add_option("--out", c.out, "Also write the result here");
  eval->add_flag("--pretty", c.pretty, "Indented JSON");

  auto* query = app.add_subcommand("query", "Answer an msr, mcr or cc query");
  query->add_option("--model", c.model_path, "Model file")->required();
  query->add_option("--indicator", c.indicator_path, "Context indicator file (default: constant one)");
  query->add_option("--input", c.input, "Input bits")->required();
  query->add_option("--query", c.query, "msr | mcr | cc")->required();
  query->add_option("--k", c.k, "Cardinality bound (decision); omit for the minimum");
  query->add_option("--subset", c.subset, "Feature subset such as {1,3}");
  query->add_option("--mode", c.mode, "auto | brute | fast");
  query->add_option("--out", c.out, "Also write the result here");
  query->add_flag("--pretty", c.pretty, "Indented JSON");
  add_threads(query);

  auto* reduce = app.add_subcommand("reduce", "Write a reduced instance bundle");
  reduce->add_option("kind", c.reduction, "ssp | misaligned | indicator | selfalign")->required();
  reduce->add_option("--model", c.model_path, "Source model");
  reduce->add_option("--indicator", c.indicator_path, "Indicator (selfalign)");
  reduce->add_option("--input", c.input, "Input bits");
  reduce->add_option("--k", c.k, "Cardinality parameter");
  reduce->add_option("--subset", c.subset, "Subset parameter");
  reduce->add_option("--indicator-class", c.indicator_class, "fbdd | perceptron | mlp");
  reduce->add_option("--values", c.values, "Subset-sum values, comma separated");
  reduce->add_option("--T", c.target, "Subset-sum target");
  reduce->add_option("--ssp", c.ssp_path, "Subset-sum instance file");
  reduce->add_option("--encoding", c.encoding, "padded | literal (ssp)");
  reduce->add_option("--out", c.out, "Bundle directory")->required();
  reduce->add_flag("--pretty", c.pretty, "Indented JSON");

  auto* bench = app.add_subcommand("bench", "Scaling benchmark, CSV on stdout");
  bench->add_option("--class", c.bench_class, "fbdd | perceptron | mlp");
  bench->add_option("--query", c.query, "msr | mcr | cc");
  bench->add_option("--modes", c.modes, "Comma separated: auto, brute, fast");
  bench->add_option("--sizes", c.sizes, "Comma separated feature counts");
  bench->add_option("--width", c.width, "Layer width of generated diagrams")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", c.repeats, "Timed repetitions per row")->check(CLI::PositiveNumber);
  bench->add_option("--seed", c.seed, "Instance stream seed");
  bench->add_option("--out", c.out, "Also write the CSV here");
  add_threads(bench);

  auto* verify = app.add_subcommand("verify", "Cross-check fast paths and reductions against brute force");
  verify->add_option("--model", c.model_path, "Model file")->required();
  verify->add_option("--indicator", c.indicator_path, "Context indicator file (default: constant one)");
  verify->add_option("--input", c.input, "Input bits")->required();
  verify->add_option("--seed", c.seed, "Seed for sampled subsets (n > 10)");
  verify->add_option("--out", c.out, "Also write the report here");
  verify->add_flag("--pretty", c.pretty, "Indented JSON");
  add_threads(verify);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return exit_failure;
  }

  try {
    if (*eval) return cmd_eval(c, out);
    if (*query) return cmd_query(c, out);
    if (*reduce) return cmd_reduce(c, out);
    if (*bench) return cmd_bench(c, out);
    if (*verify) return cmd_verify(c, out);
  } catch (const error& e) {
    err << json{{"error", kind_name(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return code_of(e.kind());
  }
  return exit_failure;
}

}  // namespace axai
