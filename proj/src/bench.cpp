#include "axai/bench.hpp"

#include "axai/error.hpp"
#include "axai/random.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>

namespace axai {

namespace {

struct bench_instance {
  classifier model;
  bit_vector input;
  feature_subset subset;
  std::size_t size = 0;
};

bench_instance make_instance(const bench_config& config, std::size_t n) {
  rng r(config.seed * 1'000'003ULL + n);
  bench_instance inst;
  switch (config.model) {
    case model_class::perceptron: {
      auto p = random_perceptron(r, n);
      inst.size = n + 1;
      inst.model = std::move(p);
      break;
    }
    case model_class::fbdd: {
      auto d = random_layered_fbdd(r, n, config.width);
      inst.size = d.size();
      inst.model = std::move(d);
      break;
    }
    case model_class::mlp: {
      auto m = random_mlp(r, n, 2, 4);
      inst.size = m.nonzero_parameters();
      inst.model = std::move(m);
      break;
    }
    case model_class::constant_one: fail(error_kind::invalid_argument, "cannot benchmark constant_one");
  }
  inst.input = random_input(r, n);
  inst.subset = feature_subset::all(n);
  return inst;
}

std::string answer_of(const query_result& r) {
  if (r.kind == result_kind::count) return r.count.str();
  return r.minimum ? std::to_string(*r.minimum) : "none";
}

query_result run_once(const bench_config& config, const bench_instance& inst, const solver_options& options) {
  const classifier pi = constant_one{inst.input.size()};
  switch (config.query) {
    case query_kind::msr: return msr_minimum(inst.model, pi, inst.input, options);
    case query_kind::mcr: return mcr_minimum(inst.model, pi, inst.input, options);
    case query_kind::cc: return cc_query(inst.model, pi, inst.input, inst.subset, options);
  }
  fail(error_kind::invalid_argument, "unknown query");
}

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace

std::vector<bench_row> run_bench(const bench_config& config) {
  if (config.repeats == 0) fail(error_kind::invalid_argument, "repeats must be positive");
  std::vector<bench_row> rows;
  for (const std::size_t n : config.sizes) {
    if (n == 0) fail(error_kind::invalid_argument, "sizes must be positive");
    const auto inst = make_instance(config, n);
    for (const auto mode : config.modes) {
      const solver_options options{mode, config.cap, config.threads};
      // one untimed call fixes the answer and how many calls fill ~2 ms
      double t0 = now();
      const auto first = run_once(config, inst, options);
      const double single = std::max(now() - t0, 1e-9);
      const std::size_t inner = std::clamp<std::size_t>(static_cast<std::size_t>(2e-3 / single), 1, 10'000);
      std::vector<double> samples;
      for (std::size_t rep = 0; rep < config.repeats; ++rep) {
        t0 = now();
        for (std::size_t i = 0; i < inner; ++i) run_once(config, inst, options);
        samples.push_back((now() - t0) / static_cast<double>(inner));
      }
      std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
      rows.push_back({std::string(class_name(config.model)), std::string(query_name(config.query)),
                      std::string(method_name(first.method)), n, inst.size, samples[samples.size() / 2],
                      answer_of(first)});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<bench_row>& rows) {
  out << "class,query,mode,n,size,median_seconds,answer\n";
  for (const auto& r : rows)
    out << r.model << ',' << r.query << ',' << r.mode << ',' << r.n << ',' << r.size << ',' << std::scientific
        << std::setprecision(6) << r.median_seconds << std::defaultfloat << ',' << r.answer << '\n';
}

}  // namespace axai
