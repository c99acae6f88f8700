#pragma once

#include "axai/classifier.hpp"
#include "axai/queries.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace axai {

struct bench_config {
  model_class model = model_class::perceptron;
  query_kind query = query_kind::mcr;
  std::vector<solve_mode> modes{solve_mode::fast};
  std::vector<std::size_t> sizes{8, 16, 24, 32};
  std::size_t width = 8;  // layer width of benchmark diagrams
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  std::uint64_t cap = default_enumeration_cap;
  unsigned threads = 1;
};

struct bench_row {
  std::string model;
  std::string query;
  std::string mode;
  std::size_t n = 0;
  std::size_t size = 0;  // edges for diagrams, parameters otherwise
  double median_seconds = 0;
  std::string answer;
};

/// One row per (size, mode). The instance for size n depends only on (seed, n),
/// so every mode sees the same instance. Brute runs past the cap throw
/// error(enumeration_limit).
std::vector<bench_row> run_bench(const bench_config& config);

void write_csv(std::ostream& out, const std::vector<bench_row>& rows);

}  // namespace axai
