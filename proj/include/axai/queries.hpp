#pragma once

#include "axai/classifier.hpp"
#include "axai/core.hpp"
#include "axai/rational.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace axai {

enum class solve_mode { automatic, brute, fast };
enum class solve_method { brute, fast };
enum class query_kind { msr, mcr, cc };
enum class result_kind { decision, count, minimum };

struct solver_options {
  solve_mode mode = solve_mode::automatic;
  std::uint64_t cap = default_enumeration_cap;
  unsigned threads = 1;
};

struct query_stats {
  std::uint64_t completions = 0;  // points evaluated
  std::uint64_t subsets = 0;      // candidate subsets examined
  double seconds = 0;
};

struct query_result {
  query_kind query = query_kind::msr;
  result_kind kind = result_kind::decision;
  bool decision = false;                 // decision results
  integer count = 0;                     // count results
  std::optional<std::size_t> minimum;    // minimum results; nullopt = none
  std::optional<feature_subset> witness;
  solve_method method = solve_method::brute;
  bool in_context_input = true;          // pi(x) == 1
  query_stats stats;
};

std::string_view query_name(query_kind q);
std::string_view method_name(solve_method m);

/// Every in-context completion of x on s keeps f(x):
///   forall z. pi(x_s; z) = 1 -> f(x_s; z) = f(x).
bool is_sufficient(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                   const solver_options& options = {});

/// Some in-context reassignment of s changes f(x):
///   exists z. pi(x_~s; z_s) = 1 and f(x_~s; z_s) != f(x).
bool is_contrastive(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                    const solver_options& options = {});

/// is_sufficient (msr) or is_contrastive (mcr) for one subset, packaged as a
/// decision; a yes carries s as its witness.
query_result subset_check(query_kind q, const classifier& f, const classifier& pi, const bit_vector& x,
                          const feature_subset& s, const solver_options& options = {});
/// Distinct assignments to s that are in context and change f(x).
integer count_completions(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                          const solver_options& options = {});

/// Is there a sufficient subset of size <= k? Witness: the first one in
/// cardinality-then-lexicographic order.
query_result msr_decide(const classifier& f, const classifier& pi, const bit_vector& x, std::size_t k,
                        const solver_options& options = {});
query_result mcr_decide(const classifier& f, const classifier& pi, const bit_vector& x, std::size_t k,
                        const solver_options& options = {});

query_result msr_minimum(const classifier& f, const classifier& pi, const bit_vector& x,
                         const solver_options& options = {});
query_result mcr_minimum(const classifier& f, const classifier& pi, const bit_vector& x,
                         const solver_options& options = {});

/// count_completions packaged as a result (with method and stats).
query_result cc_query(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                      const solver_options& options = {});

/// Whether a polynomial path exists for the query on this (f, pi) pair.
bool has_fast_path(query_kind q, const classifier& f, const classifier& pi);

}  // namespace axai
