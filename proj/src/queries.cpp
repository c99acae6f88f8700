#include "axai/queries.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <thread>

namespace axai {

std::string_view query_name(query_kind q) {
  switch (q) {
    case query_kind::msr: return "msr";
    case query_kind::mcr: return "mcr";
    case query_kind::cc: return "cc";
  }
  return "?";
}

std::string_view method_name(solve_method m) { return m == solve_method::fast ? "fast" : "brute"; }

namespace {

void check_instance(const classifier& f, const classifier& pi, const bit_vector& x) {
  require_same_arity(arity(f), arity(pi), "model and indicator");
  require_same_arity(arity(f), x.size(), "model and input");
}

const perceptron* misaligned_perceptron(const classifier& f, const classifier& pi) {
  return is_constant_one(pi) ? std::get_if<perceptron>(&f) : nullptr;
}

const fbdd* misaligned_fbdd(const classifier& f, const classifier& pi) {
  return is_constant_one(pi) ? std::get_if<fbdd>(&f) : nullptr;
}

/// Resolves the requested mode against fast-path availability.
bool use_fast(bool available, const solver_options& options) {
  if (options.mode == solve_mode::brute) return false;
  if (options.mode == solve_mode::fast && !available)
    fail(error_kind::no_fast_path, "no polynomial fast path for this model/indicator pair");
  return available;
}

/// Number of points of the completion set that are in context and flip f(x).
template <typename Visit>
void for_each_flip(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& fixed,
                   std::uint64_t cap, Visit visit) {
  const bool label = evaluate(f, x.bits());
  for (const auto& z : enumerate_completions(x, fixed, cap)) {
    if (!visit(z, evaluate(pi, z.bits()) && evaluate(f, z.bits()) != label)) break;
  }
}

bool brute_is_sufficient(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                         std::uint64_t cap) {
  bool ok = true;
  for_each_flip(f, pi, x, s, cap, [&](const bit_vector&, bool flip) {
    ok = !flip;
    return ok;
  });
  return ok;
}

bool brute_is_contrastive(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                          std::uint64_t cap) {
  bool found = false;
  for_each_flip(f, pi, x, s.complement(), cap, [&](const bit_vector&, bool flip) {
    found = flip;
    return !found;
  });
  return found;
}

std::uint64_t brute_count(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                          std::uint64_t cap) {
  std::uint64_t count = 0;
  for_each_flip(f, pi, x, s.complement(), cap, [&](const bit_vector&, bool flip) {
    count += flip;
    return true;
  });
  return count;
}

bool closer_flip(std::uint64_t d, std::uint64_t best) {
  return std::popcount(d) < std::popcount(best) || (std::popcount(d) == std::popcount(best) && mask_lex_less(d, best));
}

/// Difference masks (z xor x) of every in-context point z with f(z) != f(x),
/// in increasing z order. One pass over the whole cube, split across threads.
/// With best_only each thread keeps just its closest flip.
std::vector<std::uint64_t> sweep_flips(const classifier& f, const classifier& pi, const bit_vector& x,
                                       const solver_options& options, std::uint64_t& flip_count,
                                       bool best_only = false) {
  const std::size_t n = x.size();
  if (n >= 63 || (std::uint64_t{1} << n) > options.cap)
    fail(error_kind::enumeration_limit, "brute-force search over 2^" + std::to_string(n) +
                                            " points exceeds the cap of " + std::to_string(options.cap));
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t xmask = x.to_mask();
  const bool label = evaluate(f, x.bits());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::uint64_t>(1, total >> 12))));
  std::vector<std::vector<std::uint64_t>> parts(threads);
  std::vector<std::uint64_t> counts(threads, 0);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = total / threads * t;
    const std::uint64_t end = t + 1 == threads ? total : total / threads * (t + 1);
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = (begin >> i) & 1;
    for (std::uint64_t z = begin; z < end; ++z) {
      if (z != begin)  // binary increment of the previous point
        for (std::size_t i = 0; i < n && (bits[i] ^= 1) == 0; ++i) {
        }
      if (evaluate(f, bits) == label || !evaluate(pi, bits)) continue;
      ++counts[t];
      auto& part = parts[t];
      const std::uint64_t d = z ^ xmask;
      if (!best_only) part.push_back(d);
      else if (part.empty()) part.push_back(d);
      else if (closer_flip(d, part.front())) part.front() = d;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::vector<std::uint64_t> flips;
  for (auto& p : parts) flips.insert(flips.end(), p.begin(), p.end());
  flip_count = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return flips;
}

/// Smallest flip distance and the lexicographically smallest flip set at it.
std::optional<std::uint64_t> brute_min_contrastive(const std::vector<std::uint64_t>& flips) {
  std::optional<std::uint64_t> best;
  for (auto d : flips)
    if (!best || closer_flip(d, *best)) best = d;
  return best;
}

/// Next mask of the same popcount in lexicographic order of the sorted
/// index sequence (bit i-1 = feature i), within n bits; 0 when exhausted.
std::uint64_t next_lex_combination(std::uint64_t mask, std::size_t n) {
  // positions in ascending order; advance like a combination counter where
  // the last element moves first
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1) pos.push_back(i);
  const std::size_t k = pos.size();
  for (std::size_t j = k; j-- > 0;) {
    if (pos[j] < n - k + j) {
      ++pos[j];
      for (std::size_t l = j + 1; l < k; ++l) pos[l] = pos[l - 1] + 1;
      std::uint64_t out = 0;
      for (auto p : pos) out |= std::uint64_t{1} << p;
      return out;
    }
  }
  return 0;
}

/// First subset in canonical order (size <= k_max) meeting every flip mask.
std::optional<std::uint64_t> brute_min_sufficient(std::vector<std::uint64_t> flips, std::size_t n, std::size_t k_max,
                                                  std::uint64_t& examined) {
  std::sort(flips.begin(), flips.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b; });
  flips.erase(std::unique(flips.begin(), flips.end()), flips.end());
  if (flips.size() <= (std::size_t{1} << 14)) {
    // only inclusion-minimal masks constrain a hitting set
    std::vector<std::uint64_t> minimal;
    for (auto d : flips)
      if (std::none_of(minimal.begin(), minimal.end(), [&](std::uint64_t m) { return (m & d) == m; }))
        minimal.push_back(d);
    flips = std::move(minimal);
  }
  for (std::size_t size = 0; size <= std::min(k_max, n); ++size) {
    std::uint64_t s = size == 0 ? 0 : (size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1);
    while (true) {
      ++examined;
      if (std::all_of(flips.begin(), flips.end(), [&](std::uint64_t d) { return (d & s) != 0; })) return s;
      if (size == 0) break;
      s = next_lex_combination(s, n);
      if (s == 0) break;
    }
  }
  return std::nullopt;
}

class stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

query_result make_result(query_kind q, result_kind kind, const classifier& pi, const bit_vector& x) {
  query_result r;
  r.query = q;
  r.kind = kind;
  r.in_context_input = evaluate(pi, x.bits());
  return r;
}

bool fast_sufficient_available(const classifier& f, const classifier& pi) {
  return misaligned_perceptron(f, pi) || misaligned_fbdd(f, pi);
}

/// Shared body of the minimum and decision variants.
query_result solve_minimum(query_kind q, const classifier& f, const classifier& pi, const bit_vector& x,
                           std::size_t k_max, const solver_options& options) {
  check_instance(f, pi, x);
  const std::size_t n = x.size();
  stopwatch clock;
  query_result r = make_result(q, result_kind::minimum, pi, x);
  std::optional<min_change> found;
  if (use_fast(has_fast_path(q, f, pi), options)) {
    r.method = solve_method::fast;
    if (q == query_kind::msr) {
      found = perceptron_min_sufficient_misaligned(*misaligned_perceptron(f, pi), x);
    } else if (const auto* p = misaligned_perceptron(f, pi)) {
      found = perceptron_min_change_misaligned(*p, x);
    } else {
      found = fbdd_min_change_misaligned(*misaligned_fbdd(f, pi), x);
    }
    if (found && found->size > k_max) found.reset();
  } else {
    r.method = solve_method::brute;
    std::uint64_t flip_count = 0;
    const auto flips = sweep_flips(f, pi, x, options, flip_count, q == query_kind::mcr);
    r.stats.completions = std::uint64_t{1} << n;
    std::optional<std::uint64_t> mask;
    if (q == query_kind::msr) {
      mask = brute_min_sufficient(flips, n, k_max, r.stats.subsets);
    } else {
      mask = brute_min_contrastive(flips);
      r.stats.subsets = flip_count;  // each flip is a candidate contrastive set
      if (mask && static_cast<std::size_t>(std::popcount(*mask)) > k_max) mask.reset();
    }
    if (mask) found = min_change{static_cast<std::size_t>(std::popcount(*mask)), feature_subset::from_mask(n, *mask)};
  }
  if (found) {
    r.minimum = found->size;
    r.witness = std::move(found->witness);
  }
  r.stats.seconds = clock.seconds();
  return r;
}

query_result solve_decision(query_kind q, const classifier& f, const classifier& pi, const bit_vector& x,
                            std::size_t k, const solver_options& options) {
  check_instance(f, pi, x);
  if (k > x.size()) fail(error_kind::invalid_argument, "k exceeds the number of features");
  query_result r = solve_minimum(q, f, pi, x, k, options);
  r.kind = result_kind::decision;
  r.decision = r.minimum.has_value();
  if (!r.decision) r.witness.reset();
  r.minimum.reset();
  return r;
}

}  // namespace

bool has_fast_path(query_kind q, const classifier& f, const classifier& pi) {
  switch (q) {
    case query_kind::msr: return misaligned_perceptron(f, pi) != nullptr;
    case query_kind::mcr: return misaligned_perceptron(f, pi) || misaligned_fbdd(f, pi);
    case query_kind::cc: return misaligned_fbdd(f, pi) != nullptr;
  }
  return false;
}

query_result subset_check(query_kind q, const classifier& f, const classifier& pi, const bit_vector& x,
                          const feature_subset& s, const solver_options& options) {
  if (q == query_kind::cc) fail(error_kind::invalid_argument, "subset_check answers msr or mcr");
  check_instance(f, pi, x);
  require_same_arity(x.size(), s.arity(), "subset");
  stopwatch clock;
  query_result r = make_result(q, result_kind::decision, pi, x);
  if (use_fast(fast_sufficient_available(f, pi), options)) {
    r.method = solve_method::fast;
    if (const auto* p = misaligned_perceptron(f, pi)) {
      r.decision = q == query_kind::msr ? perceptron_sufficiency_check(*p, x, s) : perceptron_contrastive_check(*p, x, s);
    } else {
      // sufficiency of s: no flip when the complement varies
      const auto* d = misaligned_fbdd(f, pi);
      r.decision = q == query_kind::msr ? fbdd_count_completions_misaligned(*d, x, s.complement()) == 0
                                        : fbdd_count_completions_misaligned(*d, x, s) > 0;
    }
  } else {
    r.method = solve_method::brute;
    r.decision = q == query_kind::msr ? brute_is_sufficient(f, pi, x, s, options.cap)
                                      : brute_is_contrastive(f, pi, x, s, options.cap);
    r.stats.completions = std::uint64_t{1} << (q == query_kind::msr ? x.size() - s.size() : s.size());
  }
  r.stats.subsets = 1;
  if (r.decision) r.witness = s;
  r.stats.seconds = clock.seconds();
  return r;
}

bool is_sufficient(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                   const solver_options& options) {
  return subset_check(query_kind::msr, f, pi, x, s, options).decision;
}

bool is_contrastive(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                    const solver_options& options) {
  return subset_check(query_kind::mcr, f, pi, x, s, options).decision;
}

integer count_completions(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                          const solver_options& options) {
  return cc_query(f, pi, x, s, options).count;
}

query_result cc_query(const classifier& f, const classifier& pi, const bit_vector& x, const feature_subset& s,
                      const solver_options& options) {
  check_instance(f, pi, x);
  require_same_arity(x.size(), s.arity(), "subset");
  stopwatch clock;
  query_result r = make_result(query_kind::cc, result_kind::count, pi, x);
  if (use_fast(has_fast_path(query_kind::cc, f, pi), options)) {
    r.method = solve_method::fast;
    r.count = fbdd_count_completions_misaligned(*misaligned_fbdd(f, pi), x, s);
  } else {
    r.method = solve_method::brute;
    r.count = brute_count(f, pi, x, s, options.cap);
    r.stats.completions = std::uint64_t{1} << s.size();
  }
  r.stats.seconds = clock.seconds();
  return r;
}

query_result msr_decide(const classifier& f, const classifier& pi, const bit_vector& x, std::size_t k,
                        const solver_options& options) {
  return solve_decision(query_kind::msr, f, pi, x, k, options);
}

query_result mcr_decide(const classifier& f, const classifier& pi, const bit_vector& x, std::size_t k,
                        const solver_options& options) {
  return solve_decision(query_kind::mcr, f, pi, x, k, options);
}

query_result msr_minimum(const classifier& f, const classifier& pi, const bit_vector& x,
                         const solver_options& options) {
  return solve_minimum(query_kind::msr, f, pi, x, x.size(), options);
}

query_result mcr_minimum(const classifier& f, const classifier& pi, const bit_vector& x,
                         const solver_options& options) {
  return solve_minimum(query_kind::mcr, f, pi, x, x.size(), options);
}

}  // namespace axai
