#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axai/constructions.hpp"
#include "axai/error.hpp"
#include "axai/queries.hpp"
#include "axai/random.hpp"
#include "models.hpp"
#include "oracle.hpp"

using namespace axai;
using models::bv;
using models::fbdd_and12;
using models::fbdd_var;

namespace {

solver_options brute() { return {solve_mode::brute, default_enumeration_cap, 1}; }

/// Sorted popcount of the minimum, or -1 for none.
int size_of(const std::optional<std::uint64_t>& m) { return m ? __builtin_popcountll(*m) : -1; }

/// MSR / MCR minima and CC for every s agree between two oracle instances.
bool same_answers(const oracle::instance& a, const oracle::instance& b) {
  if (size_of(a.min_sufficient()) != size_of(b.min_sufficient())) return false;
  if (size_of(a.min_contrastive()) != size_of(b.min_contrastive())) return false;
  for (std::uint64_t s = 0; s <= a.full(); ++s) {
    if (a.count(s) != b.count(s)) return false;
    if (a.sufficient(s) != b.sufficient(s)) return false;
  }
  return true;
}

std::vector<long long> small_values(const ssp_instance& inst) {
  std::vector<long long> v;
  for (const auto& z : inst.values) v.push_back(static_cast<long long>(z));
  return v;
}

ssp_instance ssp(std::vector<int> values, std::size_t k, int target) {
  std::vector<integer> v(values.begin(), values.end());
  return ssp_instance(std::move(v), k, target);
}

bool aligned_mcr(const reduced_instance& r) {
  return mcr_decide(r.model, r.indicator, r.input, std::get<std::size_t>(r.parameter), brute()).decision;
}

}  // namespace

TEST_CASE("embed_misaligned") {
  const auto f = fbdd_and12();
  const auto r = embed_misaligned(f, bv("11"), std::size_t{1}, model_class::fbdd);
  CHECK(is_constant_one(r.indicator));
  CHECK(class_of(r.indicator) == model_class::fbdd);
  CHECK(r.provenance == reduction_kind::misaligned_embedding);
  CHECK(same_answers(oracle::instance(r.model, r.indicator, r.input), oracle::instance(f, constant_one{2}, bv("11"))));
  CHECK(class_of(embed_misaligned(f, bv("11"), std::size_t{1}, model_class::perceptron).indicator) ==
        model_class::perceptron);
}

TEST_CASE("indicator_reduction examples") {
  const auto f1 = models::perc({1, -1}, 0);
  auto r = indicator_reduction(f1, bv("10"), std::size_t{1});
  CHECK(oracle::truth_table(r.model, 2) == oracle::truth_table(perceptron_indicator(bv("10"), 1, -1), 2));
  CHECK(oracle::truth_table(r.indicator, 2) == oracle::truth_table(perceptron_negate(f1), 2));
  CHECK(same_answers(oracle::instance(r.model, r.indicator, r.input), oracle::instance(f1, constant_one{2}, bv("10"))));

  r = indicator_reduction(fbdd_and12(), bv("00"), feature_subset::parse(2, "{1,2}"));
  CHECK(oracle::truth_table(r.indicator, 2) == oracle::truth_table(fbdd_and12(), 2));
  CHECK(same_answers(oracle::instance(r.model, r.indicator, r.input),
                     oracle::instance(fbdd_and12(), constant_one{2}, bv("00"))));

  r = indicator_reduction(fbdd::constant(2, true), bv("01"), std::size_t{1});
  CHECK(oracle::truth_table(r.indicator, 2) == std::vector<std::uint8_t>(4, 0));
  for (std::size_t k = 1; k <= 2; ++k) CHECK_FALSE(mcr_decide(r.model, r.indicator, r.input, k).decision);
}

TEST_CASE("self_align examples") {
  auto g = self_align(fbdd_var(2, 1), fbdd_var(2, 2), bv("11"));
  CHECK(oracle::truth_table(g, 2) == oracle::truth_table_of(2, [](std::uint64_t z) { return (z & 1) || !(z & 2); }));
  CHECK(evaluate(g, bv("11")));
  CHECK(same_answers(oracle::instance(fbdd_var(2, 1), fbdd_var(2, 2), bv("11")),
                     oracle::instance(g, constant_one{2}, bv("11"))));

  const auto f = models::mlp_and12();
  const auto pi = models::mlp_var(2, 1);
  g = self_align(f, pi, bv("01"));
  CHECK(oracle::truth_table(g, 2) == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(same_answers(oracle::instance(f, pi, bv("01")), oracle::instance(g, constant_one{2}, bv("01"))));

  try {
    self_align(models::perc({1, 0}, 0), models::perc({0, 1}, 0), bv("11"));
    FAIL("expected no_constructor");
  } catch (const error& e) {
    CHECK(e.kind() == error_kind::no_constructor);
  }
}

TEST_CASE("ssp_solve") {
  CHECK(ssp_solve(ssp({1, 2, 3}, 2, 3)));
  CHECK_FALSE(ssp_solve(ssp({1, 2, 3}, 2, 7)));
  CHECK(ssp_solve(ssp({4, 5}, 0, 0)));
  CHECK_FALSE(ssp_solve(ssp({4, 5}, 1, -4)));
  CHECK_THROWS_AS(ssp({0, 1}, 1, 1), error);
  CHECK_THROWS_AS(ssp({1}, 2, 1), error);
}

TEST_CASE("ssp_to_mcr examples") {
  const auto yes = ssp_to_mcr(ssp({1, 2, 3}, 2, 3));
  CHECK(aligned_mcr(yes));
  CHECK(yes.input == bv("111"));
  CHECK_FALSE(aligned_mcr(ssp_to_mcr(ssp({2, 2}, 1, 5))));
  const auto dummy = ssp_to_mcr(ssp({1, 1}, 2, 2));
  const auto& p = std::get<perceptron>(dummy.model);
  CHECK(p.weights() == models::ratvec({1, -1}));
  CHECK(p.bias() == 0);
  CHECK(aligned_mcr(dummy));
  CHECK_FALSE(aligned_mcr(ssp_to_mcr(ssp({1, 1}, 2, 3))));

  // literal weights as written for the source instance; that encoding has no
  // in-context flip, so it answers no where the padded one answers yes
  const auto literal = ssp_to_mcr(ssp({1, 2, 3}, 2, 3), ssp_encoding::literal);
  const auto& f1 = std::get<perceptron>(literal.model);
  const auto& f2 = std::get<perceptron>(literal.indicator);
  CHECK(f1.weights() == models::ratvec({-1, -2, -3}));
  CHECK(f1.bias() == rational(13, 4));
  CHECK(f2.weights() == models::ratvec({1, 2, 3}));
  CHECK(f2.bias() == -3);
  CHECK(std::get<std::size_t>(literal.parameter) == 2);
  CHECK_FALSE(aligned_mcr(literal));
}

TEST_CASE("property: reductions preserve answers") {
  rng r(53);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = random_ssp(r, 8, 12);
    CHECK(ssp_solve(inst) == oracle::subset_sum(small_values(inst), inst.k, static_cast<long long>(inst.target)));
    CHECK(ssp_solve(inst) == aligned_mcr(ssp_to_mcr(inst)));
  }
  for (int trial = 0; trial < 90; ++trial) {
    const std::size_t n = uniform_index(r, 1, 7);
    const classifier f1 = trial % 3 == 0   ? classifier(random_fbdd(r, n))
                          : trial % 3 == 1 ? classifier(random_perceptron(r, n))
                                           : classifier(random_mlp(r, n));
    const auto x = random_input(r, n);
    const oracle::instance source(f1, constant_one{n}, x);
    const auto e = embed_misaligned(f1, x, std::size_t{0}, class_of(f1));
    CHECK(same_answers(source, oracle::instance(e.model, e.indicator, e.input)));
    const auto d = indicator_reduction(f1, x, std::size_t{0});
    CHECK(class_of(d.model) == class_of(f1));
    CHECK(same_answers(source, oracle::instance(d.model, d.indicator, d.input)));
  }
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = uniform_index(r, 1, 7);
    const bool diagrams = trial % 2 == 0;
    const classifier f = diagrams ? classifier(random_fbdd(r, n)) : classifier(random_mlp(r, n));
    const classifier pi = diagrams ? classifier(random_fbdd(r, n)) : classifier(random_mlp(r, n));
    const auto x = random_input(r, n);
    const auto g = self_align(f, pi, x);
    CHECK(evaluate(g, x) == evaluate(f, x));
    CHECK(same_answers(oracle::instance(f, pi, x), oracle::instance(g, constant_one{n}, x)));
    if (diagrams) CHECK(oracle::read_once_audit(std::get<fbdd>(g)));
  }
}
