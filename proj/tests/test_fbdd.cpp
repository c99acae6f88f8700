#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axai/error.hpp"
#include "axai/fbdd.hpp"
#include "axai/random.hpp"
#include "models.hpp"
#include "oracle.hpp"

using namespace axai;
using models::bv;
using models::fbdd_and12;
using models::fbdd_leaf;
using models::fbdd_var;
using models::fs;

namespace {

std::vector<std::uint8_t> table(const fbdd& f) { return oracle::truth_table(classifier(f), f.arity()); }

std::vector<std::uint8_t> table(const raw_diagram& d) {
  return oracle::truth_table_of(d.arity(), [&](std::uint64_t z) {
    return d.evaluate(bit_vector::from_mask(d.arity(), z).bits());
  });
}

}  // namespace

TEST_CASE("evaluate") {
  CHECK(fbdd_evaluate(fbdd_leaf(3, true), bv("010")));
  CHECK(fbdd_evaluate(fbdd_var(2, 1), bv("10")));
  const auto f = fbdd_and12();
  CHECK_FALSE(fbdd_evaluate(f, bv("00")));
  CHECK_FALSE(fbdd_evaluate(f, bv("01")));
  CHECK_FALSE(fbdd_evaluate(f, bv("10")));
  CHECK(fbdd_evaluate(f, bv("11")));
}

TEST_CASE("structural validation") {
  CHECK_THROWS_AS(fbdd(2, {{1, leaf0, 5}}, 0), error);                 // dangling
  CHECK_THROWS_AS(fbdd(2, {{1, leaf0, 1}, {2, 0, leaf1}}, 0), error);  // cycle
  CHECK_THROWS_AS(fbdd(2, {{1, leaf0, leaf1}, {1, 0, leaf1}}, 1), error);  // x1 twice on a path
  CHECK_THROWS_AS(fbdd(2, {{3, leaf0, leaf1}}, 0), error);             // feature out of range
  CHECK(fbdd(2, {}, leaf1).is_constant());
}

TEST_CASE("negate") {
  CHECK(fbdd_negate(fbdd_leaf(1, true)).root() == leaf0);
  const auto nx1 = fbdd_negate(fbdd_var(1, 1));
  CHECK(fbdd_evaluate(nx1, bv("0")));
  CHECK_FALSE(fbdd_evaluate(nx1, bv("1")));
  const auto f = fbdd_and12();
  CHECK(table(fbdd_negate(f)) == oracle::truth_table_of(2, [](std::uint64_t z) { return z != 3; }));
  CHECK(fbdd_negate(f).size() == f.size());
}

TEST_CASE("indicator") {
  CHECK(table(fbdd_indicator(bv("10"))) == oracle::truth_table_of(2, [](std::uint64_t z) { return z == 0b01; }));
  const auto ind = fbdd_indicator(bv("111"));
  CHECK(ind.nodes().size() == 3);
  CHECK(table(ind) == oracle::truth_table_of(3, [](std::uint64_t z) { return z == 7; }));
  CHECK(table(fbdd_indicator(bv("0"))) == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("constant one") {
  CHECK(table(fbdd_constant_one(1)) == std::vector<std::uint8_t>{1, 1});
  CHECK(table(fbdd_constant_one(3)) == std::vector<std::uint8_t>(8, 1));
  CHECK(table(fbdd_negate(fbdd_constant_one(3))) == std::vector<std::uint8_t>(8, 0));
}

TEST_CASE("and") {
  CHECK(table(fbdd_and(fbdd_var(2, 1), fbdd_var(2, 2))) == table(fbdd_and12()));
  CHECK(table(fbdd_and(fbdd_leaf(2, false), fbdd_and12())) == std::vector<std::uint8_t>(4, 0));
  const auto raw = fbdd_and(fbdd_var(2, 1), fbdd_var(2, 1));
  CHECK_FALSE(raw.is_read_once());
  CHECK(table(raw) == table(fbdd_var(2, 1)));
  CHECK_THROWS_AS(fbdd_and(fbdd_var(2, 1), fbdd_var(3, 1)), error);
}

TEST_CASE("implies") {
  CHECK(table(fbdd_implies(fbdd_var(2, 1), fbdd_var(2, 2))) ==
        oracle::truth_table_of(2, [](std::uint64_t z) { return !(z & 1) || (z & 2); }));
  CHECK(table(fbdd_implies(fbdd_and12(), fbdd_leaf(2, true))) == std::vector<std::uint8_t>(4, 1));
  CHECK(table(fbdd_implies(fbdd_leaf(2, false), fbdd_and12())) == std::vector<std::uint8_t>(4, 1));
}

TEST_CASE("read-once repair") {
  const auto x1 = fbdd_read_once_repair(fbdd_and(fbdd_var(2, 1), fbdd_var(2, 1)));
  CHECK(table(x1) == table(fbdd_var(2, 1)));
  CHECK(oracle::read_once_audit(x1));

  const auto clean = fbdd_and(fbdd_var(2, 1), fbdd_var(2, 2));
  CHECK(clean.is_read_once());
  CHECK(table(fbdd_read_once_repair(clean)) == table(clean));

  const auto both = fbdd_read_once_repair(fbdd_and(fbdd_var(2, 1), fbdd_and12()));
  CHECK(table(both) == table(fbdd_and12()));
  CHECK(oracle::read_once_audit(both));

  // a suffix node pointing back into the prefix is not two-phase
  CHECK_THROWS_AS(raw_diagram(2,
                              {{1, leaf0, leaf1, diagram_phase::prefix},
                               {2, 0, leaf1, diagram_phase::suffix},
                               {2, 1, leaf0, diagram_phase::prefix}},
                              2),
                  error);
}

TEST_CASE("min change, misaligned") {
  const auto f = fbdd_and12();
  auto r = fbdd_min_change_misaligned(f, bv("11"));
  REQUIRE(r);
  CHECK(r->size == 1);
  CHECK(r->witness.to_string() == "{1}");
  r = fbdd_min_change_misaligned(f, bv("00"));
  REQUIRE(r);
  CHECK(r->size == 2);
  CHECK(r->witness.to_string() == "{1,2}");
  CHECK_FALSE(fbdd_min_change_misaligned(fbdd_leaf(2, true), bv("01")));
}

TEST_CASE("completion count, misaligned") {
  CHECK(fbdd_count_completions_misaligned(fbdd_and12(), bv("11"), fs(2, "{1,2}")) == 3);
  CHECK(fbdd_count_completions_misaligned(fbdd_and12(), bv("11"), fs(2, "{}")) == 0);
  CHECK(fbdd_count_completions_misaligned(fbdd_leaf(3, false), bv("101"), fs(3, "{1,3}")) == 0);
}

TEST_CASE("property: compositions, repair, fast paths against the oracle") {
  rng r(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = uniform_index(r, 1, 9);
    const auto ft = random_fbdd(r, n);
    const auto fs_ = random_fbdd(r, n);
    const auto tt = table(ft);
    const auto ts = table(fs_);

    CHECK(table(fbdd_negate(fbdd_negate(ft))) == tt);

    const auto a = fbdd_and(ft, fs_);
    const auto i = fbdd_implies(ft, fs_);
    std::vector<std::uint8_t> want_and(tt.size());
    std::vector<std::uint8_t> want_imp(tt.size());
    for (std::size_t z = 0; z < tt.size(); ++z) {
      want_and[z] = tt[z] & ts[z];
      want_imp[z] = (!tt[z]) | ts[z];
    }
    CHECK(table(a) == want_and);
    CHECK(table(i) == want_imp);

    // every edge into the 1-leaf of ft (the root pointer included) may carry one copy of fs
    std::size_t into_one = ft.root() == leaf1 ? 1 : 0;
    for (const auto& node : ft.nodes()) into_one += (node.low == leaf1) + (node.high == leaf1);
    CHECK(a.size() <= ft.size() + into_one * fs_.size());

    const auto ra = fbdd_read_once_repair(a);
    const auto ri = fbdd_read_once_repair(i);
    CHECK(table(ra) == want_and);
    CHECK(table(ri) == want_imp);
    CHECK(oracle::read_once_audit(ra));
    CHECK(oracle::read_once_audit(ri));

    const auto x = random_input(r, n);
    const oracle::instance inst(ft, constant_one{n}, x);
    const auto best = inst.min_contrastive();
    const auto fast = fbdd_min_change_misaligned(ft, x);
    REQUIRE(best.has_value() == fast.has_value());
    if (fast) {
      CHECK(fast->size == static_cast<std::size_t>(__builtin_popcountll(*best)));
      CHECK(fast->witness.to_mask() == *best);
      CHECK(inst.contrastive(fast->witness.to_mask()));
    }
    const auto s = random_subset(r, n);
    CHECK(fbdd_count_completions_misaligned(ft, x, s) == inst.count(s.to_mask()));
  }
}
