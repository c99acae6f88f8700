#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axai/core.hpp"
#include "axai/error.hpp"
#include "models.hpp"
#include "oracle.hpp"

#include <random>
#include <set>

using namespace axai;
using models::bv;
using models::fs;

TEST_CASE("bit_vector text form") {
  const auto x = bv("0110");
  CHECK(x.size() == 4);
  CHECK_FALSE(x[1]);
  CHECK(x[2]);
  CHECK(x[3]);
  CHECK_FALSE(x[4]);
  CHECK(x.to_string() == "0110");
  CHECK(x.to_mask() == 0b0110);
  CHECK(bit_vector::from_mask(4, 0b0110) == x);
  CHECK_THROWS_AS(bv("01a"), error);
  CHECK_THROWS_AS(bv(""), error);
}

TEST_CASE("feature_subset parse and print") {
  CHECK(fs(3, "{1,3}").members() == std::vector<std::size_t>{1, 3});
  CHECK(fs(3, "{ 3 , 1 }").to_string() == "{1,3}");
  CHECK(fs(3, "{}").empty());
  CHECK(fs(4, "{2}").complement().to_string() == "{1,3,4}");
  CHECK_THROWS_AS(fs(3, "{4}"), error);
  CHECK_THROWS_AS(fs(3, "{0}"), error);
  CHECK_THROWS_AS(fs(3, "{1,1}"), error);
  CHECK_THROWS_AS(fs(3, "1,2"), error);
}

TEST_CASE("canonical order is size then lexicographic") {
  CHECK(canonical_less(fs(3, "{3}"), fs(3, "{1,2}")));
  CHECK(canonical_less(fs(3, "{1,3}"), fs(3, "{2,3}")));
  CHECK_FALSE(canonical_less(fs(3, "{2}"), fs(3, "{2}")));
  // mask form agrees with the sorted-index comparison
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = 0; b < 64; ++b)
      if (__builtin_popcountll(a) == __builtin_popcountll(b))
        CHECK(mask_lex_less(a, b) == (oracle::members(a, 6) < oracle::members(b, 6)));
}

TEST_CASE("evaluate examples") {
  CHECK_FALSE(evaluate(classifier(models::perc({1, -1}, 0)), bv("11")));
  CHECK_FALSE(evaluate(classifier(models::fbdd_and12()), bv("10")));
  CHECK_THROWS_AS(evaluate(classifier(models::fbdd_and12()), bv("101")), error);
}

TEST_CASE("enumerate_completions examples") {
  auto collect = [](const bit_vector& x, const feature_subset& s) {
    std::vector<std::string> out;
    for (const auto& z : enumerate_completions(x, s)) out.push_back(z.to_string());
    return out;
  };
  CHECK(collect(bv("11"), fs(2, "{1}")) == std::vector<std::string>{"10", "11"});
  CHECK(collect(bv("11"), fs(2, "{1,2}")) == std::vector<std::string>{"11"});
  CHECK(collect(bv("00"), fs(2, "{}")) == std::vector<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("enumeration cap") {
  CHECK_NOTHROW(completion_range(bit_vector(20), feature_subset(20), std::uint64_t{1} << 20));
  try {
    completion_range(bit_vector(21), feature_subset(21), std::uint64_t{1} << 20);
    FAIL("expected enumeration_limit");
  } catch (const error& e) {
    CHECK(e.kind() == error_kind::enumeration_limit);
  }
}

TEST_CASE("property: splice identities and completion counts") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto x = bit_vector::from_mask(n, rng());
    const auto z = bit_vector::from_mask(n, rng());
    const auto s = feature_subset::from_mask(n, rng());
    CHECK(splice(x, x, s) == x);
    CHECK(splice(x, z, s) == splice(z, x, s.complement()));
    for (std::size_t i = 1; i <= n; ++i) CHECK(splice(x, z, s)[i] == (s.contains(i) ? x[i] : z[i]));

    std::set<std::string> seen;
    std::string previous;
    for (const auto& c : enumerate_completions(x, s)) {
      for (auto i : s.members()) CHECK(c[i] == x[i]);
      const auto text = c.to_string();
      CHECK(text > previous);  // strictly increasing, hence distinct
      previous = text;
      seen.insert(text);
    }
    CHECK(seen.size() == (std::size_t{1} << (n - s.size())));
  }
}
