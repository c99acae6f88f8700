#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axai/error.hpp"
#include "axai/io.hpp"
#include "axai/random.hpp"
#include "models.hpp"
#include "oracle.hpp"

using namespace axai;
using models::bv;

namespace {

error_kind kind_of(const json& doc) {
  try {
    classifier_from_json(doc);
  } catch (const error& e) {
    return e.kind();
  }
  FAIL("document was accepted");
  return error_kind::invalid_argument;
}

}  // namespace

TEST_CASE("fbdd documents") {
  const auto doc = json::parse(R"({"type":"fbdd","n":2,"root":7,
    "nodes":[{"id":7,"var":1,"low":"leaf0","high":3},{"id":3,"var":2,"low":"leaf0","high":"leaf1"}]})");
  const auto f = classifier_from_json(doc);
  CHECK(oracle::truth_table(f, 2) == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(oracle::truth_table(classifier_from_json(json::parse(R"({"type":"fbdd","n":3,"root":"leaf1","nodes":[]})")), 3) ==
        std::vector<std::uint8_t>(8, 1));

  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":1,"var":1,"low":"leaf0","high":9}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":1,"var":1,"low":"leaf0","high":1}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":1,"var":1,"low":"leaf0","high":"leaf1"},
                                                             {"id":1,"var":2,"low":"leaf0","high":"leaf1"}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":1,"var":1,"low":"leaf2","high":"leaf1"}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":-1,"var":1,"low":"leaf0","high":"leaf1"}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"fbdd","n":2,"root":1,"nodes":[{"id":1,"var":1,"low":"leaf0","high":2},
                                                             {"id":2,"var":1,"low":"leaf0","high":"leaf1"}]})")) ==
        error_kind::schema);
}

TEST_CASE("perceptron documents") {
  const auto p = classifier_from_json(json::parse(R"({"type":"perceptron","n":2,"weights":["3/2",-1],"bias":"1/4"})"));
  const auto& q = std::get<perceptron>(p);
  CHECK(q.weights() == models::ratvec({rational(3, 2), -1}));
  CHECK(q.bias() == rational(1, 4));
  CHECK(kind_of(json::parse(R"({"type":"perceptron","n":2,"weights":["1"],"bias":"0"})")) == error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"perceptron","n":1,"weights":["1/0"],"bias":"0"})")) == error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"perceptron","n":1,"weights":["x"],"bias":"0"})")) == error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"perceptron","n":1,"weights":[1.5],"bias":"0"})")) == error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"perceptron","weights":["1"],"bias":"0"})")) == error_kind::schema);
}

TEST_CASE("mlp and circuit documents") {
  const auto m = classifier_from_json(json::parse(R"({"type":"mlp","n":2,"layers":[
      {"weights":[["1"],["1"]],"bias":["-1"],"activation":"relu"},
      {"weights":[["1"]],"bias":["-1/2"],"activation":"step"}]})"));
  CHECK(oracle::truth_table(m, 2) == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(kind_of(json::parse(R"({"type":"mlp","n":2,"layers":[{"weights":[["1"]],"bias":["0"],"activation":"step"}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"mlp","n":1,"layers":[{"weights":[["1"]],"bias":["0"],"activation":"tanh"}]})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"mlp","n":1,"layers":[{"weights":[["1"]],"bias":["0"],"activation":"relu"}]})")) ==
        error_kind::schema);

  const auto doc = json::parse(R"({"type":"circuit","n":3,"gates":[
      {"id":5,"kind":"and","in":["x1","x2"]},{"id":6,"kind":"not","in":["x3"]},{"id":9,"kind":"or","in":[5,6]}],"out":9})");
  const auto c = circuit_from_json(doc);
  const auto compiled = classifier_from_json(doc);
  CHECK(oracle::truth_table(compiled, 3) ==
        oracle::truth_table_of(3, [](std::uint64_t z) { return ((z & 3) == 3) || !(z & 4); }));
  CHECK(circuit_from_json(to_json(c)).gates().size() == 3);
  CHECK(kind_of(json::parse(R"({"type":"circuit","n":2,"gates":[{"id":1,"kind":"and","in":["x1",2]}],"out":1})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"circuit","n":2,"gates":[{"id":1,"kind":"and","in":["x1","x3"]}],"out":1})")) ==
        error_kind::schema);
  CHECK(kind_of(json::parse(R"({"type":"widget","n":2})")) == error_kind::schema);
}

TEST_CASE("ssp documents") {
  const auto inst = ssp_from_json(json::parse(R"({"values":[1,2,3],"k":2,"T":3})"));
  CHECK(inst.values.size() == 3);
  CHECK(inst.target == 3);
  CHECK(ssp_from_json(to_json(inst)).values == inst.values);
  CHECK_THROWS_AS(ssp_from_json(json::parse(R"({"values":[0],"k":1,"T":0})")), error);
  CHECK_THROWS_AS(ssp_from_json(json::parse(R"({"values":[1],"k":2,"T":0})")), error);
}

TEST_CASE("query result document") {
  query_result r;
  r.query = query_kind::cc;
  r.kind = result_kind::count;
  r.count = integer(1) << 70;
  const auto doc = to_json(r);
  CHECK(doc["answer"] == (integer(1) << 70).str());
  CHECK(doc["witness"].is_null());
  std::vector<std::string> keys;
  for (auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"query", "answer", "witness", "method", "in_context_input", "stats"});

  r.query = query_kind::mcr;
  r.kind = result_kind::decision;
  r.decision = true;
  r.witness = feature_subset::parse(3, "{1,3}");
  const auto d = to_json(r);
  CHECK(d["answer"] == true);
  CHECK(d["witness"] == "{1,3}");
}

TEST_CASE("property: round trip") {
  rng r(67);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = uniform_index(r, 1, 8);
    classifier c;
    switch (trial % 4) {
      case 0: c = random_fbdd(r, n); break;
      case 1: c = random_perceptron(r, n); break;
      case 2: c = random_mlp(r, n); break;
      default: c = constant_one{n}; break;
    }
    const auto doc = to_json(c);
    const auto back = classifier_from_json(json::parse(doc.dump()));
    CHECK(to_json(back) == doc);
    CHECK(oracle::truth_table(back, n) == oracle::truth_table(c, n));
  }
}
