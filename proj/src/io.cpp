#include "axai/io.hpp"

#include "axai/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace axai {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(error_kind::schema, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) bad("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t positive_size(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) bad(std::string("\"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

std::string type_of(const json& doc) {
  const json& t = field(doc, "type");
  if (!t.is_string()) bad("\"type\" must be a string");
  return t.get<std::string>();
}

rational rational_from(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return rational(v.get<std::int64_t>());
  bad("rational must be a \"p/q\" string or an integer");
}

integer integer_from(const json& v) {
  if (v.is_number_integer()) return integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const rational r = rational_from(v);
    if (boost::multiprecision::denominator(r) != 1) bad("expected an integer, got " + v.get<std::string>());
    return boost::multiprecision::numerator(r);
  }
  bad("expected an integer");
}

std::vector<rational> rational_array(const json& v, std::size_t expected, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array");
  if (v.size() != expected)
    bad(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(expected));
  std::vector<rational> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(rational_from(e));
  return out;
}

json rational_json(const rational& r) { return to_string(r); }

// fbdd ---------------------------------------------------------------------

node_ref fbdd_ref(const json& v, const std::map<std::int64_t, node_ref>& ids) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "leaf0") return leaf0;
    if (s == "leaf1") return leaf1;
    bad("unknown leaf name \"" + s + "\"");
  }
  if (!v.is_number_integer()) bad("node reference must be an id or \"leaf0\"/\"leaf1\"");
  auto it = ids.find(v.get<std::int64_t>());
  if (it == ids.end()) bad("dangling node reference " + v.dump());
  return it->second;
}

fbdd fbdd_from_json(const json& doc) {
  const std::size_t n = positive_size(doc, "n");
  const json& nodes = field(doc, "nodes");
  if (!nodes.is_array()) bad("\"nodes\" must be an array");
  std::map<std::int64_t, node_ref> ids;
  for (const auto& node : nodes) {
    const json& id = field(node, "id");
    if (!id.is_number_integer() || id.get<std::int64_t>() < 0) bad("node id must be a non-negative integer");
    if (!ids.emplace(id.get<std::int64_t>(), static_cast<node_ref>(ids.size())).second)
      bad("duplicate node id " + id.dump());
  }
  std::vector<fbdd_node> table;
  table.reserve(nodes.size());
  for (const auto& node : nodes) {
    const json& var = field(node, "var");
    if (!var.is_number_integer()) bad("node var must be an integer");
    const auto v = var.get<std::int64_t>();
    if (v < 1 || static_cast<std::size_t>(v) > n) bad("node var " + var.dump() + " outside 1.." + std::to_string(n));
    table.push_back({static_cast<std::size_t>(v), fbdd_ref(field(node, "low"), ids), fbdd_ref(field(node, "high"), ids)});
  }
  return fbdd(n, std::move(table), fbdd_ref(field(doc, "root"), ids));
}

json fbdd_ref_json(node_ref r) {
  if (r == leaf0) return "leaf0";
  if (r == leaf1) return "leaf1";
  return r;
}

// perceptron ---------------------------------------------------------------

perceptron perceptron_from_json(const json& doc) {
  const std::size_t n = positive_size(doc, "n");
  return perceptron(rational_array(field(doc, "weights"), n, "\"weights\""), rational_from(field(doc, "bias")));
}

// mlp ----------------------------------------------------------------------

mlp mlp_from_json(const json& doc) {
  const std::size_t n = positive_size(doc, "n");
  const json& layers = field(doc, "layers");
  if (!layers.is_array() || layers.empty()) bad("\"layers\" must be a non-empty array");
  std::vector<mlp_layer> out;
  std::size_t width = n;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string where = "layer " + std::to_string(l + 1);
    const json& layer = layers[l];
    const json& act = field(layer, "activation");
    if (!act.is_string() || (act != "relu" && act != "step")) bad(where + ": activation must be \"relu\" or \"step\"");
    const json& w = field(layer, "weights");
    if (!w.is_array() || w.size() != width)
      bad(where + ": weights must have " + std::to_string(width) + " rows (one per input)");
    if (w.empty() || !w[0].is_array() || w[0].empty()) bad(where + ": weight rows must be non-empty arrays");
    const std::size_t outputs = w[0].size();
    mlp_layer built(width, outputs, act == "relu" ? activation::relu : activation::step);
    for (std::size_t i = 0; i < width; ++i) {
      auto row = rational_array(w[i], outputs, where + " weight row " + std::to_string(i + 1));
      for (std::size_t j = 0; j < outputs; ++j) built.weight(i, j) = std::move(row[j]);
    }
    built.bias = rational_array(field(layer, "bias"), outputs, where + " bias");
    out.push_back(std::move(built));
    width = outputs;
  }
  return mlp(n, std::move(out));
}

// circuit ------------------------------------------------------------------

circuit_ref circuit_ref_from(const json& v, const std::map<std::int64_t, std::size_t>& ids) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.size() < 2 || s[0] != 'x') bad("circuit reference \"" + s + "\" must look like \"x3\"");
    std::size_t feature = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') bad("circuit reference \"" + s + "\" must look like \"x3\"");
      feature = feature * 10 + static_cast<std::size_t>(s[i] - '0');
      if (feature > 1'000'000) bad("circuit input index too large");
    }
    return circuit_ref::input(feature);
  }
  if (!v.is_number_integer()) bad("circuit reference must be \"xI\" or a gate id");
  auto it = ids.find(v.get<std::int64_t>());
  if (it == ids.end()) bad("circuit reference " + v.dump() + " does not name an earlier gate");
  return circuit_ref::gate(it->second);
}

}  // namespace

boolean_circuit circuit_from_json(const json& doc) try {
  if (type_of(doc) != "circuit") bad("expected a circuit document");
  const std::size_t n = positive_size(doc, "n");
  const json& gates = field(doc, "gates");
  if (!gates.is_array()) bad("\"gates\" must be an array");
  std::map<std::int64_t, std::size_t> ids;
  std::vector<circuit_gate> out;
  for (const auto& g : gates) {
    circuit_gate gate;
    const json& kind = field(g, "kind");
    if (kind == "and") gate.kind = gate_kind::and_gate;
    else if (kind == "or") gate.kind = gate_kind::or_gate;
    else if (kind == "not") gate.kind = gate_kind::not_gate;
    else bad("gate kind must be \"and\", \"or\" or \"not\"");
    const json& in = field(g, "in");
    if (!in.is_array() || in.empty()) bad("gate \"in\" must be a non-empty array");
    for (const auto& r : in) gate.inputs.push_back(circuit_ref_from(r, ids));
    const json& id = field(g, "id");
    if (!id.is_number_integer()) bad("gate id must be an integer");
    if (!ids.emplace(id.get<std::int64_t>(), out.size()).second) bad("duplicate gate id " + id.dump());
    out.push_back(std::move(gate));
  }
  return boolean_circuit(n, std::move(out), circuit_ref_from(field(doc, "out"), ids));
} catch (const json::exception& e) {
  bad(e.what());
}

json to_json(const boolean_circuit& c) {
  auto ref = [](const circuit_ref& r) -> json {
    if (r.is_input) return "x" + std::to_string(r.index);
    return r.index;
  };
  json gates = json::array();
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const auto& g = c.gates()[i];
    json in = json::array();
    for (const auto& r : g.inputs) in.push_back(ref(r));
    const char* kind = g.kind == gate_kind::and_gate ? "and" : g.kind == gate_kind::or_gate ? "or" : "not";
    gates.push_back({{"id", i}, {"kind", kind}, {"in", std::move(in)}});
  }
  return {{"type", "circuit"}, {"n", c.arity()}, {"gates", std::move(gates)}, {"out", ref(c.output())}};
}

classifier classifier_from_json(const json& doc) try {
  const std::string type = type_of(doc);
  if (type == "fbdd") return fbdd_from_json(doc);
  if (type == "perceptron") return perceptron_from_json(doc);
  if (type == "mlp") return mlp_from_json(doc);
  if (type == "circuit") return circuit_to_mlp(circuit_from_json(doc));
  if (type == "constant_one") return constant_one{positive_size(doc, "n")};
  bad("unknown model type \"" + type + "\"");
} catch (const json::exception& e) {
  bad(e.what());
}

json to_json(const fbdd& f) {
  json nodes = json::array();
  for (std::size_t i = 0; i < f.nodes().size(); ++i) {
    const auto& node = f.nodes()[i];
    nodes.push_back({{"id", i}, {"var", node.var}, {"low", fbdd_ref_json(node.low)}, {"high", fbdd_ref_json(node.high)}});
  }
  return {{"type", "fbdd"}, {"n", f.arity()}, {"root", fbdd_ref_json(f.root())}, {"nodes", std::move(nodes)}};
}

json to_json(const perceptron& f) {
  json w = json::array();
  for (const auto& v : f.weights()) w.push_back(rational_json(v));
  return {{"type", "perceptron"}, {"n", f.arity()}, {"weights", std::move(w)}, {"bias", rational_json(f.bias())}};
}

json to_json(const mlp& f) {
  json layers = json::array();
  for (const auto& layer : f.layers()) {
    json w = json::array();
    for (std::size_t i = 0; i < layer.inputs; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < layer.outputs; ++j) row.push_back(rational_json(layer.weight(i, j)));
      w.push_back(std::move(row));
    }
    json b = json::array();
    for (const auto& v : layer.bias) b.push_back(rational_json(v));
    layers.push_back({{"weights", std::move(w)},
                      {"bias", std::move(b)},
                      {"activation", layer.act == activation::relu ? "relu" : "step"}});
  }
  return {{"type", "mlp"}, {"n", f.arity()}, {"layers", std::move(layers)}};
}

json to_json(const classifier& c) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, constant_one>) return {{"type", "constant_one"}, {"n", m.n}};
        else return to_json(m);
      },
      c);
}

ssp_instance ssp_from_json(const json& doc) try {
  const json& values = field(doc, "values");
  if (!values.is_array()) bad("\"values\" must be an array");
  std::vector<integer> v;
  for (const auto& e : values) v.push_back(integer_from(e));
  const json& k = field(doc, "k");
  if (!k.is_number_integer() || k.get<std::int64_t>() < 0) bad("\"k\" must be a non-negative integer");
  try {
    return ssp_instance(std::move(v), k.get<std::size_t>(), integer_from(field(doc, "T")));
  } catch (const error& e) {
    bad(e.what());
  }
} catch (const json::exception& e) {
  bad(e.what());
}

json to_json(const ssp_instance& inst) {
  auto num = [](const integer& v) -> json {
    if (auto small = to_int64(v)) return *small;
    return v.str();
  };
  json values = json::array();
  for (const auto& v : inst.values) values.push_back(num(v));
  return {{"values", std::move(values)}, {"k", inst.k}, {"T", num(inst.target)}};
}

json to_json(const query_result& r) {
  json answer;
  switch (r.kind) {
    case result_kind::decision: answer = r.decision; break;
    case result_kind::count:
      if (r.count <= std::numeric_limits<std::uint64_t>::max()) answer = static_cast<std::uint64_t>(r.count);
      else answer = r.count.str();
      break;
    case result_kind::minimum:
      if (r.minimum) answer = *r.minimum;
      break;
  }
  return {{"query", query_name(r.query)},
          {"answer", std::move(answer)},
          {"witness", r.witness ? json(r.witness->to_string()) : json(nullptr)},
          {"method", method_name(r.method)},
          {"in_context_input", r.in_context_input},
          {"stats", {{"completions", r.stats.completions}, {"subsets", r.stats.subsets}, {"time", r.stats.seconds}}}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

std::string dump(const json& doc, bool pretty) { return pretty ? doc.dump(2) : doc.dump(); }

void write_json_file(const std::filesystem::path& path, const json& doc, bool pretty) {
  std::ofstream out(path);
  if (!out) fail(error_kind::invalid_argument, "cannot write " + path.string());
  out << dump(doc, pretty) << '\n';
}

}  // namespace axai
