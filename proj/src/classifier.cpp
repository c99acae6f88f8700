#include "axai/classifier.hpp"

#include "axai/error.hpp"

#include <algorithm>

namespace axai {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

model_class class_of(const classifier& c) { return static_cast<model_class>(c.index()); }

std::string_view class_name(model_class k) {
  switch (k) {
    case model_class::fbdd: return "fbdd";
    case model_class::perceptron: return "perceptron";
    case model_class::mlp: return "mlp";
    case model_class::constant_one: return "constant_one";
  }
  return "?";
}

std::size_t arity(const classifier& c) {
  return std::visit(overloaded{[](const constant_one& k) { return k.n; }, [](const auto& m) { return m.arity(); }}, c);
}

bool evaluate(const classifier& c, std::span<const std::uint8_t> bits) {
  return std::visit(overloaded{[](const constant_one&) { return true; }, [&](const auto& m) { return m.evaluate(bits); }},
                    c);
}

bool evaluate(const classifier& c, const bit_vector& x) {
  require_same_arity(arity(c), x.size(), "evaluate");
  return evaluate(c, x.bits());
}

bool is_constant_one(const classifier& c) {
  return std::visit(overloaded{[](const constant_one&) { return true; },
                               [](const fbdd& f) { return f.root() == leaf1; },
                               [](const perceptron& p) {
                                 return p.bias() > 0 && std::all_of(p.weights().begin(), p.weights().end(),
                                                                    [](const rational& w) { return w == 0; });
                               },
                               [](const mlp&) { return false; }},
                    c);
}

}  // namespace axai
