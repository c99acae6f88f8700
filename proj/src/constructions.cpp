#include "axai/constructions.hpp"

#include "axai/error.hpp"

#include <numeric>

namespace axai {

std::string_view reduction_name(reduction_kind r) {
  switch (r) {
    case reduction_kind::misaligned_embedding: return "misaligned_embedding";
    case reduction_kind::indicator_reduction: return "indicator_reduction";
    case reduction_kind::subset_sum: return "subset_sum";
  }
  return "?";
}

classifier constant_one_of(model_class k, std::size_t n) {
  switch (k) {
    case model_class::fbdd: return fbdd_constant_one(n);
    case model_class::perceptron: return perceptron_constant_one(n);
    case model_class::mlp: return mlp_constant_one(n);
    case model_class::constant_one: return constant_one{n};
  }
  fail(error_kind::no_constructor, "unknown model class");
}

classifier indicator_of(model_class k, const bit_vector& x) {
  switch (k) {
    case model_class::fbdd: return fbdd_indicator(x);
    case model_class::perceptron: return perceptron_indicator(x, rational(1), rational(-1));
    case model_class::mlp: return mlp_indicator(x);
    case model_class::constant_one: break;
  }
  fail(error_kind::no_constructor, "constant_one has no single-point indicator");
}

classifier negation_of(const classifier& f) {
  if (const auto* d = std::get_if<fbdd>(&f)) return fbdd_negate(*d);
  if (const auto* p = std::get_if<perceptron>(&f)) return perceptron_negate(*p);
  if (const auto* m = std::get_if<mlp>(&f)) return mlp_negate(*m);
  fail(error_kind::no_constructor, "constant_one has no negation in its class");
}

namespace {

std::string describe(const classifier& f, const bit_vector& x) {
  return std::string(class_name(class_of(f))) + " model at x=" + x.to_string();
}

}  // namespace

reduced_instance embed_misaligned(const classifier& f, const bit_vector& x, const query_parameter& param,
                                  model_class indicator_class) {
  require_same_arity(arity(f), x.size(), "embed_misaligned");
  return {f, constant_one_of(indicator_class, x.size()), x, param, reduction_kind::misaligned_embedding,
          describe(f, x)};
}

reduced_instance indicator_reduction(const classifier& f1, const bit_vector& x, const query_parameter& param,
                                     model_class target_model_class) {
  require_same_arity(arity(f1), x.size(), "indicator_reduction");
  classifier model = indicator_of(target_model_class, x);
  // constant_one has no negation of its own; its complement is taken in the target class
  classifier context = std::holds_alternative<constant_one>(f1)
                           ? negation_of(constant_one_of(target_model_class, x.size()))
                           : evaluate(f1, x) ? negation_of(f1) : f1;
  return {std::move(model), std::move(context), x, param, reduction_kind::indicator_reduction, describe(f1, x)};
}

classifier self_align(const classifier& f, const classifier& pi, const bit_vector& x) {
  require_same_arity(arity(f), arity(pi), "self_align");
  require_same_arity(arity(f), x.size(), "self_align");
  if (std::holds_alternative<perceptron>(f) || std::holds_alternative<perceptron>(pi))
    fail(error_kind::no_constructor, "perceptrons are not self-aligned: no single perceptron folds in an indicator");
  if (std::holds_alternative<constant_one>(pi)) return f;
  const bool label = evaluate(f, x);
  if (const auto* df = std::get_if<fbdd>(&f)) {
    const auto* dp = std::get_if<fbdd>(&pi);
    if (!dp) fail(error_kind::no_constructor, "self-alignment needs model and indicator from the same class");
    return fbdd_read_once_repair(label ? fbdd_implies(*dp, *df) : fbdd_and(*df, *dp));
  }
  if (const auto* mf = std::get_if<mlp>(&f)) {
    const auto* mp = std::get_if<mlp>(&pi);
    if (!mp) fail(error_kind::no_constructor, "self-alignment needs model and indicator from the same class");
    return label ? mlp_implies(*mp, *mf) : mlp_and(*mf, *mp);
  }
  fail(error_kind::no_constructor, "self-alignment is not defined for this model class");
}

ssp_instance::ssp_instance(std::vector<integer> v, std::size_t k_, integer t)
    : values(std::move(v)), k(k_), target(std::move(t)) {
  for (const auto& z : values)
    if (z <= 0) fail(error_kind::invalid_argument, "subset-sum values must be strictly positive");
  if (k > values.size()) fail(error_kind::invalid_argument, "subset size k exceeds the number of values");
}

bool ssp_solve(const ssp_instance& inst) {
  const integer total = std::accumulate(inst.values.begin(), inst.values.end(), integer(0));
  if (inst.target < 0 || inst.target > total) return false;
  if (total > 50'000'000) fail(error_kind::invalid_argument, "subset-sum values too large for the DP");
  const auto sum_cap = static_cast<std::size_t>(total);
  const auto goal = static_cast<std::size_t>(inst.target);
  // reach[c][s]: some c of the values seen so far sum to s
  std::vector<std::vector<std::uint8_t>> reach(inst.k + 1, std::vector<std::uint8_t>(sum_cap + 1, 0));
  reach[0][0] = 1;
  for (const auto& value : inst.values) {
    const auto z = static_cast<std::size_t>(value);
    for (std::size_t c = inst.k; c >= 1; --c)
      for (std::size_t s = sum_cap; s >= z; --s)
        if (reach[c - 1][s - z]) reach[c][s] = 1;
  }
  return reach[inst.k][goal] != 0;
}

namespace {

reduced_instance false_encoding(const std::string& source) {
  return {perceptron({rational(0), rational(0)}, rational(-1)), perceptron_constant_one(2), bit_vector::ones(2),
          std::size_t{1}, reduction_kind::subset_sum, source};
}

reduced_instance dummy_yes(const std::string& source) {
  return {perceptron({rational(1), rational(-1)}, rational(0)), perceptron({rational(1), rational(1)}, rational(1)),
          bit_vector::ones(2), std::size_t{2}, reduction_kind::subset_sum, source};
}

}  // namespace

reduced_instance ssp_to_mcr(const ssp_instance& inst, ssp_encoding encoding) {
  const std::size_t m = inst.values.size();
  std::string source = "ssp values=[";
  for (std::size_t i = 0; i < m; ++i) source += (i ? "," : "") + inst.values[i].str();
  source += "] k=" + std::to_string(inst.k) + " T=" + inst.target.str();

  const integer total = std::accumulate(inst.values.begin(), inst.values.end(), integer(0));
  if (inst.k == m) return total == inst.target ? dummy_yes(source) : false_encoding(source);
  if (encoding == ssp_encoding::literal) {
    std::vector<rational> down;
    std::vector<rational> up;
    for (const auto& z : inst.values) {
      down.emplace_back(-z);
      up.emplace_back(z);
    }
    perceptron f(std::move(down), rational(inst.target) + rational(1, 4));
    perceptron pi(std::move(up), rational(-inst.target));
    return {std::move(f), std::move(pi), bit_vector::ones(m), inst.k, reduction_kind::subset_sum, source};
  }
  if (inst.target < 0 || inst.target > total) return false_encoding(source);

  const integer pad = total + 1;
  const rational padded_target = rational(inst.target + pad * inst.k);
  std::vector<rational> down;
  std::vector<rational> up;
  for (const auto& z : inst.values) {
    down.emplace_back(-(z + pad));
    up.emplace_back(z + pad);
  }
  perceptron f(std::move(down), padded_target + rational(1, 4));
  perceptron pi(std::move(up), -padded_target + rational(1, 4));
  return {std::move(f), std::move(pi), bit_vector::ones(m), m - inst.k, reduction_kind::subset_sum, source};
}

}  // namespace axai
