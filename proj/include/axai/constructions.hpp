#pragma once

#include "axai/classifier.hpp"
#include "axai/core.hpp"
#include "axai/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace axai {

/// Cardinality bound k or explicit subset S, passed through reductions.
using query_parameter = std::variant<std::size_t, feature_subset>;

enum class reduction_kind { misaligned_embedding, indicator_reduction, subset_sum };

std::string_view reduction_name(reduction_kind r);

struct reduced_instance {
  classifier model;
  classifier indicator;
  bit_vector input;
  query_parameter parameter;
  reduction_kind provenance;
  std::string source;  // short description of the source instance
};

/// The constant-one member of a model class.
classifier constant_one_of(model_class k, std::size_t n);
/// Single-point indicator 1_{x} in a model class.
classifier indicator_of(model_class k, const bit_vector& x);
/// Negation within the classifier's own class.
classifier negation_of(const classifier& f);

/// <f, x, param> -> <f, 1, x, param> with 1 taken from indicator_class.
reduced_instance embed_misaligned(const classifier& f, const bit_vector& x, const query_parameter& param,
                                  model_class indicator_class);

/// <f1, x, param> -> <1_{x}, not-f1, x, param> if f1(x) = 1, else <1_{x}, f1, x, param>.
/// The aligned answer on the output equals the misaligned answer on the input
/// for every query: both have the same set of in-context flips.
reduced_instance indicator_reduction(const classifier& f1, const bit_vector& x, const query_parameter& param,
                                     model_class target_model_class);
inline reduced_instance indicator_reduction(const classifier& f1, const bit_vector& x, const query_parameter& param) {
  const model_class k = class_of(f1);
  return indicator_reduction(f1, x, param, k == model_class::constant_one ? model_class::fbdd : k);
}

/// Folds the indicator into the model: g = f or not-pi when f(x) = 1, and
/// g = f and pi otherwise. FBDD results pass through the read-once repair.
/// Perceptrons are rejected with error(no_constructor).
classifier self_align(const classifier& f, const classifier& pi, const bit_vector& x);

struct ssp_instance {
  std::vector<integer> values;  // strictly positive
  std::size_t k = 0;
  integer target = 0;

  ssp_instance() = default;
  ssp_instance(std::vector<integer> values, std::size_t k, integer target);
};

/// Some k-element subset sums exactly to target. DP over (count, sum).
bool ssp_solve(const ssp_instance& inst);

/// padded: sound encoding below (default).
/// literal: f = <-z, T + 1/4>, pi = <z, -T>, x = 1_m, budget k. Kept for
/// auditing; its in-context flip set is always empty, so it answers no.
enum class ssp_encoding { padded, literal };

/// Aligned perceptron/perceptron MCR instance whose answer equals
/// ssp_solve(inst). Values are padded by M = sum + 1 so that hitting the
/// padded target T' = T + kM forces exactly k chosen values:
///   f  = <-(z + M), T' + 1/4>   (1 iff padded sum <= T')
///   pi = < (z + M), -T' + 1/4>  (1 iff padded sum >= T')
///   x  = 1_m, budget m - k.
/// k = m yields a fixed two-feature YES instance when sum == T; impossible
/// targets yield a fixed NO instance.
reduced_instance ssp_to_mcr(const ssp_instance& inst, ssp_encoding encoding = ssp_encoding::padded);

}  // namespace axai
