#pragma once

#include <stdexcept>
#include <string>

namespace axai {

/// Failure categories. The CLI maps these onto its exit codes.
enum class error_kind {
  dimension,          // arity / shape mismatch
  schema,             // malformed input file or structurally invalid model
  enumeration_limit,  // brute-force enumeration would exceed the cap
  no_fast_path,       // fast mode requested for an instance without one
  no_constructor,     // model class lacks a required construction
  invalid_argument,
};

class error : public std::runtime_error {
public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

private:
  error_kind kind_;
};

[[noreturn]] inline void fail(error_kind kind, const std::string& what) {
  throw error(kind, what);
}

}  // namespace axai
