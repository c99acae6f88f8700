#include "axai/core.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <cctype>

namespace axai {

void require_same_arity(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b)
    fail(error_kind::dimension, std::string(what) + ": arity mismatch (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
}

bit_vector::bit_vector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_)
    if (b > 1) fail(error_kind::invalid_argument, "bit_vector entries must be 0 or 1");
}

bit_vector bit_vector::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      fail(error_kind::invalid_argument, "input must be a string of 0/1 characters, got '" + std::string(text) + "'");
    bits.push_back(c == '1');
  }
  if (bits.empty()) fail(error_kind::invalid_argument, "empty input vector");
  return bit_vector(std::move(bits));
}

bit_vector bit_vector::from_mask(std::size_t n, std::uint64_t mask) {
  bit_vector out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = (mask >> i) & 1;
  return out;
}

std::uint64_t bit_vector::to_mask() const {
  if (bits_.size() > 64) fail(error_kind::invalid_argument, "bit_vector wider than 64 features");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

std::string bit_vector::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out[i] = '1';
  return out;
}

feature_subset::feature_subset(std::size_t n, std::vector<std::size_t> members)
    : n_(n), members_(std::move(members)), flags_(n, 0) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    fail(error_kind::invalid_argument, "duplicate feature index in subset");
  for (auto i : members_) {
    if (i < 1 || i > n) fail(error_kind::invalid_argument, "feature index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    flags_[i - 1] = 1;
  }
}

feature_subset feature_subset::all(std::size_t n) {
  std::vector<std::size_t> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = i + 1;
  return feature_subset(n, std::move(members));
}

feature_subset feature_subset::from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1) members.push_back(i + 1);
  return feature_subset(n, std::move(members));
}

feature_subset feature_subset::parse(std::size_t n, std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.size() < 2 || compact.front() != '{' || compact.back() != '}')
    fail(error_kind::invalid_argument, "subset must look like {1,3}, got '" + std::string(text) + "'");
  std::vector<std::size_t> members;
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(error_kind::invalid_argument, "bad subset element in '" + std::string(text) + "'");
    members.push_back(std::stoul(std::string(item)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) fail(error_kind::invalid_argument, "trailing comma in '" + std::string(text) + "'");
  }
  return feature_subset(n, std::move(members));
}

feature_subset feature_subset::complement() const {
  std::vector<std::size_t> members;
  members.reserve(n_ - members_.size());
  for (std::size_t i = 1; i <= n_; ++i)
    if (!flags_[i - 1]) members.push_back(i);
  return feature_subset(n_, std::move(members));
}

std::uint64_t feature_subset::to_mask() const {
  if (n_ > 64) fail(error_kind::invalid_argument, "subset wider than 64 features");
  std::uint64_t mask = 0;
  for (auto i : members_) mask |= std::uint64_t{1} << (i - 1);
  return mask;
}

std::string feature_subset::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(members_[k]);
  }
  return out + "}";
}

bool canonical_less(const feature_subset& a, const feature_subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bit_vector splice(const bit_vector& x, const bit_vector& z, const feature_subset& s) {
  require_same_arity(x.size(), z.size(), "splice");
  require_same_arity(x.size(), s.arity(), "splice");
  bit_vector out = z;
  for (auto i : s.members()) out.set(i, x[i]);
  return out;
}

completion_range::completion_range(const bit_vector& x, const feature_subset& fixed, std::uint64_t cap)
    : base_(x) {
  require_same_arity(x.size(), fixed.arity(), "enumerate_completions");
  for (std::size_t i = 1; i <= x.size(); ++i)
    if (!fixed.contains(i)) varied_.push_back(i);
  if (varied_.size() >= 64 || (std::uint64_t{1} << varied_.size()) > cap)
    fail(error_kind::enumeration_limit, "enumeration of 2^" + std::to_string(varied_.size()) +
                                            " completions exceeds the cap of " + std::to_string(cap));
  count_ = std::uint64_t{1} << varied_.size();
}

completion_range::iterator::iterator(const completion_range* range, std::uint64_t index)
    : range_(range), index_(index), current_(range->base_) {
  if (index_ < range_->count_) {
    // the last varied feature is the least significant counter bit
    const auto& varied = range_->varied_;
    for (std::size_t k = 0; k < varied.size(); ++k)
      current_.set(varied[k], (index_ >> (varied.size() - 1 - k)) & 1);
  }
}

completion_range::iterator& completion_range::iterator::operator++() {
  ++index_;
  if (index_ >= range_->count_) return *this;
  // binary increment over the varied positions, rightmost first
  const auto& varied = range_->varied_;
  for (std::size_t k = varied.size(); k-- > 0;) {
    const auto f = varied[k];
    if (current_[f]) {
      current_.set(f, false);
    } else {
      current_.set(f, true);
      break;
    }
  }
  return *this;
}

}  // namespace axai
