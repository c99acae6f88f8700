#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace axai {

/// Default bound on the number of completions a single brute-force
/// enumeration may visit.
inline constexpr std::uint64_t default_enumeration_cap = std::uint64_t{1} << 24;

/// A point of {0,1}^n. Features are 1-indexed in the public interface; the
/// raw storage behind bits() is 0-indexed.
class bit_vector {
public:
  bit_vector() = default;
  explicit bit_vector(std::size_t n) : bits_(n, 0) {}
  explicit bit_vector(std::vector<std::uint8_t> bits);

  /// "0110" with feature 1 leftmost.
  static bit_vector parse(std::string_view text);
  static bit_vector ones(std::size_t n) { return bit_vector(std::vector<std::uint8_t>(n, 1)); }
  /// Low n bits of mask, bit i-1 holding feature i.
  static bit_vector from_mask(std::size_t n, std::uint64_t mask);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t feature) const { return bits_[feature - 1] != 0; }
  void set(std::size_t feature, bool value) { bits_[feature - 1] = value ? 1 : 0; }
  void flip(std::size_t feature) { bits_[feature - 1] ^= 1; }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint64_t to_mask() const;
  std::string to_string() const;

  auto operator<=>(const bit_vector&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// A subset of {1,...,n}; members are kept sorted and unique.
class feature_subset {
public:
  feature_subset() = default;
  explicit feature_subset(std::size_t n) : n_(n), flags_(n, 0) {}
  feature_subset(std::size_t n, std::vector<std::size_t> members);

  static feature_subset all(std::size_t n);
  static feature_subset from_mask(std::size_t n, std::uint64_t mask);
  /// "{1,3}" or "{}"; whitespace tolerated.
  static feature_subset parse(std::size_t n, std::string_view text);

  std::size_t arity() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t feature) const { return flags_[feature - 1] != 0; }
  const std::vector<std::size_t>& members() const { return members_; }

  feature_subset complement() const;
  std::uint64_t to_mask() const;
  std::string to_string() const;

  bool operator==(const feature_subset& other) const {
    return n_ == other.n_ && members_ == other.members_;
  }
  /// Lexicographic on the sorted index sequence.
  bool operator<(const feature_subset& other) const { return members_ < other.members_; }

private:
  std::size_t n_ = 0;
  std::vector<std::size_t> members_;
  std::vector<std::uint8_t> flags_;
};

/// Size and canonical witness of a cardinality-minimal subset.
struct min_change {
  std::size_t size = 0;
  feature_subset witness;
};

/// Cardinality first, then lexicographic: the canonical search order.
bool canonical_less(const feature_subset& a, const feature_subset& b);

/// Among equal-cardinality masks, true when a precedes b lexicographically
/// (bit i-1 holds feature i).
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

/// (x_S ; z_S-bar): x on s, z elsewhere.
bit_vector splice(const bit_vector& x, const bit_vector& z, const feature_subset& s);

/// All vectors agreeing with x on `fixed`, in lexicographic order of the
/// remaining bits. Construction throws error(enumeration_limit) when
/// 2^(n-|fixed|) exceeds cap.
class completion_range {
public:
  completion_range(const bit_vector& x, const feature_subset& fixed,
                   std::uint64_t cap = default_enumeration_cap);

  std::uint64_t count() const { return count_; }

  class iterator {
  public:
    using value_type = bit_vector;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    const bit_vector& operator*() const { return current_; }
    const bit_vector* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

  private:
    friend class completion_range;
    iterator(const completion_range* range, std::uint64_t index);

    const completion_range* range_ = nullptr;
    std::uint64_t index_ = 0;
    bit_vector current_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }

private:
  bit_vector base_;
  std::vector<std::size_t> varied_;  // ascending feature indices
  std::uint64_t count_ = 0;
};

inline completion_range enumerate_completions(const bit_vector& x, const feature_subset& fixed,
                                              std::uint64_t cap = default_enumeration_cap) {
  return completion_range(x, fixed, cap);
}

/// Throws error(dimension) unless a == b.
void require_same_arity(std::size_t a, std::size_t b, std::string_view what);

}  // namespace axai
