#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace loopeq {

// Integer partition: parts non-increasing and all >= 1. The empty partition
// indexes the constant symmetric polynomial 1.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  // Sorts into non-increasing order. Throws std::invalid_argument on a part < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  // Union of parts (the power-sum product p_a * p_b = p_{a u b}).
  Partition joined(const Partition& other) const;
  Partition with_part(int part) const;
  // Removes the part at position i.
  Partition without(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// Graded reverse-lexicographic order: by weight, then lexicographically larger
// parts first, so weight 2 lists (2) before (1,1).
struct GradedRevLex {
  bool operator()(const Partition& a, const Partition& b) const;
};

// All partitions with at most `max_length` parts, each part <= `max_part`, in
// graded reverse-lex order. Count is binom(max_length + max_part, max_length).
std::vector<Partition> partitions_in_box(int max_length, int max_part);

// All partitions of exactly `weight` with at most `max_length` parts (graded order).
std::vector<Partition> partitions_of(int weight, int max_length);

// All partitions with weight <= max_weight and at most `max_length` parts.
std::vector<Partition> partitions_up_to(int max_weight, int max_length);

// Weak compositions (n_1..n_d), n_i >= 0, summing to `total`, in lexicographically
// decreasing order: (2,0), (1,1), (0,2).
using Composition = std::vector<int>;
std::vector<Composition> compositions(int total, int parts);

std::uint64_t binomial(int n, int k);
std::uint64_t multinomial(std::span<const int> counts);

}  // namespace loopeq
