#pragma once
// Fibonacci numeration used for sector-tree coordinates.
//
// The sequence is indexed from 1 with f(1) = 1, f(2) = 2, so that level n of a
// sector tree holds f(2n + 1) nodes. Node numbers are written over this basis
// in their maximal (greedy) form, most significant digit first.

#include <cstdint>
#include <string>
#include <string_view>

namespace heptaca::fib {

// Largest index whose value fits in 64 bits.
inline constexpr unsigned kMaxIndex = 91;

/// f(n) for n >= 1. Throws std::domain_error for n == 0 and
/// std::overflow_error past kMaxIndex.
std::uint64_t fib(unsigned n);

/// Number of nodes on `level` of one sector tree: f(2 * level + 1).
std::uint64_t level_population(unsigned level);

/// Nodes on levels 0..level inclusive.
std::uint64_t cumulative_population(unsigned level);

class FibDigits {
 public:
  FibDigits() = default;
  /// Accepts any 0/1 string; throws std::invalid_argument otherwise.
  explicit FibDigits(std::string digits);

  const std::string& digits() const { return digits_; }
  std::uint64_t value() const;

  // Leading digit is 1 (or empty) and no two 1-digits are adjacent.
  bool is_maximal() const;

  friend bool operator==(const FibDigits&, const FibDigits&) = default;

 private:
  std::string digits_;
};

FibDigits to_maximal_fib(std::uint64_t n);

/// Sum of digit_k * f(k), digits most significant first.
std::uint64_t from_fib(std::string_view digits);
inline std::uint64_t from_fib(const FibDigits& d) { return from_fib(d.digits()); }

/// Tree level of node number nu (1 is the sector root). nu == 0 is reserved for
/// the central cell and rejected with std::domain_error.
unsigned level_of(std::uint64_t nu);

}  // namespace heptaca::fib
