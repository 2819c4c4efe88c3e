#include "heptaca/fib.hpp"

#include <array>
#include <stdexcept>

namespace heptaca::fib {
namespace {

constexpr std::array<std::uint64_t, kMaxIndex + 1> make_table() {
  std::array<std::uint64_t, kMaxIndex + 1> t{};
  t[0] = 1;  // f(0) = 1 keeps the recurrence valid for f(2) = f(1) + f(0)
  t[1] = 1;
  for (unsigned i = 2; i <= kMaxIndex; ++i) t[i] = t[i - 1] + t[i - 2];
  return t;
}

constexpr auto kTable = make_table();

}  // namespace

std::uint64_t fib(unsigned n) {
  if (n == 0) throw std::domain_error("fib: index starts at 1");
  if (n > kMaxIndex) throw std::overflow_error("fib: f(" + std::to_string(n) + ") exceeds 64 bits");
  return kTable[n];
}

std::uint64_t level_population(unsigned level) { return fib(2 * level + 1); }

std::uint64_t cumulative_population(unsigned level) {
  // sum_{k<=L} f(2k+1) = f(2L+2) - 1
  return fib(2 * level + 2) - 1;
}

FibDigits::FibDigits(std::string digits) : digits_(std::move(digits)) {
  for (char c : digits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("FibDigits: expected 0/1 digits, got '" + digits_ + "'");
  }
}

std::uint64_t FibDigits::value() const { return from_fib(digits_); }

bool FibDigits::is_maximal() const {
  if (!digits_.empty() && digits_.front() != '1') return false;
  for (std::size_t i = 1; i < digits_.size(); ++i) {
    if (digits_[i] == '1' && digits_[i - 1] == '1') return false;
  }
  return true;
}

FibDigits to_maximal_fib(std::uint64_t n) {
  if (n == 0) return FibDigits{};
  unsigned top = 1;
  while (top < kMaxIndex && kTable[top + 1] <= n) ++top;
  std::string out;
  out.reserve(top);
  for (unsigned k = top; k >= 1; --k) {
    if (kTable[k] <= n) {
      out.push_back('1');
      n -= kTable[k];
    } else {
      out.push_back('0');
    }
  }
  return FibDigits{std::move(out)};
}

std::uint64_t from_fib(std::string_view digits) {
  if (digits.size() > kMaxIndex) throw std::overflow_error("from_fib: too many digits");
  std::uint64_t sum = 0;
  const auto len = static_cast<unsigned>(digits.size());
  for (unsigned i = 0; i < len; ++i) {
    const char c = digits[i];
    if (c == '1') {
      sum += kTable[len - i];
    } else if (c != '0') {
      throw std::invalid_argument("from_fib: invalid digit '" + std::string(1, c) + "'");
    }
  }
  return sum;
}

unsigned level_of(std::uint64_t nu) {
  if (nu == 0) throw std::domain_error("level_of: 0 denotes the central cell");
  unsigned level = 0;
  while (cumulative_population(level) < nu) ++level;
  return level;
}

}  // namespace heptaca::fib
