#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <iterator>
#include <memory>
#include <span>
#include <vector>

#include "shortsum/parallel.hpp"

namespace shortsum {

// Largest admissible window end (exclusive). Leaves two bits of headroom so
// products of two in-window quantities can be checked without overflow.
inline constexpr std::uint64_t kWindowCapacity = std::uint64_t{1} << 62;

// Ranges longer than this are sieved in consecutive segments of this length.
inline constexpr std::uint64_t kSegmentLength = std::uint64_t{1} << 16;

// Half-open window [start, start + len).
struct Window {
  std::uint64_t start = 1;
  std::uint64_t len = 1;

  std::uint64_t end() const noexcept { return start + len; }
  std::uint64_t last() const noexcept { return start + len - 1; }

  // Throws CapacityError unless start >= 1, len >= 1 and end <= 2^62.
  void validate() const;

  // Inclusive range [first, last] as a window.
  static Window closed(std::uint64_t first, std::uint64_t last);
};

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Non-owning view of one integer's factorization, primes ascending.
class Factorization {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = PrimePower;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = PrimePower;

    iterator() = default;
    iterator(const std::uint64_t* p, const std::uint8_t* e) : p_(p), e_(e) {}

    PrimePower operator*() const { return {*p_, *e_}; }
    iterator& operator++() {
      ++p_;
      ++e_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.p_ == b.p_; }

   private:
    const std::uint64_t* p_ = nullptr;
    const std::uint8_t* e_ = nullptr;
  };

  Factorization() = default;
  Factorization(std::span<const std::uint64_t> primes, std::span<const std::uint8_t> exponents)
      : primes_(primes), exponents_(exponents) {}

  std::size_t size() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }
  PrimePower operator[](std::size_t i) const { return {primes_[i], exponents_[i]}; }

  iterator begin() const { return {primes_.data(), exponents_.data()}; }
  iterator end() const {
    return {primes_.data() + primes_.size(), exponents_.data() + exponents_.size()};
  }

  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::span<const std::uint8_t> exponents() const noexcept { return exponents_; }

  // Largest prime factor, 1 for the empty factorization.
  std::uint64_t largest_prime() const noexcept { return primes_.empty() ? 1 : primes_.back(); }

  // Ω(n): prime factors counted with multiplicity.
  std::uint32_t big_omega() const noexcept;

  // ∏ p^e. Only meaningful for factorizations that came from a table.
  std::uint64_t value() const noexcept;

 private:
  std::span<const std::uint64_t> primes_;
  std::span<const std::uint8_t> exponents_;
};

// Owning storage for a factorization assembled outside a sieve, e.g. a
// single integer factored by trial division in tests.
struct OwnedFactorization {
  std::vector<std::uint64_t> primes;
  std::vector<std::uint8_t> exponents;

  Factorization view() const { return {primes, exponents}; }
};

// Complete factorizations of every integer in a window. Factors live in one
// flat arena; each offset owns a contiguous slice. Immutable once built.
class FactorTable {
 public:
  FactorTable() = default;

  const Window& window() const noexcept { return window_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(window_.len); }

  Factorization operator[](std::size_t offset) const {
    const std::size_t b = offsets_[offset];
    const std::size_t e = offsets_[offset + 1];
    return {std::span<const std::uint64_t>(primes_).subspan(b, e - b),
            std::span<const std::uint8_t>(exponents_).subspan(b, e - b)};
  }

  // Entry for the integer n; requires n inside the window.
  Factorization of(std::uint64_t n) const { return (*this)[n - window_.start]; }

  std::size_t total_factors() const noexcept { return primes_.size(); }

 private:
  friend FactorTable sieve_factorize(const Window& w);
  friend FactorTable read_binary(std::istream& in);

  Window window_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint8_t> exponents_;
};

// Primes in [2, n], ascending. Requires 2 <= n <= 2^31 (CapacityError).
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

// Shared, cached base-prime list covering at least [2, limit]. The list may
// extend beyond limit; callers bound their iteration.
std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit);

FactorTable sieve_factorize(const Window& w);

// ω(n; P, Q) = #{P <= p <= Q : p | n}, multiplicity ignored.
std::uint32_t omega_in_range(const Factorization& entry, std::uint64_t lo, std::uint64_t hi);

// Sieves [first, last] in fixed segments of kSegmentLength and calls
// visit(segment_index, table) once per segment, possibly concurrently.
// Segment boundaries depend only on (first, last), never on thread count.
void for_each_segment(std::uint64_t first, std::uint64_t last, const ExecPolicy& policy,
                      const std::function<void(std::size_t, const FactorTable&)>& visit);

std::size_t segment_count(std::uint64_t first, std::uint64_t last) noexcept;

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(std::uint64_t n) noexcept;

// floor(sqrt(n)) for 64- and 128-bit arguments.
std::uint64_t isqrt(std::uint64_t n) noexcept;
std::uint64_t isqrt(unsigned __int128 n) noexcept;

// Binary cache format:
//   "SIVW" | version u16 | start u64 | len u64        (little endian)
//   then per offset: varint count, count x (varint prime, varint exponent)
inline constexpr std::uint16_t kBinaryVersion = 1;
void write_binary(std::ostream& out, const FactorTable& table);
FactorTable read_binary(std::istream& in);

}  // namespace shortsum
