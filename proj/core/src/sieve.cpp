#include "shortsum/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>

#include "shortsum/error.hpp"

namespace shortsum {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kResolution: return "resolution";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

void Window::validate() const {
  if (start < 1) throw CapacityError("window start must be >= 1");
  if (len < 1) throw CapacityError("window length must be >= 1");
  if (start > kWindowCapacity || len > kWindowCapacity - start) {
    throw CapacityError("window end exceeds 2^62");
  }
}

Window Window::closed(std::uint64_t first, std::uint64_t last) {
  if (last < first) throw CapacityError("empty closed window");
  return Window{first, last - first + 1};
}

std::uint32_t Factorization::big_omega() const noexcept {
  std::uint32_t total = 0;
  for (auto e : exponents_) total += e;
  return total;
}

std::uint64_t Factorization::value() const noexcept {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    for (std::uint8_t k = 0; k < exponents_[i]; ++k) n *= primes_[i];
  }
  return n;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
  while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t isqrt(unsigned __int128 n) noexcept {
  using u128 = unsigned __int128;
  if (n <= UINT64_MAX) return isqrt(static_cast<std::uint64_t>(n));
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  if (n < 2 || n > (std::uint64_t{1} << 31)) {
    throw CapacityError("primes_up_to: n=" + std::to_string(n) + " outside [2, 2^31]");
  }
  // Odd-only sieve: bit i stands for 2i+1.
  const std::uint64_t half = (n + 1) / 2;
  std::vector<bool> composite(half, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) / 2; j < half; j += p) composite[j] = true;
  }
  std::vector<std::uint32_t> primes;
  if (n >= 3) {
    const double est = static_cast<double>(n) / std::log(static_cast<double>(n));
    primes.reserve(static_cast<std::size_t>(est * 1.2) + 8);
  }
  primes.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return primes;
}

std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  static std::uint64_t cached_limit = 0;

  limit = std::max<std::uint64_t>(limit, 2);
  std::lock_guard<std::mutex> lock(mutex);
  if (!cached || cached_limit < limit) {
    // Grow geometrically so a sweep over increasing windows sieves O(log) times.
    const std::uint64_t target =
        std::min<std::uint64_t>(std::max(limit, cached_limit * 2), std::uint64_t{1} << 31);
    cached = std::make_shared<const std::vector<std::uint32_t>>(primes_up_to(target));
    cached_limit = target;
  }
  return cached;
}

FactorTable sieve_factorize(const Window& w) {
  w.validate();
  const std::uint64_t start = w.start;
  const std::size_t len = static_cast<std::size_t>(w.len);
  const std::uint64_t last = w.last();
  const std::uint64_t root = isqrt(last);

  const auto primes = base_primes(std::max<std::uint64_t>(root, 2));
  const auto prime_end = std::upper_bound(primes->begin(), primes->end(), root);

  // Pass 1: number of small prime divisors and the small-prime part of each n.
  std::vector<std::uint8_t> count(len, 0);
  std::vector<std::uint64_t> smooth_part(len, 1);
  for (auto it = primes->begin(); it != prime_end; ++it) {
    const std::uint64_t p = *it;
    const std::uint64_t first = (start + p - 1) / p * p;
    for (std::uint64_t m = first; m <= last; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - start);
      ++count[i];
      smooth_part[i] *= p;
    }
    for (std::uint64_t q = p * p;; q *= p) {
      const std::uint64_t qfirst = (start + q - 1) / q * q;
      for (std::uint64_t m = qfirst; m <= last; m += q) {
        smooth_part[static_cast<std::size_t>(m - start)] *= p;
      }
      if (q > last / p) break;
    }
  }

  // The cofactor left after removing primes <= sqrt(last) is 1 or a prime.
  FactorTable table;
  table.window_ = w;
  table.offsets_.resize(len + 1);
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i) {
    table.offsets_[i] = total;
    const std::uint64_t n = start + i;
    smooth_part[i] = n / smooth_part[i];  // now the cofactor
    total += count[i] + (smooth_part[i] > 1 ? 1 : 0);
  }
  table.offsets_[len] = total;
  table.primes_.resize(total);
  table.exponents_.resize(total);

  // Pass 2: write factors in ascending prime order via per-offset cursors.
  std::vector<std::size_t> fill(table.offsets_.begin(), table.offsets_.end() - 1);
  for (auto it = primes->begin(); it != prime_end; ++it) {
    const std::uint64_t p = *it;
    const std::uint64_t first = (start + p - 1) / p * p;
    for (std::uint64_t m = first; m <= last; m += p) {
      const std::size_t i = static_cast<std::size_t>(m - start);
      const std::size_t slot = fill[i]++;
      table.primes_[slot] = p;
      table.exponents_[slot] = 1;
    }
    for (std::uint64_t q = p * p;; q *= p) {
      const std::uint64_t qfirst = (start + q - 1) / q * q;
      for (std::uint64_t m = qfirst; m <= last; m += q) {
        ++table.exponents_[fill[static_cast<std::size_t>(m - start)] - 1];
      }
      if (q > last / p) break;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (smooth_part[i] > 1) {
      const std::size_t slot = fill[i]++;
      table.primes_[slot] = smooth_part[i];
      table.exponents_[slot] = 1;
    }
  }
  return table;
}

std::uint32_t omega_in_range(const Factorization& entry, std::uint64_t lo, std::uint64_t hi) {
  std::uint32_t k = 0;
  for (auto p : entry.primes()) {
    if (p > hi) break;
    if (p >= lo) ++k;
  }
  return k;
}

std::size_t segment_count(std::uint64_t first, std::uint64_t last) noexcept {
  if (last < first) return 0;
  return static_cast<std::size_t>((last - first) / kSegmentLength + 1);
}

void for_each_segment(std::uint64_t first, std::uint64_t last, const ExecPolicy& policy,
                      const std::function<void(std::size_t, const FactorTable&)>& visit) {
  const std::size_t segments = segment_count(first, last);
  Window::closed(first, last).validate();
  parallel_for(segments, policy, [&](std::size_t s) {
    const std::uint64_t lo = first + s * kSegmentLength;
    const std::uint64_t hi = std::min(last, lo + kSegmentLength - 1);
    visit(s, sieve_factorize(Window::closed(lo, hi)));
  });
}

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), 8);
}

void put_varint(std::ostream& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.put(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.put(static_cast<char>(v));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("SIVW: truncated header");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

std::uint64_t get_varint(std::istream& in) {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("SIVW: truncated body");
    v |= static_cast<std::uint64_t>(c & 0x7F) << shift;
    if ((c & 0x80) == 0) return v;
  }
  throw FormatError("SIVW: varint too long");
}

}  // namespace

void write_binary(std::ostream& out, const FactorTable& table) {
  out.write("SIVW", 4);
  put_u16(out, kBinaryVersion);
  put_u64(out, table.window().start);
  put_u64(out, table.window().len);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Factorization f = table[i];
    put_varint(out, f.size());
    for (const PrimePower pp : f) {
      put_varint(out, pp.prime);
      put_varint(out, pp.exponent);
    }
  }
}

FactorTable read_binary(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "SIVW") throw FormatError("SIVW: bad magic");
  const auto version = static_cast<std::uint16_t>(get_le(in, 2));
  if (version != kBinaryVersion) {
    throw FormatError("SIVW: unsupported version " + std::to_string(version));
  }
  FactorTable table;
  table.window_.start = get_le(in, 8);
  table.window_.len = get_le(in, 8);
  table.window_.validate();
  const std::size_t len = static_cast<std::size_t>(table.window_.len);
  table.offsets_.reserve(len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    table.offsets_.push_back(table.primes_.size());
    const std::uint64_t k = get_varint(in);
    if (k > 64) throw FormatError("SIVW: implausible factor count");
    for (std::uint64_t j = 0; j < k; ++j) {
      table.primes_.push_back(get_varint(in));
      const std::uint64_t e = get_varint(in);
      if (e == 0 || e > 63) throw FormatError("SIVW: bad exponent");
      table.exponents_.push_back(static_cast<std::uint8_t>(e));
    }
  }
  table.offsets_.push_back(table.primes_.size());
  return table;
}

}  // namespace shortsum
