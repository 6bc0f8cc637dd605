#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sflab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Raised when a request exceeds a desk-scale resource budget (range length,
// table memory, precision bits).  The CLI maps this to exit code 1;
// std::invalid_argument (contract violations) maps to exit code 2.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Central budgets.
constexpr u64 max_table_len = u64(1) << 24;  // one in-memory SieveTable
constexpr u64 max_range_len = 100000000;     // streaming window operations
constexpr u64 max_series_cutoff = 100000000; // Euler product cutoff prime
constexpr u64 f_memo_limit = u64(1) << 22;   // f(t) residue table cap (w^2)
constexpr int max_prec_bits = 256;
constexpr int min_prec_bits = 96;
constexpr int default_prec_bits = 128;

u64 isqrt_u64(u64 n);

// base^e, sets overflow instead of wrapping
u64 checked_pow(u64 base, int e, bool& overflow);

// deterministic Miller-Rabin, valid for all 64-bit n
bool is_prime_u64(u64 n);

} // namespace sflab
