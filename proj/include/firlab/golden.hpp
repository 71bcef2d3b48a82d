#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace firlab {

/// Exact element a + b*tau of Z[tau], tau = (1 + sqrt 5) / 2, tau^2 = tau + 1.
struct GoldenInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr GoldenInt() = default;
  constexpr GoldenInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

  static constexpr GoldenInt tau() { return {0, 1}; }

  constexpr GoldenInt operator+(GoldenInt o) const { return {a + o.a, b + o.b}; }
  constexpr GoldenInt operator-(GoldenInt o) const { return {a - o.a, b - o.b}; }
  constexpr GoldenInt operator-() const { return {-a, -b}; }
  constexpr GoldenInt operator*(GoldenInt o) const {
    return {a * o.a + b * o.b, a * o.b + b * o.a + b * o.b};
  }
  constexpr GoldenInt& operator+=(GoldenInt o) { return *this = *this + o; }
  constexpr GoldenInt& operator-=(GoldenInt o) { return *this = *this - o; }
  constexpr GoldenInt& operator*=(GoldenInt o) { return *this = *this * o; }

  constexpr bool operator==(const GoldenInt&) const = default;

  /// Sign of a + b*tau, decided from 2(a + b*tau) = (2a + b) + b*sqrt 5.
  constexpr int sign() const {
    const __int128 p = 2 * static_cast<__int128>(a) + b;
    const __int128 q = b;
    if (p >= 0 && q >= 0) return (p == 0 && q == 0) ? 0 : 1;
    if (p <= 0 && q <= 0) return -1;
    const __int128 lhs = p * p;
    const __int128 rhs = 5 * q * q;
    if (p > 0) return lhs > rhs ? 1 : -1;  // q < 0
    return rhs > lhs ? 1 : -1;             // p < 0 < q
  }

  constexpr std::strong_ordering operator<=>(const GoldenInt& o) const {
    const int s = (*this - o).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const {
    return std::to_string(a) + (b < 0 ? "-" : "+") + std::to_string(b < 0 ? -b : b) + "t";
  }
};

inline std::ostream& operator<<(std::ostream& os, const GoldenInt& g) {
  return os << g.to_string();
}

}  // namespace firlab
