#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>

namespace valent {

/// An exact rational number or +infinity. Codomain of the valuation and of
/// every length and entropy value.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  ExtRational(long num, long den);
  ExtRational(mpq_class value);  // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws InvalidArgument when infinite.
  const mpq_class& value() const;

  ExtRational& operator+=(const ExtRational& other);
  ExtRational& operator-=(const ExtRational& other);

  friend ExtRational operator+(ExtRational a, const ExtRational& b) { return a += b; }
  friend ExtRational operator-(ExtRational a, const ExtRational& b) { return a -= b; }
  ExtRational operator-() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  /// "p/q", "p" for integers, or "inf".
  std::string to_string() const;
  static ExtRational parse(const std::string& text);

 private:
  mpq_class value_{0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

/// Minimum over a set; INF only when every entry is INF (or the set is empty).
ExtRational min_of(std::span<const ExtRational> values);
ExtRational sum_of(std::span<const ExtRational> values);

}  // namespace valent
