#include "valent/ext_rational.hpp"

#include <algorithm>
#include <ostream>

#include "valent/errors.hpp"

namespace valent {

ExtRational::ExtRational(long num, long den) {
  if (den == 0) throw DivisionByZero("ExtRational", "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

ExtRational::ExtRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

const mpq_class& ExtRational::value() const {
  if (infinite_) throw InvalidArgument("ExtRational", "value of infinity requested");
  return value_;
}

ExtRational& ExtRational::operator+=(const ExtRational& other) {
  if (infinite_) return *this;
  if (other.infinite_) {
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ += other.value_;
  return *this;
}

ExtRational& ExtRational::operator-=(const ExtRational& other) {
  if (other.infinite_) throw InvalidArgument("ExtRational", "subtracting infinity");
  if (infinite_) return *this;
  value_ -= other.value_;
  return *this;
}

ExtRational ExtRational::operator-() const {
  if (infinite_) throw InvalidArgument("ExtRational", "negating infinity");
  return ExtRational(mpq_class(-value_));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string ExtRational::to_string() const { return infinite_ ? "inf" : value_.get_str(); }

ExtRational ExtRational::parse(const std::string& text) {
  if (text == "inf") return infinity();
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw InvalidArgument("ExtRational", "malformed rational '" + text + "'");
  }
  return ExtRational(q);
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << x.to_string(); }

ExtRational min_of(std::span<const ExtRational> values) {
  ExtRational best = ExtRational::infinity();
  for (const auto& v : values) best = std::min(best, v);
  return best;
}

ExtRational sum_of(std::span<const ExtRational> values) {
  ExtRational total;
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace valent
