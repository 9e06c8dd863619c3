#pragma once

#include <cassert>
#include <concepts>
#include <stdexcept>
#include <string>

#include "fwa/rational.hpp"

namespace fwa {

/// A *-continuous Kleene algebra instance: carrier type, constants 0 and 1,
/// operations ⊕/⊗/star and decidable equality. Instances are small value
/// objects so that lifted algebras (GP(K), matrices) can carry context.
template <typename A>
concept KleeneAlgebra = requires(const A& alg, const typename A::Value& x,
                                 const typename A::Value& y) {
  typename A::Value;
  { alg.zero() } -> std::convertible_to<typename A::Value>;
  { alg.one() } -> std::convertible_to<typename A::Value>;
  { alg.plus(x, y) } -> std::convertible_to<typename A::Value>;
  { alg.times(x, y) } -> std::convertible_to<typename A::Value>;
  { alg.star(x) } -> std::convertible_to<typename A::Value>;
  { alg.eq(x, y) } -> std::convertible_to<bool>;
};

/// Extension for semiring-semimodule pairs (K, V) with an ω-power on K:
/// omega maps K into V, V carries join/bottom, and K acts on V from the left.
template <typename A>
concept OmegaKleeneAlgebra = KleeneAlgebra<A> &&
    requires(const A& alg, const typename A::Value& x, const typename A::Omega& u,
             const typename A::Omega& v) {
  typename A::Omega;
  { alg.omega(x) } -> std::convertible_to<typename A::Omega>;
  { alg.vbottom() } -> std::convertible_to<typename A::Omega>;
  { alg.vjoin(u, v) } -> std::convertible_to<typename A::Omega>;
  { alg.act(x, u) } -> std::convertible_to<typename A::Omega>;
  { alg.veq(u, v) } -> std::convertible_to<bool>;
};

/// Nonnegative rational extended with ∞; the carrier of Trop and Fuzz.
class ExtRat {
 public:
  ExtRat() : inf_(false), value_(0) {}
  explicit ExtRat(Rational value) : inf_(false), value_(std::move(value)) {
    if (value_ < 0) throw std::invalid_argument("ExtRat must be nonnegative");
  }
  static ExtRat infinity() {
    ExtRat r;
    r.inf_ = true;
    return r;
  }

  bool is_infinite() const { return inf_; }
  const Rational& value() const {
    assert(!inf_);
    return value_;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }

  /// ∞-absorbing addition.
  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRat(a.value_ + b.value_);
  }

  std::string to_string() const { return inf_ ? "inf" : format_rational(value_); }

 private:
  bool inf_;
  Rational value_;
};

/// 𝔹 = ({false,true}, ∨, ∧, false, true).
struct BoolSemiring {
  using Value = bool;
  static constexpr const char* name = "bool";
  bool zero() const { return false; }
  bool one() const { return true; }
  bool plus(bool x, bool y) const { return x || y; }
  bool times(bool x, bool y) const { return x && y; }
  bool star(bool) const { return true; }  // bounded: x* = 1
  bool eq(bool x, bool y) const { return x == y; }
};

/// Trop = (ℚ≥0 ∪ {∞}, min, +, ∞, 0).
struct TropSemiring {
  using Value = ExtRat;
  static constexpr const char* name = "tropical";
  ExtRat zero() const { return ExtRat::infinity(); }
  ExtRat one() const { return ExtRat(Rational(0)); }
  ExtRat plus(const ExtRat& x, const ExtRat& y) const { return x < y ? x : y; }
  ExtRat times(const ExtRat& x, const ExtRat& y) const { return x + y; }
  ExtRat star(const ExtRat&) const { return one(); }
  bool eq(const ExtRat& x, const ExtRat& y) const { return x == y; }
};

/// Fuzz = (ℚ≥0 ∪ {∞}, max, min, 0, ∞).
struct FuzzSemiring {
  using Value = ExtRat;
  static constexpr const char* name = "fuzzy";
  ExtRat zero() const { return ExtRat(Rational(0)); }
  ExtRat one() const { return ExtRat::infinity(); }
  ExtRat plus(const ExtRat& x, const ExtRat& y) const { return x < y ? y : x; }
  ExtRat times(const ExtRat& x, const ExtRat& y) const { return x < y ? x : y; }
  ExtRat star(const ExtRat&) const { return one(); }
  bool eq(const ExtRat& x, const ExtRat& y) const { return x == y; }
};

static_assert(KleeneAlgebra<BoolSemiring>);
static_assert(KleeneAlgebra<TropSemiring>);
static_assert(KleeneAlgebra<FuzzSemiring>);

}  // namespace fwa
