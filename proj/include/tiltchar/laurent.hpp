// Sparse Laurent polynomials in v with arbitrary-precision integer
// coefficients. This is the scalar ring for every Hecke-module computation
// in the library.
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace tiltchar {

using Integer = boost::multiprecision::cpp_int;

/// Element of Z[v, v^-1]. Stored as exponent -> coefficient with no zero
/// coefficients, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  using Terms = std::map<int, Integer>;

  LaurentPoly() = default;
  LaurentPoly(int constant) { add_term(0, Integer(constant)); }
  LaurentPoly(const Integer& constant) { add_term(0, constant); }

  /// Builds from (exponent, coefficient) pairs; repeated exponents add up.
  LaurentPoly(std::initializer_list<std::pair<int, long long>> terms) {
    for (const auto& [e, c] : terms) add_term(e, Integer(c));
  }

  static LaurentPoly monomial(int exponent, const Integer& coeff = 1) {
    LaurentPoly p;
    p.add_term(exponent, coeff);
    return p;
  }

  /// The variable v itself.
  static LaurentPoly v() { return monomial(1); }
  /// v + v^-1, the value of the quadratic Hecke relation's trace.
  static LaurentPoly v_plus_vinv() { return {{1, 1}, {-1, 1}}; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::optional<int> min_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  std::optional<int> max_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  Integer coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  Integer eval_at_one() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// Sum of the coefficients of v^j for all j <= i.
  Integer sum_up_to(int i) const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) {
      if (e > i) break;
      s += c;
    }
    return s;
  }

  /// The involution v -> v^-1.
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  bool is_self_dual() const { return bar() == *this; }

  /// True if every exponent lies in [lo, hi]; the zero polynomial qualifies.
  bool degrees_within(int lo, int hi) const {
    return terms_.empty() || (terms_.begin()->first >= lo && terms_.rbegin()->first <= hi);
  }

  void add_term(int exponent, const Integer& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Human-readable form, highest power first: "v^2 + 2 + v^-2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << "v";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
  return os << p.to_string();
}

inline LaurentPoly bar(const LaurentPoly& p) { return p.bar(); }
inline Integer coeff(const LaurentPoly& p, int i) { return p.coeff(i); }
inline Integer eval_at_one(const LaurentPoly& p) { return p.eval_at_one(); }
inline bool is_self_dual(const LaurentPoly& p) { return p.is_self_dual(); }

}  // namespace tiltchar
