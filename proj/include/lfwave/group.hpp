#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lfwave {

using Complex = std::complex<double>;

enum class GroupKind { Qp, FpLaurent, QpQuadUnramified };

const char* kind_name(GroupKind kind);

// Coefficient at one digit position. For the quadratic kind the digit is
// a + b*sqrt(u); otherwise b is always 0.
struct Digit {
  int a = 0;
  int b = 0;

  bool is_zero() const noexcept { return a == 0 && b == 0; }
  friend auto operator<=>(const Digit&, const Digit&) = default;
};

class GroupDescriptor {
 public:
  GroupDescriptor(GroupKind kind, int p, int u, int r0);

  static GroupDescriptor qp(int p, int r0 = 1);
  static GroupDescriptor fp_laurent(int p, int r0 = 1);
  static GroupDescriptor qp_quad(int p, int u, int r0 = 1);

  GroupKind kind() const noexcept { return kind_; }
  int p() const noexcept { return p_; }
  // Nonresidue for the quadratic kind, 0 otherwise.
  int u() const noexcept { return u_; }
  int r0() const noexcept { return r0_; }

  // q: p, or p^2 for the quadratic kind. Digits per position are coded 0..q-1.
  int residue_size() const noexcept { return q_; }
  // M = q^r0.
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool is_quadratic() const noexcept { return kind_ == GroupKind::QpQuadUnramified; }
  bool has_carries() const noexcept { return kind_ != GroupKind::FpLaurent; }

  std::string name() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  GroupKind kind_;
  int p_;
  int u_;
  int r0_;
  int q_;
  std::uint64_t modulus_;
};

// Per-position digit code a + p*b in [0, q).
inline int digit_code(const GroupDescriptor& g, Digit d) { return d.a + g.p() * d.b; }
inline Digit digit_from_code(const GroupDescriptor& g, int code) {
  return g.is_quadratic() ? Digit{code % g.p(), code / g.p()} : Digit{code, 0};
}

// Finite digit expansion sum_n d_n pi^n, pi = p or t. Terms are sorted by
// position and never hold a zero digit.
class Element {
 public:
  using Term = std::pair<int, Digit>;

  Element() = default;
  // Terms in any order; zero digits are dropped, repeated positions rejected.
  explicit Element(std::vector<Term> terms);

  static Element monomial(int position, Digit d);
  static Element monomial(int position, int a) { return monomial(position, Digit{a, 0}); }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Digit digit(int position) const;

  // Lowest / highest occupied position.
  std::optional<int> valuation() const;
  std::optional<int> top() const;

  // Digits at positions < hi, and at positions >= lo.
  Element below(int hi) const;
  Element from(int lo) const;
  // Every position moved by k.
  Element shifted(int k) const;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& x, const Element& y) { return x.terms_ <=> y.terms_; }

 private:
  std::vector<Term> terms_;
};

// Throws ConfigError when a digit is out of range for g.
void validate(const GroupDescriptor& g, const Element& x);

// n * pi^position, written in base p on the rational coordinate.
Element from_integer(const GroupDescriptor& g, std::uint64_t n, int position = 0);

Element add(const GroupDescriptor& g, const Element& x, const Element& y);
// -x modulo pi^hi: the unique element with digits only below hi that is
// congruent to -x. In characteristic p this is exact whenever hi > top(x).
Element negate(const GroupDescriptor& g, const Element& x, int hi);
// x - y modulo pi^hi.
Element subtract(const GroupDescriptor& g, const Element& x, const Element& y, int hi);
Element multiply(const GroupDescriptor& g, const Element& x, const Element& y);
// A^n x with A multiplication by pi^(-r0).
Element apply_A(const GroupDescriptor& g, const Element& x, int n);

// A point of the unit circle, stored as a complex double.
class UnitComplex {
 public:
  UnitComplex() = default;
  // exp(2 pi i num/den), num < den.
  static UnitComplex from_turns(std::uint64_t num, std::uint64_t den);

  Complex value() const noexcept { return z_; }
  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  UnitComplex conj() const { return UnitComplex(std::conj(z_)); }

  friend UnitComplex operator*(UnitComplex x, UnitComplex y) { return UnitComplex(x.z_ * y.z_); }

 private:
  explicit UnitComplex(Complex z) : z_(z) {}
  Complex z_{1.0, 0.0};
};

// Fractional part of the character argument as num/den, den a power of p.
struct Turns {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

Turns character_turns(const GroupDescriptor& g, const Element& x);
UnitComplex character(const GroupDescriptor& g, const Element& x);
UnitComplex pairing(const GroupDescriptor& g, const Element& x, const Element& gamma);

// All elements with digits confined to positions [-depth*r0, -1], indexed so
// that position -1 is the least significant base-q digit.
std::vector<Element> d_prefix(const GroupDescriptor& g, int depth);

struct ThetaEta {
  Element theta;
  Element eta;
};
ThetaEta theta_eta(const GroupDescriptor& g, const Element& gamma);

// Deepest digit the characters can resolve: p^K <= 2^62.
int character_depth(int p);

}  // namespace lfwave
