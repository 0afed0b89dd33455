#include "lfwave/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  while (e > 0) {
    if (e & 1) result = result * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return result;
}

// Coefficient buffers for positions lo, lo+1, ... on both coordinates.
struct Dense {
  int lo = 0;
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;

  Dense(int lo_, std::size_t n) : lo(lo_), a(n, 0), b(n, 0) {}

  void accumulate(const Element& x) {
    for (const auto& [pos, d] : x.terms()) {
      a[pos - lo] += d.a;
      b[pos - lo] += d.b;
    }
  }
};

// Canonical digits from a nonnegative dense buffer.
Element normalize(const GroupDescriptor& g, const Dense& buf) {
  const std::int64_t p = g.p();
  std::vector<Element::Term> out;
  const std::size_t n = buf.a.size();
  if (!g.has_carries()) {
    for (std::size_t i = 0; i < n; ++i) {
      const int da = static_cast<int>(((buf.a[i] % p) + p) % p);
      if (da != 0) out.emplace_back(buf.lo + static_cast<int>(i), Digit{da, 0});
    }
    return Element(std::move(out));
  }
  std::int64_t ca = 0;
  std::int64_t cb = 0;
  for (std::size_t i = 0; i < n || ca != 0 || cb != 0; ++i) {
    const std::int64_t va = ca + (i < n ? buf.a[i] : 0);
    const std::int64_t vb = cb + (i < n ? buf.b[i] : 0);
    ca = va / p;
    cb = vb / p;
    const Digit d{static_cast<int>(va % p), static_cast<int>(vb % p)};
    if (!d.is_zero()) out.emplace_back(buf.lo + static_cast<int>(i), d);
  }
  return Element(std::move(out));
}

// Radix complement of one coordinate inside [.., hi).
void complement(std::map<int, Digit>& out, const Element& x, int hi, int p, bool second) {
  auto coord = [second](const Digit& d) { return second ? d.b : d.a; };
  std::optional<int> first;
  for (const auto& [pos, d] : x.terms())
    if (coord(d) != 0) {
      first = pos;
      break;
    }
  if (!first) return;
  for (int pos = *first; pos < hi; ++pos) {
    const int c = coord(x.digit(pos));
    (second ? out[pos].b : out[pos].a) = pos == *first ? p - c : p - 1 - c;
  }
}

}  // namespace

const char* kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::Qp:
      return "qp";
    case GroupKind::FpLaurent:
      return "fpt";
    case GroupKind::QpQuadUnramified:
      return "qpquad";
  }
  return "?";
}

GroupDescriptor::GroupDescriptor(GroupKind kind, int p, int u, int r0)
    : kind_(kind), p_(p), u_(kind == GroupKind::QpQuadUnramified ? u : 0), r0_(r0), q_(0), modulus_(0) {
  if (!is_prime(p) || p > 46337) throw ConfigError("p must be a prime below 46337, got " + std::to_string(p));
  if (r0 < 1) throw ConfigError("r0 must be >= 1");
  if (kind == GroupKind::QpQuadUnramified) {
    if (p == 2) throw ConfigError("quadratic kind needs odd p");
    if (u < 1 || u > p - 1) throw ConfigError("u must lie in [1, p-1]");
    if (pow_mod(u, (p - 1) / 2, p) != p - 1)
      throw ConfigError("u = " + std::to_string(u) + " is a square mod " + std::to_string(p));
    q_ = p * p;
  } else {
    q_ = p;
  }
  std::uint64_t m = 1;
  for (int i = 0; i < r0; ++i) {
    m *= static_cast<std::uint64_t>(q_);
    if (m > (std::uint64_t{1} << 30)) throw ConfigError("modulus q^r0 too large");
  }
  modulus_ = m;
}

GroupDescriptor GroupDescriptor::qp(int p, int r0) { return {GroupKind::Qp, p, 0, r0}; }
GroupDescriptor GroupDescriptor::fp_laurent(int p, int r0) { return {GroupKind::FpLaurent, p, 0, r0}; }
GroupDescriptor GroupDescriptor::qp_quad(int p, int u, int r0) { return {GroupKind::QpQuadUnramified, p, u, r0}; }

std::string GroupDescriptor::name() const {
  std::string base;
  switch (kind_) {
    case GroupKind::Qp:
      base = "Q_" + std::to_string(p_);
      break;
    case GroupKind::FpLaurent:
      base = "F_" + std::to_string(p_) + "((t))";
      break;
    case GroupKind::QpQuadUnramified:
      base = "Q_" + std::to_string(p_) + "(sqrt " + std::to_string(u_) + ")";
      break;
  }
  return base + ", r0=" + std::to_string(r0_);
}

Element::Element(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && terms[i].first == terms[i - 1].first)
      throw ConfigError("repeated digit position " + std::to_string(terms[i].first));
    if (terms[i].second.a < 0 || terms[i].second.b < 0) throw ConfigError("negative digit");
    if (!terms[i].second.is_zero()) terms_.push_back(terms[i]);
  }
}

Element Element::monomial(int position, Digit d) { return Element({{position, d}}); }

Digit Element::digit(int position) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), position,
                             [](const Term& t, int pos) { return t.first < pos; });
  return it != terms_.end() && it->first == position ? it->second : Digit{};
}

std::optional<int> Element::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().first;
}

std::optional<int> Element::top() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().first;
}

Element Element::below(int hi) const {
  Element out;
  for (const auto& t : terms_)
    if (t.first < hi) out.terms_.push_back(t);
  return out;
}

Element Element::from(int lo) const {
  Element out;
  for (const auto& t : terms_)
    if (t.first >= lo) out.terms_.push_back(t);
  return out;
}

Element Element::shifted(int k) const {
  Element out = *this;
  for (auto& t : out.terms_) t.first += k;
  return out;
}

void validate(const GroupDescriptor& g, const Element& x) {
  for (const auto& [pos, d] : x.terms()) {
    const bool ok = d.a < g.p() && d.b < g.p() && (g.is_quadratic() || d.b == 0);
    if (!ok) throw ConfigError("digit out of range at position " + std::to_string(pos));
  }
}

Element from_integer(const GroupDescriptor& g, std::uint64_t n, int position) {
  std::vector<Element::Term> terms;
  const auto p = static_cast<std::uint64_t>(g.p());
  for (int pos = position; n != 0; ++pos, n /= p)
    terms.emplace_back(pos, Digit{static_cast<int>(n % p), 0});
  return Element(std::move(terms));
}

Element add(const GroupDescriptor& g, const Element& x, const Element& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const int lo = std::min(*x.valuation(), *y.valuation());
  const int hi = std::max(*x.top(), *y.top());
  Dense buf(lo, static_cast<std::size_t>(hi - lo + 1));
  buf.accumulate(x);
  buf.accumulate(y);
  return normalize(g, buf);
}

Element negate(const GroupDescriptor& g, const Element& x, int hi) {
  const Element w = x.below(hi);
  std::vector<Element::Term> out;
  if (!g.has_carries()) {
    for (const auto& [pos, d] : w.terms()) out.emplace_back(pos, Digit{(g.p() - d.a) % g.p(), 0});
    return Element(std::move(out));
  }
  std::map<int, Digit> digits;
  complement(digits, w, hi, g.p(), false);
  if (g.is_quadratic()) complement(digits, w, hi, g.p(), true);
  return Element(std::vector<Element::Term>(digits.begin(), digits.end()));
}

Element subtract(const GroupDescriptor& g, const Element& x, const Element& y, int hi) {
  return add(g, x, negate(g, y, hi)).below(hi);
}

Element multiply(const GroupDescriptor& g, const Element& x, const Element& y) {
  if (x.is_zero() || y.is_zero()) return {};
  const int lo = *x.valuation() + *y.valuation();
  const int len = (*x.top() - *x.valuation()) + (*y.top() - *y.valuation()) + 1;
  Dense buf(lo, static_cast<std::size_t>(len));
  const std::int64_t u = g.u();
  for (const auto& [px, dx] : x.terms()) {
    for (const auto& [py, dy] : y.terms()) {
      const std::size_t k = static_cast<std::size_t>(px + py - lo);
      buf.a[k] += std::int64_t{dx.a} * dy.a + u * dx.b * dy.b;
      buf.b[k] += std::int64_t{dx.a} * dy.b + std::int64_t{dx.b} * dy.a;
    }
  }
  return normalize(g, buf);
}

Element apply_A(const GroupDescriptor& g, const Element& x, int n) { return x.shifted(-n * g.r0()); }

UnitComplex UnitComplex::from_turns(std::uint64_t num, std::uint64_t den) {
  if (num == 0) return UnitComplex();
  // Centre the angle in (-pi, pi] before leaving exact arithmetic.
  const bool upper = num > den / 2;
  const std::uint64_t rest = upper ? den - num : num;
  const double t = static_cast<double>(rest) / static_cast<double>(den);
  const double angle = 2.0 * std::numbers::pi * (upper ? -t : t);
  return UnitComplex(Complex(std::cos(angle), std::sin(angle)));
}

int character_depth(int p) {
  int k = 0;
  std::uint64_t v = 1;
  const auto limit = std::uint64_t{1} << 62;
  while (v <= limit / static_cast<std::uint64_t>(p)) {
    v *= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

Turns character_turns(const GroupDescriptor& g, const Element& x) {
  const auto val = x.valuation();
  if (!val || *val >= 0) return {};
  const auto p = static_cast<std::uint64_t>(g.p());
  if (g.kind() == GroupKind::FpLaurent) return {static_cast<std::uint64_t>(x.digit(-1).a), p};

  const int k = std::min(-*val, character_depth(g.p()));
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  // Horner from position -1 downward builds sum a_n p^(n+k).
  for (int pos = -1; pos >= -k; --pos) {
    num = num * p + static_cast<std::uint64_t>(x.digit(pos).a);
    den *= p;
  }
  if (g.is_quadratic()) num = (2 * num) % den;
  return {num, den};
}

UnitComplex character(const GroupDescriptor& g, const Element& x) {
  const Turns t = character_turns(g, x);
  return UnitComplex::from_turns(t.num, t.den);
}

namespace {

// sum of the coordinate digits of x at positions [v, v + k) as an integer,
// position v weighted 1.
std::uint64_t window_value(const Element& x, int v, int k, std::uint64_t p, bool second) {
  std::uint64_t value = 0;
  std::uint64_t weight = 1;
  int pos = v;
  for (const auto& [n, d] : x.terms()) {
    if (n >= v + k) break;
    for (; pos < n; ++pos) weight *= p;
    value += weight * static_cast<std::uint64_t>(second ? d.b : d.a);
  }
  return value;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

UnitComplex pairing(const GroupDescriptor& g, const Element& x, const Element& gamma) {
  if (x.is_zero() || gamma.is_zero()) return UnitComplex();
  const auto p = static_cast<std::uint64_t>(g.p());
  if (g.kind() == GroupKind::FpLaurent) {
    // Coefficient of t^-1 in the product.
    std::uint64_t c = 0;
    for (const auto& [n, d] : x.terms()) c += static_cast<std::uint64_t>(d.a) * gamma.digit(-1 - n).a;
    return UnitComplex::from_turns(c % p, p);
  }
  const int vx = *x.valuation();
  const int vg = *gamma.valuation();
  const int k = -(vx + vg);
  if (k <= 0) return UnitComplex();
  if (k > character_depth(g.p())) return character(g, multiply(g, x, gamma));
  // x gamma = p^-k (X Gamma), so only X Gamma mod p^k matters.
  std::uint64_t den = 1;
  for (int i = 0; i < k; ++i) den *= p;
  std::uint64_t num = mul_mod(window_value(x, vx, k, p, false), window_value(gamma, vg, k, p, false), den);
  if (g.is_quadratic()) {
    const std::uint64_t bb =
        mul_mod(window_value(x, vx, k, p, true), window_value(gamma, vg, k, p, true), den);
    num = (num + mul_mod(static_cast<std::uint64_t>(g.u()), bb, den)) % den;
    num = mul_mod(2, num, den);
  }
  return UnitComplex::from_turns(num, den);
}

std::vector<Element> d_prefix(const GroupDescriptor& g, int depth) {
  if (depth < 0) throw ConfigError("depth must be >= 0");
  const int len = depth * g.r0();
  const auto q = static_cast<std::uint64_t>(g.residue_size());
  std::uint64_t count = 1;
  for (int i = 0; i < len; ++i) {
    count *= q;
    if (count > (std::uint64_t{1} << 24)) throw ConfigError("d_prefix depth too large");
  }
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<Element::Term> terms;
    std::uint64_t rest = k;
    for (int j = 0; j < len; ++j, rest /= q)
      terms.emplace_back(-1 - j, digit_from_code(g, static_cast<int>(rest % q)));
    out.emplace_back(std::move(terms));
  }
  return out;
}

ThetaEta theta_eta(const GroupDescriptor&, const Element& gamma) { return {gamma.below(0), gamma.from(0)}; }

}  // namespace lfwave
