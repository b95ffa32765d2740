#pragma once

// Exact arithmetic in GF(p^k), p odd.
//
// Elements are encoded as integers 0 <= code < q: the code of
// c_0 + c_1 x + ... + c_{k-1} x^{k-1} is sum c_i p^i, so the prime subfield
// occupies codes 0..p-1 in every extension. Multiplication goes through
// exp/log tables built from a primitive element.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "modlie/config.hpp"
#include "modlie/error.hpp"

namespace modlie {

using code_t = std::uint32_t;

namespace poly {

// Dense polynomials over GF(p), coefficients low to high, no trailing zeros.
using Poly = std::vector<unsigned>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long qq = r / nr;
    t -= qq * nt;
    std::swap(t, nt);
    r -= qq * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw DomainError("inv_mod: not invertible");
  return static_cast<unsigned>((t % static_cast<long long>(p) + p) % p);
}

inline Poly mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<unsigned>((r[i + j] + 1ull * a[i] * b[j]) % p);
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b, unsigned p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const unsigned lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const unsigned c = static_cast<unsigned>(1ull * a.back() * lead_inv % p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = static_cast<unsigned>((a[shift + i] + 1ull * (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const unsigned li = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<unsigned>(1ull * c * li % p);
  }
  return a;
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, unsigned p) {
  Poly result{1};
  base = mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = mod(mul(result, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

/// Irreducibility of a monic f of degree k: gcd(f, x^{p^j} - x) = 1 for all
/// 1 <= j < k, i.e. f has no root in any GF(p^j) with j < k.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  Poly xp{0, 1};
  for (std::size_t j = 1; j < k; ++j) {
    xp = powmod(xp, p, f, p);
    if (gcd(f, sub(xp, Poly{0, 1}, p), p).size() > 1) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// x generates the multiplicative group of GF(p)[x]/(f).
inline bool is_primitive(const Poly& f, unsigned p) {
  std::uint64_t q = 1;
  for (std::size_t i = 1; i < f.size(); ++i) q *= p;
  for (auto r : prime_factors(q - 1))
    if (powmod(Poly{0, 1}, (q - 1) / r, f, p) == Poly{1}) return false;
  return true;
}

}  // namespace poly

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The fixed modulus for GF(p^k): the first monic primitive polynomial of
/// degree k when coefficient vectors (c_{k-1}, ..., c_0) are enumerated in
/// lexicographic order. A table file named by MODLIE_MODULUS_TABLE may
/// override it with entries of the form {"p,k": [c_0, ..., c_{k-1}, 1]}.
inline poly::Poly default_modulus(unsigned p, unsigned k) {
  if (const char* path = std::getenv("MODLIE_MODULUS_TABLE"); path && *path) {
    std::ifstream in(path);
    if (!in) throw DomainError(std::string("cannot open modulus table ") + path);
    nlohmann::json table;
    try {
      in >> table;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("malformed modulus table: ") + e.what());
    }
    const std::string key = std::to_string(p) + "," + std::to_string(k);
    if (table.contains(key)) {
      poly::Poly f = table[key].get<std::vector<unsigned>>();
      if (f.size() != k + 1 || f.back() != 1)
        throw DomainError("modulus table entry " + key + " is not monic of degree k");
      for (auto c : f)
        if (c >= p) throw DomainError("modulus table entry " + key + " not reduced mod p");
      if (!poly::is_irreducible(f, p))
        throw DomainError("modulus table entry " + key + " is reducible");
      return f;
    }
  }
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // idx enumerates (c_{k-1}, ..., c_0) lexicographically.
    poly::Poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t t = idx;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = static_cast<unsigned>(t % p);
      t /= p;
    }
    if (f[0] == 0) continue;
    if (poly::is_irreducible(f, p) && poly::is_primitive(f, p)) return f;
  }
  throw DomainError("no primitive polynomial found");
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^k) with a fixed modulus. Immutable; obtain instances through
/// Field::make so that equal (p, k) share one object.
class Field {
 public:
  static FieldPtr make(unsigned p, unsigned k = 1) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find({p, k});
    if (it != registry.end()) return it->second;
    FieldPtr f(new Field(p, k));
    registry.emplace(std::make_pair(p, k), f);
    return f;
  }

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }
  const poly::Poly& modulus() const { return modulus_; }
  bool is_prime_field() const { return k_ == 1; }

  code_t zero() const { return 0; }
  code_t one() const { return 1; }

  /// The class of the polynomial x (k > 1) or the least primitive root (k = 1).
  code_t generator() const { return generator_; }

  code_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<code_t>(r);
  }

  code_t from_coeffs(std::span<const unsigned> c) const {
    if (c.size() > k_) throw DimensionError("from_coeffs: too many coefficients");
    code_t v = 0, pw = 1;
    for (auto ci : c) {
      v += static_cast<code_t>(ci % p_) * pw;
      pw *= p_;
    }
    return v;
  }

  std::vector<unsigned> coeffs(code_t a) const {
    std::vector<unsigned> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  code_t add(code_t a, code_t b) const {
    if (k_ == 1) {
      code_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    code_t r = 0, pw = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * pw;
      a /= p_;
      b /= p_;
      pw *= p_;
    }
    return r;
  }

  code_t neg(code_t a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_[a];
  }

  code_t sub(code_t a, code_t b) const { return add(a, neg(b)); }

  code_t mul(code_t a, code_t b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<code_t>((std::uint64_t{a} * b) % p_);
    return exp_[log_[a] + log_[b]];
  }

  code_t inv(code_t a) const {
    if (a == 0) throw DomainError("division by zero in GF(" + std::to_string(q_) + ")");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  code_t div(code_t a, code_t b) const { return mul(a, inv(b)); }

  code_t pow(code_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1))];
  }

  /// x -> x^p, the Frobenius automorphism.
  code_t frob(code_t a) const { return pow(a, p_); }

  /// x lies in the subfield GF(p^j) (j must divide k).
  bool in_subfield(code_t a, unsigned j) const {
    std::uint64_t e = 1;
    for (unsigned i = 0; i < j; ++i) e *= p_;
    return pow(a, e) == a;
  }

  bool in_prime_field(code_t a) const { return a < p_; }

  std::string describe() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (k_ > 1) os << "^" << k_;
    os << ")";
    return os.str();
  }

  /// Human-readable element: integer in the prime field, otherwise the
  /// coefficient tuple [c_0,...,c_{k-1}].
  std::string format(code_t a) const {
    if (k_ == 1) return std::to_string(a);
    std::ostringstream os;
    auto c = coeffs(a);
    os << "[";
    for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
  }

 private:
  Field(unsigned p, unsigned k) : p_(p), k_(k) {
    if (p == 2) throw DomainError("characteristic 2 is not supported");
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (k == 0) throw DomainError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > config::kMaxFieldOrder) throw GuardError("field order exceeds supported maximum");
    }
    q_ = static_cast<unsigned>(q);
    modulus_ = default_modulus(p, k);
    build_tables();
  }

  code_t slow_mul(code_t a, code_t b) const {
    const auto ca = coeffs(a), cb = coeffs(b);
    poly::Poly pa(ca.begin(), ca.end()), pb(cb.begin(), cb.end());
    poly::trim(pa);
    poly::trim(pb);
    auto r = poly::mod(poly::mul(pa, pb, p_), modulus_, p_);
    r.resize(k_, 0);
    return from_coeffs(r);
  }

  void build_tables() {
    neg_.resize(q_);
    for (code_t a = 0; a < q_; ++a) {
      code_t r = 0, pw = 1, t = a;
      for (unsigned i = 0; i < k_; ++i) {
        r += ((p_ - t % p_) % p_) * pw;
        t /= p_;
        pw *= p_;
      }
      neg_[a] = r;
    }
    if (k_ > 1 && q_ <= config::kAddTableOrder) {
      add_table_.resize(std::size_t{q_} * q_);
      for (code_t a = 0; a < q_; ++a)
        for (code_t b = 0; b < q_; ++b) {
          code_t r = 0, pw = 1, x = a, y = b;
          for (unsigned i = 0; i < k_; ++i) {
            r += ((x % p_ + y % p_) % p_) * pw;
            x /= p_;
            y /= p_;
            pw *= p_;
          }
          add_table_[std::size_t{a} * q_ + b] = r;
        }
    }
    // Find a generator of the multiplicative group.
    const auto factors = poly::prime_factors(q_ - 1);
    auto pow_slow = [&](code_t a, std::uint64_t e) {
      code_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    generator_ = 0;
    const code_t first = k_ == 1 ? 2 : p_;  // p_ encodes the polynomial x
    for (code_t g = first; g < q_ + first; ++g) {
      const code_t cand = g % q_;
      if (cand == 0) continue;
      bool ok = true;
      for (auto r : factors)
        if (pow_slow(cand, (q_ - 1) / r) == 1) ok = false;
      if (ok) {
        generator_ = cand;
        break;
      }
    }
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    code_t cur = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      exp_[i + q_ - 1] = cur;
      log_[cur] = i;
      cur = slow_mul(cur, generator_);
    }
  }

  unsigned p_, k_, q_ = 0;
  poly::Poly modulus_;
  code_t generator_ = 0;
  std::vector<code_t> neg_, exp_, log_, add_table_;
};

/// A field element bundled with its field; convenient for scalar code and
/// tests. Bulk data (matrices, vectors) stores bare codes instead.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr f, code_t v) : f_(std::move(f)), v_(v) {}
  static FieldElement of_int(const FieldPtr& f, long long v) { return {f, f->from_int(v)}; }

  const FieldPtr& field() const { return f_; }
  code_t code() const { return v_; }
  std::vector<unsigned> coeffs() const { return f_->coeffs(v_); }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {f_, f_->add(v_, o.check(f_))}; }
  FieldElement operator-(const FieldElement& o) const { return {f_, f_->sub(v_, o.check(f_))}; }
  FieldElement operator*(const FieldElement& o) const { return {f_, f_->mul(v_, o.check(f_))}; }
  FieldElement operator/(const FieldElement& o) const { return {f_, f_->div(v_, o.check(f_))}; }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement inverse() const { return {f_, f_->inv(v_)}; }
  FieldElement pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
  bool operator==(const FieldElement& o) const { return f_ == o.f_ && v_ == o.v_; }

  std::string str() const { return f_->format(v_); }

 private:
  code_t check(const FieldPtr& f) const {
    if (f != f_) throw ParentMismatch("field elements from different fields");
    return v_;
  }
  FieldPtr f_;
  code_t v_ = 0;
};

/// frobenius_pow: x -> x^p.
inline FieldElement frobenius_pow(const FieldElement& x) { return {x.field(), x.field()->frob(x.code())}; }

}  // namespace modlie
