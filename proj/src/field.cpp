#include "ffdist/field.hpp"

#include <algorithm>
#include <string>

#include "ffdist/error.hpp"

namespace ffdist {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 24;
constexpr std::uint32_t kTableOrder = 1024;

// Polynomials over GF(p), constant coefficient first, no trailing zeros.
using Poly = std::vector<unsigned>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  std::uint64_t result = 1, base = a % p;
  for (unsigned e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<unsigned>(result);
}

Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  trim(a);
  const std::size_t n = f.size() - 1;
  const unsigned lead_inv = inv_mod(f.back(), p);
  while (a.size() > n) {
    const std::size_t shift = a.size() - 1 - n;
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= n; ++i) {
      a[shift + i] = static_cast<unsigned>((a[shift + i] + (p - c) * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<unsigned>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(out), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, unsigned p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t s = f.size() - 1;
  if (s == 1) return true;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= s / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (poly_gcd(diff, f, p).size() > 1) return false;
  }
  return true;
}

void require_odd_prime(unsigned p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument("field: characteristic " + std::to_string(p) +
                          " is not an odd prime");
  }
}

std::uint64_t checked_order(unsigned p, unsigned s) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < s; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw InvalidArgument("field: q = " + std::to_string(p) + "^" + std::to_string(s) +
                            " exceeds the supported order " + std::to_string(kMaxOrder));
    }
  }
  return q;
}

}  // namespace

Field Field::make(unsigned p, unsigned s) {
  require_odd_prime(p);
  if (s < 1) throw InvalidArgument("field: extension degree must be >= 1");
  const std::uint64_t count = checked_order(p, s);
  if (s == 1) return with_modulus(p, {0, 1});
  // Tuples (c_0, ..., c_{s-1}) in lexicographic order, c_0 most significant.
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f(s + 1, 0);
    f[s] = 1;
    std::uint64_t rest = code;
    for (unsigned i = s; i-- > 0;) {
      f[i] = static_cast<unsigned>(rest % p);
      rest /= p;
    }
    if (f[0] != 0 && is_irreducible(f, p)) return with_modulus(p, f);
  }
  throw IdentityViolation("field: no irreducible polynomial found");
}

Field Field::with_modulus(unsigned p, std::vector<unsigned> modulus) {
  require_odd_prime(p);
  if (modulus.size() < 2) throw InvalidArgument("field: modulus must have degree >= 1");
  if (modulus.back() != 1) throw InvalidArgument("field: modulus must be monic");
  for (unsigned c : modulus) {
    if (c >= p) throw InvalidArgument("field: modulus coefficient out of range");
  }
  if (!is_irreducible(modulus, p)) throw InvalidArgument("field: modulus is reducible");
  Field f;
  f.p_ = p;
  f.s_ = static_cast<unsigned>(modulus.size() - 1);
  f.q_ = static_cast<std::uint32_t>(checked_order(p, f.s_));
  f.modulus_ = std::move(modulus);
  f.build_tables();
  return f;
}

Field Field::from_order(std::uint64_t q) {
  if (q < 3) throw InvalidArgument("field: q = " + std::to_string(q) + " is not an odd prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned s = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++s;
  }
  if (rest != 1 || p == 2) {
    throw InvalidArgument("field: q = " + std::to_string(q) + " is not an odd prime power");
  }
  return make(static_cast<unsigned>(p), s);
}

void Field::build_tables() {
  const Poly f = modulus_;
  auto to_poly = [&](std::uint32_t idx) {
    Poly a(s_);
    for (unsigned j = 0; j < s_; ++j) {
      a[j] = idx % p_;
      idx /= p_;
    }
    trim(a);
    return a;
  };
  auto to_index = [&](const Poly& a) {
    std::uint32_t idx = 0;
    for (std::size_t j = a.size(); j-- > 0;) idx = idx * p_ + a[j];
    return idx;
  };

  neg_.resize(q_);
  for (std::uint32_t i = 0; i < q_; ++i) {
    std::uint32_t out = 0, scale = 1, rest = i;
    for (unsigned j = 0; j < s_; ++j) {
      unsigned digit = rest % p_;
      rest /= p_;
      out += ((p_ - digit) % p_) * scale;
      scale *= p_;
    }
    neg_[i] = out;
  }

  // The first element (in index order) whose powers sweep GF(q)*.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  bool found = false;
  for (std::uint32_t g = 1; g < q_ && !found; ++g) {
    const Poly gp = to_poly(g);
    Poly cur{1};
    found = true;
    for (std::uint32_t n = 0; n + 1 < q_; ++n) {
      exp_[n] = to_index(cur);
      cur = poly_mulmod(cur, gp, f, p_);
      if (cur.size() == 1 && cur[0] == 1 && n + 2 < q_) {
        found = false;
        break;
      }
    }
  }
  if (!found) throw IdentityViolation("field: no primitive element found");
  for (std::uint32_t i = 0; i + 1 < q_; ++i) log_[exp_[i]] = i;

  if (q_ <= kTableOrder) {
    add_table_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t out = 0, scale = 1, x = a, y = b;
        for (unsigned j = 0; j < s_; ++j) {
          out += ((x % p_ + y % p_) % p_) * scale;
          x /= p_;
          y /= p_;
          scale *= p_;
        }
        add_table_[std::size_t{a} * q_ + b] = static_cast<std::uint16_t>(out);
      }
    }
  }

  // Tr(a) = a + a^p + ... + a^{p^{s-1}}; lands in the prime subfield.
  trace_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    FieldElement acc{0};
    std::uint64_t e = log_[a];
    for (unsigned i = 0; i < s_; ++i) {
      acc = add(acc, FieldElement{exp_[e % (q_ - 1)]});
      e = e * p_ % (q_ - 1);
    }
    if (acc.index >= p_) throw IdentityViolation("field: trace left the prime subfield");
    trace_[a] = acc.index;
  }

  if (q_ <= kTableOrder) {
    trace_table_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        trace_table_[std::size_t{a} * q_ + b] =
            static_cast<std::uint16_t>(trace_[mul({a}, {b}).index]);
      }
    }
  }
}

FieldElement Field::element(std::uint64_t index) const {
  if (index >= q_) throw InvalidArgument("field: element index " + std::to_string(index) + " out of range");
  return {static_cast<std::uint32_t>(index)};
}

FieldElement Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement Field::from_coeffs(std::span<const unsigned> coeffs) const {
  if (coeffs.size() != s_) throw InvalidArgument("field: expected " + std::to_string(s_) + " coefficients");
  std::uint32_t idx = 0;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] >= p_) throw InvalidArgument("field: coefficient out of range");
    idx = idx * p_ + coeffs[j];
  }
  return {idx};
}

std::vector<unsigned> Field::coeffs(FieldElement a) const {
  std::vector<unsigned> out(s_);
  std::uint32_t rest = a.index;
  for (unsigned j = 0; j < s_; ++j) {
    out[j] = rest % p_;
    rest /= p_;
  }
  return out;
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  if (!add_table_.empty()) return {add_table_[std::size_t{a.index} * q_ + b.index]};
  if (s_ == 1) return {(a.index + b.index) % p_};
  std::uint32_t out = 0, scale = 1, x = a.index, y = b.index;
  for (unsigned j = 0; j < s_; ++j) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return {out};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (a.index == 0 || b.index == 0) return {0};
  std::uint32_t e = log_[a.index] + log_[b.index];
  if (e >= q_ - 1) e -= q_ - 1;
  return {exp_[e]};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.index == 0) throw InvalidArgument("field: inverse of zero");
  std::uint32_t l = log_[a.index];
  return {exp_[l == 0 ? 0 : q_ - 1 - l]};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.index == 0) return zero();
  return {exp_[(std::uint64_t{log_[a.index]} * (e % (q_ - 1))) % (q_ - 1)]};
}

unsigned Field::trace_of_product(FieldElement a, FieldElement b) const {
  if (!trace_table_.empty()) return trace_table_[std::size_t{a.index} * q_ + b.index];
  return trace_[mul(a, b).index];
}

int Field::quad_char(FieldElement a) const {
  if (a.index == 0) return 0;
  return log_[a.index] % 2 == 0 ? 1 : -1;
}

Space::Space(FieldPtr field, unsigned d, std::uint64_t cap)
    : field_(std::move(field)), d_(d), size_(1), cap_(cap) {
  if (!field_) throw InvalidArgument("space: null field");
  if (d_ < 1) throw InvalidArgument("space: dimension must be >= 1");
  for (unsigned i = 0; i < d_; ++i) {
    size_ *= field_->q();
    if (size_ > cap_) {
      throw CapExceeded("space: q^d exceeds the enumeration cap " + std::to_string(cap_));
    }
  }
}

Point Space::point(std::uint64_t index) const {
  if (index >= size_) throw InvalidArgument("space: point index out of range");
  Point x(d_);
  const std::uint32_t q = field_->q();
  for (unsigned i = d_; i-- > 0;) {
    x[i] = {static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return x;
}

void Space::decode(std::uint64_t index, std::span<std::uint32_t> out) const {
  const std::uint32_t q = field_->q();
  for (unsigned i = d_; i-- > 0;) {
    out[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

std::uint64_t Space::index(const Point& x) const {
  check_point(x);
  std::uint64_t idx = 0;
  for (const auto& c : x) idx = idx * field_->q() + c.index;
  return idx;
}

void Space::check_point(const Point& x) const {
  if (x.size() != d_) {
    throw InvalidArgument("space: point has " + std::to_string(x.size()) + " coordinates, expected " +
                          std::to_string(d_));
  }
  for (const auto& c : x) {
    if (c.index >= field_->q()) throw InvalidArgument("space: coordinate out of range");
  }
}

FieldElement Space::dot(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  FieldElement acc{0};
  for (unsigned i = 0; i < d_; ++i) acc = field_->add(acc, field_->mul(x[i], y[i]));
  return acc;
}

FieldElement Space::norm(const Point& x) const { return dot(x, x); }

unsigned Space::zeros(const Point& x) const {
  check_point(x);
  return static_cast<unsigned>(std::count(x.begin(), x.end(), FieldElement{0}));
}

VectorOps Space::vector_ops(const Point& x, const Point& y) const {
  return {dot(x, y), norm(x), zeros(x)};
}

Point Space::sub(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  Point out(d_);
  for (unsigned i = 0; i < d_; ++i) out[i] = field_->sub(x[i], y[i]);
  return out;
}

std::vector<Point> enumerate_vectors(const FieldPtr& field, unsigned d, std::uint64_t cap) {
  Space space(field, d, cap);
  std::vector<Point> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.point(i));
  return out;
}

}  // namespace ffdist
