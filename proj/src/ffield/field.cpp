#include "brauerkit/ffield.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace bk {

namespace detail {

struct FieldData {
  std::uint32_t p = 2;
  unsigned n = 1;
  std::uint32_t q = 2;
  std::vector<Elem> poly;
  bool small = false;  // q <= 2^16: log/exp tables available
  std::vector<Elem> exp_tab;  // size 2(q-1)
  std::vector<std::uint32_t> log_tab;
  std::vector<Elem> inv_tab;
  std::vector<std::uint8_t> add_tab;  // q <= 256, extension fields, odd p
  std::vector<Elem> pow_p;  // p^i
};

}  // namespace detail

namespace {

constexpr std::uint32_t kTableLimit = 1u << 16;

// Digit-wise helpers used while tables are being built and for large q.
Elem digit_add(const detail::FieldData& d, Elem a, Elem b) {
  if (d.p == 2) return a ^ b;
  Elem r = 0;
  for (unsigned i = 0; i < d.n; ++i) {
    Elem da = a % d.p, db = b % d.p;
    a /= d.p;
    b /= d.p;
    r += ((da + db) % d.p) * d.pow_p[i];
  }
  return r;
}

Elem digit_neg(const detail::FieldData& d, Elem a) {
  Elem r = 0;
  for (unsigned i = 0; i < d.n; ++i) {
    Elem da = a % d.p;
    a /= d.p;
    r += ((d.p - da) % d.p) * d.pow_p[i];
  }
  return r;
}

// Schoolbook product of residues modulo the defining polynomial.
Elem poly_mul_mod(const detail::FieldData& d, Elem a, Elem b) {
  const unsigned n = d.n;
  const std::uint64_t p = d.p;
  std::vector<std::uint64_t> x(n), y(n), z(2 * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    x[i] = a % p;
    a /= static_cast<Elem>(p);
    y[i] = b % p;
    b /= static_cast<Elem>(p);
  }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  for (unsigned k = 2 * n - 1; k >= n; --k) {
    std::uint64_t c = z[k];
    if (c == 0) continue;
    z[k] = 0;
    for (unsigned i = 0; i < n; ++i)
      z[k - n + i] = (z[k - n + i] + (p - (c * d.poly[i]) % p)) % p;
  }
  Elem r = 0;
  for (unsigned i = 0; i < n; ++i) r += static_cast<Elem>(z[i]) * d.pow_p[i];
  return r;
}

Elem slow_pow(const detail::FieldData& d, Elem a, std::uint64_t e) {
  Elem r = 1;
  while (e) {
    if (e & 1) r = poly_mul_mod(d, r, a);
    a = poly_mul_mod(d, a, a);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

void build_tables(detail::FieldData& d) {
  d.small = d.q <= kTableLimit;
  if (!d.small) return;
  if (d.n == 1) {
    d.inv_tab.assign(d.q, 0);
    for (Elem a = 1; a < d.q; ++a) {
      std::uint64_t r = 1, b = a, e = d.q - 2;
      while (e) {
        if (e & 1) r = r * b % d.p;
        b = b * b % d.p;
        e >>= 1;
      }
      d.inv_tab[a] = static_cast<Elem>(r);
    }
    return;
  }
  const std::uint64_t order = d.q - 1;
  auto pf = prime_factors(order);
  Elem gen = 0;
  for (Elem g = 2; g < d.q && gen == 0; ++g) {
    bool ok = true;
    for (auto f : pf)
      if (slow_pow(d, g, order / f) == 1) { ok = false; break; }
    if (ok) gen = g;
  }
  if (order == 1) gen = 1;
  d.exp_tab.assign(2 * order, 0);
  d.log_tab.assign(d.q, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    d.exp_tab[i] = x;
    d.exp_tab[i + order] = x;
    d.log_tab[x] = static_cast<std::uint32_t>(i);
    x = poly_mul_mod(d, x, gen);
  }
  d.inv_tab.assign(d.q, 0);
  for (Elem a = 1; a < d.q; ++a)
    d.inv_tab[a] = d.exp_tab[(order - d.log_tab[a]) % order];
  if (d.p != 2 && d.q <= 256) {
    d.add_tab.assign(static_cast<std::size_t>(d.q) * d.q, 0);
    for (Elem a = 0; a < d.q; ++a)
      for (Elem b = 0; b < d.q; ++b)
        d.add_tab[a * d.q + b] = static_cast<std::uint8_t>(digit_add(d, a, b));
  }
}

std::vector<Elem> parse_list(std::string_view s) {
  std::vector<Elem> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string_view::npos) j = s.size();
    auto tok = s.substr(i, j - i);
    Elem v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw FieldError("bad coefficient list: " + std::string(s));
    out.push_back(v);
    i = j + 1;
  }
  return out;
}

// Polynomials over GF(p) as coefficient vectors, used for irreducibility.
using PP = std::vector<std::uint64_t>;

void pp_trim(PP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PP pp_mod(PP a, const PP& m, std::uint64_t p) {
  pp_trim(a);
  const std::size_t dm = m.size() - 1;
  std::uint64_t inv_lead = 1;
  {
    std::uint64_t b = m.back(), e = p - 2;
    while (e) {
      if (e & 1) inv_lead = inv_lead * b % p;
      b = b * b % p;
      e >>= 1;
    }
  }
  while (a.size() > dm) {
    std::uint64_t c = a.back() * inv_lead % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    pp_trim(a);
  }
  return a;
}

PP pp_mulmod(const PP& a, const PP& b, const PP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PP z(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) z[i + j] = (z[i + j] + a[i] * b[j]) % p;
  return pp_mod(std::move(z), m, p);
}

PP pp_powmod(PP base, std::uint64_t e, const PP& m, std::uint64_t p) {
  PP r{1};
  base = pp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pp_mulmod(r, base, m, p);
    base = pp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PP pp_gcd(PP a, PP b, std::uint64_t p) {
  pp_trim(a);
  pp_trim(b);
  while (!b.empty()) {
    PP r = pp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t f = 2; f * f <= v; ++f)
    if (v % f == 0) return false;
  return true;
}

// Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
bool is_irreducible_over_prime(std::uint32_t p, std::span<const Elem> poly) {
  PP f(poly.begin(), poly.end());
  pp_trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  auto frob_iter = [&](unsigned k) {
    PP x{0, 1};
    for (unsigned i = 0; i < k; ++i) x = pp_powmod(x, p, f, p);
    return x;
  };
  auto minus_x = [&](PP a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    pp_trim(a);
    return a;
  };
  if (!minus_x(frob_iter(n)).empty()) return false;
  for (auto r : prime_factors(n)) {
    PP g = pp_gcd(f, minus_x(frob_iter(n / static_cast<unsigned>(r))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field Field::make(std::uint32_t p, unsigned n, std::vector<Elem> poly) {
  if (!is_prime(p)) throw FieldError("characteristic is not prime: " + std::to_string(p));
  if (n == 0) throw FieldError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q >= (std::uint64_t{1} << 32)) throw FieldError("field order exceeds 2^32");
  }
  if (poly.size() != n + 1) throw FieldError("defining polynomial must have n+1 coefficients");
  for (auto c : poly)
    if (c >= p) throw FieldError("polynomial coefficient out of range");
  if (poly.back() != 1) throw FieldError("defining polynomial must be monic");
  if (!is_irreducible_over_prime(p, poly)) throw FieldError("defining polynomial is reducible");
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->n = n;
  d->q = static_cast<std::uint32_t>(q);
  d->poly = std::move(poly);
  d->pow_p.resize(n + 1);
  d->pow_p[0] = 1;
  for (unsigned i = 1; i <= n; ++i) d->pow_p[i] = d->pow_p[i - 1] * p;
  build_tables(*d);
  return Field(std::move(d));
}

Field Field::prime(std::uint32_t p) { return make(p, 1, {0, 1}); }

Field Field::standard(std::uint32_t p, unsigned n) {
  if (!is_prime(p)) throw FieldError("characteristic is not prime");
  if (n == 1) return prime(p);
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Elem> poly(n + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < n; ++i) {
      poly[i] = static_cast<Elem>(c % p);
      c /= p;
    }
    poly[n] = 1;
    if (poly[0] == 0) continue;
    if (is_irreducible_over_prime(p, poly)) return make(p, n, std::move(poly));
  }
  throw FieldError("no irreducible polynomial found");
}

Field Field::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  std::optional<std::uint32_t> p;
  std::optional<unsigned> n;
  std::optional<std::vector<Elem>> poly;
  while (in >> tok) {
    if (tok == "field") continue;
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw FieldError("bad field token: " + tok);
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    if (key == "p") {
      p = static_cast<std::uint32_t>(std::stoul(val));
    } else if (key == "n") {
      n = static_cast<unsigned>(std::stoul(val));
    } else if (key == "poly") {
      poly = parse_list(val);
    } else {
      throw FieldError("unknown field key: " + key);
    }
  }
  if (!p) throw FieldError("field spec lacks p");
  if (!n) n = poly ? static_cast<unsigned>(poly->size() - 1) : 1u;
  if (!poly) {
    if (*n != 1) throw FieldError("extension field spec lacks poly");
    poly = std::vector<Elem>{0, 1};
  }
  return make(*p, *n, std::move(*poly));
}

std::uint32_t Field::p() const { return d_->p; }
unsigned Field::n() const { return d_->n; }
std::uint32_t Field::q() const { return d_->q; }
const std::vector<Elem>& Field::poly() const { return d_->poly; }

std::string Field::spec() const {
  std::string s = "field p=" + std::to_string(d_->p) + " n=" + std::to_string(d_->n) + " poly=";
  for (std::size_t i = 0; i < d_->poly.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d_->poly[i]);
  }
  return s;
}

bool Field::operator==(const Field& o) const {
  return d_ == o.d_ || (d_->p == o.d_->p && d_->n == o.d_->n && d_->poly == o.d_->poly);
}

Elem Field::add(Elem a, Elem b) const {
  const auto& d = *d_;
  if (d.n == 1) {
    Elem s = a + b;
    return s >= d.p ? s - d.p : s;
  }
  if (d.p == 2) return a ^ b;
  if (!d.add_tab.empty()) return d.add_tab[a * d.q + b];
  return digit_add(d, a, b);
}

Elem Field::neg(Elem a) const {
  const auto& d = *d_;
  if (d.n == 1) return a == 0 ? 0 : d.p - a;
  if (d.p == 2) return a;
  return digit_neg(d, a);
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const {
  const auto& d = *d_;
  if (d.n == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % d.p);
  if (a == 0 || b == 0) return 0;
  if (d.small) return d.exp_tab[d.log_tab[a] + d.log_tab[b]];
  return poly_mul_mod(d, a, b);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("inverse of zero");
  const auto& d = *d_;
  if (d.small) return d.inv_tab[a];
  return pow(a, static_cast<std::uint64_t>(d.q) - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t p = d_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

unsigned Field::degree_of(Elem a) const {
  for (unsigned k = 1; k <= d_->n; ++k) {
    if (d_->n % k) continue;
    Elem x = a;
    for (unsigned i = 0; i < k; ++i) x = frobenius(x);
    if (x == a) return k;
  }
  return d_->n;
}

void Field::axpy(std::span<Elem> y, Elem c, std::span<const Elem> x) const {
  const auto& d = *d_;
  const std::size_t len = y.size();
  if (c == 0) return;
  if (d.n == 1) {
    const Elem p = d.p;
    if (p == 2) {
      for (std::size_t i = 0; i < len; ++i) y[i] ^= x[i];
      return;
    }
    for (std::size_t i = 0; i < len; ++i) {
      Elem t = y[i] + static_cast<Elem>((static_cast<std::uint64_t>(c) * x[i]) % p);
      y[i] = t >= p ? t - p : t;
    }
    return;
  }
  if (d.small) {
    const std::uint32_t lc = d.log_tab[c];
    const Elem* ex = d.exp_tab.data();
    const std::uint32_t* lg = d.log_tab.data();
    if (d.p == 2) {
      for (std::size_t i = 0; i < len; ++i)
        if (x[i]) y[i] ^= ex[lg[x[i]] + lc];
      return;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (x[i]) y[i] = add(y[i], ex[lg[x[i]] + lc]);
    return;
  }
  for (std::size_t i = 0; i < len; ++i) y[i] = add(y[i], mul(c, x[i]));
}

void Field::scale(std::span<Elem> x, Elem c) const {
  for (auto& v : x) v = mul(v, c);
}

FieldEmbedding::FieldEmbedding(const Field& small, const Field& big) : small_(small), big_(big) {
  if (small.p() != big.p() || big.n() % small.n() != 0)
    throw FieldError("no embedding " + small.spec() + " -> " + big.spec());
  // least root of the small defining polynomial in the big field
  const auto& poly = small.poly();
  std::optional<Elem> root;
  for (Elem r = 0; r < big.q() && !root; ++r) {
    Elem acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = big.add(big.mul(acc, r), poly[i]);
    if (acc == 0) root = r;
  }
  if (!root) throw FieldError("defining polynomial has no root in the extension");
  std::vector<Elem> rp(small.n());
  rp[0] = 1;
  for (unsigned i = 1; i < small.n(); ++i) rp[i] = big.mul(rp[i - 1], *root);
  table_.resize(small.q());
  for (Elem a = 0; a < small.q(); ++a) {
    Elem v = 0, t = a;
    for (unsigned i = 0; i < small.n(); ++i) {
      v = big.add(v, big.mul(big.from_int(t % small.p()), rp[i]));
      t /= small.p();
    }
    table_[a] = v;
  }
}

Elem FieldEmbedding::operator()(Elem a) const { return table_.at(a); }

Vec FieldEmbedding::map(std::span<const Elem> v) const {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = table_.at(v[i]);
  return out;
}

std::optional<Elem> FieldEmbedding::preimage(Elem b) const {
  for (Elem a = 0; a < table_.size(); ++a)
    if (table_[a] == b) return a;
  return std::nullopt;
}

}  // namespace bk
