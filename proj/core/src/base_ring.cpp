#include "gradstab/base_ring.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <random>
#include <sstream>

namespace gradstab {

namespace {

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t mod_reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw ValidationError("division by zero residue");
  return mod_pow(a, p - 2, p);  // p prime
}

}  // namespace

BaseRing BaseRing::prime_field(std::uint32_t p) {
  if (p >= (1u << 16) || !is_prime_u32(p))
    throw ValidationError("base ring modulus must be a prime below 2^16, got " +
                          std::to_string(p));
  return BaseRing(RingKind::PrimeField, p, "");
}

BaseRing BaseRing::univariate(std::uint32_t p, std::string variable) {
  if (p >= (1u << 16) || !is_prime_u32(p))
    throw ValidationError("base ring modulus must be a prime below 2^16, got " +
                          std::to_string(p));
  if (variable.empty()) throw ValidationError("polynomial base ring needs a variable name");
  return BaseRing(RingKind::UnivariatePoly, p, std::move(variable));
}

std::string BaseRing::describe() const {
  std::string s = "F_" + std::to_string(p_);
  if (kind_ == RingKind::UnivariatePoly) s += "[" + var_ + "]";
  return s;
}

void RingElem::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (ring_.is_field() && c_.size() > 1)
    throw ValidationError("element of " + ring_.describe() + " cannot have positive degree");
}

RingElem RingElem::one(const BaseRing& ring) { return constant(ring, 1); }

RingElem RingElem::constant(const BaseRing& ring, std::int64_t value) {
  std::uint32_t v = mod_reduce(value, ring.modulus());
  std::vector<std::uint32_t> c;
  if (v != 0) c.push_back(v);
  return RingElem(ring, std::move(c));
}

RingElem RingElem::variable(const BaseRing& ring) {
  if (ring.is_field())
    throw ValidationError("prime field " + ring.describe() + " has no variable");
  return RingElem(ring, {0, 1});
}

RingElem RingElem::from_coeffs(const BaseRing& ring, std::vector<std::int64_t> coeffs) {
  std::vector<std::uint32_t> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = mod_reduce(coeffs[i], ring.modulus());
  RingElem e(ring, std::move(c));
  e.normalize();
  return e;
}

RingElem RingElem::monomial(const BaseRing& ring, int degree, std::int64_t coeff) {
  if (degree < 0) throw ValidationError("monomial degree must be nonnegative");
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coeff;
  return from_coeffs(ring, std::move(c));
}

std::uint32_t RingElem::leading_coeff() const {
  if (c_.empty()) throw InternalError("leading coefficient of zero");
  return c_.back();
}

RingElem RingElem::monic() const {
  if (is_zero()) return *this;
  std::uint32_t inv = mod_inv(c_.back(), ring_.modulus());
  RingElem r = *this;
  for (auto& x : r.c_) x = mod_mul(x, inv, ring_.modulus());
  return r;
}

static void check_same_ring(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring())
    throw InternalError("mixed base rings: " + a.ring().describe() + " vs " +
                        b.ring().describe());
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  std::uint32_t p = a.ring().modulus();
  std::vector<std::int64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = (i < a.coeffs().size() ? a.coeffs()[i] : 0u) +
           static_cast<std::int64_t>(i < b.coeffs().size() ? b.coeffs()[i] : 0u);
  (void)p;
  return RingElem::from_coeffs(a.ring(), std::move(c));
}

RingElem operator-(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  std::vector<std::int64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = static_cast<std::int64_t>(i < a.coeffs().size() ? a.coeffs()[i] : 0u) -
           static_cast<std::int64_t>(i < b.coeffs().size() ? b.coeffs()[i] : 0u);
  return RingElem::from_coeffs(a.ring(), std::move(c));
}

RingElem RingElem::operator-() const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -static_cast<std::int64_t>(c_[i]);
  return from_coeffs(ring_, std::move(c));
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return RingElem::zero(a.ring());
  std::uint32_t p = a.ring().modulus();
  std::vector<std::uint32_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      std::uint64_t v = c[i + j] + static_cast<std::uint64_t>(a.coeffs()[i]) * b.coeffs()[j];
      c[i + j] = static_cast<std::uint32_t>(v % p);
    }
  std::vector<std::int64_t> ci(c.begin(), c.end());
  return RingElem::from_coeffs(a.ring(), std::move(ci));
}

int RingElem::compare(const RingElem& a, const RingElem& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  if (a.c_ < b.c_) return -1;
  if (b.c_ < a.c_) return 1;
  return 0;
}

DivModResult divmod(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  if (b.is_zero()) throw ValidationError("polynomial division by zero");
  std::uint32_t p = a.ring().modulus();
  std::vector<std::int64_t> rem(a.coeffs().begin(), a.coeffs().end());
  int db = b.degree();
  std::uint32_t lb_inv = mod_inv(b.leading_coeff(), p);
  std::vector<std::int64_t> quo(
      a.degree() >= db ? static_cast<std::size_t>(a.degree() - db) + 1 : 0, 0);
  for (int i = a.degree(); i >= db; --i) {
    std::uint32_t top = mod_reduce(rem[static_cast<std::size_t>(i)], p);
    if (top == 0) continue;
    std::uint32_t q = mod_mul(top, lb_inv, p);
    quo[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) {
      std::size_t idx = static_cast<std::size_t>(i - db + j);
      rem[idx] = mod_reduce(rem[idx] - static_cast<std::int64_t>(mod_mul(q, b.coeff(j), p)), p);
    }
  }
  return {RingElem::from_coeffs(a.ring(), std::move(quo)),
          RingElem::from_coeffs(a.ring(), std::move(rem))};
}

RingElem exact_div(const RingElem& a, const RingElem& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalError("exact_div: nonzero remainder");
  return q;
}

RingElem gcd(const RingElem& a, const RingElem& b) {
  check_same_ring(a, b);
  RingElem x = a, y = b;
  while (!y.is_zero()) {
    RingElem r = divmod(x, y).remainder;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

RingElem unit_inverse(const RingElem& a) {
  if (!a.is_unit()) throw InternalError("unit_inverse of a nonunit");
  return RingElem::constant(a.ring(), mod_inv(a.coeffs()[0], a.ring().modulus()));
}

RingElem pow_mod(const RingElem& base, std::uint64_t e, const RingElem& mod) {
  RingElem r = RingElem::one(base.ring());
  RingElem b = divmod(base, mod).remainder;
  while (e) {
    if (e & 1) r = divmod(r * b, mod).remainder;
    b = divmod(b * b, mod).remainder;
    e >>= 1;
  }
  return r;
}

RingElem derivative(const RingElem& f) {
  std::vector<std::int64_t> c;
  for (int i = 1; i <= f.degree(); ++i)
    c.push_back(static_cast<std::int64_t>(f.coeff(i)) * i);
  return RingElem::from_coeffs(f.ring(), std::move(c));
}

// ---------------------------------------------------------------------------
// factorization

namespace {

std::atomic<std::uint64_t> g_factor_seed{0x9e3779b97f4a7c15ull};

std::uint64_t mix_seed(const RingElem& f) {
  std::uint64_t h = g_factor_seed.load() ^ (0x2545f4914f6cdd1dull * (f.degree() + 2));
  for (auto c : f.coeffs()) h = h * 0x100000001b3ull + c + 1;
  return h;
}

RingElem random_poly(std::mt19937_64& rng, const BaseRing& ring, int max_deg) {
  std::uniform_int_distribution<std::uint32_t> dist(0, ring.modulus() - 1);
  std::vector<std::int64_t> c(static_cast<std::size_t>(max_deg) + 1);
  for (auto& x : c) x = dist(rng);
  return RingElem::from_coeffs(ring, std::move(c));
}

RingElem pth_root(const RingElem& f) {
  // f = g(u^p) with coefficients in F_p, so the root keeps the coefficients.
  std::uint32_t p = f.ring().modulus();
  std::vector<std::int64_t> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
    c.push_back(f.coeff(i));
  return RingElem::from_coeffs(f.ring(), std::move(c));
}

RingElem edf_extract(const RingElem& h, int d, std::mt19937_64& rng) {
  if (h.degree() == d) return h;
  std::uint32_t p = h.ring().modulus();
  for (int tries = 0; tries < 512; ++tries) {
    RingElem r = random_poly(rng, h.ring(), h.degree() - 1);
    if (r.is_zero()) continue;
    RingElem t = gcd(r, h);
    if (t.degree() > 0 && t.degree() < h.degree()) return edf_extract(t, d, rng);
    RingElem s = RingElem::zero(h.ring());
    if (p == 2) {
      // trace map r + r^2 + ... + r^(2^(d-1))
      RingElem cur = divmod(r, h).remainder;
      RingElem acc = cur;
      for (int i = 1; i < d; ++i) {
        cur = divmod(cur * cur, h).remainder;
        acc = acc + cur;
      }
      s = acc;
    } else {
      // norm to F_p, then the quadratic-residue exponent
      RingElem cur = divmod(r, h).remainder;
      RingElem acc = cur;
      for (int i = 1; i < d; ++i) {
        cur = pow_mod(cur, p, h);
        acc = divmod(acc * cur, h).remainder;
      }
      s = pow_mod(acc, (p - 1) / 2, h) - RingElem::one(h.ring());
    }
    RingElem t2 = gcd(s, h);
    if (t2.degree() > 0 && t2.degree() < h.degree()) return edf_extract(t2, d, rng);
  }
  throw InternalError("equal-degree splitting did not converge");
}

RingElem one_factor_squarefree(const RingElem& f, std::mt19937_64& rng) {
  if (f.degree() == 1) return f;
  std::uint32_t p = f.ring().modulus();
  RingElem x = RingElem::variable(f.ring());
  RingElem w = divmod(x, f).remainder;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    w = pow_mod(w, p, f);  // x^(p^d) mod f
    RingElem g = gcd(w - x, f);
    if (g.degree() > 0) return edf_extract(g, d, rng);
  }
  return f;  // irreducible
}

RingElem one_factor(RingElem f, std::mt19937_64& rng) {
  for (;;) {
    RingElem d = derivative(f);
    if (d.is_zero()) {
      f = pth_root(f);
      continue;
    }
    RingElem g = gcd(f, d);
    if (g.degree() == 0) return one_factor_squarefree(f, rng);
    RingElem sf = exact_div(f, g).monic();
    return one_factor_squarefree(sf, rng);
  }
}

}  // namespace

void set_factor_seed(std::uint64_t seed) { g_factor_seed.store(seed); }
std::uint64_t factor_seed() { return g_factor_seed.load(); }

FactorResult factor(const RingElem& f) {
  if (f.ring().kind() != RingKind::UnivariatePoly)
    throw ValidationError("factor: base ring must be a polynomial ring");
  if (f.is_zero()) throw ValidationError("factor: zero input");
  std::mt19937_64 rng(mix_seed(f));
  FactorResult out{RingElem::constant(f.ring(), f.leading_coeff()), {}};
  RingElem g = f.monic();
  while (g.degree() >= 1) {
    RingElem q = one_factor(g, rng);
    int e = 0;
    for (;;) {
      auto dm = divmod(g, q);
      if (!dm.remainder.is_zero()) break;
      g = dm.quotient;
      ++e;
    }
    out.terms.push_back({q, e});
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const FactorTerm& a, const FactorTerm& b) {
              return RingElem::compare(a.prime, b.prime) < 0;
            });
  return out;
}

bool is_irreducible(const RingElem& f) {
  if (f.ring().kind() != RingKind::UnivariatePoly)
    throw ValidationError("is_irreducible: base ring must be a polynomial ring");
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  std::uint32_t p = f.ring().modulus();
  int n = f.degree();
  RingElem x = RingElem::variable(f.ring());
  // Frobenius milestones x^(p^k) mod f for k = 1..n.
  std::vector<RingElem> frob;
  frob.reserve(static_cast<std::size_t>(n));
  RingElem w = divmod(x, f).remainder;
  for (int k = 1; k <= n; ++k) {
    w = pow_mod(w, p, f);
    frob.push_back(w);
  }
  if (frob[static_cast<std::size_t>(n - 1)] != divmod(x, f).remainder) return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool q_prime = true;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) { q_prime = false; break; }
    if (!q_prime) continue;
    RingElem g = gcd(frob[static_cast<std::size_t>(n / q - 1)] - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// render / parse

std::string RingElem::render() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    std::uint32_t c = coeff(i);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << ring_.variable();
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

struct UniTokenizer {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::uint64_t read_uint() {
    skip_ws();
    std::uint64_t v = 0;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      ++pos;
    }
    if (pos == start) throw ValidationError("expected integer at position " + std::to_string(pos));
    return v;
  }
  std::string read_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      ++pos;
    }
    return std::string(s.substr(start, pos - start));
  }
};

struct UniParser {
  UniTokenizer tok;
  const BaseRing& ring;

  RingElem parse_expr() {
    bool neg = tok.accept('-');
    RingElem v = parse_term();
    if (neg) v = -v;
    for (;;) {
      if (tok.accept('+')) {
        v = v + parse_term();
      } else if (tok.accept('-')) {
        v = v - parse_term();
      } else {
        return v;
      }
    }
  }
  RingElem parse_term() {
    RingElem v = parse_factor();
    while (tok.accept('*')) v = v * parse_factor();
    return v;
  }
  RingElem parse_factor() {
    RingElem v = parse_atom();
    if (tok.accept('^')) {
      std::uint64_t e = tok.read_uint();
      RingElem r = RingElem::one(ring);
      for (std::uint64_t i = 0; i < e; ++i) r = r * v;
      return r;
    }
    return v;
  }
  RingElem parse_atom() {
    char c = tok.peek();
    if (c == '(') {
      tok.accept('(');
      RingElem v = parse_expr();
      if (!tok.accept(')')) throw ValidationError("expected ')' in ring element");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RingElem::constant(ring, static_cast<std::int64_t>(tok.read_uint()));
    std::string id = tok.read_ident();
    if (id.empty()) throw ValidationError("unexpected character in ring element");
    if (ring.kind() == RingKind::UnivariatePoly && id == ring.variable())
      return RingElem::variable(ring);
    throw ValidationError("unknown symbol '" + id + "' in " + ring.describe() + " element");
  }
};

}  // namespace

RingElem RingElem::parse(const BaseRing& ring, std::string_view text) {
  UniParser p{UniTokenizer{text}, ring};
  RingElem v = p.parse_expr();
  if (!p.tok.done())
    throw ValidationError("trailing input in ring element: '" + std::string(text) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// ideals

PrimeIdealA PrimeIdealA::principal(RingElem g) {
  if (g.ring().kind() != RingKind::UnivariatePoly)
    throw ValidationError("prime field has no nonzero principal primes");
  if (!g.is_monic() || !is_irreducible(g))
    throw ValidationError("principal prime generator must be monic irreducible: " + g.render());
  BaseRing ring = g.ring();
  return PrimeIdealA(std::move(ring), std::move(g));
}

const RingElem& PrimeIdealA::generator() const {
  if (!gen_) throw InternalError("zero ideal has no generator");
  return *gen_;
}

int PrimeIdealA::compare(const PrimeIdealA& a, const PrimeIdealA& b) {
  if (a.is_zero() && b.is_zero()) return 0;
  if (a.is_zero()) return -1;
  if (b.is_zero()) return 1;
  return RingElem::compare(*a.gen_, *b.gen_);
}

std::string PrimeIdealA::render() const {
  return is_zero() ? "(0)" : "(" + gen_->render() + ")";
}

IdealA::IdealA(std::vector<RingElem> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw ValidationError("ideal needs at least one generator");
  for (const auto& g : gens_) check_same_ring(g, gens_.front());
  RingElem d = RingElem::zero(ring());
  for (const auto& g : gens_) d = gcd(d, g);
  if (d.is_zero()) {
    form_ = Form::Zero;
  } else if (d.is_unit()) {
    form_ = Form::Unit;
  } else {
    form_ = Form::Principal;
    principal_ = d;  // gcd is already monic
  }
}

const RingElem& IdealA::principal_generator() const {
  if (form_ != Form::Principal) throw InternalError("ideal is not principal nonunit");
  return *principal_;
}

std::string IdealA::render() const {
  switch (form_) {
    case Form::Zero: return "(0)";
    case Form::Unit: return "(1)";
    case Form::Principal: return "(" + principal_->render() + ")";
  }
  return "";
}

}  // namespace gradstab
