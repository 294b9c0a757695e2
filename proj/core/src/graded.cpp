#include "gradstab/graded.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gradstab {

int exp_total(const ExpVec& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

bool exp_divides(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// ---------------------------------------------------------------------------
// GradedRing

GradedRing::GradedRing(BaseRing base, std::vector<std::string> variables)
    : base_(std::move(base)), vars_(std::move(variables)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].empty()) throw ValidationError("graded ring variable name empty");
    if (base_.kind() == RingKind::UnivariatePoly && vars_[i] == base_.variable())
      throw ValidationError("graded variable '" + vars_[i] + "' collides with the base variable");
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j])
        throw ValidationError("duplicate graded variable '" + vars_[i] + "'");
  }
}

static void gen_monomials(int degree, std::size_t pos, std::size_t nvars, ExpVec& cur,
                          std::vector<ExpVec>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= degree; ++e) {
    cur[pos] = e;
    gen_monomials(degree - e, pos + 1, nvars, cur, out);
  }
}

std::vector<ExpVec> GradedRing::monomials(int degree) const {
  std::vector<ExpVec> out;
  if (degree < 0) return out;
  if (nvars() == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  ExpVec cur(nvars(), 0);
  gen_monomials(degree, 0, nvars(), cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GradedRing::monomial_count(int degree, std::size_t nvars) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(degree + nvars - 1, nvars - 1)
  std::size_t num = 1, den = 1;
  for (std::size_t i = 1; i < nvars; ++i) {
    num *= static_cast<std::size_t>(degree) + i;
    den *= i;
  }
  return num / den;
}

std::string GradedRing::describe() const {
  std::string s = base_.describe() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += vars_[i];
  }
  return s + "]";
}

RingInclusion RingInclusion::identify(GradedRing small, GradedRing big) {
  std::vector<std::size_t> map;
  for (const auto& v : small.vars()) {
    auto it = std::find(big.vars().begin(), big.vars().end(), v);
    if (it == big.vars().end())
      throw ValidationError("R-variable " + v + " not in S");
    map.push_back(static_cast<std::size_t>(it - big.vars().begin()));
  }
  if (!(small.base() == big.base()))
    throw ValidationError("ring inclusion requires equal coefficient rings");
  return RingInclusion(std::move(small), std::move(big), std::move(map));
}

ExpVec RingInclusion::inject(const ExpVec& small_exp) const {
  ExpVec r(big_.nvars(), 0);
  for (std::size_t i = 0; i < var_map_.size(); ++i) r[var_map_[i]] = small_exp[i];
  return r;
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly MultiPoly::monomial(const BaseRing& base, ExpVec e, RingElem coeff) {
  MultiPoly p(base, e.size());
  p.add_term(e, coeff);
  return p;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = exp_total(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (exp_total(e) != d) return false;
  return true;
}

int MultiPoly::degree_or(int fallback) const {
  if (terms_.empty()) return fallback;
  return exp_total(terms_.begin()->first);
}

void MultiPoly::add_term(const ExpVec& e, const RingElem& c) {
  if (e.size() != nvars_) throw InternalError("MultiPoly term arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    RingElem s = it->second + c;
    if (s.is_zero()) terms_.erase(it);
    else it->second = s;
  }
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(base_, nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r(a.base_, a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

MultiPoly MultiPoly::injected(const RingInclusion& incl) const {
  MultiPoly r(base_, incl.big().nvars());
  for (const auto& [e, c] : terms_) r.add_term(incl.inject(e), c);
  return r;
}

std::string render_monomial(const ExpVec& e, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string MultiPoly::render(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string mono = render_monomial(e, vars);
    std::string coeff = c.render();
    if (mono.empty()) {
      os << (coeff.find(' ') != std::string::npos ? "(" + coeff + ")" : coeff);
    } else if (c.is_one()) {
      os << mono;
    } else if (coeff.find(' ') != std::string::npos || coeff.find('*') != std::string::npos) {
      os << "(" << coeff << ")*" << mono;
    } else {
      os << coeff << "*" << mono;
    }
  }
  return os.str();
}

namespace {

struct PolyTokenizer {
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
    if (pos == start)
      throw ValidationError("polynomial parse: expected integer at position " +
                            std::to_string(pos));
    return v;
  }
  std::string read_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return std::string(s.substr(start, pos - start));
  }
};

struct PolyParser {
  PolyTokenizer tok;
  const GradedRing& ring;

  MultiPoly parse_expr() {
    bool neg = tok.accept('-');
    MultiPoly v = parse_term();
    if (neg) v = -v;
    for (;;) {
      if (tok.accept('+')) v = v + parse_term();
      else if (tok.accept('-')) v = v - parse_term();
      else return v;
    }
  }
  MultiPoly parse_term() {
    MultiPoly v = parse_factor();
    while (tok.accept('*')) v = v * parse_factor();
    return v;
  }
  MultiPoly parse_factor() {
    MultiPoly v = parse_atom();
    if (tok.accept('^')) {
      std::uint64_t e = tok.read_uint();
      MultiPoly r = MultiPoly::monomial(ring.base(), ExpVec(ring.nvars(), 0),
                                        RingElem::one(ring.base()));
      for (std::uint64_t i = 0; i < e; ++i) r = r * v;
      return r;
    }
    return v;
  }
  MultiPoly parse_atom() {
    char c = tok.peek();
    if (c == '(') {
      tok.accept('(');
      MultiPoly v = parse_expr();
      if (!tok.accept(')')) throw ValidationError("polynomial parse: expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto v = static_cast<std::int64_t>(tok.read_uint());
      return MultiPoly::monomial(ring.base(), ExpVec(ring.nvars(), 0),
                                 RingElem::constant(ring.base(), v));
    }
    std::string id = tok.read_ident();
    if (id.empty()) throw ValidationError("polynomial parse: unexpected character");
    if (ring.base().kind() == RingKind::UnivariatePoly && id == ring.base().variable())
      return MultiPoly::monomial(ring.base(), ExpVec(ring.nvars(), 0),
                                 RingElem::variable(ring.base()));
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      if (ring.vars()[i] == id) {
        ExpVec e(ring.nvars(), 0);
        e[i] = 1;
        return MultiPoly::monomial(ring.base(), std::move(e), RingElem::one(ring.base()));
      }
    }
    throw ValidationError("polynomial parse: unknown variable '" + id + "' in " +
                          ring.describe());
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const GradedRing& ring, std::string_view text) {
  PolyParser p{PolyTokenizer{text}, ring};
  MultiPoly v = p.parse_expr();
  if (!p.tok.done())
    throw ValidationError("polynomial parse: trailing input in '" + std::string(text) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// GradedModule

GradedModule::GradedModule(GradedRing ring, std::vector<int> gen_twists,
                           std::vector<int> rel_twists,
                           std::vector<std::vector<MultiPoly>> entries)
    : ring_(std::move(ring)), gen_twists_(std::move(gen_twists)),
      rel_twists_(std::move(rel_twists)), entries_(std::move(entries)) {
  if (entries_.size() != gen_twists_.size())
    throw ValidationError("graded module: matrix row count != generator count");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].size() != rel_twists_.size())
      throw ValidationError("graded module: matrix column count != relation count in row " +
                            std::to_string(i));
    for (std::size_t j = 0; j < entries_[i].size(); ++j) {
      const MultiPoly& e = entries_[i][j];
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || e.degree_or(-1) != rel_twists_[j] - gen_twists_[i])
        throw ValidationError("graded module: entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is not homogeneous of degree " +
                              std::to_string(rel_twists_[j] - gen_twists_[i]));
    }
  }
}

GradedModule GradedModule::free(GradedRing ring, std::vector<int> gen_twists) {
  std::vector<std::vector<MultiPoly>> entries(gen_twists.size());
  return GradedModule(std::move(ring), std::move(gen_twists), {}, std::move(entries));
}

int GradedModule::min_gen_twist() const {
  int m = 0;
  bool first = true;
  for (int a : gen_twists_) {
    if (first || a < m) m = a;
    first = false;
  }
  return m;
}

std::vector<std::pair<std::size_t, ExpVec>> GradedModule::component_basis(int n) const {
  std::vector<std::pair<std::size_t, ExpVec>> basis;
  for (std::size_t i = 0; i < gen_twists_.size(); ++i)
    for (auto& e : ring_.monomials(n - gen_twists_[i])) basis.emplace_back(i, e);
  return basis;
}

namespace {

/// Index lookup for a component basis, block by generator.
struct BasisIndex {
  std::vector<std::vector<ExpVec>> per_gen;
  std::vector<std::size_t> offset;

  BasisIndex(const GradedRing& ring, const std::vector<int>& twists, int n) {
    std::size_t off = 0;
    for (int a : twists) {
      per_gen.push_back(ring.monomials(n - a));
      offset.push_back(off);
      off += per_gen.back().size();
    }
  }
  std::size_t size() const {
    return offset.empty() ? 0 : offset.back() + per_gen.back().size();
  }
  /// Position of monomial e in generator block i; the monomial must exist.
  std::size_t locate(std::size_t i, const ExpVec& e) const {
    const auto& v = per_gen[i];
    auto it = std::lower_bound(v.begin(), v.end(), e);
    if (it == v.end() || *it != e)
      throw InternalError("component basis lookup failed");
    return offset[i] + static_cast<std::size_t>(it - v.begin());
  }
};

}  // namespace

FPModule GradedModule::component(int n) const {
  BasisIndex basis(ring_, gen_twists_, n);
  std::size_t g = basis.size();
  std::vector<Mat> cols;
  std::size_t c = 0;
  for (std::size_t j = 0; j < rel_twists_.size(); ++j)
    c += ring_.monomials(n - rel_twists_[j]).size();
  Mat pres(ring_.base(), g, c);
  std::size_t col = 0;
  for (std::size_t j = 0; j < rel_twists_.size(); ++j) {
    for (const auto& mu : ring_.monomials(n - rel_twists_[j])) {
      for (std::size_t i = 0; i < gen_twists_.size(); ++i) {
        for (const auto& [nu, coeff] : entries_[i][j].terms()) {
          std::size_t row = basis.locate(i, exp_add(nu, mu));
          pres.set(row, col, pres.at(row, col) + coeff);
        }
      }
      ++col;
    }
  }
  return FPModule(std::move(pres));
}

FPMap GradedModule::mult_map(int n, std::size_t var) const {
  if (var >= ring_.nvars()) throw ValidationError("mult_map: no such variable");
  FPModule src = component(n);
  FPModule tgt = component(n + 1);
  BasisIndex bsrc(ring_, gen_twists_, n);
  BasisIndex btgt(ring_, gen_twists_, n + 1);
  Mat m(ring_.base(), tgt.gens(), src.gens());
  ExpVec ev(ring_.nvars(), 0);
  ev[var] = 1;
  std::size_t colidx = 0;
  for (std::size_t i = 0; i < gen_twists_.size(); ++i)
    for (const auto& mu : bsrc.per_gen[i]) {
      m.set(btgt.locate(i, exp_add(mu, ev)), colidx, RingElem::one(ring_.base()));
      ++colidx;
    }
  return FPMap(std::move(src), std::move(tgt), std::move(m));
}

// ---------------------------------------------------------------------------
// GradedMap

GradedMap::GradedMap(GradedModule source, GradedModule target, RingInclusion rings,
                     std::vector<std::vector<MultiPoly>> entries)
    : src_(std::move(source)), tgt_(std::move(target)), rings_(std::move(rings)),
      entries_(std::move(entries)) {
  if (!(src_.ring() == rings_.small()) || !(tgt_.ring() == rings_.big()))
    throw ValidationError("graded map: modules do not match the ring inclusion");
  if (entries_.size() != tgt_.gen_twists().size())
    throw ValidationError("graded map: matrix row count != target generator count");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].size() != src_.gen_twists().size())
      throw ValidationError("graded map: matrix column count != source generator count");
    for (std::size_t i = 0; i < entries_[k].size(); ++i) {
      const MultiPoly& e = entries_[k][i];
      if (e.is_zero()) continue;
      int want = src_.gen_twists()[i] - tgt_.gen_twists()[k];
      if (!e.is_homogeneous() || e.degree_or(-1) != want)
        throw ValidationError("graded map: entry (" + std::to_string(k) + "," +
                              std::to_string(i) + ") is not homogeneous of degree " +
                              std::to_string(want));
    }
  }
}

FPMap GradedMap::component(int n) const {
  FPModule src = src_.component(n);
  FPModule tgt = tgt_.component(n);
  BasisIndex btgt(rings_.big(), tgt_.gen_twists(), n);
  Mat m(src_.ring().base(), tgt.gens(), src.gens());
  std::size_t col = 0;
  for (std::size_t i = 0; i < src_.gen_twists().size(); ++i) {
    for (const auto& mu : rings_.small().monomials(n - src_.gen_twists()[i])) {
      ExpVec big_mu = rings_.inject(mu);
      for (std::size_t k = 0; k < tgt_.gen_twists().size(); ++k) {
        for (const auto& [nu, coeff] : entries_[k][i].terms()) {
          std::size_t row = btgt.locate(k, exp_add(nu, big_mu));
          m.set(row, col, m.at(row, col) + coeff);
        }
      }
      ++col;
    }
  }
  if (!FPMap::well_defined(src, tgt, m))
    throw ValidationError("graded map: not well-defined on presentations at degree " +
                          std::to_string(n));
  return FPMap(std::move(src), std::move(tgt), std::move(m));
}

}  // namespace gradstab
