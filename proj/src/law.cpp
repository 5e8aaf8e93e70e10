#include "hdim/law.hpp"

#include <algorithm>
#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

GroupLaw::GroupLaw(const Ring& ring, int dim, int trunc,
                   std::vector<Series> comps, std::string label)
    : ring_(ring), dim_(dim), trunc_(trunc), comps_(std::move(comps)),
      label_(std::move(label)) {
  if (dim < 1 || 2 * dim > Monomial::kMaxVars)
    throw std::invalid_argument("law dimension out of range");
  if (static_cast<int>(comps_.size()) != dim)
    throw ValidationError("law needs exactly dim components");
  for (const auto& c : comps_) {
    if (c.ring() != ring || c.num_vars() != 2 * dim || c.trunc() != trunc)
      throw ValidationError("law component shape mismatch");
  }
}

std::string GroupLaw::variable_name(int index) const {
  if (dim_ == 1) return index == 0 ? "X" : "Y";
  if (index < dim_) return "X" + std::to_string(index + 1);
  return "Y" + std::to_string(index - dim_ + 1);
}

GroupLaw GroupLaw::additive(const Ring& ring, int dim, int trunc) {
  std::vector<Series> comps;
  for (int j = 0; j < dim; ++j) {
    Series s = Series::variable(ring, 2 * dim, trunc, j) +
               Series::variable(ring, 2 * dim, trunc, dim + j);
    comps.push_back(std::move(s));
  }
  return GroupLaw(ring, dim, trunc, std::move(comps),
                  "additive(" + std::to_string(dim) + ")");
}

GroupLaw GroupLaw::multiplicative(const Ring& ring, int trunc) {
  Series x = Series::variable(ring, 2, trunc, 0);
  Series y = Series::variable(ring, 2, trunc, 1);
  std::vector<Series> comps;
  comps.push_back(x + y + x * y);
  return GroupLaw(ring, 1, trunc, std::move(comps), "multiplicative");
}

GroupLaw GroupLaw::heisenberg(const Ring& ring, int trunc) {
  auto var = [&](int i) { return Series::variable(ring, 6, trunc, i); };
  std::vector<Series> comps;
  comps.push_back(var(0) + var(3));
  comps.push_back(var(1) + var(4));
  comps.push_back(var(2) + var(5) + var(0) * var(4));
  return GroupLaw(ring, 3, trunc, std::move(comps), "heisenberg");
}

GroupLaw GroupLaw::product(const GroupLaw& a, const GroupLaw& b) {
  if (a.ring() != b.ring() || a.trunc() != b.trunc())
    throw ValidationError("product factors must share ring and truncation");
  int da = a.dim(), db = b.dim(), d = da + db;
  std::vector<Series> comps;
  std::vector<int> map_a(static_cast<size_t>(2 * da));
  for (int i = 0; i < da; ++i) {
    map_a[static_cast<size_t>(i)] = i;           // X_i -> X_i
    map_a[static_cast<size_t>(da + i)] = d + i;  // Y_i -> Y_i
  }
  std::vector<int> map_b(static_cast<size_t>(2 * db));
  for (int i = 0; i < db; ++i) {
    map_b[static_cast<size_t>(i)] = da + i;
    map_b[static_cast<size_t>(db + i)] = d + da + i;
  }
  for (int j = 0; j < da; ++j)
    comps.push_back(remap_variables(a.component(j), 2 * d, map_a));
  for (int j = 0; j < db; ++j)
    comps.push_back(remap_variables(b.component(j), 2 * d, map_b));
  return GroupLaw(a.ring(), d, a.trunc(), std::move(comps),
                  "product(" + a.label() + ", " + b.label() + ")");
}

bool GroupLaw::is_additive() const {
  for (int j = 0; j < dim_; ++j) {
    Series expect = Series::variable(ring_, 2 * dim_, trunc_, j) +
                    Series::variable(ring_, 2 * dim_, trunc_, dim_ + j);
    if (component(j) != expect) return false;
  }
  return true;
}

GroupLaw GroupLaw::truncated(int m) const {
  if (m == trunc_) return *this;
  std::vector<Series> comps;
  for (const auto& c : comps_) comps.push_back(c.truncated(m));
  return GroupLaw(ring_, dim_, m, std::move(comps), label_);
}

namespace {

GroupLaw parse_builtin(const std::string& text, size_t* pos, const Ring& ring,
                       int trunc);

std::string take_identifier(const std::string& text, size_t* pos) {
  while (*pos < text.size() && std::isspace(static_cast<unsigned char>(text[*pos])))
    ++*pos;
  size_t start = *pos;
  while (*pos < text.size() &&
         (std::isalnum(static_cast<unsigned char>(text[*pos])) || text[*pos] == '_'))
    ++*pos;
  return text.substr(start, *pos - start);
}

bool take_char(const std::string& text, size_t* pos, char c) {
  while (*pos < text.size() && std::isspace(static_cast<unsigned char>(text[*pos])))
    ++*pos;
  if (*pos < text.size() && text[*pos] == c) {
    ++*pos;
    return true;
  }
  return false;
}

GroupLaw parse_builtin(const std::string& text, size_t* pos, const Ring& ring,
                       int trunc) {
  std::string name = take_identifier(text, pos);
  if (name == "additive") {
    int d = 1;
    if (take_char(text, pos, '(')) {
      std::string ds = take_identifier(text, pos);
      if (ds.empty() || !take_char(text, pos, ')'))
        throw ValidationError("additive(d): malformed dimension");
      d = std::stoi(ds);
    }
    return GroupLaw::additive(ring, d, trunc);
  }
  if (name == "multiplicative") {
    if (take_char(text, pos, '(')) {
      std::string ds = take_identifier(text, pos);
      if (!take_char(text, pos, ')') || (ds != "1" && !ds.empty()))
        throw ValidationError("multiplicative law has dimension 1");
    }
    return GroupLaw::multiplicative(ring, trunc);
  }
  if (name == "heisenberg") return GroupLaw::heisenberg(ring, trunc);
  if (name == "product") {
    if (!take_char(text, pos, '('))
      throw ValidationError("product(...) needs arguments");
    GroupLaw acc = parse_builtin(text, pos, ring, trunc);
    while (take_char(text, pos, ','))
      acc = GroupLaw::product(acc, parse_builtin(text, pos, ring, trunc));
    if (!take_char(text, pos, ')'))
      throw ValidationError("product(...): missing ')'");
    return acc;
  }
  throw ValidationError("unknown builtin law '" + name + "'");
}

}  // namespace

GroupLaw builtin_law(const std::string& name, const Ring& ring, int dim,
                     int trunc) {
  size_t pos = 0;
  GroupLaw law = parse_builtin(name, &pos, ring, trunc);
  while (pos < name.size() && std::isspace(static_cast<unsigned char>(name[pos])))
    ++pos;
  if (pos != name.size())
    throw ValidationError("trailing characters after law name '" + name + "'");
  if (dim > 0 && law.dim() != dim)
    throw ValidationError("law '" + name + "' has dimension " +
                          std::to_string(law.dim()) + ", scenario says " +
                          std::to_string(dim));
  return law;
}

std::vector<LawViolation> validate_law(const GroupLaw& law) {
  std::vector<LawViolation> out;
  int d = law.dim();
  auto namer = [&](int i) { return law.variable_name(i); };
  for (int j = 0; j < d; ++j) {
    const Series& f = law.component(j);
    if (!f.constant_term().is_zero())
      out.push_back({j + 1, "1", "constant-term",
                     "component has a nonzero constant term"});
    for (int v = 0; v < 2 * d; ++v) {
      Element c = f.linear_coefficient(v);
      bool want_one = (v == j || v == d + j);
      Element one = Element::from_int(law.ring(), law.trunc(), 1);
      if (want_one ? c != one : !c.is_zero()) {
        out.push_back({j + 1, Monomial::variable(v).to_string(namer),
                       "linear-part",
                       "linear part must be exactly X" + std::to_string(j + 1) +
                           " + Y" + std::to_string(j + 1)});
      }
    }
    for (const auto& [m, c] : f.terms()) {
      if (m.degree() < 2) continue;
      std::uint32_t xdeg = 0, ydeg = 0;
      for (int v = 0; v < d; ++v) xdeg += m.exponent(v);
      for (int v = d; v < 2 * d; ++v) ydeg += m.exponent(v);
      if (xdeg == 0 || ydeg == 0)
        out.push_back({j + 1, m.to_string(namer), "mixed-monomial",
                       std::string("monomial lacks a positive ") +
                           (xdeg == 0 ? "X" : "Y") + " power"});
    }
  }
  return out;
}

Presentation::Presentation(GroupLaw law, int level, bool relax_level_rule)
    : law_(std::move(law)), level_(level) {
  int min_level = law_.ring().min_level(relax_level_rule);
  if (level < min_level)
    throw ValidationError("presentation level must be >= " +
                          std::to_string(min_level) + " for " +
                          law_.ring().describe());
  if (law_.trunc() <= level)
    throw ValidationError("truncation must exceed the level");
  auto violations = validate_law(law_);
  if (!violations.empty())
    throw ValidationError("law fails validation: component " +
                          std::to_string(violations.front().component) + ", " +
                          violations.front().rule + " (" +
                          violations.front().monomial + ")");
}

std::int64_t Presentation::ambient_log_index(int steps) const {
  return dim() * ring().filtration_exponent(level_, steps) *
         ring().residue_log_p();
}

Tuple zero_tuple(const Presentation& p) { return zero_tuple(p, p.trunc()); }

Tuple zero_tuple(const Presentation& p, int trunc) {
  return Tuple(static_cast<size_t>(p.dim()), Element(p.ring(), trunc));
}

int tuple_valuation(const Tuple& x) {
  int v = x.empty() ? 0 : x.front().trunc();
  for (const auto& c : x) v = std::min(v, c.valuation());
  return v;
}

Tuple truncate_tuple(const Tuple& x, int m) {
  Tuple r;
  r.reserve(x.size());
  for (const auto& c : x) r.push_back(c.truncated(m));
  return r;
}

std::string tuple_key(const Tuple& x) {
  std::string k;
  for (const auto& c : x) c.append_key(&k);
  return k;
}

std::string tuple_to_string(const Tuple& x) {
  std::string out = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += x[i].to_string();
  }
  return out + ")";
}

bool tuple_equal(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

namespace {

void check_point(const Presentation& p, const Tuple& x) {
  if (static_cast<int>(x.size()) != p.dim())
    throw ValidationError("tuple arity does not match the dimension");
  for (const auto& c : x) {
    if (c.ring() != p.ring()) throw ValidationError("ring mismatch");
    if (c.trunc() > p.trunc())
      throw ValidationError("tuple precision exceeds the law truncation");
    if (c.valuation() < p.level())
      throw ValidationError("coordinate valuation below the level");
  }
}

}  // namespace

Tuple law_multiply(const Presentation& p, const Tuple& x, const Tuple& y) {
  check_point(p, x);
  check_point(p, y);
  int at = x.front().trunc();
  for (const auto& c : y)
    if (c.trunc() != at) throw ValidationError("truncation mismatch");
  std::vector<Element> args;
  args.reserve(x.size() + y.size());
  for (const auto& c : x) args.push_back(c);
  for (const auto& c : y) args.push_back(c);
  Tuple out;
  out.reserve(static_cast<size_t>(p.dim()));
  for (int j = 0; j < p.dim(); ++j)
    out.push_back(p.law().component(j).evaluate(args));
  return out;
}

Tuple law_inverse(const Presentation& p, const Tuple& x) {
  check_point(p, x);
  int at = x.front().trunc();
  Tuple y;
  y.reserve(x.size());
  for (const auto& c : x) y.push_back(-c);
  for (int pass = 0; pass <= at + 1; ++pass) {
    Tuple defect = law_multiply(p, x, y);
    bool zero = true;
    for (const auto& c : defect) zero = zero && c.is_zero();
    if (zero) {
      // the law guarantees the one-sided fixed point is two-sided; verify
      Tuple other = law_multiply(p, y, x);
      for (const auto& c : other)
        if (!c.is_zero())
          throw ValidationError("one-sided inverse only; law is not a group");
      return y;
    }
    for (size_t j = 0; j < y.size(); ++j) y[j] = y[j] - defect[j];
  }
  throw ValidationError("inversion did not converge; law is invalid");
}

Tuple random_tuple(const Presentation& p, std::mt19937_64& rng) {
  Tuple out;
  out.reserve(static_cast<size_t>(p.dim()));
  if (p.ring().is_padic()) {
    std::uint64_t span = padic_modulus(p.ring().p(), p.trunc() - p.level());
    std::uint64_t shift = padic_modulus(p.ring().p(), p.level());
    for (int j = 0; j < p.dim(); ++j) {
      std::uint64_t a = rng() % span;
      out.push_back(Element::from_int(p.ring(), p.trunc(),
                                      static_cast<std::int64_t>(a * shift)));
    }
    return out;
  }
  auto basis = p.ring().monomials_in_degree_range(p.level(), p.trunc());
  for (int j = 0; j < p.dim(); ++j) {
    Element e(p.ring(), p.trunc());
    for (const auto& m : basis) {
      std::uint32_t c = static_cast<std::uint32_t>(rng() % p.ring().q());
      if (c) e = e + Element::monomial(p.ring(), p.trunc(), m, c);
    }
    out.push_back(e);
  }
  return out;
}

std::optional<std::array<Tuple, 3>> find_associativity_violation(
    const Presentation& p, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    Tuple x = random_tuple(p, rng);
    Tuple y = random_tuple(p, rng);
    Tuple z = random_tuple(p, rng);
    Tuple left = law_multiply(p, law_multiply(p, x, y), z);
    Tuple right = law_multiply(p, x, law_multiply(p, y, z));
    if (!tuple_equal(left, right)) return std::array<Tuple, 3>{x, y, z};
  }
  return std::nullopt;
}

}  // namespace hdim
