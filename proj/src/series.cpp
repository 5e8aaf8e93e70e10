#include "hdim/series.hpp"

#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

Series::Series(const Ring& ring, int num_vars, int trunc)
    : ring_(ring), num_vars_(num_vars), trunc_(trunc) {
  if (num_vars < 1 || num_vars > Monomial::kMaxVars)
    throw std::invalid_argument("series variable count out of range");
  if (trunc < 2 || trunc > 16)
    throw std::invalid_argument("series truncation must be in [2, 16]");
}

Series Series::variable(const Ring& ring, int num_vars, int trunc, int index) {
  Series s(ring, num_vars, trunc);
  if (index < 0 || index >= num_vars)
    throw std::out_of_range("series variable index out of range");
  s.add_term(Monomial::variable(index), Element::from_int(ring, trunc, 1));
  return s;
}

Series Series::constant(const Ring& ring, int num_vars, int trunc,
                        const Element& c) {
  Series s(ring, num_vars, trunc);
  s.add_term(Monomial(), c);
  return s;
}

void Series::add_term(const Monomial& m, const Element& c) {
  if (m.degree() >= static_cast<std::uint32_t>(trunc_)) return;
  Element cc = c.trunc() == trunc_ ? c : c.truncated(trunc_);
  if (cc.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, cc);
  if (!fresh) {
    Element sum = it->second + cc;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = sum;
  }
}

void Series::check_compatible(const Series& o) const {
  if (ring_ != o.ring_ || num_vars_ != o.num_vars_ || trunc_ != o.trunc_)
    throw ValidationError("series shape mismatch");
}

Series Series::operator+(const Series& o) const {
  check_compatible(o);
  Series r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Series Series::operator-() const {
  Series r(ring_, num_vars_, trunc_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  check_compatible(o);
  Series r(ring_, num_vars_, trunc_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      if (ma.degree() + mb.degree() >= static_cast<std::uint32_t>(trunc_))
        continue;
      r.add_term(ma.times(mb), ca * cb);
    }
  }
  return r;
}

bool Series::operator==(const Series& o) const {
  return ring_ == o.ring_ && num_vars_ == o.num_vars_ && trunc_ == o.trunc_ &&
         terms_ == o.terms_;
}

Series Series::scaled(const Element& c) const {
  Series r(ring_, num_vars_, trunc_);
  for (const auto& [m, coeff] : terms_) r.add_term(m, coeff * c);
  return r;
}

Series Series::truncated(int m) const {
  Series r(ring_, num_vars_, m);
  for (const auto& [mon, c] : terms_)
    if (mon.degree() < static_cast<std::uint32_t>(m))
      r.add_term(mon, c.truncated(m));
  return r;
}

Series Series::pow(std::uint32_t k) const {
  Series r = constant(ring_, num_vars_, trunc_,
                      Element::from_int(ring_, trunc_, 1));
  for (std::uint32_t i = 0; i < k; ++i) r = r * (*this);
  return r;
}

Element Series::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Element(ring_, trunc_) : it->second;
}

Element Series::linear_coefficient(int var) const {
  auto it = terms_.find(Monomial::variable(var));
  return it == terms_.end() ? Element(ring_, trunc_) : it->second;
}

int Series::min_degree() const {
  if (terms_.empty()) return trunc_;
  return static_cast<int>(terms_.begin()->first.degree());
}

Element Series::evaluate(std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != num_vars_)
    throw ValidationError("evaluation arity mismatch");
  int at = args.empty() ? trunc_ : args[0].trunc();
  for (const auto& a : args) {
    if (a.trunc() != at) throw ValidationError("argument truncation mismatch");
    if (a.valuation() < 1)
      throw ValidationError("evaluation arguments must lie in m");
  }
  if (at > trunc_) throw ValidationError("argument precision exceeds series");
  // power cache per variable
  std::vector<std::vector<Element>> powers(static_cast<size_t>(num_vars_));
  Element acc(ring_, at);
  for (const auto& [m, c] : terms_) {
    // degree cut: a term of variable-degree >= at contributes only into m^at
    if (m.degree() >= static_cast<std::uint32_t>(at) && m.degree() > 0)
      continue;
    Element prod = c.trunc() == at ? c : c.truncated(at);
    for (int v = 0; v < num_vars_ && !prod.is_zero(); ++v) {
      std::uint32_t e = m.exponent(v);
      if (e == 0) continue;
      auto& cache = powers[static_cast<size_t>(v)];
      if (cache.empty()) cache.push_back(args[static_cast<size_t>(v)]);
      while (cache.size() < e)
        cache.push_back(cache.back() * args[static_cast<size_t>(v)]);
      prod = prod * cache[e - 1];
    }
    acc = acc + prod;
  }
  return acc;
}

Series Series::substituted(const std::vector<Series>& inner) const {
  if (static_cast<int>(inner.size()) != num_vars_)
    throw ValidationError("substitution arity mismatch");
  for (const auto& s : inner) {
    if (!s.constant_term().is_zero())
      throw ValidationError("constant-term violation in substitution");
    if (s.trunc() != trunc_ || s.ring() != ring_)
      throw ValidationError("substitution shape mismatch");
  }
  int out_vars = inner.front().num_vars();
  Series acc(ring_, out_vars, trunc_);
  std::vector<std::vector<Series>> powers(static_cast<size_t>(num_vars_));
  for (const auto& [m, c] : terms_) {
    Series prod = Series::constant(ring_, out_vars, trunc_, c);
    for (int v = 0; v < num_vars_ && !prod.is_zero(); ++v) {
      std::uint32_t e = m.exponent(v);
      if (e == 0) continue;
      auto& cache = powers[static_cast<size_t>(v)];
      if (cache.empty()) cache.push_back(inner[static_cast<size_t>(v)]);
      while (cache.size() < e)
        cache.push_back(cache.back() * inner[static_cast<size_t>(v)]);
      prod = prod * cache[e - 1];
    }
    acc = acc + prod;
  }
  return acc;
}

std::string Series::to_string(
    const std::function<std::string(int)>& var_name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string();
    if (m.is_constant()) {
      out += cs;
    } else {
      std::string ms = m.to_string(var_name);
      if (cs == "1")
        out += ms;
      else if (cs.find(' ') != std::string::npos ||
               cs.find('+') != std::string::npos)
        out += "(" + cs + ")*" + ms;
      else
        out += cs + "*" + ms;
    }
  }
  return out;
}

Series remap_variables(const Series& s, int new_num_vars,
                       const std::vector<int>& var_map) {
  if (static_cast<int>(var_map.size()) != s.num_vars())
    throw std::invalid_argument("variable map arity mismatch");
  Series r(s.ring(), new_num_vars, s.trunc());
  for (const auto& [m, c] : s.terms()) {
    Monomial nm;
    for (int v = 0; v < s.num_vars(); ++v) {
      std::uint32_t e = m.exponent(v);
      if (e > 0) nm = nm.times(Monomial::variable(var_map[static_cast<size_t>(v)], e));
    }
    r.add_term(nm, c);
  }
  return r;
}

}  // namespace hdim
