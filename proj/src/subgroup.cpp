#include "hdim/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

Tuple tuple_add(const Tuple& a, const Tuple& b) {
  Tuple r;
  r.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

int val64(std::uint64_t x, std::uint32_t p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

// rank of rows over F_q, destructive Gaussian elimination
std::int64_t gf_rank(const ResidueField& field,
                     std::vector<std::vector<std::uint32_t>> rows) {
  if (rows.empty()) return 0;
  size_t ncols = rows.front().size();
  size_t rank = 0;
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    std::uint32_t inv = field.inv(rows[rank][col]);
    for (size_t j = col; j < ncols; ++j)
      rows[rank][j] = field.mul(rows[rank][j], inv);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      std::uint32_t f = rows[i][col];
      for (size_t j = col; j < ncols; ++j)
        rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

// log_p of the subgroup of (Z/p^K)^d generated by the rows: repeated
// minimal-valuation pivoting with row and column shears (both preserve
// the subgroup size).
std::int64_t padic_span_log(std::uint32_t p, int K,
                            std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  std::uint64_t P = padic_modulus(p, K);
  size_t nrows = rows.size(), ncols = rows.front().size();
  for (auto& r : rows)
    for (auto& x : r) x %= P;
  std::int64_t log = 0;
  size_t top = 0, left = 0;
  while (top < nrows && left < ncols) {
    int best = K;
    size_t bi = top, bj = left;
    for (size_t i = top; i < nrows; ++i)
      for (size_t j = left; j < ncols; ++j) {
        int v = val64(rows[i][j], p, K);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best >= K) break;
    std::swap(rows[top], rows[bi]);
    for (auto& r : rows) std::swap(r[left], r[bj]);
    std::uint64_t pv = padic_modulus(p, best);
    std::uint64_t unit = rows[top][left] / pv;
    // make the pivot exactly p^v
    std::uint64_t uinv = 1;
    {
      // inverse of `unit` mod P via Euclid
      __int128 r0 = unit, r1 = P, s0 = 1, s1 = 0;
      while (r1 != 0) {
        __int128 qt = r0 / r1;
        __int128 t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
      }
      __int128 inv = s0 % static_cast<__int128>(P);
      if (inv < 0) inv += P;
      uinv = static_cast<std::uint64_t>(inv);
    }
    for (size_t j = left; j < ncols; ++j)
      rows[top][j] = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(rows[top][j]) * uinv % P);
    for (size_t i = 0; i < nrows; ++i) {
      if (i == top || rows[i][left] == 0) continue;
      std::uint64_t f = rows[i][left] / pv;
      for (size_t j = left; j < ncols; ++j) {
        unsigned __int128 sub =
            static_cast<unsigned __int128>(f) * rows[top][j] % P;
        rows[i][j] = static_cast<std::uint64_t>(
            (rows[i][j] + P - static_cast<std::uint64_t>(sub)) % P);
      }
    }
    for (size_t j = left + 1; j < ncols; ++j) {
      if (rows[top][j] == 0) continue;
      std::uint64_t f = rows[top][j] / pv;
      for (size_t i = 0; i < nrows; ++i) {
        unsigned __int128 sub =
            static_cast<unsigned __int128>(f) * rows[i][left] % P;
        rows[i][j] = static_cast<std::uint64_t>(
            (rows[i][j] + P - static_cast<std::uint64_t>(sub)) % P);
      }
    }
    log += K - best;
    ++top;
    ++left;
  }
  return log;
}

// F_q row vector of a tuple on the monomial basis [base_level, cut)
std::vector<std::uint32_t> series_row(const Tuple& x,
                                      const std::vector<Monomial>& basis,
                                      int cut) {
  std::vector<std::uint32_t> row(basis.size() * x.size(), 0);
  for (size_t j = 0; j < x.size(); ++j) {
    Element e = x[j].trunc() == cut ? x[j] : x[j].truncated(cut);
    for (size_t b = 0; b < basis.size(); ++b)
      row[j * basis.size() + b] = e.coefficient(basis[b]);
  }
  return row;
}

std::vector<std::uint64_t> padic_row(const Tuple& x, int cut) {
  std::vector<std::uint64_t> row;
  row.reserve(x.size());
  for (const auto& c : x) row.push_back(c.truncated(cut).residue());
  return row;
}

// all rows mu * u_i at precision `cut` for monomials of degree <= max_deg
std::vector<std::vector<std::uint32_t>> module_span_rows(
    const Presentation& p, const std::vector<Tuple>& gens, int max_deg,
    const std::vector<Monomial>& basis, int cut) {
  std::vector<std::vector<std::uint32_t>> rows;
  auto mults = p.ring().monomials_in_degree_range(0, max_deg + 1);
  for (const auto& u : gens) {
    for (const auto& mu : mults) {
      Tuple mu_u;
      mu_u.reserve(u.size());
      for (const auto& c : u)
        mu_u.push_back(c.truncated(cut).times_monomial(mu));
      if (tuple_valuation(mu_u) >= cut) continue;
      rows.push_back(series_row(mu_u, basis, cut));
    }
  }
  return rows;
}

Tuple reduce_gen(const Tuple& g, int cut) {
  Tuple r;
  r.reserve(g.size());
  for (const auto& c : g) r.push_back(c.truncated(cut));
  return r;
}

}  // namespace

std::string spec_kind_name(const SubgroupSpec& spec) {
  if (std::holds_alternative<GeneratedSpec>(spec)) return "generated";
  if (std::holds_alternative<ModuleSpanSpec>(spec)) return "module_span";
  return "valuation_set";
}

void validate_spec(const Presentation& p, const SubgroupSpec& spec) {
  auto check_gens = [&](const std::vector<Tuple>& gens) {
    for (const auto& g : gens) {
      if (static_cast<int>(g.size()) != p.dim())
        throw ValidationError("generator arity does not match the dimension");
      for (const auto& c : g) {
        if (c.ring() != p.ring())
          throw ValidationError("generator ring mismatch");
        if (c.trunc() != p.trunc())
          throw ValidationError("generator truncation mismatch");
      }
      if (tuple_valuation(g) < p.level())
        throw ValidationError(
            "generator coordinates must have valuation >= the level");
    }
  };
  if (const auto* gen = std::get_if<GeneratedSpec>(&spec)) {
    check_gens(gen->gens);
  } else if (const auto* span = std::get_if<ModuleSpanSpec>(&spec)) {
    check_gens(span->gens);
  } else {
    const auto& vs = std::get<ValuationSetSpec>(spec);
    if (p.ring().is_padic() || p.ring().num_vars() != 1)
      throw ValidationError(
          "valuation sets live in one-variable power series rings");
    if (vs.period.empty())
      throw ValidationError("valuation set period must be nonempty");
    if (vs.coordinate < 1 || vs.coordinate > p.dim())
      throw ValidationError("valuation set coordinate out of range");
  }
}

bool vset_bit(const ValuationSetSpec& spec, int offset) {
  if (offset < 0) return false;
  size_t i = static_cast<size_t>(offset);
  if (i < spec.preperiod.size()) return spec.preperiod[i] != 0;
  size_t j = (i - spec.preperiod.size()) % spec.period.size();
  return spec.period[j] != 0;
}

std::int64_t vset_count(const ValuationSetSpec& spec, int from, int to) {
  std::int64_t c = 0;
  for (int i = from; i < to; ++i)
    if (vset_bit(spec, i)) ++c;
  return c;
}

Rational vset_period_density(const ValuationSetSpec& spec) {
  std::int64_t bits = 0;
  for (auto b : spec.period)
    if (b) ++bits;
  return Rational(bits, static_cast<std::int64_t>(spec.period.size()));
}

std::int64_t int_log_p(std::int64_t size, std::uint32_t p) {
  std::int64_t log = 0;
  while (size % p == 0) {
    size /= p;
    ++log;
  }
  if (size != 1)
    throw std::logic_error("image size is not a power of p");
  return log;
}

std::int64_t image_log_index(const Presentation& p, const SubgroupSpec& spec,
                             int steps, std::int64_t budget) {
  validate_spec(p, spec);
  if (const auto* gen = std::get_if<GeneratedSpec>(&spec)) {
    QuotientContext ctx(p, steps);
    std::vector<Tuple> seeds;
    for (const auto& g : gen->gens) {
      Tuple r = ctx.reduce(g);
      seeds.push_back(r);
      seeds.push_back(ctx.inverse(r));
    }
    std::unordered_set<std::string> seen;
    std::deque<Tuple> queue;
    Tuple id = ctx.identity();
    seen.insert(ctx.key(id));
    queue.push_back(std::move(id));
    while (!queue.empty()) {
      Tuple cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& s : seeds) {
        Tuple nxt = ctx.multiply(s, cur);
        if (seen.insert(ctx.key(nxt)).second) {
          if (static_cast<std::int64_t>(seen.size()) > budget)
            throw BudgetExceeded("generated image exceeds budget at n = " +
                                 std::to_string(steps));
          queue.push_back(std::move(nxt));
        }
      }
    }
    return int_log_p(static_cast<std::int64_t>(seen.size()), p.ring().p());
  }
  if (const auto* span = std::get_if<ModuleSpanSpec>(&spec)) {
    int cut = p.level() + steps;
    if (p.ring().is_padic()) {
      std::vector<std::vector<std::uint64_t>> rows;
      for (const auto& u : span->gens) rows.push_back(padic_row(u, cut));
      return padic_span_log(p.ring().p(), cut, std::move(rows));
    }
    auto basis = p.ring().monomials_in_degree_range(p.level(), cut);
    auto rows = module_span_rows(p, span->gens, steps, basis, cut);
    return gf_rank(p.ring().field(), std::move(rows)) *
           p.ring().residue_log_p();
  }
  const auto& vs = std::get<ValuationSetSpec>(spec);
  return vset_count(vs, 0, steps) * p.ring().residue_log_p();
}

ImageSet materialize_image(const Presentation& p, const SubgroupSpec& spec,
                           int steps, std::int64_t budget) {
  validate_spec(p, spec);
  QuotientContext ctx(p, steps);
  ImageSet image{ctx, {}, {}};
  auto insert = [&](Tuple x) -> bool {
    std::string k = ctx.key(x);
    if (!image.keys.insert(k).second) return false;
    if (static_cast<std::int64_t>(image.keys.size()) > budget)
      throw BudgetExceeded("image set exceeds budget at n = " +
                           std::to_string(steps));
    image.elems.push_back(std::move(x));
    return true;
  };
  if (const auto* gen = std::get_if<GeneratedSpec>(&spec)) {
    std::vector<Tuple> seeds;
    for (const auto& g : gen->gens) {
      Tuple r = ctx.reduce(g);
      seeds.push_back(r);
      seeds.push_back(ctx.inverse(r));
    }
    insert(ctx.identity());
    size_t scan = 0;
    while (scan < image.elems.size()) {
      Tuple cur = image.elems[scan++];
      for (const auto& s : seeds) insert(ctx.multiply(s, cur));
    }
    return image;
  }
  if (const auto* span = std::get_if<ModuleSpanSpec>(&spec)) {
    std::vector<Tuple> seeds;
    int cut = ctx.cut();
    if (p.ring().is_padic()) {
      for (const auto& u : span->gens) seeds.push_back(reduce_gen(u, cut));
    } else {
      auto mults = p.ring().monomials_in_degree_range(0, steps + 1);
      for (const auto& u : span->gens) {
        for (const auto& mu : mults) {
          Tuple mu_u;
          for (const auto& c : u)
            mu_u.push_back(c.truncated(cut).times_monomial(mu));
          if (tuple_valuation(mu_u) >= cut) continue;
          for (std::uint32_t c = 1; c < p.ring().q(); ++c) {
            Tuple scaled;
            for (const auto& coord : mu_u) scaled.push_back(coord.scaled(c));
            seeds.push_back(std::move(scaled));
          }
        }
      }
    }
    insert(ctx.identity());
    size_t scan = 0;
    while (scan < image.elems.size()) {
      Tuple cur = image.elems[scan++];
      for (const auto& s : seeds) insert(tuple_add(cur, s));
    }
    return image;
  }
  const auto& vs = std::get<ValuationSetSpec>(spec);
  int cut = ctx.cut();
  std::vector<int> exps;
  for (int i = 0; i < steps; ++i)
    if (vset_bit(vs, i)) exps.push_back(p.level() + i);
  std::vector<std::uint32_t> digits(exps.size(), 0);
  std::uint32_t q = p.ring().q();
  while (true) {
    Element e(p.ring(), cut);
    for (size_t i = 0; i < exps.size(); ++i) {
      if (digits[i])
        e = e + Element::monomial(
                    p.ring(), cut,
                    Monomial::variable(0, static_cast<std::uint32_t>(exps[i])),
                    digits[i]);
    }
    Tuple x = ctx.identity();
    x[static_cast<size_t>(vs.coordinate - 1)] = std::move(e);
    insert(std::move(x));
    size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < q) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
  }
  return image;
}

std::int64_t bruteforce_oracle(const Presentation& p, const SubgroupSpec& spec,
                               int steps, std::int64_t budget) {
  QuotientGroup carrier = quotient_group(p, steps, budget);
  std::unordered_set<std::string> carrier_keys;
  for (const auto& x : carrier.elements)
    carrier_keys.insert(carrier.ctx.key(x));
  ImageSet image = materialize_image(p, spec, steps, budget);
  for (const auto& k : image.keys)
    if (!carrier_keys.count(k))
      throw std::logic_error("image element escapes the quotient carrier");
  return int_log_p(static_cast<std::int64_t>(image.elems.size()),
                   p.ring().p());
}

SubgroupCheck verify_subgroup(const Presentation& p, const SubgroupSpec& spec,
                              int steps, std::int64_t budget) {
  ImageSet image = materialize_image(p, spec, steps, budget);
  std::int64_t n = static_cast<std::int64_t>(image.elems.size());
  if (n > budget / std::max<std::int64_t>(n, 1))
    throw BudgetExceeded("subgroup check needs " + std::to_string(n) + "^2 <= " +
                         "budget products at n = " + std::to_string(steps));
  for (const auto& a : image.elems) {
    Tuple inv = image.ctx.inverse(a);
    if (!image.keys.count(image.ctx.key(inv)))
      return {false, a, inv, "inverse escapes the image set"};
    for (const auto& b : image.elems) {
      Tuple prod = image.ctx.multiply(a, b);
      if (!image.keys.count(image.ctx.key(prod)))
        return {false, a, b, "product escapes the image set"};
    }
  }
  return {};
}

namespace {

Element minor_det(const std::vector<std::vector<Element>>& m,
                  const std::vector<size_t>& rows,
                  const std::vector<size_t>& cols, const Ring& ring,
                  int trunc) {
  size_t k = rows.size();
  if (k == 1) return m[rows[0]][cols[0]];
  Element acc(ring, trunc);
  for (size_t i = 0; i < k; ++i) {
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<size_t> sub_cols;
    for (size_t j = 0; j < k; ++j)
      if (j != i) sub_cols.push_back(cols[j]);
    Element term =
        m[rows[0]][cols[i]] * minor_det(m, sub_rows, sub_cols, ring, trunc);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void combinations(size_t n, size_t k, std::vector<std::vector<size_t>>* out) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out->push_back(idx);
    size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

int rank_at_precision(const std::vector<std::vector<Element>>& mat,
                      const Ring& ring, int prec) {
  if (mat.empty()) return 0;
  size_t e = mat.size(), d = mat.front().size();
  std::vector<std::vector<Element>> cut;
  for (const auto& row : mat) {
    std::vector<Element> r;
    for (const auto& x : row) r.push_back(x.truncated(prec));
    cut.push_back(std::move(r));
  }
  for (size_t k = std::min(e, d); k >= 1; --k) {
    std::vector<std::vector<size_t>> row_sets, col_sets;
    combinations(e, k, &row_sets);
    combinations(d, k, &col_sets);
    for (const auto& rs : row_sets)
      for (const auto& cs : col_sets)
        if (!minor_det(cut, rs, cs, ring, prec).is_zero())
          return static_cast<int>(k);
  }
  return 0;
}

}  // namespace

int kspan_rank(const Ring& ring, const std::vector<Tuple>& gens,
               int max_trunc) {
  if (gens.empty()) return 0;
  std::vector<std::vector<Element>> mat;
  for (const auto& g : gens) {
    std::vector<Element> row(g.begin(), g.end());
    mat.push_back(std::move(row));
  }
  if (max_trunc < 3)
    throw ValidationError("k-span rank needs truncation >= 3");
  int r_lo = rank_at_precision(mat, ring, max_trunc - 1);
  int r_hi = rank_at_precision(mat, ring, max_trunc);
  if (r_lo != r_hi)
    throw ValidationError(
        "k-span rank did not stabilize at the working truncation; raise M");
  return r_hi;
}

std::int64_t shifted_module_span_log(const Presentation& p,
                                     const std::vector<Tuple>& gens, int delta,
                                     int steps) {
  int cut = p.level() + delta + steps;
  if (p.ring().is_padic()) {
    std::vector<std::vector<std::uint64_t>> span_rows, sub_rows;
    for (const auto& u : gens) span_rows.push_back(padic_row(u, cut));
    std::uint64_t shift = padic_modulus(p.ring().p(), p.level() + delta);
    for (int j = 0; j < p.dim(); ++j) {
      std::vector<std::uint64_t> row(static_cast<size_t>(p.dim()), 0);
      row[static_cast<size_t>(j)] = shift;
      sub_rows.push_back(std::move(row));
    }
    std::int64_t log_u = padic_span_log(p.ring().p(), cut, span_rows);
    std::int64_t log_v = padic_span_log(p.ring().p(), cut, sub_rows);
    std::vector<std::vector<std::uint64_t>> both = span_rows;
    for (const auto& r : sub_rows) both.push_back(r);
    std::int64_t log_sum = padic_span_log(p.ring().p(), cut, both);
    return log_u + log_v - log_sum;
  }
  auto basis = p.ring().monomials_in_degree_range(p.level(), cut);
  auto span_rows = module_span_rows(p, gens, delta + steps, basis, cut);
  std::vector<std::vector<std::uint32_t>> sub_rows;
  for (int j = 0; j < p.dim(); ++j) {
    for (size_t b = 0; b < basis.size(); ++b) {
      if (basis[b].degree() <
          static_cast<std::uint32_t>(p.level() + delta))
        continue;
      std::vector<std::uint32_t> row(basis.size() * static_cast<size_t>(p.dim()),
                                     0);
      row[static_cast<size_t>(j) * basis.size() + b] = 1;
      sub_rows.push_back(std::move(row));
    }
  }
  std::int64_t s = p.ring().residue_log_p();
  std::int64_t rank_u = gf_rank(p.ring().field(), span_rows);
  std::int64_t rank_v = static_cast<std::int64_t>(sub_rows.size());
  std::vector<std::vector<std::uint32_t>> both = span_rows;
  for (const auto& r : sub_rows) both.push_back(r);
  std::int64_t rank_sum = gf_rank(p.ring().field(), both);
  return (rank_u + rank_v - rank_sum) * s;
}

}  // namespace hdim
