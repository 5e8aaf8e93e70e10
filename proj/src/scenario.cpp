#include "hdim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hdim/errors.hpp"

namespace hdim {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// ---- polynomial expressions -------------------------------------------

class PolyParser {
 public:
  PolyParser(const Ring& ring, int trunc, int nx, int ny,
             const std::string& text)
      : ring_(ring), trunc_(trunc), nx_(nx), ny_(ny), text_(text),
        vars_(std::max(1, nx + ny)) {}

  Series parse() {
    Series s = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("expression error: " + what + " in '" + text_ +
                          "' at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool match(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Series expr() {
    bool negate = match('-');
    Series acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (match('+')) {
        acc = acc + term();
      } else if (match('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Series term() {
    Series acc = factor();
    while (match('*')) acc = acc * factor();
    return acc;
  }

  Series factor() {
    Series base = atom();
    if (match('^')) {
      skip_ws();
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_) fail("exponent expected after '^'");
      unsigned long e = std::stoul(text_.substr(start, pos_ - start));
      if (e > 64) fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(e));
    }
    return base;
  }

  Series constant(const Element& c) {
    return Series::constant(ring_, vars_, trunc_, c);
  }

  Series atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Series s = expr();
      if (!match(')')) fail("missing ')'");
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::int64_t v = std::stoll(text_.substr(start, pos_ - start));
      return constant(Element::from_int(ring_, trunc_, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string ident = text_.substr(start, pos_ - start);
      return resolve(ident);
    }
    fail("unexpected character");
  }

  Series resolve(const std::string& ident) {
    char head = static_cast<char>(
        std::tolower(static_cast<unsigned char>(ident[0])));
    std::string index_part = ident.substr(1);
    int index = -1;
    if (!index_part.empty()) index = std::stoi(index_part);
    if (head == 't') {
      if (ring_.is_padic()) fail("'t' is not a p-adic variable");
      int var = index_part.empty() ? 0 : index - 1;
      if (var < 0 || var >= ring_.num_vars()) fail("ring variable out of range");
      return constant(
          Element::monomial(ring_, trunc_, Monomial::variable(var)));
    }
    if (head == 'p' && index_part.empty()) {
      return constant(Element::from_int(
          ring_, trunc_, static_cast<std::int64_t>(ring_.p())));
    }
    if (head == 'g' && index_part.empty()) {
      if (ring_.is_padic() || ring_.field().s() < 2)
        fail("'g' needs a residue field with s >= 2");
      Element e(ring_, trunc_);
      e = e + Element::monomial(ring_, trunc_, Monomial(), ring_.p());
      return constant(e);
    }
    if (head == 'x') {
      int k = index_part.empty() ? 1 : index;
      if (nx_ == 0) fail("'X' variables not allowed here");
      if (index_part.empty() && nx_ != 1) fail("write X1..X<d>");
      if (k < 1 || k > nx_) fail("X index out of range");
      return Series::variable(ring_, vars_, trunc_, k - 1);
    }
    if (head == 'y') {
      int k = index_part.empty() ? 1 : index;
      if (ny_ == 0) fail("'Y' variables not allowed here");
      if (index_part.empty() && ny_ != 1) fail("write Y1..Y<d>");
      if (k < 1 || k > ny_) fail("Y index out of range");
      return Series::variable(ring_, vars_, trunc_, nx_ + k - 1);
    }
    fail("unknown symbol '" + ident + "'");
  }

  const Ring& ring_;
  int trunc_;
  int nx_, ny_;
  const std::string& text_;
  int vars_;
  size_t pos_ = 0;
};

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Series parse_poly(const Ring& ring, int trunc, int nx, int ny,
                  const std::string& text) {
  return PolyParser(ring, trunc, nx, ny, text).parse();
}

Element parse_element(const Ring& ring, int trunc, const std::string& text) {
  Series s = parse_poly(ring, trunc, 0, 0, text);
  return s.constant_term();
}

Tuple parse_tuple(const Ring& ring, int trunc, int dim,
                  const std::string& text) {
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw ValidationError("tuple must be parenthesized: " + text);
  body = body.substr(1, body.size() - 2);
  auto parts = split_top_level(body, ',');
  if (static_cast<int>(parts.size()) != dim)
    throw ValidationError("tuple arity " + std::to_string(parts.size()) +
                          " does not match dimension " + std::to_string(dim));
  Tuple out;
  for (const auto& part : parts)
    out.push_back(parse_element(ring, trunc, trim(part)));
  return out;
}

// ---- scenario files -----------------------------------------------------

namespace {

struct KeyValue {
  std::string key, value;
  int line = 0;
};

struct Section {
  std::string kind, name;
  int line = 0;
  std::vector<KeyValue> entries;

  const KeyValue* find(const std::string& key) const {
    for (const auto& kv : entries)
      if (kv.key == key) return &kv;
    return nullptr;
  }
  std::vector<const KeyValue*> all(const std::string& key) const {
    std::vector<const KeyValue*> out;
    for (const auto& kv : entries)
      if (kv.key == key) out.push_back(&kv);
    return out;
  }
};

std::int64_t parse_int(const KeyValue& kv) {
  try {
    size_t used = 0;
    std::int64_t v = std::stoll(kv.value, &used);
    if (used != kv.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("field '" + kv.key + "': integer expected, got '" +
                         kv.value + "'",
                     kv.line);
  }
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "yes" || kv.value == "1") return true;
  if (kv.value == "false" || kv.value == "no" || kv.value == "0") return false;
  throw ParseError("field '" + kv.key + "': boolean expected", kv.line);
}

std::vector<std::uint8_t> parse_bits(const KeyValue& kv) {
  std::vector<std::uint8_t> bits;
  for (char c : kv.value) {
    if (c == '0')
      bits.push_back(0);
    else if (c == '1')
      bits.push_back(1);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw ParseError("field '" + kv.key + "': bit string expected", kv.line);
  }
  return bits;
}

}  // namespace

Presentation Scenario::presentation() const {
  if (!law) throw ValidationError("scenario has no law");
  return Presentation(*law, level, relax_level);
}

const SubgroupSpec* Scenario::find_subgroup(const std::string& id) const {
  for (const auto& [name, spec] : subgroups)
    if (name == id) return &spec;
  return nullptr;
}

const ChartTransform* Scenario::find_transform(const std::string& id) const {
  for (const auto& [name, t] : transforms)
    if (name == id) return &t;
  return nullptr;
}

Scenario parse_scenario(std::istream& in, const std::string& name) {
  std::vector<Section> sections;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError("malformed section header", lineno);
      std::string inside = trim(body.substr(1, body.size() - 2));
      size_t sp = inside.find_first_of(" \t");
      Section s;
      s.line = lineno;
      if (sp == std::string::npos) {
        s.kind = inside;
      } else {
        s.kind = trim(inside.substr(0, sp));
        s.name = trim(inside.substr(sp + 1));
      }
      if (s.kind.empty()) throw ParseError("empty section name", lineno);
      sections.push_back(std::move(s));
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno);
    if (sections.empty())
      throw ParseError("key outside of any section", lineno);
    KeyValue kv;
    kv.key = trim(body.substr(0, eq));
    kv.value = trim(body.substr(eq + 1));
    kv.line = lineno;
    if (kv.key.empty()) throw ParseError("empty key", lineno);
    sections.back().entries.push_back(std::move(kv));
  }

  auto find_section = [&](const std::string& kind) -> const Section* {
    for (const auto& s : sections)
      if (s.kind == kind) return &s;
    return nullptr;
  };

  Scenario sc;
  sc.name = name;

  const Section* ring_sec = find_section("ring");
  if (!ring_sec) throw ParseError("missing [ring] section", 1);
  {
    const KeyValue* kind = ring_sec->find("kind");
    if (!kind) throw ParseError("[ring] needs 'kind'", ring_sec->line);
    std::uint32_t p = 2;
    if (const KeyValue* kv = ring_sec->find("p"))
      p = static_cast<std::uint32_t>(parse_int(*kv));
    else
      throw ParseError("[ring] needs 'p'", ring_sec->line);
    try {
      if (kind->value == "padic") {
        sc.ring = Ring::padic(p);
      } else if (kind->value == "power_series") {
        std::uint32_t s = 1;
        int vars = 1;
        if (const KeyValue* kv = ring_sec->find("s"))
          s = static_cast<std::uint32_t>(parse_int(*kv));
        if (const KeyValue* kv = ring_sec->find("vars"))
          vars = static_cast<int>(parse_int(*kv));
        sc.ring = Ring::power_series(p, s, vars);
      } else {
        throw ParseError("ring kind must be 'padic' or 'power_series'",
                         kind->line);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("[ring]: ") + e.what(), ring_sec->line);
    }
  }

  const Section* group_sec = find_section("group");
  if (!group_sec) throw ParseError("missing [group] section", 1);
  std::string law_name;
  {
    if (const KeyValue* kv = group_sec->find("d"))
      sc.dim = static_cast<int>(parse_int(*kv));
    if (const KeyValue* kv = group_sec->find("level"))
      sc.level = static_cast<int>(parse_int(*kv));
    if (const KeyValue* kv = group_sec->find("trunc"))
      sc.trunc = static_cast<int>(parse_int(*kv));
    if (const KeyValue* kv = group_sec->find("relax_level"))
      sc.relax_level = parse_bool(*kv);
    const KeyValue* kv_law = group_sec->find("law");
    if (!kv_law) throw ParseError("[group] needs 'law'", group_sec->line);
    law_name = kv_law->value;
    try {
      if (law_name == "custom") {
        const Section* law_sec = find_section("law");
        if (!law_sec)
          throw ParseError("law = custom needs a [law] section",
                           kv_law->line);
        std::vector<Series> comps;
        for (int j = 1; j <= sc.dim; ++j) {
          const KeyValue* comp = law_sec->find("F" + std::to_string(j));
          if (!comp)
            throw ParseError("[law] missing component F" + std::to_string(j),
                             law_sec->line);
          comps.push_back(
              parse_poly(sc.ring, sc.trunc, sc.dim, sc.dim, comp->value));
        }
        sc.law = GroupLaw(sc.ring, sc.dim, sc.trunc, std::move(comps),
                          name + ":custom");
      } else {
        if (const Section* law_sec = find_section("law"))
          throw ParseError("[law] section requires law = custom",
                           law_sec->line);
        sc.law = builtin_law(law_name, sc.ring, sc.dim, sc.trunc);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("law: ") + e.what(), kv_law->line);
    }
  }

  for (const auto& sec : sections) {
    if (sec.kind == "subgroup") {
      if (sec.name.empty())
        throw ParseError("[subgroup] needs a name", sec.line);
      if (sc.find_subgroup(sec.name))
        throw ParseError("duplicate subgroup '" + sec.name + "'", sec.line);
      const KeyValue* type = sec.find("type");
      if (!type) throw ParseError("[subgroup] needs 'type'", sec.line);
      try {
        if (type->value == "module_span" || type->value == "generated") {
          std::vector<Tuple> gens;
          for (const KeyValue* kv : sec.all("gen"))
            gens.push_back(parse_tuple(sc.ring, sc.trunc, sc.dim, kv->value));
          if (type->value == "module_span")
            sc.subgroups.emplace_back(sec.name, ModuleSpanSpec{std::move(gens)});
          else
            sc.subgroups.emplace_back(sec.name, GeneratedSpec{std::move(gens)});
        } else if (type->value == "valuation_set") {
          ValuationSetSpec vs;
          if (const KeyValue* kv = sec.find("coordinate"))
            vs.coordinate = static_cast<int>(parse_int(*kv));
          if (const KeyValue* kv = sec.find("preperiod"))
            vs.preperiod = parse_bits(*kv);
          const KeyValue* period = sec.find("period");
          if (!period)
            throw ParseError("valuation_set needs 'period'", sec.line);
          vs.period = parse_bits(*period);
          if (vs.period.empty())
            throw ParseError("period must contain bits", period->line);
          sc.subgroups.emplace_back(sec.name, std::move(vs));
        } else {
          throw ParseError("unknown subgroup type '" + type->value + "'",
                           type->line);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("subgroup '") + sec.name + "': " +
                             e.what(),
                         sec.line);
      }
    } else if (sec.kind == "transform") {
      if (sec.name.empty())
        throw ParseError("[transform] needs a name", sec.line);
      if (sc.find_transform(sec.name))
        throw ParseError("duplicate transform '" + sec.name + "'", sec.line);
      const KeyValue* type = sec.find("type");
      if (!type) throw ParseError("[transform] needs 'type'", sec.line);
      try {
        if (type->value == "identity") {
          sc.transforms.emplace_back(
              sec.name, ChartTransform::identity(sc.ring, sc.dim, sc.trunc));
        } else if (type->value == "scalar") {
          const KeyValue* factor = sec.find("factor");
          if (!factor)
            throw ParseError("scalar transform needs 'factor'", sec.line);
          sc.transforms.emplace_back(
              sec.name,
              ChartTransform::scaling(
                  parse_element(sc.ring, sc.trunc, factor->value), sc.dim));
        } else if (type->value == "series") {
          std::vector<Series> comps;
          for (const KeyValue* kv : sec.all("component"))
            comps.push_back(parse_poly(sc.ring, sc.trunc, sc.dim, 0, kv->value));
          if (static_cast<int>(comps.size()) != sc.dim)
            throw ParseError("series transform needs d components", sec.line);
          sc.transforms.emplace_back(sec.name,
                                     ChartTransform::series(std::move(comps)));
        } else {
          throw ParseError("unknown transform type '" + type->value + "'",
                           type->line);
        }
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(std::string("transform '") + sec.name + "': " +
                             e.what(),
                         sec.line);
      }
    } else if (sec.kind != "ring" && sec.kind != "group" && sec.kind != "law" &&
               sec.kind != "run") {
      throw ParseError("unknown section [" + sec.kind + "]", sec.line);
    }
  }

  if (const Section* run = find_section("run")) {
    if (const KeyValue* kv = run->find("n_max"))
      sc.n_max = static_cast<int>(parse_int(*kv));
    if (const KeyValue* kv = run->find("budget")) sc.budget = parse_int(*kv);
    if (const KeyValue* kv = run->find("out")) sc.out_dir = kv->value;
    if (const KeyValue* kv = run->find("format")) {
      if (kv->value != "csv" && kv->value != "json" && kv->value != "both")
        throw ParseError("format must be csv, json or both", kv->line);
      sc.format = kv->value;
    }
    if (const KeyValue* kv = run->find("tail")) {
      try {
        sc.tail_fraction = std::stod(kv->value);
      } catch (const std::exception&) {
        throw ParseError("tail must be a number in (0, 1]", kv->line);
      }
      if (sc.tail_fraction <= 0.0 || sc.tail_fraction > 1.0)
        throw ParseError("tail must lie in (0, 1]", kv->line);
    }
  }

  // cross checks
  if (sc.n_max >= sc.trunc - sc.level)
    throw ParseError("n_max must stay below trunc - level", group_sec->line);
  try {
    // at least one quotient must be enumerable, or oracle runs are disabled
    Presentation p = sc.presentation();
    auto smallest = quotient_order(p, 1);
    if (!smallest || *smallest > sc.budget) {
      sc.oracle_enabled = false;
      sc.warnings.push_back(
          "budget below the smallest quotient q^{d f(1)}; oracle commands "
          "disabled");
    }
  } catch (const ValidationError&) {
    // an invalid law still parses; `validate` reports the violations
    sc.oracle_enabled = false;
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0);
  std::string stem = path;
  size_t slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  size_t dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_scenario(in, stem);
}

}  // namespace hdim
