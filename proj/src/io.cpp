#include "topmon/io.hpp"

#include <cctype>
#include <sstream>

namespace topmon {

std::string rat_to_string(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) return std::nullopt;
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(t));
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rat(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

namespace {

// minimal recursive-descent helpers over a trimmed string
struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(i, w.size(), w) == 0) {
      i += w.size();
      return true;
    }
    return false;
  }
  std::optional<long long> integer() {
    skip_ws();
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) return std::nullopt;
    long long v = std::stoll(s.substr(i, k - i));
    i = k;
    return v;
  }
  std::optional<Rat> rational() {
    skip_ws();
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) return std::nullopt;
    size_t end = k;
    if (end < s.size() && s[end] == '/') {
      size_t m = end + 1;
      while (m < s.size() && std::isdigit(static_cast<unsigned char>(s[m]))) ++m;
      if (m > end + 1) end = m;
    }
    auto r = rat_from_string(s.substr(i, end - i));
    if (r) i = end;
    return r;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  std::string rest() {
    skip_ws();
    return s.substr(i);
  }
};

std::optional<long long> parse_var_index(Cursor& c, long long nvars) {
  // x1, x2, ... with x,y,z,w aliases for the first four
  c.skip_ws();
  if (c.i >= c.s.size()) return std::nullopt;
  char ch = c.s[c.i];
  if (ch == 'x' && c.i + 1 < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i + 1]))) {
    ++c.i;
    auto n = c.integer();
    if (!n || *n < 1) return std::nullopt;
    return *n - 1;
  }
  long long alias = -1;
  if (ch == 'x') alias = 0;
  if (ch == 'y') alias = 1;
  if (ch == 'z') alias = 2;
  if (ch == 'w') alias = 3;
  if (alias >= 0 && (nvars < 0 || alias < nvars)) {
    ++c.i;
    return alias;
  }
  return std::nullopt;
}

// x1^2*x3 style exponent products
std::optional<std::map<long long, long long>> parse_exponent_product(const std::string& text,
                                                                     long long nvars) {
  Cursor c{text};
  std::map<long long, long long> m;
  if (c.eat_word("1") && c.done()) return m;
  c.i = 0;
  while (true) {
    auto v = parse_var_index(c, nvars);
    if (!v) return std::nullopt;
    long long e = 1;
    if (c.eat('^')) {
      auto n = c.integer();
      if (!n || *n < 1) return std::nullopt;
      e = *n;
    }
    m[*v] += e;
    if (c.done()) break;
    if (!c.eat('*')) return std::nullopt;
  }
  return m;
}

std::string print_exponent_product(const std::map<long long, long long>& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, e] : m) {
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (e != 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

std::string print_mono(const Mono& m) {
  std::map<long long, long long> e;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) e[static_cast<long long>(i)] = m[i];
  return print_exponent_product(e);
}

}  // namespace

std::string print_element(const Instance& ins, const Element& x) {
  ins.require_same_instance(x);
  switch (ins.kind()) {
    case InstanceKind::Free:
      return print_exponent_product(std::get<ExpVec>(x.p).e);
    case InstanceKind::QPlus:
      return rat_to_string(std::get<RatElem>(x.p).v);
    case InstanceKind::Harmonic: {
      const auto& m = std::get<ExpVec>(x.p).e;
      std::ostringstream os;
      os << "[";
      bool first = true;
      for (auto& [i, v] : m) {
        if (!first) os << ", ";
        os << i << ":" << v;
        first = false;
      }
      os << "]";
      return os.str();
    }
    case InstanceKind::Series: {
      const auto& s = std::get<SeriesElem>(x.p);
      if (s.coeff.empty()) return s.exact ? "{}" : "{}~";
      if (x == ins.identity()) return "1";
      std::ostringstream os;
      os << "{";
      bool first = true;
      for (auto& [m, q] : s.coeff) {
        if (!first) os << ", ";
        os << print_mono(m) << ":" << rat_to_string(q);
        first = false;
      }
      os << "}";
      if (!s.exact) os << "~";
      return os.str();
    }
    case InstanceKind::Pointwise:
    case InstanceKind::Restricted: {
      const auto& s = std::get<SeqElem>(x.p);
      std::ostringstream os;
      os << "base=" << s.base << "; delta={";
      bool first = true;
      for (auto& [i, d] : s.delta) {
        if (!first) os << ", ";
        os << i << ":" << (d >= 0 ? "+" : "") << d;
        first = false;
      }
      os << "}";
      return os.str();
    }
    case InstanceKind::IntegersDemo: {
      std::ostringstream os;
      os << std::get<IntElem>(x.p).v;
      return os.str();
    }
  }
  return "?";
}

std::optional<Element> parse_element(const Instance& ins, const std::string& text,
                                     std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<Element> {
    if (err) *err = m;
    return std::nullopt;
  };
  try {
    switch (ins.kind()) {
      case InstanceKind::Free: {
        auto m = parse_exponent_product(text, ins.params().generators);
        if (!m) return fail("expected an exponent product like x1^2*x3");
        for (auto& [i, _] : *m)
          if (i >= ins.params().generators) return fail("generator index out of range");
        return make_free(*m);
      }
      case InstanceKind::QPlus: {
        auto r = rat_from_string(text);
        if (!r || *r < 0) return fail("expected a non-negative rational p/q");
        return make_qplus(*r);
      }
      case InstanceKind::Harmonic: {
        Cursor c{text};
        if (!c.eat('[')) return fail("expected [i:mult, ...]");
        std::map<long long, long long> m;
        if (!c.eat(']')) {
          while (true) {
            auto i = c.integer();
            if (!i || !c.eat(':')) return fail("expected index:multiplicity");
            auto v = c.integer();
            if (!v) return fail("expected index:multiplicity");
            m[*i] += *v;
            if (c.eat(']')) break;
            if (!c.eat(',')) return fail("expected , or ]");
          }
        }
        if (!c.done()) return fail("trailing input");
        return make_harmonic(m);
      }
      case InstanceKind::Series: {
        Cursor c{text};
        if (c.eat_word("1") && c.done()) return ins.identity();
        c.i = 0;
        if (!c.eat('{')) return fail("expected {mono:coeff, ...}");
        std::map<Mono, Rat> coeff;
        bool exact = true;
        if (!c.eat('}')) {
          while (true) {
            c.skip_ws();
            size_t start = c.i;
            while (c.i < c.s.size() && c.s[c.i] != ':') ++c.i;
            if (c.i >= c.s.size()) return fail("expected mono:coeff");
            auto mono_m = parse_exponent_product(c.s.substr(start, c.i - start),
                                                 ins.params().vars);
            if (!mono_m) return fail("bad monomial");
            ++c.i;  // ':'
            auto q = c.rational();
            if (!q) return fail("bad coefficient");
            Mono mo(static_cast<size_t>(ins.params().vars), 0);
            for (auto& [i, e] : *mono_m) {
              if (i >= ins.params().vars) return fail("variable index out of range");
              mo[static_cast<size_t>(i)] = static_cast<int>(e);
            }
            coeff[mo] += *q;
            if (c.eat('}')) break;
            if (!c.eat(',')) return fail("expected , or }");
          }
        }
        if (c.eat('~')) exact = false;
        if (!c.done()) return fail("trailing input");
        return make_series(ins.params().vars, ins.params().precision, coeff, exact);
      }
      case InstanceKind::Pointwise:
      case InstanceKind::Restricted: {
        Cursor c{text};
        if (!c.eat_word("base=")) return fail("expected base=N; delta={i:+d, ...}");
        auto b = c.integer();
        if (!b) return fail("bad base");
        if (!c.eat(';') || !c.eat_word("delta=") || !c.eat('{'))
          return fail("expected ; delta={...}");
        std::map<long long, long long> d;
        if (!c.eat('}')) {
          while (true) {
            auto i = c.integer();
            if (!i || !c.eat(':')) return fail("expected coord:+offset");
            auto v = c.integer();
            if (!v) return fail("expected coord:+offset");
            d[*i] += *v;
            if (c.eat('}')) break;
            if (!c.eat(',')) return fail("expected , or }");
          }
        }
        if (!c.done()) return fail("trailing input");
        return make_seq(ins.kind(), *b, d);
      }
      case InstanceKind::IntegersDemo: {
        Cursor c{text};
        auto v = c.integer();
        if (!v || !c.done()) return fail("expected an integer");
        return make_integer(*v);
      }
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return fail("unknown instance");
}

std::string print_exponent_map(const ExponentMap& m) {
  std::ostringstream os;
  auto deltas = [&](bool with_sign) {
    std::ostringstream d;
    d << "{";
    bool first = true;
    for (auto& [i, o] : m.coord_off) {
      if (!first) d << ", ";
      d << "a" << i << ":" << (with_sign && o >= 0 ? "+" : "") << o;
      first = false;
    }
    for (auto& [s, v] : m.special_val) {
      if (!first) d << ", ";
      d << "s" << s << ":" << (with_sign && v >= 0 ? "+" : "") << v;
      first = false;
    }
    d << "}";
    return d.str();
  };
  if (m.base == 0) return deltas(false);
  if (m.base == 1)
    os << "base=ones; delta=" << deltas(true);
  else
    os << "base=" << m.base << "*ones; delta=" << deltas(true);
  return os.str();
}

std::optional<ExponentMap> parse_exponent_map(const std::string& text, std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<ExponentMap> {
    if (err) *err = m;
    return std::nullopt;
  };
  Cursor c{text};
  ExponentMap m;
  c.skip_ws();
  if (c.s.compare(c.i, 5, "base=") == 0) {
    c.i += 5;
    if (c.eat_word("ones")) {
      m.base = 1;
    } else {
      auto b = c.integer();
      if (!b || *b < 0) return fail("bad base");
      if (!c.eat('*') || !c.eat_word("ones")) return fail("expected N*ones");
      m.base = *b;
    }
    if (!c.eat(';') || !c.eat_word("delta=")) return fail("expected ; delta={...}");
  }
  if (!c.eat('{')) return fail("expected {aI:val, ...}");
  if (!c.eat('}')) {
    while (true) {
      c.skip_ws();
      bool special = false;
      if (c.eat('a')) {
        special = false;
      } else if (c.eat('s')) {
        special = true;
      } else {
        return fail("expected atom slot aI or sI");
      }
      auto i = c.integer();
      if (!i || !c.eat(':')) return fail("expected slot:value");
      auto v = c.integer();
      if (!v) return fail("expected slot:value");
      if (special)
        m.special_val[*i] += *v;
      else
        m.coord_off[*i] += *v;
      if (c.eat('}')) break;
      if (!c.eat(',')) return fail("expected , or }");
    }
  }
  if (!c.done()) return fail("trailing input");
  try {
    m.normalize();
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return m;
}

std::string print_stream_rule(const Instance& ins, const FactorStream& s) {
  std::ostringstream os;
  if (auto* ex = std::get_if<ExplicitRule>(&s.rule())) {
    os << "explicit[";
    bool first = true;
    for (auto& [f, mult] : ex->factors) {
      if (!first) os << "; ";
      os << print_element(ins, f);
      if (mult != 1) os << " ^ " << mult;
      first = false;
    }
    os << "]";
  } else if (auto* g = std::get_if<GeometricRule>(&s.rule())) {
    os << "geometric(" << rat_to_string(g->ratio) << ")";
  } else if (auto* cfr = std::get_if<ChiFromRule>(&s.rule())) {
    if (cfr->start == 0)
      os << "chi-all";
    else
      os << "chi-from(" << cfr->start << ")";
  } else if (auto* cr = std::get_if<ConstantRule>(&s.rule())) {
    os << "constant(" << print_element(ins, cr->x) << ")";
  } else if (auto* h = std::get_if<HarmonicFromRule>(&s.rule())) {
    os << "harmonic-from(" << h->start << ")";
  } else if (auto* r = std::get_if<IntegersFromRule>(&s.rule())) {
    os << "integers-from(" << r->start << ")";
  } else if (std::get_if<IntegersPairedRule>(&s.rule())) {
    os << "integers-paired";
  } else {
    os << s.describe();
  }
  const IndexSelector& sel = s.selector();
  auto print_set = [&] {
    std::ostringstream ss;
    bool first = true;
    for (long long i : sel.set) {
      if (!first) ss << ",";
      ss << i;
      first = false;
    }
    return ss.str();
  };
  switch (sel.kind) {
    case IndexSelector::Kind::All: break;
    case IndexSelector::Kind::Squares: os << " | squares"; break;
    case IndexSelector::Kind::Evens: os << " | evens"; break;
    case IndexSelector::Kind::Odds: os << " | odds"; break;
    case IndexSelector::Kind::Keep: os << " | keep{" << print_set() << "}"; break;
    case IndexSelector::Kind::Drop: os << " | drop{" << print_set() << "}"; break;
  }
  return os.str();
}

std::optional<FactorStream> parse_stream_rule(const Instance& ins, const std::string& text,
                                              std::string* err) {
  auto fail = [&](const std::string& m) -> std::optional<FactorStream> {
    if (err) *err = m;
    return std::nullopt;
  };
  std::string rule_part = text;
  IndexSelector sel = IndexSelector::all();
  if (auto bar = text.find('|'); bar != std::string::npos) {
    rule_part = text.substr(0, bar);
    std::string sel_part = text.substr(bar + 1);
    Cursor c{sel_part};
    if (c.eat_word("squares")) {
      sel = IndexSelector::squares();
    } else if (c.eat_word("evens")) {
      sel = IndexSelector::evens();
    } else if (c.eat_word("odds")) {
      sel = IndexSelector::odds();
    } else if (c.eat_word("keep") || c.eat_word("drop")) {
      bool keep = sel_part.find("keep") != std::string::npos;
      if (!c.eat('{')) return fail("expected {i,j,...}");
      std::set<long long> st;
      if (!c.eat('}')) {
        while (true) {
          auto i = c.integer();
          if (!i) return fail("expected index");
          st.insert(*i);
          if (c.eat('}')) break;
          if (!c.eat(',')) return fail("expected , or }");
        }
      }
      sel = keep ? IndexSelector::keep(st) : IndexSelector::drop(st);
    } else {
      return fail("unknown selector");
    }
    if (!c.done()) return fail("trailing selector input");
  }

  Cursor c{rule_part};
  auto arg = [&](const std::string& word) -> std::optional<std::string> {
    Cursor t{rule_part};
    if (!t.eat_word(word)) return std::nullopt;
    if (!t.eat('(')) return std::nullopt;
    size_t start = t.i;
    long long depth = 1;
    while (t.i < t.s.size() && depth > 0) {
      if (t.s[t.i] == '(') ++depth;
      if (t.s[t.i] == ')') --depth;
      ++t.i;
    }
    if (depth != 0) return std::nullopt;
    std::string inner = t.s.substr(start, t.i - start - 1);
    if (!t.done()) return std::nullopt;
    return inner;
  };

  if (c.eat_word("chi-all") && c.done())
    return FactorStream(ins.kind(), ChiFromRule{0}, sel);
  if (auto a = arg("chi-from")) {
    Cursor t{*a};
    auto n = t.integer();
    if (!n || !t.done()) return fail("chi-from(N)");
    return FactorStream(ins.kind(), ChiFromRule{*n}, sel);
  }
  if (auto a = arg("geometric")) {
    auto r = rat_from_string(*a);
    if (!r || *r <= 0 || *r >= 1) return fail("geometric(p/q) with 0 < p/q < 1");
    return FactorStream(ins.kind(), GeometricRule{*r}, sel);
  }
  if (auto a = arg("constant")) {
    auto e = parse_element(ins, *a, err);
    if (!e) return std::nullopt;
    return FactorStream(ins.kind(), ConstantRule{*e}, sel);
  }
  if (auto a = arg("harmonic-from")) {
    Cursor t{*a};
    auto n = t.integer();
    if (!n || *n < 1 || !t.done()) return fail("harmonic-from(N), N >= 1");
    return FactorStream(ins.kind(), HarmonicFromRule{*n}, sel);
  }
  if (auto a = arg("integers-from")) {
    Cursor t{*a};
    auto n = t.integer();
    if (!n || !t.done()) return fail("integers-from(N)");
    return FactorStream(ins.kind(), IntegersFromRule{*n}, sel);
  }
  {
    Cursor t{rule_part};
    if (t.eat_word("integers-paired") && t.done())
      return FactorStream(ins.kind(), IntegersPairedRule{}, sel);
  }
  {
    Cursor t{rule_part};
    if (t.eat_word("explicit")) {
      if (!t.eat('[')) return fail("explicit[e1; e2^3; ...]");
      std::vector<std::pair<Element, long long>> fs;
      std::string inner = t.rest();
      if (inner.empty() || inner.back() != ']') return fail("missing ]");
      inner.pop_back();
      std::istringstream iss(inner);
      std::string piece;
      while (std::getline(iss, piece, ';')) {
        if (piece.find_first_not_of(" \t") == std::string::npos) continue;
        long long mult = 1;
        if (auto caret = piece.rfind(" ^ "); caret != std::string::npos) {
          mult = std::stoll(piece.substr(caret + 3));
          piece = piece.substr(0, caret);
        }
        auto e = parse_element(ins, piece, err);
        if (!e) return std::nullopt;
        fs.emplace_back(*e, mult);
      }
      return FactorStream(ins.kind(), ExplicitRule{std::move(fs)}, sel);
    }
  }
  return fail("unknown stream rule");
}

}  // namespace topmon
