#include "topmon/element.hpp"

#include <tuple>

namespace topmon {

std::string kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Free: return "free";
    case InstanceKind::QPlus: return "qplus";
    case InstanceKind::Harmonic: return "harmonic";
    case InstanceKind::Series: return "series";
    case InstanceKind::Pointwise: return "pointwise";
    case InstanceKind::Restricted: return "restricted";
    case InstanceKind::IntegersDemo: return "integers-demo";
  }
  return "?";
}

namespace {

template <class M>
int compare_map(const M& a, const M& b) {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first < ib->first) return -1;
    if (ib->first < ia->first) return 1;
    if (ia->second < ib->second) return -1;
    if (ib->second < ia->second) return 1;
  }
  if (ia != a.end()) return 1;
  if (ib != b.end()) return -1;
  return 0;
}

int compare_payload(const Payload& a, const Payload& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  switch (a.index()) {
    case 0:
      return compare_map(std::get<ExpVec>(a).e, std::get<ExpVec>(b).e);
    case 1: {
      const Rat& x = std::get<RatElem>(a).v;
      const Rat& y = std::get<RatElem>(b).v;
      return x < y ? -1 : (y < x ? 1 : 0);
    }
    case 2: {
      const auto& x = std::get<SeriesElem>(a);
      const auto& y = std::get<SeriesElem>(b);
      if (auto t = std::tie(x.vars, x.prec, x.exact), u = std::tie(y.vars, y.prec, y.exact);
          t != u)
        return t < u ? -1 : 1;
      return compare_map(x.coeff, y.coeff);
    }
    case 3: {
      const auto& x = std::get<SeqElem>(a);
      const auto& y = std::get<SeqElem>(b);
      if (x.base != y.base) return x.base < y.base ? -1 : 1;
      return compare_map(x.delta, y.delta);
    }
    case 4: {
      long long x = std::get<IntElem>(a).v, y = std::get<IntElem>(b).v;
      return x < y ? -1 : (y < x ? 1 : 0);
    }
  }
  return 0;
}

}  // namespace

bool element_less(const Element& a, const Element& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return compare_payload(a.p, b.p) < 0;
}

}  // namespace topmon
