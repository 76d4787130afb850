#include "hibicx/hibi.hpp"

#include <algorithm>

namespace hibicx {

std::vector<PosetIdeal> poset_ideals(const Poset& p, int max_elements) {
  if (p.size() > max_elements)
    throw GuardError("poset_ideals: " + std::to_string(p.size()) +
                     " elements exceeds guard " + std::to_string(max_elements));
  const int n = p.size();
  std::vector<PosetIdeal> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (auto [a, b] : p.covers())
      if (((mask >> b) & 1u) && !((mask >> a) & 1u)) {
        closed = false;
        break;
      }
    if (closed) out.push_back(PosetIdeal{mask});
  }
  std::sort(out.begin(), out.end(), [](PosetIdeal x, PosetIdeal y) {
    if (x.cardinality() != y.cardinality()) return x.cardinality() < y.cardinality();
    return x.mask < y.mask;
  });
  return out;
}

ExponentMap& ExponentMap::operator+=(const ExponentMap& o) {
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}

ExponentMap& ExponentMap::operator-=(const ExponentMap& o) {
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}

ExponentMap& ExponentMap::operator*=(long long c) {
  for (auto& x : v) x *= c;
  return *this;
}

ExponentMap hibi_generator(const HatPoset& h, PosetIdeal I) {
  ExponentMap xi(h.size());
  xi[h.bottom()] = 1;
  for (int i = 0; i < h.base_size(); ++i)
    if (I.contains(i)) xi[h.vertex_of_base(i)] = 1;
  return xi;
}

std::vector<Relation> presentation(const Poset& p) {
  auto ideals = poset_ideals(p);
  if (ideals.size() > 20000)
    throw GuardError("presentation: " + std::to_string(ideals.size()) +
                     " ideals make the relation list unreasonably large");
  std::vector<Relation> out;
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = i + 1; j < ideals.size(); ++j) {
      auto a = ideals[i].mask, b = ideals[j].mask;
      bool comparable = (a & b) == a || (a & b) == b;
      if (comparable) continue;
      out.push_back(Relation{ideals[i], ideals[j], PosetIdeal{a & b}, PosetIdeal{a | b}});
    }
  return out;
}

std::string render_ideal(const Poset& p, PosetIdeal I) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < p.size(); ++i)
    if (I.contains(i)) {
      if (!first) s += ",";
      s += p.elements()[i];
      first = false;
    }
  return s + "}";
}

std::string render_relation(const Poset& p, const Relation& r) {
  return "X" + render_ideal(p, r.a) + "*X" + render_ideal(p, r.b) + " - X" +
         render_ideal(p, r.meet) + "*X" + render_ideal(p, r.join);
}

bool in_ring(const HatPoset& h, const ExponentMap& xi) {
  for (auto [a, b] : h.covers())
    if (xi[a] < xi[b]) return false;
  return true;
}

std::optional<std::vector<PosetIdeal>> ring_factorization(const HatPoset& h, ExponentMap xi) {
  if (xi[h.top()] != 0 || !in_ring(h, xi)) return std::nullopt;
  std::vector<PosetIdeal> out;
  while (xi.degree() > 0) {
    PosetIdeal I{0};
    for (int i = 0; i < h.base_size(); ++i)
      if (xi[h.vertex_of_base(i)] == xi.degree()) I.mask |= 1u << i;
    xi -= hibi_generator(h, I);
    out.push_back(I);
  }
  // In the ring, the bottom exponent dominates every other, so after peeling
  // it to zero nothing remains.
  for (long long x : xi.v)
    if (x != 0) return std::nullopt;
  return out;
}

}  // namespace hibicx
