#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hibicx/poset.hpp"

namespace hibicx {

/// Downward closed subset of the base poset, stored as a bitmask over the
/// element list.
struct PosetIdeal {
  std::uint32_t mask = 0;

  bool contains(int element_index) const { return (mask >> element_index) & 1u; }
  int cardinality() const { return __builtin_popcount(mask); }
  friend bool operator==(const PosetIdeal&, const PosetIdeal&) = default;
};

// All poset ideals, ordered by (cardinality, mask). Always contains the empty
// set and the whole poset.
std::vector<PosetIdeal> poset_ideals(const Poset& p, int max_elements = kDefaultMaxElements);

/// Integer exponent vector over the hat poset: index 0 holds the t-exponent
/// (the degree), indices 1..n the base elements, the last entry the top and is
/// always zero.
struct ExponentMap {
  std::vector<long long> v;

  explicit ExponentMap(int hat_size) : v(hat_size, 0) {}
  explicit ExponentMap(std::vector<long long> values) : v(std::move(values)) {}

  long long degree() const { return v.front(); }
  long long& operator[](Vertex x) { return v[x]; }
  long long operator[](Vertex x) const { return v[x]; }
  int size() const { return static_cast<int>(v.size()); }

  ExponentMap& operator+=(const ExponentMap& o);
  ExponentMap& operator-=(const ExponentMap& o);
  ExponentMap& operator*=(long long c);
  friend ExponentMap operator+(ExponentMap a, const ExponentMap& b) { return a += b; }
  friend ExponentMap operator-(ExponentMap a, const ExponentMap& b) { return a -= b; }
  friend ExponentMap operator*(ExponentMap a, long long c) { return a *= c; }
  friend bool operator==(const ExponentMap&, const ExponentMap&) = default;
  friend auto operator<=>(const ExponentMap& a, const ExponentMap& b) { return a.v <=> b.v; }
};

// The monomial t * prod_{v in I} x_v as an exponent map.
ExponentMap hibi_generator(const HatPoset& h, PosetIdeal I);

/// One toric relation X_a X_b - X_meet X_join for an incomparable ideal pair.
struct Relation {
  PosetIdeal a, b, meet, join;
};

// One relation per unordered incomparable pair, in (index a, index b) order
// over poset_ideals(p).
std::vector<Relation> presentation(const Poset& p);

std::string render_ideal(const Poset& p, PosetIdeal I);
std::string render_relation(const Poset& p, const Relation& r);

// Monomial membership in the Hibi ring: xi(a) >= xi(b) for every cover a < b
// of the hat poset (xi(top) must be zero).
bool in_ring(const HatPoset& h, const ExponentMap& xi);

// Greedy factorization of a ring monomial into Hibi generators; repeatedly
// peels I = {v : xi(v) = xi(bottom)}. Empty optional when xi is not in the
// ring. The returned ideals multiply back to xi exactly.
std::optional<std::vector<PosetIdeal>> ring_factorization(const HatPoset& h, ExponentMap xi);

}  // namespace hibicx
