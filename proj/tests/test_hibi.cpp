#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace hibicx;
using testutil::fixture;
using testutil::mk;
using testutil::xi_of;

namespace {

PosetIdeal ideal_of(const Poset& p, const std::vector<std::string>& members) {
  PosetIdeal I{0};
  for (const auto& m : members) I.mask |= 1u << p.index_of(m);
  return I;
}

// Nonnegative-combination oracle: xi is a product of Hibi generators iff it
// splits into exactly deg(xi) of them.
bool subset_sum_in_ring(const HatPoset& h, const ExponentMap& xi,
                        const std::vector<PosetIdeal>& ideals) {
  if (xi[h.top()] != 0) return false;
  long long deg = xi.degree();
  if (deg < 0) return false;
  if (deg == 0) {
    for (long long x : xi.v)
      if (x != 0) return false;
    return true;
  }
  auto rec = [&](auto&& self, ExponentMap rest, long long left, size_t from) -> bool {
    if (left == 0) {
      for (long long x : rest.v)
        if (x != 0) return false;
      return true;
    }
    for (size_t i = from; i < ideals.size(); ++i) {
      ExponentMap next = rest - hibi_generator(h, ideals[i]);
      bool feasible = true;
      for (long long x : next.v) feasible = feasible && x >= 0;
      if (feasible && self(self, next, left - 1, i)) return true;
    }
    return false;
  };
  return rec(rec, xi, deg, 0);
}

}  // namespace

TEST_CASE("poset_ideals counts and contents") {
  CHECK(poset_ideals(fixture("antichain_2").base()).size() == 4);
  for (int k = 2; k <= 5; ++k) {
    std::vector<std::string> els;
    std::vector<std::pair<std::string, std::string>> rel;
    for (int i = 0; i < k; ++i) els.push_back("c" + std::to_string(i));
    for (int i = 0; i + 1 < k; ++i) rel.emplace_back(els[i], els[i + 1]);
    CHECK(poset_ideals(Poset::build(els, rel)).size() == static_cast<size_t>(k + 1));
  }

  const Poset seg = fixture("segre_3_2").base();
  auto ideals = poset_ideals(seg);
  REQUIRE(ideals.size() == 6);
  std::set<std::uint32_t> masks;
  for (auto I : ideals) masks.insert(I.mask);
  std::set<std::uint32_t> expected{ideal_of(seg, {}).mask,
                                   ideal_of(seg, {"v3"}).mask,
                                   ideal_of(seg, {"v2"}).mask,
                                   ideal_of(seg, {"v1", "v2"}).mask,
                                   ideal_of(seg, {"v2", "v3"}).mask,
                                   ideal_of(seg, {"v1", "v2", "v3"}).mask};
  CHECK(masks == expected);
}

TEST_CASE("poset_ideals guard") {
  std::vector<std::string> els;
  for (int i = 0; i < 6; ++i) els.push_back("e" + std::to_string(i));
  Poset p = Poset::build(els, {});
  CHECK_THROWS_AS(poset_ideals(p, 5), GuardError);
}

TEST_CASE("ideals form a distributive lattice (closed under meet and join)") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    Poset p = testutil::random_poset(rng, 6);
    auto ideals = poset_ideals(p);
    std::set<std::uint32_t> masks;
    for (auto I : ideals) masks.insert(I.mask);
    for (auto a : ideals)
      for (auto b : ideals) {
        CHECK(masks.count(a.mask & b.mask) == 1);
        CHECK(masks.count(a.mask | b.mask) == 1);
      }
  }
}

TEST_CASE("hibi_generator") {
  HatPoset h = fixture("segre_3_2");
  const Poset& p = h.base();

  ExponentMap t_only = hibi_generator(h, ideal_of(p, {}));
  CHECK(t_only == xi_of(h, {{"-inf", 1}}));

  CHECK(hibi_generator(h, ideal_of(p, {"v2", "v3"})) ==
        xi_of(h, {{"-inf", 1}, {"v2", 1}, {"v3", 1}}));

  ExponentMap full = hibi_generator(h, ideal_of(p, {"v1", "v2", "v3"}));
  for (Vertex v = 0; v < h.size(); ++v) CHECK(full[v] == (v == h.top() ? 0 : 1));
}

TEST_CASE("presentation") {
  CHECK(presentation(fixture("chain_3").base()).empty());
  CHECK(presentation(fixture("antichain_2").base()).size() == 1);

  const Poset seg = fixture("segre_3_2").base();
  auto rels = presentation(seg);
  REQUIRE(rels.size() == 3);
  for (const auto& r : rels) {
    CHECK(r.meet.mask == (r.a.mask & r.b.mask));
    CHECK(r.join.mask == (r.a.mask | r.b.mask));
  }
  CHECK(render_relation(seg, rels[0]) == "X{v2}*X{v3} - X{}*X{v2,v3}");
}

TEST_CASE("relation count equals the number of incomparable ideal pairs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    Poset p = testutil::random_poset(rng, 5);
    auto ideals = poset_ideals(p);
    size_t incomparable = 0;
    for (size_t i = 0; i < ideals.size(); ++i)
      for (size_t j = i + 1; j < ideals.size(); ++j) {
        auto meet = ideals[i].mask & ideals[j].mask;
        if (meet != ideals[i].mask && meet != ideals[j].mask) ++incomparable;
      }
    CHECK(presentation(p).size() == incomparable);
  }
}

TEST_CASE("in_ring") {
  HatPoset h = fixture("segre_3_2");
  CHECK(in_ring(h, ExponentMap(h.size())));
  for (auto I : poset_ideals(h.base())) CHECK(in_ring(h, hibi_generator(h, I)));
  CHECK_FALSE(in_ring(h, xi_of(h, {{"-inf", 1}, {"v1", 1}})));  // v2 < v1 violated
}

TEST_CASE("ring_factorization peels back to the exact monomial") {
  std::mt19937 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    HatPoset h(testutil::random_poset(rng, 6));
    auto ideals = poset_ideals(h.base());
    ExponentMap xi(h.size());
    std::uniform_int_distribution<size_t> pick(0, ideals.size() - 1);
    int factors = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < factors; ++i) xi += hibi_generator(h, ideals[pick(rng)]);

    auto fac = ring_factorization(h, xi);
    REQUIRE(fac.has_value());
    CHECK(fac->size() == static_cast<size_t>(factors));
    ExponentMap back(h.size());
    for (auto I : *fac) back += hibi_generator(h, I);
    CHECK(back == xi);
  }
}

TEST_CASE("in_ring agrees with the nonnegative-combination oracle") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    HatPoset h(testutil::random_poset(rng, 5));
    auto ideals = poset_ideals(h.base());
    std::uniform_int_distribution<long long> box(0, 3);
    for (int sample = 0; sample < 40; ++sample) {
      ExponentMap xi(h.size());
      for (Vertex v = 0; v < h.size() - 1; ++v) xi[v] = box(rng);
      CHECK(in_ring(h, xi) == subset_sum_in_ring(h, xi, ideals));
      if (in_ring(h, xi)) {
        auto fac = ring_factorization(h, xi);
        REQUIRE(fac.has_value());
        ExponentMap back(h.size());
        for (auto I : *fac) back += hibi_generator(h, I);
        CHECK(back == xi);
      }
    }
  }
}
