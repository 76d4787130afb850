#pragma once

#include <optional>
#include <vector>

#include "hibicx/canonical.hpp"

namespace hibicx {

inline constexpr long long kMaxPrimePower = 1LL << 40;
inline constexpr int kComplexityMaxElements = 8;

bool is_prime(long long p);
// p^e, guarded against exceeding kMaxPrimePower.
long long prime_power(long long p, int e);

/// Element of the twisted algebra T(sum of omega^(-n)): degree e carries the
/// monomials of omega^(1 - p^e).
struct TElement {
  int e = 0;
  long long p = 2;
  ExponentMap xi;
};

// Validates the degree, prime and module membership.
TElement make_t_element(const HatPoset& h, long long p, int e, ExponentMap xi);
TElement t_identity(const HatPoset& h, long long p);

// a * b = a^(p^(e_b)) b, so exponents combine as a.xi * p^(b.e) + b.xi and
// degrees add.
TElement t_multiply(const HatPoset& h, const TElement& a, const TElement& b);

struct SplitWitness {
  int e_prime = 0;    // degree of the right factor
  ExponentMap left;   // in omega^(1 - p^(e - e'))
  ExponentMap right;  // in omega^(1 - p^(e')); xi = left * p^(e') + right
};

// Exhaustive two-factor factorization search in the twisted algebra. Factors
// range over arbitrary module elements; products of more factors regroup into
// two, so absence here means the monomial is a fresh degree-e generator.
// Deterministic: smallest e' first, then lexicographic left factor along the
// topological order.
std::optional<SplitWitness> splits(const HatPoset& h, const ExponentMap& xi, int e, long long p);

// c_1 = h(p-1); for e >= 2, c_e counts the minimal generators of
// omega^(1-p^e) with no two-factor splitting. Fully brute force.
std::vector<long long> complexity_sequence(const HatPoset& h, long long p, int e_max,
                                           int max_elements = kComplexityMaxElements);

// Base-p digit construction of minimal generators of omega^(1-p^e) that
// provably do not split: strictly increasing low digits along an obstruction
// chain whose disparity sum beats its length. Uses the levelcase witness
// chain in the anticanonical-level case, and the unique upward minimal mixed
// path in the non-level case. Throws ValidationError when no construction
// applies.
std::vector<ExponentMap> nonsplit_witnesses(const HatPoset& h, long long p, int e);

// Polynomial degree of n -> h(n) by successive finite differences, with
// quasi-period tolerance up to 4. Throws InconclusiveError (carrying the
// counts) when the degree does not stabilize.
long long symbolic_spread_minus_one(const HatPoset& h, int n_max);

struct RingFlags {
  bool gorenstein = false;
  bool level = false;
  bool anticanonical_level = false;
};

RingFlags classify(const HatPoset& h);

enum class LimitKind { MinusInfinity, Exact, LowerBoundOnly };

struct LimitPrediction {
  LimitKind kind = LimitKind::MinusInfinity;
  long long value = 0;  // meaningful for Exact and LowerBoundOnly
};

struct LimitReport {
  RingFlags flags;
  long long nonmin_count = 0;
  long long spread_minus_one = 0;
  LimitPrediction predicted_limit;
};

// Gorenstein rings have finitely generated Cartier algebra (limit is minus
// infinity); anticanonical-level rings hit |P_hat nonmin| exactly; otherwise
// the spread is only a conjectural value and is reported as a lower bound.
LimitReport predicted_limit_cx(const HatPoset& h, int n_max);

struct ComplexityReport {
  long long p = 2;
  int e_max = 1;
  std::vector<long long> c;
  LimitReport limit;
};

ComplexityReport complexity_report(const HatPoset& h, long long p, int e_max,
                                   int max_elements = kComplexityMaxElements);

}  // namespace hibicx
