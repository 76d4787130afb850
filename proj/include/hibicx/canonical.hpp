#pragma once

#include <vector>

#include "hibicx/hibi.hpp"

namespace hibicx {

inline constexpr int kGrowthMaxN = 1000;

// Membership of the monomial xi in omega^(-n): xi(a) >= xi(b) - n for every
// cover a < b of the hat poset. n = 0 is ring membership, n = -1 cuts out the
// canonical module itself.
bool in_module(const HatPoset& h, const ExponentMap& xi, long long n);

// True iff dividing xi by any Hibi generator (including t) leaves the module.
// Requires in_module(h, xi, n).
bool is_minimal_generator(const HatPoset& h, const ExponentMap& xi, long long n);
bool is_minimal_generator(const HatPoset& h, const ExponentMap& xi, long long n,
                          const std::vector<PosetIdeal>& ideals);

struct GeneratorSet {
  long long n = 0;
  std::vector<ExponentMap> generators;     // sorted lexicographically
  std::vector<long long> degree_spectrum;  // multiset of degrees, ascending

  long long count() const { return static_cast<long long>(generators.size()); }
  std::vector<long long> distinct_degrees() const;
};

// The complete set of minimal generators of omega^(-n) for any integer n
// (n = -1 gives the canonical module itself).
//
// The set splits exactly into the degree-rigid generators (degree pinned to
// the chain-length floor, so nothing smaller exists and they are minimal
// outright) and, off that degree, the module elements compatible with an
// upward minimal (for n > 0, shortest runs) or upward maximal (for n < 0,
// longest runs) mixed path. Both families are enumerated directly, which
// stays fast where a raw box scan would not.
GeneratorSet enumerate_min_generators(const HatPoset& h, long long n);

// Minimal generators of the canonical module (strict drops across covers).
GeneratorSet canonical_generators(const HatPoset& h);

bool is_level(const HatPoset& h);               // omega generated in one degree
bool is_anticanonical_level(const HatPoset& h); // omega^(-1) generated in one degree

/// Counting coordinates N(v) = xi(v) + dist(v,top)*n.
struct NMap {
  std::vector<long long> v;
  long long n = 0;
};

NMap n_transform(const HatPoset& h, const ExponentMap& xi, long long n);
ExponentMap inverse_n_transform(const HatPoset& h, const NMap& N);

// h(n) = number of minimal generators of omega^(-n) for n = 1..n_max.
std::vector<long long> count_generators(const HatPoset& h, int n_max);

// Splits a minimal generator of omega^(-n) into n minimal generators of
// omega^(-1) by the floor/ceiling digit rule.
std::vector<ExponentMap> digit_partition(const HatPoset& h, const ExponentMap& xi, long long n);

// Upward minimal mixed paths all of whose upward cover steps are tight for
// xi (xi(a) = xi(b) - n). Requires in_module(h, xi, n).
std::vector<Path> compatible_mixed_paths(const HatPoset& h, const ExponentMap& xi, long long n);

// Adaptive-box search: per-vertex floors from chain lengths, ceiling with an
// additive slack that doubles whenever a found generator touches it. Handles
// any n (the canonical module runs through n = -1) but scans a whole box, so
// keep the inputs small. Throws InconclusiveError when the box will not
// settle within the retry budget.
GeneratorSet enumerate_min_generators_boxed(const HatPoset& h, long long n, int retries = 4);

namespace detail {

// Classification of hat-poset vertices against a fixed mixed path: values on
// upward runs are pinned (to a peak variable or, for the final run into the
// top, to constants), everything else is free.
enum class PathVertexKind { ConstPin, AnchorPin, Peak, Interior, OffPath };

struct PathPins {
  std::vector<PathVertexKind> kind;
  std::vector<Vertex> anchor;   // for AnchorPin: the peak it hangs from
  std::vector<int> steps_up;    // for pinned verts: cover steps up to the anchor/top
  std::vector<Vertex> peaks;    // in path order
  std::vector<std::vector<Vertex>> interiors;  // per downward run, top to bottom
  std::vector<Vertex> run_bottoms;             // bottom vertex of each downward run
};

PathPins analyze_path(const HatPoset& h, const Path& q);

}  // namespace detail

}  // namespace hibicx
