#include "hibicx/canonical.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hibicx {

namespace {

long long floordiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

long long mod_euclid(long long a, long long m) { return a - m * floordiv(a, m); }

// Least possible exponent at v for membership with parameter n. For n >= 0
// the shortest chain to the top binds; for the canonical side the longest
// chain does.
long long vertex_floor(const HatPoset& h, Vertex v, long long n) {
  return n >= 0 ? -static_cast<long long>(h.dist(v, h.top())) * n
                : static_cast<long long>(h.longest(v, h.top())) * (-n);
}

GeneratorSet make_set(long long n, std::vector<ExponentMap> gens) {
  std::sort(gens.begin(), gens.end());
  GeneratorSet out;
  out.n = n;
  out.generators = std::move(gens);
  for (const auto& g : out.generators) out.degree_spectrum.push_back(g.degree());
  std::sort(out.degree_spectrum.begin(), out.degree_spectrum.end());
  return out;
}

}  // namespace

bool in_module(const HatPoset& h, const ExponentMap& xi, long long n) {
  for (auto [a, b] : h.covers())
    if (xi[a] < xi[b] - n) return false;
  return true;
}

bool is_minimal_generator(const HatPoset& h, const ExponentMap& xi, long long n) {
  return is_minimal_generator(h, xi, n, poset_ideals(h.base()));
}

bool is_minimal_generator(const HatPoset& h, const ExponentMap& xi, long long n,
                          const std::vector<PosetIdeal>& ideals) {
  if (!in_module(h, xi, n))
    throw ValidationError("is_minimal_generator: map is not in the module");
  for (PosetIdeal I : ideals)
    if (in_module(h, xi - hibi_generator(h, I), n)) return false;
  return true;
}

std::vector<long long> GeneratorSet::distinct_degrees() const {
  std::vector<long long> d = degree_spectrum;
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

namespace {

// All module elements with the rigid degree -dist(bottom,top)*n. Each is a
// minimal generator: dividing by any Hibi generator drops the t-exponent
// below the membership floor.
std::vector<ExponentMap> rigid_generators(const HatPoset& h, long long n) {
  const auto& order = h.topo_order();
  std::vector<long long> xi(h.size(), 0);
  xi[h.bottom()] = vertex_floor(h, h.bottom(), n);
  std::vector<ExponentMap> out;

  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx == order.size()) {
      out.emplace_back(xi);
      return;
    }
    Vertex v = order[idx];
    if (v == h.bottom()) {
      self(self, idx + 1);
      return;
    }
    long long hi = std::numeric_limits<long long>::max();
    for (Vertex w : h.lower_covers(v)) hi = std::min(hi, xi[w] + n);
    if (v == h.top()) {
      if (hi >= 0) self(self, idx + 1);
      return;
    }
    long long lo = vertex_floor(h, v, n);
    for (long long x = lo; x <= hi; ++x) {
      xi[v] = x;
      self(self, idx + 1);
    }
    xi[v] = 0;
  };
  rec(rec, 0);
  return out;
}

}  // namespace

namespace detail {

PathPins analyze_path(const HatPoset& h, const Path& q) {
  PathPins pins;
  pins.kind.assign(h.size(), PathVertexKind::OffPath);
  pins.anchor.assign(h.size(), -1);
  pins.steps_up.assign(h.size(), 0);

  // Maximal runs as [start, end] position ranges.
  struct Run {
    int start, end, dir;
  };
  std::vector<Run> runs;
  int start = 0;
  for (size_t i = 1; i < q.steps.size(); ++i)
    if (q.steps[i] != q.steps[i - 1]) {
      runs.push_back({start, static_cast<int>(i), q.steps[start]});
      start = static_cast<int>(i);
    }
  runs.push_back({start, static_cast<int>(q.steps.size()), q.steps[start]});

  for (const Run& r : runs) {
    if (r.dir > 0) {
      Vertex anchor = q.verts[r.end];
      for (int j = r.start; j <= r.end; ++j) {
        Vertex v = q.verts[j];
        if (anchor == h.top()) {
          pins.kind[v] = PathVertexKind::ConstPin;
          pins.steps_up[v] = r.end - j;
        } else if (j == r.end) {
          pins.kind[v] = PathVertexKind::Peak;
        } else {
          pins.kind[v] = PathVertexKind::AnchorPin;
          pins.anchor[v] = anchor;
          pins.steps_up[v] = r.end - j;
        }
      }
      if (anchor != h.top()) pins.peaks.push_back(anchor);
    } else {
      std::vector<Vertex> inner;
      for (int j = r.start + 1; j < r.end; ++j) {
        pins.kind[q.verts[j]] = PathVertexKind::Interior;
        inner.push_back(q.verts[j]);
      }
      pins.interiors.push_back(std::move(inner));
      pins.run_bottoms.push_back(q.verts[r.end]);
    }
  }
  return pins;
}

}  // namespace detail

namespace {

// Module elements compatible with the path q whose degree exceeds the rigid
// one. Pinned vertices follow the tight cover equalities along upward runs;
// peaks, downward-run interiors and off-path vertices are searched within
// propagated intervals and every candidate is re-checked in full.
std::vector<ExponentMap> path_compatible_generators(const HatPoset& h, const Path& q,
                                                    long long n,
                                                    std::set<std::vector<long long>>& seen) {
  const auto pins = detail::analyze_path(h, q);
  const long long rigid_degree = vertex_floor(h, h.bottom(), n);

  std::vector<long long> val(h.size(), 0);
  std::vector<char> known(h.size(), 0);
  // Constant pins (final upward run) are known from the start.
  for (Vertex v = 0; v < h.size(); ++v)
    if (pins.kind[v] == detail::PathVertexKind::ConstPin) {
      val[v] = -static_cast<long long>(pins.steps_up[v]) * n;
      known[v] = 1;
    }

  // Assignment plan: peaks in reverse path order, then downward-run interiors
  // top to bottom, then off-path vertices in topological order.
  struct Slot {
    Vertex v;
    int down_run = -1;  // for interiors: which downward run
    int pos_in_run = 0;
  };
  std::vector<Slot> plan;
  for (auto it = pins.peaks.rbegin(); it != pins.peaks.rend(); ++it) plan.push_back({*it});
  for (size_t r = 0; r < pins.interiors.size(); ++r)
    for (size_t j = 0; j < pins.interiors[r].size(); ++j)
      plan.push_back({pins.interiors[r][j], static_cast<int>(r), static_cast<int>(j)});
  for (Vertex v : h.topo_order())
    if (pins.kind[v] == detail::PathVertexKind::OffPath) plan.push_back({v});

  // Position lookup along the path for interior-to-bottom step counts.
  std::vector<int> pos(h.size(), -1);
  for (size_t i = 0; i < q.verts.size(); ++i) pos[q.verts[i]] = static_cast<int>(i);

  auto resolve_pins = [&](Vertex peak) {
    for (Vertex v = 0; v < h.size(); ++v)
      if (pins.kind[v] == detail::PathVertexKind::AnchorPin && pins.anchor[v] == peak) {
        val[v] = val[peak] - static_cast<long long>(pins.steps_up[v]) * n;
        known[v] = 1;
      }
  };

  std::vector<ExponentMap> out;
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx == plan.size()) {
      ExponentMap xi{std::vector<long long>(val)};
      if (xi[h.top()] != 0 || xi.degree() <= rigid_degree) return;
      if (!in_module(h, xi, n)) return;
      if (seen.insert(xi.v).second) out.push_back(std::move(xi));
      return;
    }
    const Slot& s = plan[idx];
    Vertex v = s.v;
    long long lo = vertex_floor(h, v, n);
    long long hi = std::numeric_limits<long long>::max();

    if (pins.kind[v] == detail::PathVertexKind::Peak) {
      // Peaks and downward runs alternate, so the i-th peak is followed by
      // the i-th downward run; its bottom hangs off a later peak or the final
      // constants, both already known. Membership telescoped down the run
      // bounds the peak from above.
      size_t r = std::find(pins.peaks.begin(), pins.peaks.end(), v) - pins.peaks.begin();
      Vertex beta = pins.run_bottoms[r];
      hi = std::min(hi, val[beta] + static_cast<long long>(pos[beta] - pos[v]) * n);
      // Members of the upward run anchored to this peak keep their floors.
      for (Vertex x = 0; x < h.size(); ++x)
        if (pins.kind[x] == detail::PathVertexKind::AnchorPin && pins.anchor[x] == v)
          lo = std::max(lo, vertex_floor(h, x, n) + static_cast<long long>(pins.steps_up[x]) * n);
    } else if (pins.kind[v] == detail::PathVertexKind::Interior) {
      Vertex above = q.verts[pos[v] - 1];
      lo = std::max(lo, val[above] - n);
      Vertex beta = pins.run_bottoms[s.down_run];
      hi = std::min(hi, val[beta] + static_cast<long long>(pos[beta] - pos[v]) * n);
    } else {  // off path
      for (Vertex w : h.lower_covers(v))
        if (known[w]) hi = std::min(hi, val[w] + n);
      for (Vertex z : h.upper_covers(v))
        if (known[z]) lo = std::max(lo, val[z] - n);
    }

    for (long long x = lo; x <= hi; ++x) {
      val[v] = x;
      known[v] = 1;
      if (pins.kind[v] == detail::PathVertexKind::Peak) resolve_pins(v);
      self(self, idx + 1);
    }
    known[v] = 0;
    if (pins.kind[v] == detail::PathVertexKind::Peak)
      for (Vertex x = 0; x < h.size(); ++x)
        if (pins.kind[x] == detail::PathVertexKind::AnchorPin && pins.anchor[x] == v) known[x] = 0;
  };
  rec(rec, 0);
  return out;
}

}  // namespace

GeneratorSet enumerate_min_generators(const HatPoset& h, long long n) {
  if (n == 0) return make_set(0, {ExponentMap(h.size())});

  std::vector<ExponentMap> gens = rigid_generators(h, n);
  std::set<std::vector<long long>> seen;
  auto paths = n > 0 ? upward_minimal_mixed_paths(h) : upward_maximal_mixed_paths(h);
  for (const Path& q : paths) {
    auto extra = path_compatible_generators(h, q, n, seen);
    gens.insert(gens.end(), extra.begin(), extra.end());
  }
  return make_set(n, std::move(gens));
}

GeneratorSet canonical_generators(const HatPoset& h) {
  return enumerate_min_generators(h, -1);
}

bool is_level(const HatPoset& h) {
  return canonical_generators(h).distinct_degrees().size() == 1;
}

bool is_anticanonical_level(const HatPoset& h) {
  return enumerate_min_generators(h, 1).distinct_degrees().size() == 1;
}

NMap n_transform(const HatPoset& h, const ExponentMap& xi, long long n) {
  NMap N;
  N.n = n;
  N.v.resize(h.size());
  for (Vertex v = 0; v < h.size(); ++v)
    N.v[v] = xi[v] + static_cast<long long>(h.dist(v, h.top())) * n;
  return N;
}

ExponentMap inverse_n_transform(const HatPoset& h, const NMap& N) {
  ExponentMap xi(h.size());
  for (Vertex v = 0; v < h.size(); ++v)
    xi[v] = N.v[v] - static_cast<long long>(h.dist(v, h.top())) * N.n;
  return xi;
}

std::vector<long long> count_generators(const HatPoset& h, int n_max) {
  if (n_max < 1) throw ValidationError("count_generators: n_max must be >= 1");
  if (n_max > kGrowthMaxN || static_cast<long long>(n_max) * h.size() > 10000)
    throw GuardError("count_generators: horizon n_max = " + std::to_string(n_max) +
                     " is out of the compute envelope");
  std::vector<long long> out;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(enumerate_min_generators(h, n).count());
    // Counts grow polynomially; stop before the next power becomes unpayable.
    if (out.back() > 2000000)
      throw GuardError("count_generators: generator counts exceed the compute envelope");
  }
  return out;
}

std::vector<ExponentMap> digit_partition(const HatPoset& h, const ExponentMap& xi, long long n) {
  if (n < 1) throw ValidationError("digit_partition: n must be >= 1");
  if (!in_module(h, xi, n) || !is_minimal_generator(h, xi, n))
    throw ValidationError("digit_partition: map is not a minimal generator");
  std::vector<ExponentMap> parts(static_cast<size_t>(n), ExponentMap(h.size()));
  for (Vertex v = 0; v < h.size(); ++v) {
    long long q = floordiv(xi[v], n), r = mod_euclid(xi[v], n);
    for (long long l = 1; l <= n; ++l) parts[l - 1][v] = q + (l <= r ? 1 : 0);
  }
  for (const auto& part : parts)
    if (!in_module(h, part, 1))
      throw std::logic_error("digit_partition produced a part outside omega^(-1)");
  return parts;
}

std::vector<Path> compatible_mixed_paths(const HatPoset& h, const ExponentMap& xi, long long n) {
  if (!in_module(h, xi, n))
    throw ValidationError("compatible_mixed_paths: map is not in the module");
  std::vector<Path> out;
  for (const Path& q : upward_minimal_mixed_paths(h)) {
    bool ok = true;
    for (size_t i = 0; i < q.steps.size() && ok; ++i)
      if (q.steps[i] > 0) ok = xi[q.verts[i]] - xi[q.verts[i + 1]] + n == 0;
    if (ok) out.push_back(q);
  }
  return out;
}

GeneratorSet enumerate_min_generators_boxed(const HatPoset& h, long long n, int retries) {
  const auto ideals = poset_ideals(h.base());
  const long long absn = std::max<long long>(1, n < 0 ? -n : n);

  std::vector<long long> floor_v(h.size());
  for (Vertex v = 0; v < h.size(); ++v)
    floor_v[v] = n >= 0 ? -static_cast<long long>(h.dist(v, h.top())) * n
                        : static_cast<long long>(h.longest(v, h.top())) * (-n);

  long long slack = static_cast<long long>(h.size()) * std::max(1, h.max_disp()) * absn;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    std::vector<long long> box_hi(h.size());
    for (Vertex v = 0; v < h.size(); ++v) box_hi[v] = floor_v[v] + slack;

    const auto& order = h.topo_order();
    std::vector<long long> xi(h.size(), 0);
    std::vector<ExponentMap> gens;
    auto rec = [&](auto&& self, size_t idx) -> void {
      if (idx == order.size()) {
        ExponentMap m{std::vector<long long>(xi)};
        if (is_minimal_generator(h, m, n, ideals)) gens.push_back(std::move(m));
        return;
      }
      Vertex v = order[idx];
      long long hi = box_hi[v];
      for (Vertex w : h.lower_covers(v)) hi = std::min(hi, xi[w] + n);
      if (v == h.top()) {
        if (hi >= 0) self(self, idx + 1);
        return;
      }
      for (long long x = floor_v[v]; x <= hi; ++x) {
        xi[v] = x;
        self(self, idx + 1);
      }
      xi[v] = 0;
    };
    rec(rec, 0);

    bool touched = false;
    for (const auto& g : gens)
      for (Vertex v = 0; v < h.size(); ++v)
        if (v != h.top() && g[v] == box_hi[v]) touched = true;
    if (!touched) return make_set(n, std::move(gens));
    slack *= 2;
  }
  throw InconclusiveError("generator search box did not settle; poset reported inconclusive");
}

}  // namespace hibicx
