#include "hibicx/frobenius.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace hibicx {

namespace {

long long floordiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

long long ceildiv(long long a, long long b) { return -floordiv(-a, b); }

}  // namespace

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long prime_power(long long p, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= p;
    if (r > kMaxPrimePower)
      throw GuardError("p^e exceeds the integer width guard 2^40");
  }
  return r;
}

TElement make_t_element(const HatPoset& h, long long p, int e, ExponentMap xi) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (e < 0) throw ValidationError("degree must be nonnegative");
  long long n = prime_power(p, e) - 1;
  if (xi[h.top()] != 0) throw ValidationError("t-element must have zero top exponent");
  if (!in_module(h, xi, n))
    throw ValidationError("t-element exponents violate the degree-" + std::to_string(e) +
                          " module inequalities");
  return TElement{e, p, std::move(xi)};
}

TElement t_identity(const HatPoset& h, long long p) {
  return make_t_element(h, p, 0, ExponentMap(h.size()));
}

TElement t_multiply(const HatPoset& h, const TElement& a, const TElement& b) {
  if (a.p != b.p) throw ValidationError("t_multiply: prime mismatch");
  int e = a.e + b.e;
  long long shift = prime_power(a.p, b.e);
  ExponentMap xi(h.size());
  for (Vertex v = 0; v < h.size(); ++v) {
    __int128 r = static_cast<__int128>(a.xi[v]) * shift + b.xi[v];
    if (r > std::numeric_limits<long long>::max() / 2 ||
        r < std::numeric_limits<long long>::min() / 2)
      throw GuardError("t_multiply: exponent overflow");
    xi[v] = static_cast<long long>(r);
  }
  return make_t_element(h, a.p, e, std::move(xi));
}

std::optional<SplitWitness> splits(const HatPoset& h, const ExponentMap& xi, int e, long long p) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (e < 2) throw ValidationError("splits: degree must be at least 2");
  if (!in_module(h, xi, prime_power(p, e) - 1))
    throw ValidationError("splits: map is not in the degree-" + std::to_string(e) + " module");

  for (int ep = 1; ep < e; ++ep) {
    const int epp = e - ep;
    const long long P = prime_power(p, ep);
    const long long n1 = P - 1;                      // right factor parameter
    const long long n2 = prime_power(p, epp) - 1;    // left factor parameter
    const auto& order = h.topo_order();
    std::vector<long long> left(h.size(), 0);

    auto rec = [&](auto&& self, size_t idx) -> std::optional<SplitWitness> {
      if (idx == order.size()) {
        ExponentMap lf{std::vector<long long>(left)};
        ExponentMap rf = xi - lf * P;
        if (!in_module(h, lf, n2) || !in_module(h, rf, n1)) return std::nullopt;
        return SplitWitness{ep, std::move(lf), std::move(rf)};
      }
      Vertex v = order[idx];
      long long dvt = h.dist(v, h.top());
      long long lo = -dvt * n2;
      long long hi = floordiv(xi[v] + dvt * n1, P);
      for (Vertex w : h.lower_covers(v)) {
        hi = std::min(hi, left[w] + n2);
        lo = std::max(lo, ceildiv(xi[v] - xi[w] + left[w] * P - n1, P));
      }
      if (v == h.top())
        return lo <= 0 && 0 <= hi ? self(self, idx + 1) : std::nullopt;
      for (long long x = lo; x <= hi; ++x) {
        left[v] = x;
        if (auto w = self(self, idx + 1)) return w;
      }
      left[v] = 0;
      return std::nullopt;
    };
    if (auto w = rec(rec, 0)) return w;
  }
  return std::nullopt;
}

std::vector<long long> complexity_sequence(const HatPoset& h, long long p, int e_max,
                                           int max_elements) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (e_max < 1) throw ValidationError("e_max must be >= 1");
  if (h.base_size() > max_elements)
    throw GuardError("complexity_sequence: poset exceeds the envelope of " +
                     std::to_string(max_elements) + " elements");
  prime_power(p, e_max);

  std::vector<long long> c;
  c.push_back(enumerate_min_generators(h, p - 1).count());
  for (int e = 2; e <= e_max; ++e) {
    auto gens = enumerate_min_generators(h, prime_power(p, e) - 1);
    long long fresh = 0;
    for (const auto& g : gens.generators)
      if (!splits(h, g, e, p)) ++fresh;
    c.push_back(fresh);
  }
  return c;
}

namespace {

// Digit matrices for an obstruction chain (w_1 < ... < w_k): positions
// 0..e-2 strictly increase along the chain so every partial base-p^e' residue
// does too, position e-1 is free, higher positions vanish. The resulting
// values feed a per-candidate validity filter.
void chain_digit_values(long long p, int e, int k,
                        const std::function<void(const std::vector<long long>&)>& emit) {
  std::vector<std::vector<long long>> digits(static_cast<size_t>(e),
                                             std::vector<long long>(k, 0));
  std::vector<long long> values(k, 0);

  auto column = [&](auto&& self, int j) -> void {
    if (j == e) {
      for (int i = 0; i < k; ++i) {
        values[i] = 0;
        for (int jj = e - 1; jj >= 0; --jj) values[i] = values[i] * p + digits[jj][i];
      }
      emit(values);
      return;
    }
    bool increasing = j <= e - 2;
    std::vector<long long>& col = digits[j];
    auto fill = [&](auto&& fself, int i, long long prev) -> void {
      if (i == k) {
        self(self, j + 1);
        return;
      }
      long long from = increasing ? prev + 1 : 0;
      for (long long d = from; d <= p - 1; ++d) {
        col[i] = d;
        fself(fself, i + 1, d);
      }
    };
    fill(fill, 0, -1);
  };
  column(column, 0);
}

std::vector<ExponentMap> level_case_witnesses(const HatPoset& h, long long p, int e) {
  auto witness = levelcase_witness(h);
  if (!witness)
    throw ValidationError("nonsplit witnesses unavailable: no levelcase chain");
  const auto& chain = witness->path.verts;  // (v0, v1..vk), v0 minimal-subset
  const int k = static_cast<int>(chain.size()) - 1;
  if (p <= witness->disparity_sum)
    throw ValidationError("nonsplit witnesses unavailable: p below the disparity threshold");

  const long long n = prime_power(p, e) - 1;
  auto mins = min_subset(h);
  std::vector<char> is_min(h.size(), 0);
  for (Vertex v : mins) is_min[v] = 1;
  std::vector<int> chain_row(h.size(), -1);
  for (int i = 1; i <= k; ++i) chain_row[chain[i]] = i - 1;

  std::vector<Vertex> off_chain;  // nonminimal, off the chain, topological order
  for (Vertex v : h.topo_order())
    if (!is_min[v] && chain_row[v] < 0) off_chain.push_back(v);

  std::vector<long long> N(h.size(), 0);
  std::vector<ExponentMap> out;

  auto valid = [&](Vertex v) {
    long long bound = std::numeric_limits<long long>::max();
    for (Vertex w : h.lower_covers(v))
      bound = std::min(bound, N[w] + static_cast<long long>(h.disp(w, v)) * n);
    return N[v] >= 0 && N[v] <= bound;
  };

  auto off_rec = [&](auto&& self, size_t idx) -> void {
    if (idx == off_chain.size()) {
      for (int i = 1; i <= k; ++i)
        if (!valid(chain[i])) return;
      NMap nm{std::vector<long long>(N), n};
      out.push_back(inverse_n_transform(h, nm));
      return;
    }
    Vertex v = off_chain[idx];
    long long hi = std::numeric_limits<long long>::max();
    for (Vertex w : h.lower_covers(v))
      hi = std::min(hi, N[w] + static_cast<long long>(h.disp(w, v)) * n);
    for (long long x = 0; x <= hi; ++x) {
      N[v] = x;
      self(self, idx + 1);
    }
    N[v] = 0;
  };

  chain_digit_values(p, e, k, [&](const std::vector<long long>& vals) {
    for (int i = 1; i <= k; ++i) N[chain[i]] = vals[i - 1];
    off_rec(off_rec, 0);
  });
  return out;
}

std::vector<ExponentMap> mixed_path_witnesses(const HatPoset& h, long long p, int e) {
  auto paths = upward_minimal_mixed_paths(h);
  if (paths.empty())
    throw ValidationError("nonsplit witnesses unavailable: no upward minimal mixed path");
  const Path& q = paths.front();
  const auto pins = detail::analyze_path(h, q);
  const long long n = prime_power(p, e) - 1;

  // Vertices of the final upward run carry N = 0 for every path-compatible
  // map; they can seed the obstruction chain.
  std::vector<char> zero_pinned(h.size(), 0), is_free(h.size(), 0);
  std::vector<Vertex> free_list;
  for (Vertex v = 0; v < h.size(); ++v) {
    using K = detail::PathVertexKind;
    if (pins.kind[v] == K::ConstPin && pins.steps_up[v] == h.dist(v, h.top()))
      zero_pinned[v] = 1;
    if (pins.kind[v] == K::Peak || pins.kind[v] == K::Interior || pins.kind[v] == K::OffPath)
      is_free[v] = 1, free_list.push_back(v);
  }

  // Longest upward chain of free vertices starting right above a zero-pinned
  // vertex, with disparity sum below its length.
  std::vector<Vertex> best, cur;
  Vertex seed = -1;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    cur.push_back(v);
    bool extended = false;
    for (Vertex w : h.upper_covers(v))
      if (is_free[w]) {
        extended = true;
        self(self, w);
      }
    if (!extended) {
      long long sum = h.disp(seed, cur.front());
      for (size_t i = 0; i + 1 < cur.size(); ++i) sum += h.disp(cur[i], cur[i + 1]);
      if (sum < static_cast<long long>(cur.size()) && cur.size() > best.size()) best = cur;
    }
    cur.pop_back();
  };
  for (Vertex z = 0; z < h.size(); ++z) {
    if (!zero_pinned[z]) continue;
    seed = z;
    for (Vertex w : h.upper_covers(z))
      if (is_free[w]) dfs(dfs, w);
  }
  if (best.empty())
    throw ValidationError("nonsplit witnesses unavailable: no obstruction chain on the path");
  if (best.size() != free_list.size())
    throw ValidationError(
        "nonsplit witnesses unavailable: free vertices lie off the obstruction chain");

  const int k = static_cast<int>(best.size());
  std::vector<long long> val(h.size(), 0);
  for (Vertex v = 0; v < h.size(); ++v)
    if (pins.kind[v] == detail::PathVertexKind::ConstPin)
      val[v] = -static_cast<long long>(pins.steps_up[v]) * n;

  std::vector<ExponentMap> out;
  chain_digit_values(p, e, k, [&](const std::vector<long long>& vals) {
    for (int i = 0; i < k; ++i)
      val[best[i]] = vals[i] - static_cast<long long>(h.dist(best[i], h.top())) * n;
    // Resolve pinned vertices hanging off peaks (all peaks are chain members).
    for (Vertex v = 0; v < h.size(); ++v)
      if (pins.kind[v] == detail::PathVertexKind::AnchorPin)
        val[v] = val[pins.anchor[v]] - static_cast<long long>(pins.steps_up[v]) * n;
    ExponentMap xi{std::vector<long long>(val)};
    if (in_module(h, xi, n)) out.push_back(std::move(xi));
  });
  return out;
}

}  // namespace

std::vector<ExponentMap> nonsplit_witnesses(const HatPoset& h, long long p, int e) {
  if (!is_prime(p)) throw ValidationError("p must be prime");
  if (e < 1) throw ValidationError("degree must be >= 1");
  prime_power(p, e);
  RingFlags flags = classify(h);
  if (flags.gorenstein)
    throw ValidationError("nonsplit witnesses unavailable: Gorenstein ring");

  auto out = flags.anticanonical_level ? level_case_witnesses(h, p, e)
                                       : mixed_path_witnesses(h, p, e);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Smallest d with all (d+1)-st differences zero; needs at least two such
// differences to count as stabilized.
std::optional<int> poly_degree(std::vector<long long> seq) {
  for (int d = 0; seq.size() >= 3; ++d) {
    std::vector<long long> diff;
    for (size_t i = 0; i + 1 < seq.size(); ++i) diff.push_back(seq[i + 1] - seq[i]);
    if (std::all_of(diff.begin(), diff.end(), [](long long x) { return x == 0; })) return d;
    seq = std::move(diff);
  }
  return std::nullopt;
}

}  // namespace

long long symbolic_spread_minus_one(const HatPoset& h, int n_max) {
  auto counts = count_generators(h, n_max);
  for (int skip = 0; skip <= 2; ++skip) {
    for (int period = 1; period <= 4; ++period) {
      std::optional<int> degree;
      bool ok = true;
      for (int r = 0; r < period && ok; ++r) {
        std::vector<long long> sub;
        for (size_t i = skip + r; i < counts.size(); i += period) sub.push_back(counts[i]);
        auto d = poly_degree(std::move(sub));
        ok = d.has_value() && (!degree || *degree == *d);
        if (ok) degree = d;
      }
      if (ok && degree) return *degree;
    }
  }
  throw InconclusiveError("growth degree did not stabilize within n_max", std::move(counts));
}

RingFlags classify(const HatPoset& h) {
  return RingFlags{is_pure(h), is_level(h), is_anticanonical_level(h)};
}

LimitReport predicted_limit_cx(const HatPoset& h, int n_max) {
  LimitReport r;
  r.flags = classify(h);
  r.nonmin_count = static_cast<long long>(nonmin_subset(h).size());
  r.spread_minus_one = symbolic_spread_minus_one(h, n_max);
  if (r.flags.gorenstein) {
    r.predicted_limit = {LimitKind::MinusInfinity, 0};
  } else if (r.flags.anticanonical_level) {
    if (r.spread_minus_one != r.nonmin_count)
      throw InconclusiveError("anticanonical-level spread disagrees with the nonminimal count");
    r.predicted_limit = {LimitKind::Exact, r.nonmin_count};
  } else {
    r.predicted_limit = {LimitKind::LowerBoundOnly, r.spread_minus_one};
  }
  return r;
}

ComplexityReport complexity_report(const HatPoset& h, long long p, int e_max, int max_elements) {
  ComplexityReport r;
  r.p = p;
  r.e_max = e_max;
  r.c = complexity_sequence(h, p, e_max, max_elements);
  r.limit = predicted_limit_cx(h, h.size() + 3);
  return r;
}

}  // namespace hibicx
