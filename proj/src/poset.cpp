#include "hibicx/poset.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace hibicx {

namespace {

// Reachability closure of an arbitrary relation list; reach[i][j] means i < j.
std::vector<std::vector<char>> closure_of(int n, const std::vector<std::pair<int, int>>& rel) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (auto [a, b] : rel) reach[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  return reach;
}

}  // namespace

Poset Poset::build(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& relations,
                   int max_elements) {
  if (static_cast<int>(elements.size()) > max_elements)
    throw GuardError("poset has " + std::to_string(elements.size()) +
                     " elements, guard is " + std::to_string(max_elements));
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    if (elements[i].empty()) throw ValidationError("empty element identifier");
    if (!index.emplace(elements[i], i).second)
      throw ValidationError("duplicate element '" + elements[i] + "'");
  }
  std::vector<std::pair<int, int>> rel;
  for (const auto& [a, b] : relations) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw ValidationError("unknown element '" + a + "' in relation");
    if (ib == index.end()) throw ValidationError("unknown element '" + b + "' in relation");
    if (ia->second == ib->second)
      throw ValidationError("self relation '" + a + " < " + a + "' (cycle)");
    rel.emplace_back(ia->second, ib->second);
  }

  const int n = static_cast<int>(elements.size());
  auto reach = closure_of(n, rel);
  for (int i = 0; i < n; ++i)
    if (reach[i][i])
      throw ValidationError("cycle through element '" + elements[i] + "'");

  Poset p;
  p.elements_ = std::move(elements);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!reach[a][b]) continue;
      bool redundant = false;
      for (int c = 0; c < n && !redundant; ++c)
        if (reach[a][c] && reach[c][b]) redundant = true;
      if (!redundant) p.covers_.emplace_back(a, b);
    }
  std::sort(p.covers_.begin(), p.covers_.end());
  return p;
}

int Poset::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements_[i] == name) return i;
  return -1;
}

PathKind Path::kind() const {
  bool up = false, down = false;
  for (int s : steps) (s > 0 ? up : down) = true;
  if (up && down) return PathKind::Mixed;
  return down ? PathKind::Downwards : PathKind::Upwards;
}

HatPoset::HatPoset(Poset base) : base_(std::move(base)), n_(base_.size()) {
  const int V = n_ + 2;
  std::vector<char> has_lower(V, 0), has_upper(V, 0);
  for (auto [a, b] : base_.covers()) {
    covers_.emplace_back(a + 1, b + 1);
    has_lower[b + 1] = has_upper[a + 1] = 1;
  }
  for (int v = 1; v <= n_; ++v) {
    if (!has_lower[v]) covers_.emplace_back(bottom(), v);
    if (!has_upper[v]) covers_.emplace_back(v, top());
  }
  if (n_ == 0) covers_.emplace_back(bottom(), top());
  std::sort(covers_.begin(), covers_.end());

  upper_.assign(V, {});
  lower_.assign(V, {});
  for (auto [a, b] : covers_) {
    upper_[a].push_back(b);
    lower_[b].push_back(a);
  }
  for (auto& adj : upper_) std::sort(adj.begin(), adj.end());
  for (auto& adj : lower_) std::sort(adj.begin(), adj.end());

  // Kahn with min-index tie break; bottom is the unique source, top the sink.
  {
    std::vector<int> indeg(V, 0);
    for (auto& [a, b] : covers_) ++indeg[b];
    std::priority_queue<int, std::vector<int>, std::greater<int>> q;
    for (int v = 0; v < V; ++v)
      if (indeg[v] == 0) q.push(v);
    while (!q.empty()) {
      int v = q.top();
      q.pop();
      topo_.push_back(v);
      for (int w : upper_[v])
        if (--indeg[w] == 0) q.push(w);
    }
  }

  leq_.assign(V, std::vector<char>(V, 0));
  dist_.assign(V, std::vector<int>(V, -1));
  longest_.assign(V, std::vector<int>(V, -1));
  for (int u = 0; u < V; ++u) {
    leq_[u][u] = 1;
    dist_[u][u] = longest_[u][u] = 0;
    for (int v : topo_) {
      if (v == u) continue;
      for (int w : lower_[v]) {
        if (!leq_[u][w]) continue;
        leq_[u][v] = 1;
        int d = dist_[u][w] + 1, l = longest_[u][w] + 1;
        if (dist_[u][v] < 0 || d < dist_[u][v]) dist_[u][v] = d;
        if (l > longest_[u][v]) longest_[u][v] = l;
      }
    }
  }
  dist_bottom_top_ = dist_[bottom()][top()];
  for (int u = 0; u < V; ++u)
    for (int v = 0; v < V; ++v)
      if (leq_[u][v]) max_disp_ = std::max(max_disp_, disp(u, v));
}

const std::string& HatPoset::name(Vertex v) const {
  static const std::string kBottom = "-inf", kTop = "inf";
  if (v == bottom()) return kBottom;
  if (v == top()) return kTop;
  return base_.elements()[v - 1];
}

Vertex HatPoset::vertex_by_name(const std::string& name) const {
  if (name == "-inf") return bottom();
  if (name == "inf") return top();
  int i = base_.index_of(name);
  if (i < 0) throw ValidationError("unknown element '" + name + "'");
  return vertex_of_base(i);
}

int HatPoset::dist(Vertex u, Vertex v) const {
  if (!leq(u, v))
    throw ValidationError("dist: " + name(u) + " is not below " + name(v));
  return dist_[u][v];
}

int HatPoset::longest(Vertex u, Vertex v) const {
  if (!leq(u, v))
    throw ValidationError("longest: " + name(u) + " is not below " + name(v));
  return longest_[u][v];
}

int HatPoset::disp(Vertex u, Vertex v) const {
  return dist(u, v) + dist(v, top()) - dist(u, top());
}

bool is_pure(const HatPoset& h) {
  return h.longest(h.bottom(), h.top()) == h.dist_bottom_top();
}

bool is_pure(const Poset& p) { return is_pure(HatPoset(p)); }

std::vector<Vertex> min_subset(const HatPoset& h) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < h.size(); ++v)
    if (h.dist(h.bottom(), v) + h.dist(v, h.top()) == h.dist_bottom_top())
      out.push_back(v);
  return out;
}

std::vector<Vertex> nonmin_subset(const HatPoset& h) {
  auto mins = min_subset(h);
  std::vector<Vertex> out;
  auto it = mins.begin();
  for (Vertex v = 0; v < h.size(); ++v) {
    if (it != mins.end() && *it == v)
      ++it;
    else
      out.push_back(v);
  }
  return out;
}

bool is_top_node(const HatPoset& h, Vertex v) { return h.lower_covers(v).size() >= 2; }
bool is_bottom_node(const HatPoset& h, Vertex v) { return h.upper_covers(v).size() >= 2; }

std::vector<Vertex> starting_points(const HatPoset& h) {
  auto mins = min_subset(h);
  std::vector<char> is_min(h.size(), 0);
  for (Vertex v : mins) is_min[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < h.size(); ++v) {
    if (is_min[v]) continue;
    bool start = is_top_node(h, v);
    for (Vertex w : h.lower_covers(v))
      start = start || is_min[w] || is_bottom_node(h, w);
    if (start) out.push_back(v);
  }
  return out;
}

namespace {

struct PathSearch {
  const HatPoset& h;
  std::vector<Path>& out;
  bool use_longest;
  std::vector<Vertex> verts;
  std::vector<int> steps;
  std::vector<char> visited;
  Vertex run_start;  // first vertex of the current maximal upward run, -1 inside a downward run
  bool saw_down = false;

  int run_target(Vertex a, Vertex b) const {
    return use_longest ? h.longest(a, b) : h.dist(a, b);
  }

  // Every contiguous piece of an extremal chain is extremal, so upward runs
  // can be checked one cover step at a time.
  void expand(Vertex v) {
    if (v == h.top()) {
      if (saw_down) out.push_back(Path{verts, steps});
      return;
    }
    for (Vertex w : h.upper_covers(v)) {
      if (visited[w]) continue;
      Vertex start = run_start < 0 ? v : run_start;
      int run_len = static_cast<int>(verts.size()) - 1 -
                    static_cast<int>(std::find(verts.begin(), verts.end(), start) -
                                     verts.begin());
      if (run_len + 1 != run_target(start, w)) continue;
      push(w, +1, start);
    }
    for (Vertex w : h.lower_covers(v)) {
      if (visited[w]) continue;
      push(w, -1, -1);
    }
  }

  void push(Vertex w, int dir, Vertex next_run_start) {
    Vertex saved_run = run_start;
    bool saved_down = saw_down;
    visited[w] = 1;
    verts.push_back(w);
    steps.push_back(dir);
    run_start = next_run_start;
    if (dir < 0) saw_down = true;
    expand(w);
    saw_down = saved_down;
    run_start = saved_run;
    steps.pop_back();
    verts.pop_back();
    visited[w] = 0;
  }
};

}  // namespace

namespace {

std::vector<Path> extremal_mixed_paths(const HatPoset& h, bool use_longest) {
  std::vector<Path> out;
  PathSearch s{h, out, use_longest, {}, {}, {}, -1, false};
  s.visited.assign(h.size(), 0);
  s.visited[h.bottom()] = 1;
  s.verts.push_back(h.bottom());
  s.run_start = h.bottom();
  s.expand(h.bottom());
  std::sort(out.begin(), out.end(),
            [](const Path& a, const Path& b) { return a.verts < b.verts; });
  return out;
}

}  // namespace

std::vector<Path> upward_minimal_mixed_paths(const HatPoset& h) {
  return extremal_mixed_paths(h, false);
}

std::vector<Path> upward_maximal_mixed_paths(const HatPoset& h) {
  return extremal_mixed_paths(h, true);
}

std::optional<LevelcaseWitness> levelcase_witness(const HatPoset& h) {
  auto nonmin = nonmin_subset(h);
  if (nonmin.empty()) return std::nullopt;
  std::vector<char> in_nonmin(h.size(), 0);
  for (Vertex v : nonmin) in_nonmin[v] = 1;

  // All maximum-length upward cover paths inside the nonminimal subset.
  std::vector<std::vector<Vertex>> best;
  std::vector<Vertex> cur;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    cur.push_back(v);
    bool extended = false;
    for (Vertex w : h.upper_covers(v))
      if (in_nonmin[w]) {
        extended = true;
        self(self, w);
      }
    if (!extended) {
      if (best.empty() || cur.size() > best.front().size()) best.clear();
      if (best.empty() || cur.size() == best.front().size()) best.push_back(cur);
    }
    cur.pop_back();
  };
  for (Vertex v : nonmin) {
    bool has_nonmin_lower = false;
    for (Vertex w : h.lower_covers(v)) has_nonmin_lower = has_nonmin_lower || in_nonmin[w];
    if (!has_nonmin_lower) dfs(dfs, v);
  }
  std::sort(best.begin(), best.end());

  for (const auto& chain : best) {
    const long long k = static_cast<long long>(chain.size());
    for (Vertex v0 : h.lower_covers(chain.front())) {
      if (in_nonmin[v0]) continue;
      long long sum = h.disp(v0, chain.front());
      for (size_t i = 0; i + 1 < chain.size(); ++i) sum += h.disp(chain[i], chain[i + 1]);
      if (sum < k) {
        Path p;
        p.verts.push_back(v0);
        p.verts.insert(p.verts.end(), chain.begin(), chain.end());
        p.steps.assign(chain.size(), +1);
        return LevelcaseWitness{std::move(p), sum};
      }
    }
  }
  return std::nullopt;
}

long long mlen(const Path& p, Vertex u, Vertex v) {
  auto iu = std::find(p.verts.begin(), p.verts.end(), u);
  auto iv = std::find(p.verts.begin(), p.verts.end(), v);
  if (iu == p.verts.end() || iv == p.verts.end())
    throw ValidationError("mlen: vertex not on path");
  if (iv < iu) throw ValidationError("mlen: endpoints out of path order");
  long long sum = 0;
  for (auto i = iu - p.verts.begin(); i < iv - p.verts.begin(); ++i) sum += p.steps[i];
  return sum;
}

}  // namespace hibicx
