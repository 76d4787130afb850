#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hibicx {

// Error kinds map onto CLI exit codes: validation -> 2, guard -> 3,
// inconclusive -> 4.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconclusiveError : std::runtime_error {
  explicit InconclusiveError(const std::string& what,
                             std::vector<long long> partial = {})
      : std::runtime_error(what), partial_data(std::move(partial)) {}
  std::vector<long long> partial_data;
};

inline constexpr int kDefaultMaxElements = 20;

// Vertex indices refer to the hat poset: 0 is the adjoined bottom, 1..n the
// base elements in input order, n+1 the adjoined top.
using Vertex = int;

/// Finite poset on named elements, stored as its transitive reduction.
class Poset {
 public:
  Poset() = default;

  // Accepts arbitrary (possibly redundant) order relations "a < b" and keeps
  // only the covers. Throws ValidationError on cycles, self-relations,
  // duplicate or unknown names; GuardError when the element count exceeds
  // max_elements.
  static Poset build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& relations,
                     int max_elements = kDefaultMaxElements);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  // Cover pairs (lower, upper) as element indices, sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  int index_of(const std::string& name) const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  std::vector<std::string> elements_;
  std::vector<std::pair<int, int>> covers_;
};

enum class PathKind { Upwards, Downwards, Mixed };

/// Walk along Hasse edges of the hat poset, no repeated vertices.
struct Path {
  std::vector<Vertex> verts;
  std::vector<int> steps;  // +1 for an upward cover step, -1 for a downward one

  PathKind kind() const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// P with a global bottom and top adjoined, plus the order, distance and
/// disparity tables everything else is built from. Immutable.
class HatPoset {
 public:
  explicit HatPoset(Poset base);

  const Poset& base() const { return base_; }
  int size() const { return n_ + 2; }
  int base_size() const { return n_; }
  Vertex bottom() const { return 0; }
  Vertex top() const { return n_ + 1; }
  Vertex vertex_of_base(int element_index) const { return element_index + 1; }
  bool is_base(Vertex v) const { return v >= 1 && v <= n_; }

  const std::string& name(Vertex v) const;
  Vertex vertex_by_name(const std::string& name) const;

  const std::vector<std::pair<Vertex, Vertex>>& covers() const { return covers_; }
  const std::vector<Vertex>& upper_covers(Vertex v) const { return upper_[v]; }
  const std::vector<Vertex>& lower_covers(Vertex v) const { return lower_[v]; }
  // A fixed linear extension: bottom first, top last, ties by vertex index.
  const std::vector<Vertex>& topo_order() const { return topo_; }

  bool leq(Vertex u, Vertex v) const { return leq_[u][v] != 0; }

  // Number of cover steps in a shortest upward chain from u to v.
  // Throws ValidationError unless u <= v.
  int dist(Vertex u, Vertex v) const;
  // Number of cover steps in a longest upward chain from u to v.
  int longest(Vertex u, Vertex v) const;
  // disp(u,v) = dist(u,v) + dist(v,top) - dist(u,top); always >= 0.
  int disp(Vertex u, Vertex v) const;

  int dist_bottom_top() const { return dist_bottom_top_; }
  int max_disp() const { return max_disp_; }

 private:
  Poset base_;
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> covers_;
  std::vector<std::vector<Vertex>> upper_, lower_;
  std::vector<Vertex> topo_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<int>> dist_, longest_;
  int dist_bottom_top_ = 0;
  int max_disp_ = 0;
};

inline HatPoset build_hat(Poset p) { return HatPoset(std::move(p)); }

/// True iff every maximal chain of P has the same number of elements
/// (the Gorenstein condition for the associated Hibi ring).
bool is_pure(const HatPoset& h);
bool is_pure(const Poset& p);

// Vertices lying on some minimum-length chain bottom -> top, and the rest.
std::vector<Vertex> min_subset(const HatPoset& h);
std::vector<Vertex> nonmin_subset(const HatPoset& h);

bool is_top_node(const HatPoset& h, Vertex v);     // covers >= 2 elements
bool is_bottom_node(const HatPoset& h, Vertex v);  // covered by >= 2 elements

// Nonminimal vertices that start strings of inequalities: top nodes, and
// vertices covering a minimal-subset vertex or a bottom node.
std::vector<Vertex> starting_points(const HatPoset& h);

// All mixed paths from bottom to top whose maximal upward runs are shortest
// chains between their endpoints, in lexicographic vertex order.
std::vector<Path> upward_minimal_mixed_paths(const HatPoset& h);

// Same search with longest chains as the run constraint. Tight monomials of
// the canonical module ride these paths, mirroring the anticanonical case.
std::vector<Path> upward_maximal_mixed_paths(const HatPoset& h);

struct LevelcaseWitness {
  Path path;                // upward path (v0, ..., vk) with v0 in the minimal subset
  long long disparity_sum;  // sum disp(v_{i-1}, v_i) over its steps, < k
};

// Searches the maximum-length upward paths inside the nonminimal subset for
// one whose disparity sum beats its length. Present whenever the ring is
// anticanonical level and not Gorenstein.
std::optional<LevelcaseWitness> levelcase_witness(const HatPoset& h);

// Signed step count (up minus down) between two vertices of a path; u must
// come before v along the path.
long long mlen(const Path& p, Vertex u, Vertex v);

}  // namespace hibicx
