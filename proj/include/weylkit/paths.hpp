#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylkit/braid.hpp"
#include "weylkit/conj.hpp"

namespace wk::paths {

struct Step {
  cox::Gen gen;
  int eps;  // +1 or -1
  bool operator==(const Step& o) const { return gen == o.gen && eps == o.eps; }
};

/// A based path in the graph on C_min: a start vertex and a sequence of
/// signed letters, each step moving w -> s_i w s_{i(bullet)} along an edge
/// in the indicated direction. Invalid step sequences are rejected.
class Path {
public:
  static std::optional<Path> try_make(const cox::WeylElement& base,
                                      const std::vector<Step>& steps);
  static Path make(const cox::WeylElement& base,
                   const std::vector<Step>& steps);
  static Path loop_at(const cox::WeylElement& base) { return make(base, {}); }

  const cox::WeylElement& base() const { return verts_.front(); }
  const cox::WeylElement& endpoint() const { return verts_.back(); }
  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<cox::WeylElement>& vertices() const { return verts_; }
  size_t size() const { return steps_.size(); }
  bool is_loop() const { return base() == endpoint(); }
  bool operator==(const Path& o) const;

private:
  std::vector<Step> steps_;
  std::vector<cox::WeylElement> verts_;
};

Path concat(const Path& a, const Path& b);
Path reverse_path(const Path& p);

// z_iota = s_{i_1} ... s_{i_{t-1}}, so that endpoint = z^{-1} base z^bullet
cox::WeylElement z_of_path(const Path& p);
braid::BraidElement braid_of_path(const Path& p);

std::string format_path(const Path& p);
Path parse_path(const cox::SystemPtr& sys, const std::string& text);

// ------------------------------------------------------------- moves

enum class MoveKind {
  CancelPlusMinus,   // drop (i,+)(i,-)
  CancelMinusPlus,   // drop (i,-)(i,+)
  BraidPositive,     // flip an all-positive alternating m-block
  BraidNegative,     // flip an all-negative alternating m-block
};

std::optional<Path> apply_move(const Path& p, size_t pos, MoveKind kind);
Path free_reduce(const Path& p);

struct EquivalenceResult {
  bool found = false;
  bool exhausted = false;          // search space fully explored (true negative)
  std::vector<Path> chain;         // canonical states from a to b when found
  size_t explored = 0;
};

// bounded BFS over braid-block moves with eager free cancellation;
// "not found" with exhausted=false means unknown, never inequivalent
EquivalenceResult equivalence_search(const Path& a, const Path& b,
                                     size_t max_states = 50000,
                                     long budget_ms = 5000);

// ------------------------------------------------------------- graph

struct GammaGraph {
  cox::SystemPtr sys;
  std::vector<cox::WeylElement> vertices;  // C_min, sorted
  struct Edge {
    int from, to;
    cox::Gen gen;
  };
  std::vector<Edge> edges;                 // oriented: from @>gen+>> to
  std::vector<std::vector<int>> out_edges, in_edges;

  int vertex_index(const cox::WeylElement& v) const;
  bool is_connected() const;
};

GammaGraph gamma_graph(const conj::BulletConjClass& c);

// ------------------------------------------------------------- tau

struct TauImage {
  cox::WeylElement base;
  // fundamental loop certificates: the z value together with its loop
  std::vector<std::pair<cox::WeylElement, Path>> loop_generators;
  std::vector<cox::WeylElement> image;  // subgroup of W_w generated by them
};

TauImage tau_image(const GammaGraph& g, const cox::WeylElement& base);

struct Conjecture12aReport {
  bool connected = false;
  bool holds = false;  // tau surjective at every base point
  size_t stabilizer_order = 0;
  std::vector<std::pair<cox::WeylElement, size_t>> image_order_per_base;
};

Conjecture12aReport verify_conjecture_12a(const conj::BulletConjClass& c);

// ------------------------------------------------------- builtin paths

struct BuiltinPath {
  Path path;
  cox::WeylElement target_z;  // the named generator the path must produce
  bool literal = true;        // false when the displayed reading failed and a
                              // searched path was substituted
};

struct D4Data {
  cox::WeylElement w;                  // i0j0k0 with 0 the trivalent node
  Path iota, iota_prime, iota_second;  // displayed loops at w
  cox::WeylElement alpha, beta, gamma;
};

// fixed label map: 0 -> "2" (trivalent), i,j,k -> "1","3","3'"
D4Data d4_builtin(const cox::SystemPtr& d4);

BuiltinPath bn_path_w(const cox::SystemPtr& sys,
                      const conj::PartitionSignature& p, int r);
BuiltinPath bn_path_h(const cox::SystemPtr& sys,
                      const conj::PartitionSignature& p, int r);
BuiltinPath dn_path_w(const cox::SystemPtr& sys,
                      const conj::PartitionSignature& p, int r);
BuiltinPath dn_path_h(const cox::SystemPtr& sys,
                      const conj::PartitionSignature& p);

// BFS in the covering graph for a loop at w with prescribed z value
std::optional<Path> find_loop_with_z(const conj::BulletConjClass& c,
                                     const cox::WeylElement& base,
                                     const cox::WeylElement& target_z,
                                     size_t max_states = 2000000);

}  // namespace wk::paths
