#include "weylkit/paths.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace wk::paths {

using cox::Gen;
using cox::SystemPtr;
using cox::WeylElement;

// -------------------------------------------------------------- path

std::optional<Path> Path::try_make(const WeylElement& base,
                                   const std::vector<Step>& steps) {
  const auto& sys = base.system();
  Path p;
  p.verts_.push_back(base);
  for (const Step& st : steps) {
    const WeylElement& cur = p.verts_.back();
    if (st.gen < 0 || st.gen >= sys->rank()) return std::nullopt;
    if (st.eps == 1) {
      if (!cox::has_left_descent(cur, st.gen)) return std::nullopt;
    } else if (st.eps == -1) {
      if (!cox::has_right_descent(cur, sys->bullet(st.gen))) return std::nullopt;
    } else {
      return std::nullopt;
    }
    WeylElement next =
        cur.mul_gen_left(st.gen).mul_gen_right(sys->bullet(st.gen));
    if (next.length() != cur.length()) return std::nullopt;
    p.verts_.push_back(std::move(next));
    p.steps_.push_back(st);
  }
  return p;
}

Path Path::make(const WeylElement& base, const std::vector<Step>& steps) {
  auto p = try_make(base, steps);
  if (!p) throw std::invalid_argument("invalid path step sequence");
  return *p;
}

bool Path::operator==(const Path& o) const {
  return verts_.front() == o.verts_.front() && steps_ == o.steps_;
}

Path concat(const Path& a, const Path& b) {
  if (a.endpoint() != b.base())
    throw std::invalid_argument("paths do not compose");
  std::vector<Step> steps = a.steps();
  steps.insert(steps.end(), b.steps().begin(), b.steps().end());
  return Path::make(a.base(), steps);
}

Path reverse_path(const Path& p) {
  std::vector<Step> steps;
  for (auto it = p.steps().rbegin(); it != p.steps().rend(); ++it)
    steps.push_back(Step{it->gen, -it->eps});
  return Path::make(p.endpoint(), steps);
}

WeylElement z_of_path(const Path& p) {
  WeylElement z = p.base().system()->identity();
  for (const Step& st : p.steps()) z = z.mul_gen_right(st.gen);
  return z;
}

braid::BraidElement braid_of_path(const Path& p) {
  auto out = braid::BraidElement::identity(p.base().system());
  for (const Step& st : p.steps())
    out = out * braid::BraidElement::generator(p.base().system(), st.gen, st.eps);
  return out;
}

std::string format_path(const Path& p) {
  const auto& sys = p.base().system();
  std::string out = "[" + cox::format_element(p.base()) + ";";
  for (size_t k = 0; k < p.steps().size(); ++k) {
    out += k ? "," : " ";
    out += sys->label(p.steps()[k].gen);
    if (p.steps()[k].eps < 0) out += "~";
  }
  return out + "]";
}

Path parse_path(const SystemPtr& sys, const std::string& text) {
  auto semi = text.find(';');
  if (text.empty() || text.front() != '[' || text.back() != ']' ||
      semi == std::string::npos)
    throw std::invalid_argument("malformed path literal");
  WeylElement base =
      cox::evaluate(sys, cox::parse_word(sys, text.substr(1, semi - 1)));
  std::vector<Step> steps;
  std::string rest = text.substr(semi + 1, text.size() - semi - 2);
  size_t pos = 0;
  while (pos < rest.size()) {
    while (pos < rest.size() && (rest[pos] == ' ' || rest[pos] == ',')) ++pos;
    if (pos >= rest.size()) break;
    size_t end = rest.find(',', pos);
    if (end == std::string::npos) end = rest.size();
    std::string tok = rest.substr(pos, end - pos);
    int eps = 1;
    if (!tok.empty() && tok.back() == '~') {
      eps = -1;
      tok.pop_back();
    }
    steps.push_back(Step{sys->gen_by_label(tok), eps});
    pos = end + 1;
  }
  return Path::make(base, steps);
}

// -------------------------------------------------------------- moves

std::optional<Path> apply_move(const Path& p, size_t pos, MoveKind kind) {
  const auto& sys = p.base().system();
  const auto& st = p.steps();
  std::vector<Step> steps = st;
  switch (kind) {
    case MoveKind::CancelPlusMinus:
    case MoveKind::CancelMinusPlus: {
      int first = kind == MoveKind::CancelPlusMinus ? 1 : -1;
      if (pos + 1 >= st.size()) return std::nullopt;
      if (st[pos].gen != st[pos + 1].gen) return std::nullopt;
      if (st[pos].eps != first || st[pos + 1].eps != -first) return std::nullopt;
      steps.erase(steps.begin() + (long)pos, steps.begin() + (long)pos + 2);
      break;
    }
    case MoveKind::BraidPositive:
    case MoveKind::BraidNegative: {
      int sign = kind == MoveKind::BraidPositive ? 1 : -1;
      if (pos + 1 >= st.size()) return std::nullopt;
      Gen a = st[pos].gen, b = st[pos + 1].gen;
      if (a == b) return std::nullopt;
      int m = sys->coxeter_m(a, b);
      if (pos + (size_t)m > st.size()) return std::nullopt;
      for (int t = 0; t < m; ++t) {
        if (st[pos + t].eps != sign) return std::nullopt;
        if (st[pos + t].gen != (t % 2 == 0 ? a : b)) return std::nullopt;
      }
      for (int t = 0; t < m; ++t) steps[pos + t] = Step{t % 2 == 0 ? b : a, sign};
      break;
    }
  }
  return Path::try_make(p.base(), steps);
}

Path free_reduce(const Path& p) {
  std::vector<Step> steps = p.steps();
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k + 1 < steps.size(); ++k) {
      if (steps[k].gen == steps[k + 1].gen &&
          steps[k].eps == -steps[k + 1].eps) {
        steps.erase(steps.begin() + (long)k, steps.begin() + (long)k + 2);
        changed = true;
        break;
      }
    }
  }
  return Path::make(p.base(), steps);
}

EquivalenceResult equivalence_search(const Path& a, const Path& b,
                                     size_t max_states, long budget_ms) {
  EquivalenceResult res;
  if (a.base() != b.base() || a.endpoint() != b.endpoint()) return res;
  Path start = free_reduce(a);
  Path target = free_reduce(b);
  auto key = [](const Path& p) { return format_path(p); };
  std::unordered_map<std::string, int> index;
  std::vector<Path> states;
  std::vector<int> parent;
  auto push = [&](const Path& p, int par) {
    auto [it, inserted] = index.emplace(key(p), (int)states.size());
    if (!inserted) return -1;
    states.push_back(p);
    parent.push_back(par);
    return (int)states.size() - 1;
  };
  push(start, -1);
  auto t0 = std::chrono::steady_clock::now();
  std::string target_key = key(target);
  int found_at = index.count(target_key) && key(start) == target_key ? 0 : -1;
  size_t head = 0;
  bool truncated = false;
  while (head < states.size() && found_at < 0 && !truncated) {
    Path cur = states[head];
    for (size_t pos = 0; pos < cur.size() && found_at < 0 && !truncated;
         ++pos) {
      for (MoveKind kind : {MoveKind::BraidPositive, MoveKind::BraidNegative}) {
        auto next = apply_move(cur, pos, kind);
        if (!next) continue;
        Path canon = free_reduce(*next);
        int id = push(canon, (int)head);
        if (id >= 0 && key(canon) == target_key) {
          found_at = id;
          break;
        }
        if (states.size() >= max_states) {
          truncated = true;
          break;
        }
      }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms > budget_ms) truncated = true;
    ++head;
  }
  res.explored = states.size();
  if (found_at >= 0) {
    res.found = true;
    std::vector<Path> chain;
    for (int at = found_at; at >= 0; at = parent[at]) chain.push_back(states[at]);
    std::reverse(chain.begin(), chain.end());
    res.chain = std::move(chain);
  } else {
    res.exhausted = !truncated;
  }
  return res;
}

// -------------------------------------------------------------- graph

int GammaGraph::vertex_index(const WeylElement& v) const {
  for (size_t k = 0; k < vertices.size(); ++k)
    if (vertices[k] == v) return (int)k;
  return -1;
}

bool GammaGraph::is_connected() const {
  if (vertices.empty()) return true;
  std::vector<char> seen(vertices.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    auto visit = [&](int u) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        queue.push_back(u);
      }
    };
    for (int e : out_edges[v]) visit(edges[e].to);
    for (int e : in_edges[v]) visit(edges[e].from);
  }
  return reached == vertices.size();
}

GammaGraph gamma_graph(const conj::BulletConjClass& c) {
  GammaGraph g;
  g.sys = c.sys;
  g.vertices = c.c_min;
  g.out_edges.resize(g.vertices.size());
  g.in_edges.resize(g.vertices.size());
  std::unordered_map<std::vector<uint16_t>, int, cox::VecHash> index;
  for (size_t k = 0; k < g.vertices.size(); ++k)
    index[g.vertices[k].key()] = (int)k;
  for (size_t k = 0; k < g.vertices.size(); ++k) {
    const auto& v = g.vertices[k];
    for (Gen i : cox::left_descents(v)) {
      WeylElement to = v.mul_gen_left(i).mul_gen_right(g.sys->bullet(i));
      auto it = index.find(to.key());
      if (it == index.end()) throw std::logic_error("edge leaves C_min");
      g.edges.push_back(GammaGraph::Edge{(int)k, it->second, i});
      g.out_edges[k].push_back((int)g.edges.size() - 1);
      g.in_edges[it->second].push_back((int)g.edges.size() - 1);
    }
  }
  return g;
}

// ---------------------------------------------------------------- tau

TauImage tau_image(const GammaGraph& g, const WeylElement& base) {
  if (!g.is_connected()) throw std::invalid_argument("graph is not connected");
  int root = g.vertex_index(base);
  if (root < 0) throw std::invalid_argument("base is not a vertex");

  TauImage out;
  out.base = base;
  std::vector<char> seen(g.vertices.size(), 0);
  std::vector<std::vector<Step>> tree_steps(g.vertices.size());
  std::vector<char> edge_in_tree(g.edges.size(), 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    auto try_edge = [&](int e, bool forward) {
      int u = forward ? g.edges[e].to : g.edges[e].from;
      if (seen[u]) return;
      seen[u] = 1;
      edge_in_tree[e] = 1;
      tree_steps[u] = tree_steps[v];
      tree_steps[u].push_back(Step{g.edges[e].gen, forward ? 1 : -1});
      queue.push_back(u);
    };
    for (int e : g.out_edges[v]) try_edge(e, true);
    for (int e : g.in_edges[v]) try_edge(e, false);
  }

  std::vector<WeylElement> zs;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_in_tree[e]) continue;
    const auto& ed = g.edges[e];
    std::vector<Step> steps = tree_steps[ed.from];
    steps.push_back(Step{ed.gen, 1});
    std::vector<Step> back = tree_steps[ed.to];
    std::reverse(back.begin(), back.end());
    for (Step& st : back) st.eps = -st.eps;
    steps.insert(steps.end(), back.begin(), back.end());
    Path loop = Path::make(base, steps);
    if (!loop.is_loop()) throw std::logic_error("fundamental loop is not a loop");
    WeylElement z = z_of_path(loop);
    out.loop_generators.emplace_back(z, std::move(loop));
    zs.push_back(z);
  }
  out.image = conj::generated_subgroup(g.sys, zs);
  return out;
}

Conjecture12aReport verify_conjecture_12a(const conj::BulletConjClass& c) {
  Conjecture12aReport rep;
  GammaGraph g = gamma_graph(c);
  rep.connected = g.is_connected();
  if (!rep.connected) return rep;
  rep.holds = true;
  for (const auto& base : g.vertices) {
    auto stab = conj::stabilizer(base);
    TauImage img = tau_image(g, base);
    for (const auto& z : img.image)
      if (!stab.contains(z)) throw std::logic_error("tau image outside W_w");
    rep.image_order_per_base.emplace_back(base, img.image.size());
    if (img.image.size() != stab.order()) rep.holds = false;
    if (base == c.representative()) rep.stabilizer_order = stab.order();
  }
  return rep;
}

// ------------------------------------------------------- builtin paths

D4Data d4_builtin(const SystemPtr& d4) {
  if (d4->name() != "D4") throw std::invalid_argument("needs plain D4");
  D4Data out;
  auto ev = [&](const std::string& s) {
    return cox::evaluate(d4, cox::parse_word(d4, s));
  };
  // 0 -> "2", i -> "1", j -> "3", k -> "3'"
  out.w = ev("1.2.3.2.3'.2");
  out.alpha = ev("2.1.3.2");
  out.beta = ev("3.3'");
  out.gamma = ev("1.2.3'.1.2.1");
  out.iota = parse_path(d4, "[1.2.3.2.3'.2; 2~,1,3,2]");
  out.iota_prime = parse_path(d4, "[1.2.3.2.3'.2; 3,3']");
  out.iota_second = parse_path(d4, "[1.2.3.2.3'.2; 1,2,3',1,2~,1~]");
  return out;
}

namespace {

int path_start_letter(const conj::PartitionSignature& p, int r) {
  // a = n - (p_sigma + ... + p_{r+1})
  int a = p.n();
  for (int t = r + 1; t <= p.sigma(); ++t) a -= p.part(t);
  return a;
}

std::vector<Step> plus_steps(const std::vector<int>& letters) {
  std::vector<Step> out;
  for (int v : letters) out.push_back(Step{v - 1, 1});
  return out;
}

}  // namespace

BuiltinPath bn_path_w(const SystemPtr& sys, const conj::PartitionSignature& p,
                      int r) {
  auto data = conj::classical_w(sys, p);
  if (data.variant != conj::ClassicalVariant::BC)
    throw std::invalid_argument("bn_path_w needs type B or C");
  int n = sys->rank();
  int a = path_start_letter(p, r);
  std::vector<int> letters;
  for (int v = a; v <= n; ++v) letters.push_back(v);
  for (int v = n - 1; v >= a - p.part(r) + 1; --v) letters.push_back(v);
  BuiltinPath out;
  out.target_z = conj::to_weyl(sys, conj::classical_w_perm(n, p, r));
  out.path = Path::make(data.w, plus_steps(letters));
  return out;
}

BuiltinPath bn_path_h(const SystemPtr& sys, const conj::PartitionSignature& p,
                      int r) {
  auto data = conj::classical_w(sys, p);
  if (data.variant != conj::ClassicalVariant::BC)
    throw std::invalid_argument("bn_path_h needs type B or C");
  int n = sys->rank();
  if (r < 1 || r >= p.sigma() || p.part(r) != p.part(r + 1))
    throw std::invalid_argument("h_r needs p_r = p_{r+1}");
  int a = path_start_letter(p, r);
  int pp = p.part(r);
  std::vector<Step> steps;
  switch (pp) {
    case 1:
      steps = {Step{a - 1, 1}};
      break;
    case 2:
      steps = {Step{a - 1, 1}, Step{a, 1}, Step{a - 2, 1}, Step{a - 1, -1}};
      break;
    case 3:
      steps = {Step{a - 1, 1},  Step{a, 1},     Step{a - 2, 1},
               Step{a + 1, 1},  Step{a - 1, 1}, Step{a - 3, 1},
               Step{a - 2, -1}, Step{a, -1},    Step{a - 1, -1}};
      break;
    default:
      throw std::invalid_argument("displayed specializations cover p <= 3");
  }
  BuiltinPath out;
  out.target_z = conj::to_weyl(sys, conj::classical_h_perm(n, p, r));
  out.path = Path::make(data.w, steps);
  return out;
}

std::optional<Path> find_loop_with_z(const conj::BulletConjClass& c,
                                     const WeylElement& base,
                                     const WeylElement& target_z,
                                     size_t max_states) {
  const auto& sys = c.sys;
  const auto& all = sys->all_elements();
  std::unordered_map<std::vector<uint16_t>, int, cox::VecHash> elt_index;
  for (size_t k = 0; k < all.size(); ++k) elt_index[all[k].key()] = (int)k;
  std::unordered_map<std::vector<uint16_t>, int, cox::VecHash> vert_index;
  for (size_t k = 0; k < c.c_min.size(); ++k)
    vert_index[c.c_min[k].key()] = (int)k;

  auto vi0 = vert_index.find(base.key());
  if (vi0 == vert_index.end()) return std::nullopt;
  size_t nw = all.size();
  auto code = [&](int vi, int zi) { return (uint64_t)vi * nw + (uint64_t)zi; };
  int z0 = elt_index.at(sys->identity().key());
  int zt = elt_index.at(target_z.key());

  std::unordered_map<uint64_t, std::pair<uint64_t, Step>> parent;
  std::deque<std::pair<int, int>> queue;
  uint64_t start = code(vi0->second, z0);
  uint64_t goal = code(vi0->second, zt);
  parent.emplace(start, std::make_pair(start, Step{0, 0}));
  queue.emplace_back(vi0->second, z0);
  bool found = start == goal;
  while (!queue.empty() && !found) {
    auto [vi, zi] = queue.front();
    queue.pop_front();
    const WeylElement& v = c.c_min[vi];
    const WeylElement& z = all[zi];
    for (int eps : {1, -1}) {
      for (Gen i = 0; i < sys->rank(); ++i) {
        if (eps == 1 && !cox::has_left_descent(v, i)) continue;
        if (eps == -1 && !cox::has_right_descent(v, sys->bullet(i))) continue;
        WeylElement next = v.mul_gen_left(i).mul_gen_right(sys->bullet(i));
        int nvi = vert_index.at(next.key());
        int nzi = elt_index.at(z.mul_gen_right(i).key());
        uint64_t ncode = code(nvi, nzi);
        if (parent.count(ncode)) continue;
        parent.emplace(ncode, std::make_pair(code(vi, zi), Step{i, eps}));
        if (ncode == goal) {
          found = true;
          break;
        }
        queue.emplace_back(nvi, nzi);
        if (parent.size() > max_states) return std::nullopt;
      }
      if (found) break;
    }
  }
  if (!found) return std::nullopt;
  std::vector<Step> steps;
  for (uint64_t at = goal; at != start;) {
    auto [prev, st] = parent.at(at);
    steps.push_back(st);
    at = prev;
  }
  std::reverse(steps.begin(), steps.end());
  return Path::make(base, steps);
}

BuiltinPath dn_path_w(const SystemPtr& sys, const conj::PartitionSignature& p,
                      int r) {
  auto data = conj::classical_w(sys, p);
  if (data.variant != conj::ClassicalVariant::D)
    throw std::invalid_argument("dn_path_w needs type D");
  int n = sys->rank();
  conj::SignedPerm ws = conj::classical_w_perm(n, p, p.sigma());
  BuiltinPath out;
  out.target_z = conj::to_weyl(sys, conj::classical_w_perm(n, p, r) * ws);

  // displayed: [w; a,...,n-1,(n-1)',n-2,...,a-p_r+1,n-1,...,n-p_sigma+1]
  int a = path_start_letter(p, r);
  std::vector<Step> steps;
  for (int v = a; v <= n - 1; ++v) steps.push_back(Step{v - 1, 1});
  steps.push_back(Step{n - 1, 1});  // the primed generator
  for (int v = n - 2; v >= a - p.part(r) + 1; --v)
    steps.push_back(Step{v - 1, 1});
  for (int v = n - 1; v >= n - p.part(p.sigma()) + 1; --v)
    steps.push_back(Step{v - 1, 1});
  auto literal = Path::try_make(data.w, steps);
  if (literal && literal->is_loop() && z_of_path(*literal) == out.target_z) {
    out.path = *literal;
    return out;
  }
  out.literal = false;
  auto cls = conj::bullet_class(data.w);
  auto searched = find_loop_with_z(cls, data.w, out.target_z);
  if (!searched)
    throw std::runtime_error("no loop with the required z value found");
  out.path = *searched;
  return out;
}

BuiltinPath dn_path_h(const SystemPtr& sys, const conj::PartitionSignature& p) {
  auto data = conj::classical_w(sys, p);
  if (data.variant != conj::ClassicalVariant::D)
    throw std::invalid_argument("dn_path_h needs type D");
  int n = sys->rank();
  int sigma = p.sigma();
  if (sigma < 2 || p.part(sigma - 1) != p.part(sigma))
    throw std::invalid_argument("needs p_{sigma-1} = p_sigma");
  conj::SignedPerm ws = conj::classical_w_perm(n, p, sigma);
  conj::SignedPerm h = conj::classical_h_perm(n, p, sigma - 1);
  BuiltinPath out;
  out.target_z = conj::to_weyl(sys, ws.inverse() * h * ws);

  // for p = 1 the tilde path collapses to the single letter (n-1)'
  if (p.part(sigma) == 1) {
    auto literal = Path::try_make(data.w, {Step{n - 1, 1}});
    if (literal && literal->is_loop() && z_of_path(*literal) == out.target_z) {
      out.path = *literal;
      return out;
    }
  }
  out.literal = false;
  auto cls = conj::bullet_class(data.w);
  auto searched = find_loop_with_z(cls, data.w, out.target_z);
  if (!searched)
    throw std::runtime_error("no loop with the required z value found");
  out.path = *searched;
  return out;
}

}  // namespace wk::paths
