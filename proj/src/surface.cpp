#include "sclkit/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sclkit {

namespace {

struct Slot {
  int triangle;
  int face;  // 0, 1, 2
};

// Traversal direction of face f along the triangle boundary walk
// v0 -> v1 -> v2 -> v0 for a positively oriented triangle.
int face_dir(int f) { return f == 1 ? -1 : 1; }

int face_edge(const SurfaceTriangle& t, int f) { return f == 0 ? t.d0 : (f == 1 ? t.d1 : t.d2); }

struct Analysis {
  std::vector<std::vector<Slot>> edge_uses;
  std::vector<int> orientation;  // +-1 per triangle
  struct Cycle {
    std::vector<std::pair<int, int>> steps;  // (edge, direction)
    Word word;
    int min_edge = 0;
  };
  std::vector<Cycle> cycles;
};

std::vector<Diagnostic> validate_impl(const LabelledSurface& s, const GroupPair* pair,
                                      Analysis* out) {
  std::vector<Diagnostic> diag;
  int ne = static_cast<int>(s.edges.size());
  int nt = static_cast<int>(s.triangles.size());

  for (int e = 0; e < ne; ++e) {
    const SurfaceEdge& ed = s.edges[static_cast<size_t>(e)];
    if (ed.tail < 0 || ed.tail >= s.num_vertices || ed.head < 0 || ed.head >= s.num_vertices)
      diag.push_back({"edge endpoint out of range", -1, e, -1});
  }
  for (int t = 0; t < nt; ++t) {
    const SurfaceTriangle& tr = s.triangles[static_cast<size_t>(t)];
    for (int f = 0; f < 3; ++f)
      if (face_edge(tr, f) < 0 || face_edge(tr, f) >= ne) {
        diag.push_back({"triangle face out of range", t, -1, -1});
        return diag;
      }
  }
  if (!diag.empty()) return diag;

  std::vector<std::vector<Slot>> uses(static_cast<size_t>(ne));
  for (int t = 0; t < nt; ++t) {
    const SurfaceTriangle& tr = s.triangles[static_cast<size_t>(t)];
    const SurfaceEdge& e0 = s.edges[static_cast<size_t>(tr.d0)];
    const SurfaceEdge& e1 = s.edges[static_cast<size_t>(tr.d1)];
    const SurfaceEdge& e2 = s.edges[static_cast<size_t>(tr.d2)];
    // v0 = tail(d2) = tail(d1), v1 = head(d2) = tail(d0), v2 = head(d0) = head(d1)
    if (tr.d0 == tr.d1 || tr.d0 == tr.d2 || tr.d1 == tr.d2)
      diag.push_back({"triangle uses an edge on two of its own faces", t, -1, -1});
    if (e2.tail != e1.tail || e2.head != e0.tail || e0.head != e1.head)
      diag.push_back({"triangle endpoints do not close up", t, -1, -1});
    if (multiply(e2.label, e0.label) != e1.label)
      diag.push_back({"edge labels violate f(d2) f(d0) = f(d1)", t, -1, -1});
    if (pair != nullptr && !pair->n_equals_g() && !pair->in_N(e0.label) && !pair->in_N(e2.label))
      diag.push_back({"triangle has no N-labelled d0 or d2 face", t, -1, -1});
    for (int f = 0; f < 3; ++f) uses[static_cast<size_t>(face_edge(tr, f))].push_back({t, f});
  }
  for (int e = 0; e < ne; ++e) {
    if (uses[static_cast<size_t>(e)].empty())
      diag.push_back({"edge not used by any triangle", -1, e, -1});
    if (uses[static_cast<size_t>(e)].size() > 2)
      diag.push_back({"edge used by more than two triangle faces", -1, e, -1});
  }
  if (!diag.empty()) return diag;

  // Orientability: 2-color triangles so glued faces are traversed oppositely.
  std::vector<int> orient(static_cast<size_t>(nt), 0);
  for (int seed = 0; seed < nt; ++seed) {
    if (orient[static_cast<size_t>(seed)] != 0) continue;
    orient[static_cast<size_t>(seed)] = 1;
    std::vector<int> stack = {seed};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      const SurfaceTriangle& tr = s.triangles[static_cast<size_t>(t)];
      for (int f = 0; f < 3; ++f) {
        int e = face_edge(tr, f);
        for (const Slot& other : uses[static_cast<size_t>(e)]) {
          if (other.triangle == t && other.face == f) continue;
          int want = -face_dir(f) * orient[static_cast<size_t>(t)] * face_dir(other.face);
          int& o = orient[static_cast<size_t>(other.triangle)];
          if (o == 0) {
            o = want;
            stack.push_back(other.triangle);
          } else if (o != want) {
            diag.push_back({"gluing is not orientable", other.triangle, e, -1});
            return diag;
          }
        }
      }
    }
  }

  // Vertex links: corners chain the edge-ends around each vertex into a
  // single path or cycle. Nodes are edge-ends; corners are link edges.
  auto node = [&](int edge, bool head) { return 2 * edge + (head ? 1 : 0); };
  struct Corner {
    int a, b;
    int vertex;
  };
  std::vector<Corner> corners;
  std::vector<std::vector<int>> incident(static_cast<size_t>(2 * ne));  // corner ids per node
  auto add_corner = [&](int vertex, int n1, int n2) {
    incident[static_cast<size_t>(n1)].push_back(static_cast<int>(corners.size()));
    incident[static_cast<size_t>(n2)].push_back(static_cast<int>(corners.size()));
    corners.push_back({n1, n2, vertex});
  };
  for (int t = 0; t < nt; ++t) {
    const SurfaceTriangle& tr = s.triangles[static_cast<size_t>(t)];
    const SurfaceEdge& e2 = s.edges[static_cast<size_t>(tr.d2)];
    const SurfaceEdge& e0 = s.edges[static_cast<size_t>(tr.d0)];
    add_corner(e2.tail, node(tr.d2, false), node(tr.d1, false));
    add_corner(e2.head, node(tr.d2, true), node(tr.d0, false));
    add_corner(e0.head, node(tr.d0, true), node(tr.d1, true));
  }
  std::vector<int> vertex_of_node(static_cast<size_t>(2 * ne));
  for (int e = 0; e < ne; ++e) {
    vertex_of_node[static_cast<size_t>(node(e, false))] = s.edges[static_cast<size_t>(e)].tail;
    vertex_of_node[static_cast<size_t>(node(e, true))] = s.edges[static_cast<size_t>(e)].head;
  }
  std::vector<int> comp_at_vertex(static_cast<size_t>(s.num_vertices), 0);
  std::vector<bool> seen_node(static_cast<size_t>(2 * ne), false);
  std::vector<bool> vertex_used(static_cast<size_t>(s.num_vertices), false);
  for (int n = 0; n < 2 * ne; ++n) {
    vertex_used[static_cast<size_t>(vertex_of_node[static_cast<size_t>(n)])] = true;
    if (seen_node[static_cast<size_t>(n)]) continue;
    ++comp_at_vertex[static_cast<size_t>(vertex_of_node[static_cast<size_t>(n)])];
    std::vector<int> stack = {n};
    seen_node[static_cast<size_t>(n)] = true;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int cid : incident[static_cast<size_t>(cur)]) {
        int nxt = corners[static_cast<size_t>(cid)].a == cur ? corners[static_cast<size_t>(cid)].b
                                                             : corners[static_cast<size_t>(cid)].a;
        if (!seen_node[static_cast<size_t>(nxt)]) {
          seen_node[static_cast<size_t>(nxt)] = true;
          stack.push_back(nxt);
        }
      }
    }
  }
  for (int v = 0; v < s.num_vertices; ++v) {
    if (!vertex_used[static_cast<size_t>(v)])
      diag.push_back({"isolated vertex", -1, -1, v});
    else if (comp_at_vertex[static_cast<size_t>(v)] > 1)
      diag.push_back({"vertex link is disconnected (pinch point)", -1, -1, v});
  }
  if (!diag.empty()) return diag;

  if (out != nullptr) {
    // Normalize each triangle component so its lowest triangle is positive.
    std::vector<int> norm = orient;
    std::vector<bool> fixed(static_cast<size_t>(nt), false);
    for (int seed = 0; seed < nt; ++seed) {
      if (fixed[static_cast<size_t>(seed)]) continue;
      std::vector<int> comp = {seed};
      fixed[static_cast<size_t>(seed)] = true;
      for (size_t i = 0; i < comp.size(); ++i) {
        const SurfaceTriangle& tr = s.triangles[static_cast<size_t>(comp[i])];
        for (int f = 0; f < 3; ++f)
          for (const Slot& other : uses[static_cast<size_t>(face_edge(tr, f))])
            if (!fixed[static_cast<size_t>(other.triangle)]) {
              fixed[static_cast<size_t>(other.triangle)] = true;
              comp.push_back(other.triangle);
            }
      }
      int lowest = *std::min_element(comp.begin(), comp.end());
      if (norm[static_cast<size_t>(lowest)] < 0)
        for (int t : comp) norm[static_cast<size_t>(t)] = -norm[static_cast<size_t>(t)];
    }
    out->edge_uses = uses;
    out->orientation = norm;

    // Pair up the two endpoints of each link path; endpoints are exactly the
    // edge-ends of boundary edges (link degree one).
    std::map<int, int> other_end;
    for (int n = 0; n < 2 * ne; ++n) {
      if (incident[static_cast<size_t>(n)].size() != 1) continue;
      int prev_corner = -1, cur = n;
      while (true) {
        int next_corner = -1;
        for (int cid : incident[static_cast<size_t>(cur)])
          if (cid != prev_corner) {
            next_corner = cid;
            break;
          }
        if (next_corner < 0) break;
        int nxt = corners[static_cast<size_t>(next_corner)].a == cur
                      ? corners[static_cast<size_t>(next_corner)].b
                      : corners[static_cast<size_t>(next_corner)].a;
        prev_corner = next_corner;
        cur = nxt;
        if (incident[static_cast<size_t>(cur)].size() == 1) break;
      }
      other_end[n] = cur;
    }

    std::vector<bool> used_boundary(static_cast<size_t>(ne), false);
    for (int e = 0; e < ne; ++e) {
      if (uses[static_cast<size_t>(e)].size() != 1) continue;
      if (used_boundary[static_cast<size_t>(e)]) continue;
      const Slot& sl = uses[static_cast<size_t>(e)].front();
      int dir = face_dir(sl.face) * norm[static_cast<size_t>(sl.triangle)];
      Analysis::Cycle cyc;
      int cur_edge = e, cur_dir = dir;
      do {
        used_boundary[static_cast<size_t>(cur_edge)] = true;
        cyc.steps.push_back({cur_edge, cur_dir});
        int finish = node(cur_edge, cur_dir > 0);
        int start_next = other_end.at(finish);
        cur_edge = start_next / 2;
        cur_dir = (start_next % 2 == 0) ? 1 : -1;
      } while (cur_edge != e);
      cyc.min_edge = e;
      for (const auto& [edge, d] : cyc.steps) {
        const Word& lab = s.edges[static_cast<size_t>(edge)].label;
        cyc.word = multiply(cyc.word, d > 0 ? lab : inverse(lab));
      }
      out->cycles.push_back(std::move(cyc));
    }
    std::sort(out->cycles.begin(), out->cycles.end(),
              [](const Analysis::Cycle& a, const Analysis::Cycle& b) { return a.min_edge < b.min_edge; });
  }
    return diag;
}

Analysis analyze(const LabelledSurface& s) {
  Analysis a;
  auto diag = validate_impl(s, nullptr, &a);
  if (!diag.empty()) throw std::invalid_argument("invalid surface: " + diag.front().message);
  return a;
}

}  // namespace

std::vector<Diagnostic> validate(const LabelledSurface& s, const GroupPair* pair) {
  return validate_impl(s, pair, nullptr);
}

SurfaceInvariants invariants(const LabelledSurface& s) {
  Analysis a = analyze(s);
  SurfaceInvariants inv;
  inv.euler = s.num_vertices - static_cast<int>(s.edges.size()) + static_cast<int>(s.triangles.size());
  inv.boundary_count = static_cast<int>(a.cycles.size());
  for (const auto& c : a.cycles) inv.boundary_words.push_back(c.word);

  // components over vertices
  std::vector<int> parent(static_cast<size_t>(s.num_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int x, int y) { parent[static_cast<size_t>(find(x))] = find(y); };
  for (const SurfaceEdge& e : s.edges) unite(e.tail, e.head);

  std::map<int, int> comp_index;
  auto comp_of = [&](int v) {
    int r = find(v);
    auto it = comp_index.find(r);
    if (it == comp_index.end()) {
      int idx = static_cast<int>(comp_index.size());
      comp_index[r] = idx;
      return idx;
    }
    return it->second;
  };
  std::vector<int> vcount, ecount, fcount, bcount;
  auto ensure = [&](int idx) {
    while (static_cast<int>(vcount.size()) <= idx) {
      vcount.push_back(0);
      ecount.push_back(0);
      fcount.push_back(0);
      bcount.push_back(0);
    }
  };
  for (int v = 0; v < s.num_vertices; ++v) {
    int c = comp_of(v);
    ensure(c);
    ++vcount[static_cast<size_t>(c)];
  }
  for (const SurfaceEdge& e : s.edges) ++ecount[static_cast<size_t>(comp_of(e.tail))];
  for (const SurfaceTriangle& t : s.triangles)
    ++fcount[static_cast<size_t>(comp_of(s.edges[static_cast<size_t>(t.d2)].tail))];
  for (const auto& c : a.cycles)
    ++bcount[static_cast<size_t>(comp_of(s.edges[static_cast<size_t>(c.steps.front().first)].tail))];

  inv.chi_minus = 0;
  for (size_t c = 0; c < vcount.size(); ++c) {
    ComponentInvariants ci;
    ci.euler = vcount[c] - ecount[c] + fcount[c];
    ci.boundary_count = bcount[c];
    int twog = 2 - ci.euler - ci.boundary_count;
    if (twog < 0 || twog % 2 != 0)
      throw std::logic_error("component Euler characteristic inconsistent with orientability");
    ci.genus = twog / 2;
    ci.is_sphere = (ci.boundary_count == 0 && ci.genus == 0);
    if (!ci.is_sphere) inv.chi_minus += ci.euler;
    inv.components.push_back(ci);
  }
  return inv;
}

namespace {

int add_edge(LabelledSurface& s, int tail, int head, const Word& label) {
  s.edges.push_back({tail, head, label});
  return static_cast<int>(s.edges.size()) - 1;
}

void add_triangle(LabelledSurface& s, int d2, int d0, int d1) {
  s.triangles.push_back({d0, d1, d2});
}

}  // namespace

LabelledSurface build_from_decomposition(const GroupPair& pair,
                                         const std::vector<CommutatorTerm>& decomposition) {
  LabelledSurface s;
  if (decomposition.empty()) {
    // trivially labelled disc
    s.num_vertices = 3;
    int e2 = add_edge(s, 0, 1, Word());
    int e0 = add_edge(s, 1, 2, Word());
    int e1 = add_edge(s, 0, 2, Word());
    add_triangle(s, e2, e0, e1);
    s.degree = 1;
    s.attached_chain = {Word()};
    return s;
  }
  s.num_vertices = 1;
  size_t k = decomposition.size();
  std::vector<Word> z(k);
  std::vector<int> z_edge(k);
  for (size_t i = 0; i < k; ++i) {
    const CommutatorTerm& term = decomposition[i];
    if (!pair.in_N(term.x)) throw std::invalid_argument("commutator entry x is not in N");
    Word g = term.conjugator.empty() ? term.g : conjugate(term.conjugator, term.g);
    Word x = term.conjugator.empty() ? term.x : conjugate(term.conjugator, term.x);
    z[i] = commutator(g, x);
    int eg = add_edge(s, 0, 0, g);
    int ex = add_edge(s, 0, 0, x);
    int exg = add_edge(s, 0, 0, multiply(x, g));
    int egx = add_edge(s, 0, 0, multiply(g, x));
    int ez = add_edge(s, 0, 0, z[i]);
    z_edge[i] = ez;
    add_triangle(s, ex, eg, exg);   // x . g = xg
    add_triangle(s, eg, ex, egx);   // g . x = gx
    add_triangle(s, ez, exg, egx);  // [g,x] . xg = gx
  }
  if (k >= 2) {
    // fan of k-1 triangles gluing the handles along prefix products
    std::vector<int> prefix_edge(k);
    std::vector<Word> prefix(k);
    prefix[0] = z[0];
    prefix_edge[0] = z_edge[0];
    for (size_t j = 1; j < k; ++j) {
      prefix[j] = multiply(prefix[j - 1], z[j]);
      prefix_edge[j] = add_edge(s, 0, 0, prefix[j]);
    }
    for (size_t j = 0; j + 1 < k; ++j)
      add_triangle(s, prefix_edge[j], z_edge[j + 1], prefix_edge[j + 1]);
    s.attached_chain = {prefix[k - 1]};
  } else {
    s.attached_chain = {z[0]};
  }
  s.degree = 1;
  return s;
}

namespace {

struct BoundaryEdgeInfo {
  int edge;
  int dir;
  Word word;  // traversed word of the whole cycle
};

BoundaryEdgeInfo single_edge_boundary(const LabelledSurface& s, const Analysis& a, int index) {
  if (index < 0 || index >= static_cast<int>(a.cycles.size()))
    throw std::invalid_argument("boundary index out of range");
  const auto& cyc = a.cycles[static_cast<size_t>(index)];
  if (cyc.steps.size() != 1)
    throw std::invalid_argument("operation needs a single-edge boundary component");
  if (cyc.steps.front().second != 1)
    throw std::invalid_argument("operation needs a forward-oriented boundary edge");
  const SurfaceEdge& e = s.edges[static_cast<size_t>(cyc.steps.front().first)];
  if (e.tail != e.head) throw std::logic_error("single-edge boundary must be a loop");
  return {cyc.steps.front().first, cyc.steps.front().second, cyc.word};
}

LabelledSurface merge_vertices(LabelledSurface s, const std::vector<int>& group) {
  // collapse all vertices in `group` onto the smallest one
  int target = *std::min_element(group.begin(), group.end());
  std::vector<int> remap(static_cast<size_t>(s.num_vertices));
  std::iota(remap.begin(), remap.end(), 0);
  for (int v : group) remap[static_cast<size_t>(v)] = target;
  // compact
  std::vector<int> final_id(static_cast<size_t>(s.num_vertices), -1);
  int next = 0;
  for (int v = 0; v < s.num_vertices; ++v) {
    int m = remap[static_cast<size_t>(v)];
    if (final_id[static_cast<size_t>(m)] < 0) final_id[static_cast<size_t>(m)] = next++;
    final_id[static_cast<size_t>(v)] = final_id[static_cast<size_t>(m)];
  }
  for (SurfaceEdge& e : s.edges) {
    e.tail = final_id[static_cast<size_t>(e.tail)];
    e.head = final_id[static_cast<size_t>(e.head)];
  }
  s.num_vertices = next;
  return s;
}

}  // namespace

LabelledSurface split_boundary(const LabelledSurface& s, int boundary_index,
                               const std::vector<Word>& parts,
                               const std::vector<Word>& conjugators, const GroupPair& pair,
                               SurgeryDelta* delta) {
  if (parts.empty()) throw std::invalid_argument("split needs at least one part");
  if (!conjugators.empty() && conjugators.size() != parts.size())
    throw std::invalid_argument("one conjugator per part (or none)");
  Analysis a = analyze(s);
  BoundaryEdgeInfo y = single_edge_boundary(s, a, boundary_index);
  Word expected;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!pair.in_N(parts[i])) throw std::invalid_argument("split part is not in N");
    Word c = conjugators.empty() ? Word() : conjugators[i];
    expected = multiply(expected, c.empty() ? parts[i] : conjugate(c, parts[i]));
  }
  if (expected != y.word)
    throw std::invalid_argument("boundary label does not match the conjugated product");

  LabelledSurface out = s;
  int m = static_cast<int>(parts.size());
  int u = out.edges[static_cast<size_t>(y.edge)].tail;
  // polygon sides: (a_i, x_i, a_i^{-1}) blocks then the y side; fan from c0
  struct Side {
    int edge;
    bool forward;
  };
  std::vector<Side> sides;
  std::vector<Word> walk_label;  // label read along the walk
  for (int i = 0; i < m; ++i) {
    int p = out.num_vertices++;
    Word c = conjugators.empty() ? Word() : conjugators[static_cast<size_t>(i)];
    int ea = add_edge(out, u, p, c);
    int ex = add_edge(out, p, p, parts[static_cast<size_t>(i)]);
    sides.push_back({ea, true});
    walk_label.push_back(c);
    sides.push_back({ex, true});
    walk_label.push_back(parts[static_cast<size_t>(i)]);
    sides.push_back({ea, false});
    walk_label.push_back(inverse(c));
  }
  // diagonals d_j = prefix of the walk; d_1 is the first side, d_last is y
  int nsides = static_cast<int>(sides.size());  // 3m, plus the y side closing up
  std::vector<int> diag_edge(static_cast<size_t>(nsides + 1));
  std::vector<Word> diag_label(static_cast<size_t>(nsides + 1));
  diag_edge[1] = sides[0].edge;
  diag_label[1] = walk_label[0];
  // corner c_j lives at u after each full (a, x, a^{-1}) block and at p_i
  // inside block i
  int p_base = out.num_vertices - m;
  for (int j = 2; j < nsides; ++j) {
    diag_label[static_cast<size_t>(j)] =
        multiply(diag_label[static_cast<size_t>(j - 1)], walk_label[static_cast<size_t>(j - 1)]);
    int corner = (j % 3 == 0) ? u : (p_base + (j - 1) / 3);
    diag_edge[static_cast<size_t>(j)] = add_edge(out, u, corner, diag_label[static_cast<size_t>(j)]);
  }
  diag_edge[static_cast<size_t>(nsides)] = y.edge;
  diag_label[static_cast<size_t>(nsides)] = y.word;
  for (int j = 1; j < nsides; ++j) {
    const Side& side = sides[static_cast<size_t>(j)];
    if (side.forward) {
      add_triangle(out, diag_edge[static_cast<size_t>(j)], side.edge,
                   diag_edge[static_cast<size_t>(j + 1)]);
    } else {
      add_triangle(out, diag_edge[static_cast<size_t>(j + 1)], side.edge,
                   diag_edge[static_cast<size_t>(j)]);
    }
  }
  out.attached_chain = parts;
  out.degree.reset();
  if (delta != nullptr) *delta = {-(m - 1), m - 1, 0};
  return out;
}

LabelledSurface merge_boundaries(const LabelledSurface& s, const std::vector<int>& boundary_indices,
                                 const GroupPair& pair, SurgeryDelta* delta) {
  (void)pair;
  int a_count = static_cast<int>(boundary_indices.size());
  if (a_count < 2) throw std::invalid_argument("merge needs at least two boundary components");
  Analysis an = analyze(s);
  std::vector<BoundaryEdgeInfo> loops;
  for (int idx : boundary_indices) loops.push_back(single_edge_boundary(s, an, idx));
  for (const auto& l : loops)
    if (l.word != loops.front().word)
      throw std::invalid_argument("merge needs equal boundary labels");
  std::set<int> distinct;
  for (int idx : boundary_indices) distinct.insert(idx);
  if (static_cast<int>(distinct.size()) != a_count)
    throw std::invalid_argument("merge needs distinct boundary components");

  LabelledSurface out = s;
  Word v = loops.front().word;
  std::vector<int> verts;
  for (const auto& l : loops) verts.push_back(out.edges[static_cast<size_t>(l.edge)].tail);
  int u = *std::min_element(verts.begin(), verts.end());
  // diagonals carry v^j; the free edge carries v^a
  std::vector<int> diag(static_cast<size_t>(a_count + 1));
  diag[1] = loops[0].edge;
  for (int j = 2; j <= a_count; ++j)
    diag[static_cast<size_t>(j)] = add_edge(out, u, u, power(v, j));
  for (int j = 1; j < a_count; ++j)
    add_triangle(out, diag[static_cast<size_t>(j)], loops[static_cast<size_t>(j)].edge,
                 diag[static_cast<size_t>(j + 1)]);
  out = merge_vertices(out, verts);
  out.degree.reset();
  out.attached_chain.clear();
  if (delta != nullptr) *delta = {-(a_count - 1), -(a_count - 1), a_count - 1};
  return out;
}

LabelledSurface cap_inverse_pair(const LabelledSurface& s, int b1, int b2, const GroupPair& pair,
                                 SurgeryDelta* delta) {
  Analysis an = analyze(s);
  BoundaryEdgeInfo l1 = single_edge_boundary(s, an, b1);
  BoundaryEdgeInfo l2 = single_edge_boundary(s, an, b2);
  if (b1 == b2) throw std::invalid_argument("cap needs two distinct boundary components");
  if (l2.word != inverse(l1.word))
    throw std::invalid_argument("cap needs inverse boundary labels");
  if (!pair.in_N(l1.word)) throw std::invalid_argument("cap label must lie in N");
  LabelledSurface out = s;
  int u1 = out.edges[static_cast<size_t>(l1.edge)].tail;
  int u2 = out.edges[static_cast<size_t>(l2.edge)].tail;
  int ee = add_edge(out, u1, u2, Word());
  add_triangle(out, l1.edge, l2.edge, ee);
  if (u1 != u2) out = merge_vertices(out, {u1, u2});
  out.degree.reset();
  out.attached_chain.clear();
  if (delta != nullptr) *delta = {-1, -1, 1};
  return out;
}

LabelledSurface consolidate_boundary(const LabelledSurface& s, int boundary_index,
                                     const GroupPair& pair, SurgeryDelta* delta) {
  (void)pair;
  Analysis an = analyze(s);
  if (boundary_index < 0 || boundary_index >= static_cast<int>(an.cycles.size()))
    throw std::invalid_argument("boundary index out of range");
  auto cyc = an.cycles[static_cast<size_t>(boundary_index)];
  if (cyc.steps.size() < 2)
    throw std::invalid_argument("consolidation needs a multi-edge boundary cycle");
  // start at a forward step
  size_t start = cyc.steps.size();
  for (size_t i = 0; i < cyc.steps.size(); ++i)
    if (cyc.steps[i].second > 0) {
      start = i;
      break;
    }
  if (start == cyc.steps.size())
    throw std::invalid_argument("consolidation needs a forward-oriented boundary edge");
  std::rotate(cyc.steps.begin(), cyc.steps.begin() + static_cast<long>(start), cyc.steps.end());

  LabelledSurface out = s;
  int M = static_cast<int>(cyc.steps.size());
  int u = out.edges[static_cast<size_t>(cyc.steps[0].first)].tail;
  std::vector<int> q(static_cast<size_t>(M + 1));
  std::vector<Word> qlab(static_cast<size_t>(M + 1));
  q[1] = cyc.steps[0].first;
  qlab[1] = out.edges[static_cast<size_t>(q[1])].label;
  for (int j = 2; j <= M; ++j) {
    const auto& [edge, dir] = cyc.steps[static_cast<size_t>(j - 1)];
    const SurfaceEdge& e = out.edges[static_cast<size_t>(edge)];
    qlab[static_cast<size_t>(j)] =
        multiply(qlab[static_cast<size_t>(j - 1)], dir > 0 ? e.label : inverse(e.label));
    int endpoint = dir > 0 ? e.head : e.tail;
    q[static_cast<size_t>(j)] = add_edge(out, u, endpoint, qlab[static_cast<size_t>(j)]);
  }
  for (int j = 1; j < M; ++j) {
    const auto& [edge, dir] = cyc.steps[static_cast<size_t>(j)];
    if (dir > 0)
      add_triangle(out, q[static_cast<size_t>(j)], edge, q[static_cast<size_t>(j + 1)]);
    else
      add_triangle(out, q[static_cast<size_t>(j + 1)], edge, q[static_cast<size_t>(j)]);
  }
  if (delta != nullptr) *delta = {0, 0, 0};
  return out;
}

LabelledSurface disjoint_union(const LabelledSurface& a, const LabelledSurface& b) {
  LabelledSurface out = a;
  int voff = a.num_vertices;
  int eoff = static_cast<int>(a.edges.size());
  out.num_vertices += b.num_vertices;
  for (const SurfaceEdge& e : b.edges) out.edges.push_back({e.tail + voff, e.head + voff, e.label});
  for (const SurfaceTriangle& t : b.triangles)
    out.triangles.push_back({t.d0 + eoff, t.d1 + eoff, t.d2 + eoff});
  if (a.degree && b.degree && a.attached_chain == b.attached_chain) {
    out.degree = *a.degree + *b.degree;
  } else {
    out.degree.reset();
    out.attached_chain.clear();
  }
  return out;
}

Rational chi_ratio(const LabelledSurface& s) {
  if (!s.degree || *s.degree < 1)
    throw std::invalid_argument("chi ratio needs admissibility data with degree >= 1");
  SurfaceInvariants inv = invariants(s);
  return Rational(-inv.chi_minus) / Rational(2 * *s.degree);
}

}  // namespace sclkit
