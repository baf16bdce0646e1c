#ifndef SCLKIT_SURFACE_HPP
#define SCLKIT_SURFACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sclkit/chain.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/rational.hpp"
#include "sclkit/word.hpp"

namespace sclkit {

struct SurfaceEdge {
  int tail = 0;
  int head = 0;
  Word label;
};

/// Triangle faces in the simplicial order: d2 runs v0 -> v1, d0 runs
/// v1 -> v2, d1 runs v0 -> v2, and the labelling satisfies
/// f(d2) f(d0) = f(d1).
struct SurfaceTriangle {
  int d0 = 0;
  int d1 = 0;
  int d2 = 0;
};

/// Triangulated surface with group-labelled oriented edges. Immutable by
/// convention: builders and surgeries return new surfaces.
struct LabelledSurface {
  int num_vertices = 0;
  std::vector<SurfaceEdge> edges;
  std::vector<SurfaceTriangle> triangles;

  // admissibility data: boundary mapped with this total degree onto the
  // attached chain's loops
  std::optional<long> degree;
  std::vector<Word> attached_chain;
};

struct Diagnostic {
  std::string message;
  int triangle = -1;
  int edge = -1;
  int vertex = -1;
};

/// Empty iff the complex is a manifold surface, the labelling relation holds
/// on every triangle, and (when a pair with N != G is supplied) every
/// triangle has an N-labelled d0 or d2 face.
std::vector<Diagnostic> validate(const LabelledSurface& s, const GroupPair* pair = nullptr);

struct ComponentInvariants {
  int euler = 0;
  int boundary_count = 0;
  int genus = 0;
  bool is_sphere = false;
};

struct SurfaceInvariants {
  int euler = 0;
  int boundary_count = 0;
  int chi_minus = 0;
  std::vector<Word> boundary_words;  // one reduced word per boundary cycle
  std::vector<ComponentInvariants> components;
};

/// Requires a valid surface (throws std::invalid_argument otherwise).
SurfaceInvariants invariants(const LabelledSurface& s);

/// Genus-k surface with one boundary edge labelled by the reduced product of
/// the conjugated commutators. k = 0 returns a trivially labelled disc.
LabelledSurface build_from_decomposition(const GroupPair& pair,
                                         const std::vector<CommutatorTerm>& decomposition);

struct SurgeryDelta {
  int chi = 0;
  int boundary = 0;
  int genus = 0;
};

/// Splits the single-edge boundary labelled y into m single-edge boundaries
/// labelled parts[i], where y must equal the reduced product of the
/// conjugated parts. Delta: chi -(m-1), boundary +(m-1), genus 0.
LabelledSurface split_boundary(const LabelledSurface& s, int boundary_index,
                               const std::vector<Word>& parts,
                               const std::vector<Word>& conjugators, const GroupPair& pair,
                               SurgeryDelta* delta = nullptr);

/// Merges a single-edge boundaries carrying one common label v into one
/// boundary labelled v^a. Delta: chi -(a-1), boundary -(a-1), genus +(a-1).
LabelledSurface merge_boundaries(const LabelledSurface& s, const std::vector<int>& boundary_indices,
                                 const GroupPair& pair, SurgeryDelta* delta = nullptr);

/// Caps single-edge boundaries labelled w and w^{-1} with one triangle,
/// leaving a trivially labelled boundary. Delta: chi -1, boundary -1,
/// genus +1.
LabelledSurface cap_inverse_pair(const LabelledSurface& s, int b1, int b2, const GroupPair& pair,
                                 SurgeryDelta* delta = nullptr);

/// Replaces a multi-edge boundary cycle by a single edge labelled by the
/// cycle word. Delta: zero.
LabelledSurface consolidate_boundary(const LabelledSurface& s, int boundary_index,
                                     const GroupPair& pair, SurgeryDelta* delta = nullptr);

LabelledSurface disjoint_union(const LabelledSurface& a, const LabelledSurface& b);

/// -chi^-(S) / (2 n(S)); requires admissibility data with n(S) >= 1.
Rational chi_ratio(const LabelledSurface& s);

}  // namespace sclkit

#endif
