#ifndef SCLKIT_CONFIG_IO_HPP
#define SCLKIT_CONFIG_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "sclkit/chain.hpp"
#include "sclkit/circle.hpp"
#include "sclkit/lp.hpp"
#include "sclkit/pair.hpp"
#include "sclkit/surface.hpp"

namespace sclkit {

using Json = nlohmann::ordered_json;

/// Pair config, JSON or a flat TOML subset (decided by the file extension):
///   {"rank": 2, "quotient": {"kind": "finite", "images": [[1,0],[0,1]]},
///    "reps": ["e", "a"]}
/// kinds: "trivial" | "free_abelian" (integer vectors) | "finite"
/// (permutation image lists).
GroupPair load_pair(const std::string& path);
GroupPair pair_from_json(const Json& j);

/// Chain file: list of [coeff, word] with rational coefficient strings.
Chain1 load_chain(const std::string& path, const Alphabet& alphabet);
Chain1 chain_from_json(const Json& j, const Alphabet& alphabet);
Json chain_to_json(const Alphabet& alphabet, const Chain1& c);

/// Surface file: {"vertices": n, "edges": [[tail, head, "label"], ...],
/// "triangles": [[d0, d1, d2], ...], "degree": n(S)?}
LabelledSurface load_surface(const std::string& path, const Alphabet& alphabet);
LabelledSurface surface_from_json(const Json& j, const Alphabet& alphabet);
Json surface_to_json(const Alphabet& alphabet, const LabelledSurface& s);

/// Lift file: {"breakpoints": [["0", "1/4"], ...]}.
CircleLift load_lift(const std::string& path);

Json lp_certificate_to_json(const Alphabet& alphabet, const FillProblem& problem,
                            const LpSolution& solution);
/// Rebuilds the problem and solution from an emitted certificate for replay.
std::pair<FillProblem, LpSolution> lp_certificate_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Minimal TOML reader for the flat pair-config schema: top-level tables,
/// `key = value` with integers, strings, and (nested) arrays.
Json toml_subset_to_json(const std::string& text);

}  // namespace sclkit

#endif
