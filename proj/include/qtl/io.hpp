#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "qtl/cuspidal.hpp"
#include "qtl/gtilde.hpp"
#include "qtl/liealg.hpp"
#include "qtl/repn.hpp"
#include "qtl/torus.hpp"

namespace qtl::io {

using Json = nlohmann::ordered_json;

/// Torus spec files: {"d":2,"z":1,"k":[3],"L":3}. "L" is optional.
TorusSpec spec_from_json(const Json& j);
Json spec_to_json(const TorusSpec& spec);
/// The reference tori E1 (d=2, k=2), E2 (d=2, k=3), E3 (d=3, k=2).
TorusSpec builtin_spec(std::string_view name);
/// A builtin name (case-insensitive) or a path to a spec file.
TorusSpec load_spec(const std::string& name_or_path);

/// Grid of serialized CycloNum strings.
Json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Json& j, const CycloField& field);

/// Module description files:
/// {"spec":{...}, "L":..., "dims":[...], "cutoff":c, "actions":[{"symbol":"XD(1,0;1)", "matrix":[[...]]}]}
Json representation_to_json(const GRepresentation& rep);
GRepresentation representation_from_json(const Json& j);

/// {"spec":{...}, "v":{"dim":n, "e":[grid, ...]}, "w":{"dim":n, "grading":[...], "x":[grid, ...]}}
Json vw_to_json(const TorusSpec& spec, const GLdGLNModule& vw);
GLdGLNModule vw_from_json(const Json& j, const TorusSpec& spec);

/// Per-weight blocks of the symbol actions on [-box, box]^d, ordered by
/// (class, central shift) lexicographically.
Json cuspidal_dump(const CuspidalModule& m, int box, int symbol_box);

/// Element grammar: terms joined by + or -, each an optional scalar and `*`
/// followed by a basis symbol. Scalars are integers, rationals p/q, or
/// serialized CycloNums L:[c0,...].
///
///   D(i;m1,...,md)  T(s1,...,sd)  Z(n1,...,nd)      (derivations, 1-based i)
///   W(i;m1,...,md)                                 (W_d)
///   XD(p1,...,pd;j)  XT(l1,...,ld;w1,...,wd)      (G~, 1-based j)
DElement parse_d_element(const TorusSpec& spec, std::string_view text);
WdElement parse_wd_element(std::string_view text);
GTildeElement parse_g_element(const TorusSpec& spec, std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
Json read_json(const std::string& path);

}  // namespace qtl::io
