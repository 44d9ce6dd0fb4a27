#pragma once

// File formats: Coxeter matrices, intervals, matchings, systems and
// polynomials as JSON; Hasse diagrams as Graphviz DOT.

#include <string>

#include "json.hpp"

#include "coxmatch/coxeter.hpp"
#include "coxmatch/interval.hpp"
#include "coxmatch/poly.hpp"
#include "coxmatch/systems.hpp"

namespace coxmatch {

// {"rank": n, "m": [[...]]}, entry 0 meaning an infinite bond.
nlohmann::json matrix_to_json(const CoxeterMatrix& m);
CoxeterMatrix matrix_from_json(const nlohmann::json& j);
CoxeterMatrix load_matrix_file(const std::string& path);

// Whitespace-separated 0-based generator indices; "" and "e" mean the
// identity. Throws std::invalid_argument on bad tokens or out-of-range
// indices.
Word parse_word(const std::string& text, int rank);

// {"elements": [[word]...], "covers": [[i,j]...]} in canonical element order.
nlohmann::json interval_to_json(const BruhatInterval& interval);

// {"pairs": [[i,j]...]} with i < j, over the interval's element order.
nlohmann::json matching_to_json(const Matching& m);

// {"w": word, "J": [...], "H": [...], "M": [[i,j]...]} with M over the
// element order of [e, w0(H)].
nlohmann::json system_to_json(const MatchingSystem& s);

nlohmann::json violation_to_json(const SystemViolation& v);

// Coefficient array, lowest degree first.
nlohmann::json poly_to_json(const IntPoly& p);

// Rank-layered Hasse diagram.
std::string interval_to_dot(const BruhatInterval& interval);

}  // namespace coxmatch
