#include "coxmatch/io.hpp"

#include <fstream>
#include <sstream>

namespace coxmatch {

using nlohmann::json;

json matrix_to_json(const CoxeterMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.rank(); ++j) row.push_back(m.order(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"rank", m.rank()}, {"m", std::move(rows)}};
}

CoxeterMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("m"))
        throw std::invalid_argument("matrix JSON must be an object with \"rank\" and \"m\"");
    const int rank = j.at("rank").get<int>();
    std::vector<std::vector<int>> entries;
    for (const auto& row : j.at("m")) entries.push_back(row.get<std::vector<int>>());
    if (static_cast<int>(entries.size()) != rank)
        throw std::invalid_argument("matrix JSON: \"rank\" does not match the size of \"m\"");
    return CoxeterMatrix{std::move(entries)};
}

CoxeterMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("matrix file " + path + " is not valid JSON: " + e.what());
    }
    return matrix_from_json(j);
}

Word parse_word(const std::string& text, int rank) {
    Word out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        if (token == "e" && out.empty()) continue;
        std::size_t used = 0;
        int value = -1;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("word token \"" + token + "\" is not an index");
        }
        if (used != token.size())
            throw std::invalid_argument("word token \"" + token + "\" is not an index");
        if (value < 0 || value >= rank)
            throw std::invalid_argument("generator index " + token + " out of range for rank " +
                                        std::to_string(rank));
        out.push_back(value);
    }
    return out;
}

json interval_to_json(const BruhatInterval& interval) {
    json elements = json::array();
    for (int i = 0; i < interval.size(); ++i) elements.push_back(interval.element(i).word());
    json covers = json::array();
    for (auto [a, b] : interval.cover_pairs()) covers.push_back(json::array({a, b}));
    return json{{"elements", std::move(elements)}, {"covers", std::move(covers)}};
}

json matching_to_json(const Matching& m) {
    json pairs = json::array();
    for (int i = 0; i < m.interval().size(); ++i)
        if (i < m.partner(i)) pairs.push_back(json::array({i, m.partner(i)}));
    return json{{"pairs", std::move(pairs)}};
}

json system_to_json(const MatchingSystem& s) {
    return json{{"w", s.w.word()},
                {"J", gens_in(s.J)},
                {"H", gens_in(s.H)},
                {"M", matching_to_json(s.M).at("pairs")}};
}

json violation_to_json(const SystemViolation& v) {
    return json{{"axiom", v.axiom}, {"detail", v.detail}};
}

json poly_to_json(const IntPoly& p) { return json(p.coeffs()); }

std::string interval_to_dot(const BruhatInterval& interval) {
    std::ostringstream os;
    os << "digraph bruhat_interval {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box fontname=\"monospace\"];\n";
    for (int i = 0; i < interval.size(); ++i)
        os << "  n" << i << " [label=\"" << word_to_string(interval.element(i).word())
           << "\"];\n";
    for (int r = 0; r <= interval.height(); ++r) {
        const auto& level = interval.at_rank(r);
        if (level.empty()) continue;
        os << "  { rank=same;";
        for (int i : level) os << " n" << i << ";";
        os << " }\n";
    }
    for (auto [a, b] : interval.cover_pairs()) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace coxmatch
