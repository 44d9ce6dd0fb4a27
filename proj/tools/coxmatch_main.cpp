// coxmatch: intervals, special matchings, systems and R/KL-polynomials of
// Coxeter groups from the command line.
//
// Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded,
// 3 internal consistency failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "coxmatch/coxeter.hpp"
#include "coxmatch/interval.hpp"
#include "coxmatch/io.hpp"
#include "coxmatch/rpoly.hpp"
#include "coxmatch/systems.hpp"

namespace {

using namespace coxmatch;
using nlohmann::json;

struct Options {
    std::string matrix_path;
    std::string word_text;
    std::string u_text;
    std::string mode = "classical";
    std::string matrix2_path;
    std::string word2_text;
    std::string format = "text";
    std::string out_path;
    std::size_t budget_interval = 50'000;
    std::size_t budget_closure = 2'000'000;
};

void emit(const Options& opt, const std::string& body) {
    if (opt.out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.out_path);
    out << body;
}

std::string pairs_text(const Matching& m) {
    const BruhatInterval& I = m.interval();
    std::ostringstream os;
    for (int i = 0; i < I.size(); ++i) {
        if (i > m.partner(i)) continue;
        os << " (" << word_to_string(I.element(i).word()) << " | "
           << word_to_string(I.element(m.partner(i)).word()) << ")";
    }
    return os.str();
}

std::string kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::First: return "first";
        case SystemKind::Second: return "second";
        default: return "both";
    }
}

std::string gen_set_text(GenSet s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (Gen g : gens_in(s)) {
        if (!first) os << ",";
        os << g;
        first = false;
    }
    os << "}";
    return os.str();
}

int cmd_interval(const Options& opt, bool dot_only) {
    CoxeterGroup group(load_matrix_file(opt.matrix_path), opt.budget_closure);
    const Element w = group.element(parse_word(opt.word_text, group.rank()));
    const IntervalPtr I = build_interval(group, w, opt.budget_interval);

    const std::string format = dot_only ? "dot" : opt.format;
    if (format == "dot") {
        emit(opt, interval_to_dot(*I));
    } else if (format == "json") {
        emit(opt, interval_to_json(*I).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "[e, " << word_to_string(w.word()) << "]: " << I->size() << " elements\n";
        os << "rank sizes:";
        for (int r = 0; r <= I->height(); ++r) os << " " << I->at_rank(r).size();
        os << "\n";
        emit(opt, os.str());
    }
    return 0;
}

int cmd_matchings(const Options& opt) {
    CoxeterGroup group(load_matrix_file(opt.matrix_path), opt.budget_closure);
    const Element w = group.element(parse_word(opt.word_text, group.rank()));
    const IntervalPtr I = build_interval(group, w, opt.budget_interval);

    const auto brute = enumerate_special_matchings(I, opt.budget_interval);
    const auto classified = classify_special_matchings(group, w, opt.budget_interval);

    std::set<std::vector<int>> brute_set, system_set;
    for (const Matching& m : brute) brute_set.insert(m.partners());
    for (const auto& cm : classified) system_set.insert(cm.matching.partners());
    const bool consistent = brute_set == system_set;

    auto brute_index = [&](const Matching& m) {
        for (std::size_t i = 0; i < brute.size(); ++i)
            if (brute[i].partners() == m.partners()) return static_cast<int>(i);
        return -1;
    };

    if (opt.format == "json") {
        json j;
        j["interval"] = interval_to_json(*I);
        j["brute_force"] = json::array();
        for (const Matching& m : brute) j["brute_force"].push_back(matching_to_json(m));
        j["systems"] = json::array();
        for (const auto& cm : classified) {
            json entry = system_to_json(cm.system);
            entry["matching"] = matching_to_json(cm.matching).at("pairs");
            entry["brute_index"] = brute_index(cm.matching);
            j["systems"].push_back(std::move(entry));
        }
        j["consistent"] = consistent;
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "special matchings of [e, " << word_to_string(w.word()) << "] (" << I->size()
           << " elements)\n";
        os << "brute force: " << brute.size() << "\n";
        for (std::size_t i = 0; i < brute.size(); ++i)
            os << "  " << i << ":" << pairs_text(brute[i]) << "\n";
        os << "systems: " << classified.size() << "\n";
        for (const auto& cm : classified)
            os << "  J=" << gen_set_text(cm.system.J) << " H=" << gen_set_text(cm.system.H)
               << " s=" << cm.system.s << " kind=" << kind_name(cm.system.kind)
               << " -> matching " << brute_index(cm.matching) << "\n";
        os << "consistency: " << (consistent ? "OK" : "MISMATCH") << "\n";
        emit(opt, os.str());
    }
    if (!consistent) {
        std::cerr << "error: system enumeration disagrees with brute force\n";
        return 3;
    }
    return 0;
}

int cmd_systems(const Options& opt) {
    CoxeterGroup group(load_matrix_file(opt.matrix_path), opt.budget_closure);
    const Element w = group.element(parse_word(opt.word_text, group.rank()));
    const auto classified = classify_special_matchings(group, w, opt.budget_interval);

    if (opt.format == "json") {
        json j = json::array();
        for (const auto& cm : classified) {
            json entry = system_to_json(cm.system);
            entry["matching"] = matching_to_json(cm.matching).at("pairs");
            j.push_back(std::move(entry));
        }
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << classified.size() << " systems for w = " << word_to_string(w.word()) << "\n";
        for (const auto& cm : classified) {
            os << "  J=" << gen_set_text(cm.system.J) << " H=" << gen_set_text(cm.system.H)
               << " s=" << cm.system.s << " kind=" << kind_name(cm.system.kind)
               << " M:" << pairs_text(cm.system.M) << "\n";
            os << "    matching:" << pairs_text(cm.matching) << "\n";
        }
        emit(opt, os.str());
    }
    return 0;
}

int cmd_rpoly(const Options& opt) {
    CoxeterGroup group(load_matrix_file(opt.matrix_path), opt.budget_closure);
    const Element w = group.element(parse_word(opt.word_text, group.rank()));
    const Element u = group.element(parse_word(opt.u_text, group.rank()));
    RPolyEngine engine(group);

    const IntPoly reference = engine.classical(u, w);
    IntPoly value = reference;

    if (opt.mode.rfind("matching:", 0) == 0) {
        const int id = std::stoi(opt.mode.substr(9));
        const IntervalPtr I = build_interval(group, w, opt.budget_interval);
        const auto brute = enumerate_special_matchings(I, opt.budget_interval);
        if (id < 0 || id >= static_cast<int>(brute.size()))
            throw std::invalid_argument("matching id " + std::to_string(id) +
                                        " out of range (have " + std::to_string(brute.size()) +
                                        ")");
        if (I->index_of(u) < 0)
            throw std::invalid_argument("u is not in [e,w]");
        value = engine.via_matching(brute[id], u);
    } else if (opt.mode == "abstract") {
        const IntervalPtr I = build_interval(group, w, opt.budget_interval);
        const int ui = I->index_of(u);
        if (ui < 0) throw std::invalid_argument("u is not in [e,w]");
        value = r_polynomials_abstract(AbstractPoset::of(*I))[ui];
    } else if (opt.mode != "classical") {
        throw std::invalid_argument("unknown mode: " + opt.mode);
    }

    if (opt.format == "json")
        emit(opt, poly_to_json(value).dump() + "\n");
    else
        emit(opt, value.str() + "\n");

    if (value != reference) {
        std::cerr << "error: mode " << opt.mode << " disagrees with the classical recursion\n";
        return 3;
    }
    return 0;
}

int cmd_klpoly(const Options& opt) {
    CoxeterGroup group(load_matrix_file(opt.matrix_path), opt.budget_closure);
    const Element w = group.element(parse_word(opt.word_text, group.rank()));
    const Element u = group.element(parse_word(opt.u_text, group.rank()));
    if (!group.bruhat_leq(u, w)) throw std::invalid_argument("u must satisfy u <= w");
    RPolyEngine engine(group);
    const IntPoly value = engine.kl(u, w, opt.budget_interval);
    if (opt.format == "json")
        emit(opt, poly_to_json(value).dump() + "\n");
    else
        emit(opt, value.str() + "\n");
    return 0;
}

int cmd_invariance(const Options& opt) {
    CoxeterGroup g1(load_matrix_file(opt.matrix_path), opt.budget_closure);
    CoxeterGroup g2(load_matrix_file(opt.matrix2_path), opt.budget_closure);
    const Element w1 = g1.element(parse_word(opt.word_text, g1.rank()));
    const Element w2 = g2.element(parse_word(opt.word2_text, g2.rank()));
    const IntervalPtr I1 = build_interval(g1, w1, opt.budget_interval);
    const IntervalPtr I2 = build_interval(g2, w2, opt.budget_interval);

    const auto iso = poset_isomorphism(AbstractPoset::of(*I1), AbstractPoset::of(*I2));
    if (!iso) {
        emit(opt, "NOT ISOMORPHIC\n");
        return 0;
    }
    RPolyEngine e1(g1), e2(g2);
    for (int i = 0; i < I1->size(); ++i) {
        if (e1.classical(I1->element(i), w1) != e2.classical(I2->element((*iso)[i]), w2)) {
            emit(opt, "FAIL: intervals are isomorphic but R-polynomials do not transport\n");
            return 3;
        }
    }
    emit(opt, "PASS: isomorphic, and all R-polynomials transport along the isomorphism\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"special matchings and R/KL-polynomials of lower Bruhat intervals"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    auto add_common = [&](CLI::App* sub, std::size_t default_budget) {
        sub->add_option("--matrix", opt.matrix_path, "Coxeter matrix JSON file")->required();
        sub->add_option("--word", opt.word_text, "word for w, e.g. \"0 1 0\"")->required();
        sub->add_option("--budget-interval", opt.budget_interval, "interval size budget")
            ->default_val(default_budget);
        sub->add_option("--budget-closure", opt.budget_closure, "braid closure node budget")
            ->default_val(std::size_t{2'000'000});
        sub->add_option("--out", opt.out_path, "write output to a file");
        return sub;
    };
    auto set_cmd = [&](CLI::App* sub, const char* name) {
        sub->callback([&command, name] { command = name; });
        return sub;
    };

    CLI::App* interval = set_cmd(add_common(app.add_subcommand("interval", "build [e,w]"),
                                            50'000),
                                 "interval");
    interval->add_option("--format", opt.format, "text|json|dot")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    CLI::App* matchings = set_cmd(
        add_common(app.add_subcommand("matchings",
                                      "enumerate special matchings, brute force vs systems"),
                   2'000),
        "matchings");
    matchings->add_option("--format", opt.format, "text|json")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* systems = set_cmd(
        add_common(app.add_subcommand("systems", "the classified systems for w"), 2'000),
        "systems");
    systems->add_option("--format", opt.format, "text|json")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* rpoly = set_cmd(
        add_common(app.add_subcommand("rpoly", "R-polynomial of a Bruhat pair"), 50'000),
        "rpoly");
    rpoly->add_option("--u", opt.u_text, "word for u (default e)")->default_val("");
    rpoly->add_option("--mode", opt.mode, "classical|matching:<id>|abstract")
        ->default_val("classical");
    rpoly->add_option("--format", opt.format, "text|json")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* klpoly = set_cmd(
        add_common(app.add_subcommand("klpoly", "Kazhdan-Lusztig polynomial of a Bruhat pair"),
                   50'000),
        "klpoly");
    klpoly->add_option("--u", opt.u_text, "word for u (default e)")->default_val("");
    klpoly->add_option("--format", opt.format, "text|json")
        ->default_val("text")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* invariance = set_cmd(
        add_common(app.add_subcommand(
                       "invariance", "poset isomorphism and R-polynomial transport check"),
                   50'000),
        "invariance");
    invariance->add_option("--matrix2", opt.matrix2_path, "second Coxeter matrix JSON file")
        ->required();
    invariance->add_option("--word2", opt.word2_text, "word for the second element")->required();

    set_cmd(add_common(app.add_subcommand("export-dot", "Hasse diagram of [e,w] as DOT"),
                       50'000),
            "export-dot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (command == "interval") return cmd_interval(opt, false);
        if (command == "matchings") return cmd_matchings(opt);
        if (command == "systems") return cmd_systems(opt);
        if (command == "rpoly") return cmd_rpoly(opt);
        if (command == "klpoly") return cmd_klpoly(opt);
        if (command == "invariance") return cmd_invariance(opt);
        if (command == "export-dot") return cmd_interval(opt, true);
        std::cerr << "error: no command\n";
        return 1;
    } catch (const ClosureBudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
