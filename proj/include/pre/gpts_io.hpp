// gpts_io.hpp -- JSON interchange and DOT export for transition systems
//
// The JSON schema is the single source of truth for files:
//   { "alphabet": ["a"], "states": ["q0"], "start": ["q0"],
//     "transitions": [ {"from":"q0","label":"a","prob":"1/4","to":"q0"},
//                      {"from":"q0","label":null,"prob":"3/4","to":null} ] }
// A null label with a null target encodes successful termination. All
// probabilities are rational strings. DOT output is write-only.
#ifndef PRE_GPTS_IO_HPP
#define PRE_GPTS_IO_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "pre/expr.hpp"
#include "pre/gpts.hpp"
#include "pre/rational.hpp"

namespace pre {

/// Schema violation; `pointer` locates the offending JSON value.
struct SchemaError : std::runtime_error {
    SchemaError(const std::string& pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what), pointer(pointer) {}
    std::string pointer;
};

inline Gpts gpts_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw SchemaError("", "expected an object");
    Gpts g;

    if (!j.contains("alphabet") || !j["alphabet"].is_array())
        throw SchemaError("/alphabet", "expected an array of letters");
    for (std::size_t i = 0; i < j["alphabet"].size(); ++i) {
        const auto& v = j["alphabet"][i];
        std::string where = "/alphabet/" + std::to_string(i);
        if (!v.is_string() || v.get<std::string>().size() != 1)
            throw SchemaError(where, "expected a one-character string");
        char c = v.get<std::string>()[0];
        if (!is_letter(c)) throw SchemaError(where, "not a letter");
        if (g.has_letter(c)) throw SchemaError(where, "duplicate letter");
        g.alphabet.push_back(c);
    }
    std::sort(g.alphabet.begin(), g.alphabet.end());

    if (!j.contains("states") || !j["states"].is_array())
        throw SchemaError("/states", "expected an array of state names");
    for (std::size_t i = 0; i < j["states"].size(); ++i) {
        const auto& v = j["states"][i];
        std::string where = "/states/" + std::to_string(i);
        if (!v.is_string()) throw SchemaError(where, "expected a string");
        if (g.index_of(v.get<std::string>())) throw SchemaError(where, "duplicate state");
        g.states.push_back(v.get<std::string>());
    }
    g.trans.resize(g.states.size());

    if (j.contains("start")) {
        if (!j["start"].is_array()) throw SchemaError("/start", "expected an array");
        for (std::size_t i = 0; i < j["start"].size(); ++i) {
            const auto& v = j["start"][i];
            std::string where = "/start/" + std::to_string(i);
            if (!v.is_string()) throw SchemaError(where, "expected a string");
            auto id = g.index_of(v.get<std::string>());
            if (!id) throw SchemaError(where, "undeclared state");
            g.start.push_back(*id);
        }
    }

    if (!j.contains("transitions") || !j["transitions"].is_array())
        throw SchemaError("/transitions", "expected an array");
    for (std::size_t i = 0; i < j["transitions"].size(); ++i) {
        const auto& t = j["transitions"][i];
        std::string where = "/transitions/" + std::to_string(i);
        if (!t.is_object()) throw SchemaError(where, "expected an object");
        for (const char* key : {"from", "label", "prob", "to"})
            if (!t.contains(key)) throw SchemaError(where, std::string("missing key ") + key);

        if (!t["from"].is_string()) throw SchemaError(where + "/from", "expected a string");
        auto from = g.index_of(t["from"].get<std::string>());
        if (!from) throw SchemaError(where + "/from", "undeclared state");

        if (!t["prob"].is_string())
            throw SchemaError(where + "/prob", "expected a rational string");
        auto prob = parse_rational(t["prob"].get<std::string>());
        if (!prob) throw SchemaError(where + "/prob", "non-rational probability literal");
        if (!is_prob(*prob))
            throw SchemaError(where + "/prob", "probability outside [0,1]: " + to_string(*prob));

        if (t["label"].is_null() != t["to"].is_null())
            throw SchemaError(where, "label and to must be null together");
        if (t["label"].is_null()) {
            g.trans[*from].add(Output<StateId>::make_term(), *prob);
            continue;
        }
        if (!t["label"].is_string() || t["label"].get<std::string>().size() != 1)
            throw SchemaError(where + "/label", "expected a one-character string");
        char a = t["label"].get<std::string>()[0];
        if (!g.has_letter(a)) throw SchemaError(where + "/label", "letter outside alphabet");
        if (!t["to"].is_string()) throw SchemaError(where + "/to", "expected a string");
        auto to = g.index_of(t["to"].get<std::string>());
        if (!to) throw SchemaError(where + "/to", "undeclared state");
        g.trans[*from].add(Output<StateId>::step(a, *to), *prob);
    }
    return g;
}

/// Canonical form: per-state transitions with termination first, then
/// sorted by (label, target name).
inline nlohmann::ordered_json gpts_to_json(const Gpts& g) {
    nlohmann::ordered_json j;
    j["alphabet"] = nlohmann::ordered_json::array();
    for (char a : g.alphabet) j["alphabet"].push_back(std::string(1, a));
    j["states"] = g.states;
    if (!g.start.empty()) {
        j["start"] = nlohmann::ordered_json::array();
        for (StateId s : g.start) j["start"].push_back(g.states[s]);
    }
    j["transitions"] = nlohmann::ordered_json::array();
    for (std::size_t q = 0; q < g.trans.size(); ++q) {
        Rational term = g.trans[q].at(Output<StateId>::make_term());
        if (term != 0)
            j["transitions"].push_back({{"from", g.states[q]},
                                        {"label", nullptr},
                                        {"prob", to_string(term)},
                                        {"to", nullptr}});
        std::vector<std::tuple<char, std::string, Rational>> steps;
        for (const auto& [o, m] : g.trans[q])
            if (!o.term) steps.emplace_back(o.letter, g.states[o.target], m);
        std::sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        for (const auto& [a, to, m] : steps)
            j["transitions"].push_back({{"from", g.states[q]},
                                        {"label", std::string(1, a)},
                                        {"prob", to_string(m)},
                                        {"to", to}});
    }
    return j;
}

inline Gpts load_gpts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    return gpts_from_json(j);
}

inline void save_gpts(const Gpts& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << gpts_to_json(g).dump(2) << "\n";
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}
}  // namespace detail

/// Write-only DOT rendering: termination is drawn as a doubled edge into
/// a checkmark node, labelled moves as "a | 1/4".
inline std::string gpts_to_dot(const Gpts& g) {
    std::ostringstream out;
    out << "digraph gpts {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t q = 0; q < g.states.size(); ++q)
        out << "  s" << q << " [label=\"" << detail::dot_escape(g.states[q]) << "\"];\n";
    for (StateId s : g.start) out << "  s" << s << " [style=bold];\n";
    for (std::size_t q = 0; q < g.trans.size(); ++q) {
        Rational term = g.trans[q].at(Output<StateId>::make_term());
        if (term != 0) {
            out << "  t" << q << " [shape=none, label=\"✓\"];\n";
            out << "  s" << q << " -> t" << q << " [label=\"" << to_string(term)
                << "\", color=\"black:invis:black\"];\n";
        }
        std::vector<std::tuple<char, std::string, Rational, StateId>> steps;
        for (const auto& [o, m] : g.trans[q])
            if (!o.term) steps.emplace_back(o.letter, g.states[o.target], m, o.target);
        std::sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        for (const auto& [a, name, m, to] : steps)
            out << "  s" << q << " -> s" << to << " [label=\"" << a << " | " << to_string(m)
                << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace pre

#endif  // PRE_GPTS_IO_HPP
