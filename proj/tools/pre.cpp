// pre -- command line front end
//
// Subcommands: eval, equiv, derive, solve, bisim, axioms-check. Results
// go to stdout, diagnostics to stderr. Exit codes: 0 success (EQUAL for
// equiv), 1 negative result or failure, 2 parse/schema error, 3 unknown
// state or alphabet error, 4 system invariant violation.
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pre/pre.hpp"

namespace {

std::vector<char> alphabet_from_flag(const std::string& flag) {
    std::set<char> letters;
    for (char c : flag) {
        if (!pre::is_letter(c)) throw std::invalid_argument(std::string("not a letter: ") + c);
        letters.insert(c);
    }
    return {letters.begin(), letters.end()};
}

// Union of the expressions' letters, the word's letters and the override.
std::vector<char> make_alphabet(const std::string& flag, const std::vector<pre::Expr>& exprs,
                                const std::string& word) {
    if (!flag.empty()) return alphabet_from_flag(flag);
    std::set<char> letters;
    for (const auto& e : exprs) {
        auto l = pre::collect_letters(e);
        letters.insert(l.begin(), l.end());
    }
    for (char c : word) letters.insert(c);
    return {letters.begin(), letters.end()};
}

int check_letters(const std::vector<char>& alphabet, const pre::Expr& e) {
    for (char c : pre::collect_letters(e))
        if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end()) {
            std::cerr << "letter '" << c << "' outside alphabet\n";
            return 3;
        }
    return 0;
}

pre::Expr parse_or_exit(const std::string& text) {
    try {
        return pre::parse(text);
    } catch (const pre::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        std::exit(2);
    }
}

pre::Gpts load_or_exit(const std::string& path) {
    try {
        return pre::load_gpts(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(2);
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(1);
    }
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic regular expression toolkit"};
    app.require_subcommand(1);

    std::string expr_text, word, other_text, alphabet_flag, out_path, format = "json";
    std::string gpts_path, state_name;
    unsigned approx_digits = 0;
    bool approx_set = false, self_check = false, cross_check = false;
    std::uint64_t seed = 1;
    int trials = 50;

    auto* eval = app.add_subcommand("eval", "probability of generating a word");
    eval->add_option("expr", expr_text, "expression")->required();
    eval->add_option("word", word, "word over the alphabet (may be empty)")->required();
    eval->add_option("--alphabet", alphabet_flag, "override the alphabet");
    eval->add_option("--approx", approx_digits, "also print a decimal approximation")
        ->trigger_on_parse()
        ->each([&](const std::string&) { approx_set = true; });

    auto* equiv = app.add_subcommand("equiv", "decide language equivalence");
    equiv->add_option("left", expr_text, "first expression")->required();
    equiv->add_option("right", other_text, "second expression")->required();
    equiv->add_option("--alphabet", alphabet_flag, "override the alphabet");

    auto* derive = app.add_subcommand("derive", "expression to transition system");
    derive->add_option("expr", expr_text, "expression")->required();
    derive->add_option("-o,--out", out_path, "output path (default stdout)");
    derive->add_option("--format", format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    derive->add_option("--alphabet", alphabet_flag, "override the alphabet");

    auto* solve_cmd = app.add_subcommand("solve", "transition system state to expression");
    solve_cmd->add_option("gpts", gpts_path, "transition system file")->required();
    solve_cmd->add_option("state", state_name, "state to solve for")->required();
    solve_cmd->add_flag("--self-check", self_check, "verify the result against the source");

    auto* bisim = app.add_subcommand("bisim", "bisimilarity classes");
    bisim->add_option("gpts", gpts_path, "transition system file")->required();
    bisim->add_flag("--cross-check", cross_check,
                    "report pairs that are language equivalent but not bisimilar");

    auto* axioms = app.add_subcommand("axioms-check", "randomised soundness of the schemas");
    axioms->add_option("--seed", seed, "random seed");
    axioms->add_option("--trials", trials, "instances per schema")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) {
            pre::Expr e = parse_or_exit(expr_text);
            for (char c : word)
                if (!pre::is_letter(c)) {
                    std::cerr << "letter '" << c << "' outside alphabet\n";
                    return 3;
                }
            auto alphabet = make_alphabet(alphabet_flag, {e}, word);
            if (int rc = check_letters(alphabet, e)) return rc;
            pre::Gpts g = pre::reachable(e, alphabet);
            pre::Rational value;
            try {
                value = pre::word_prob(g, 0, word);
            } catch (const std::invalid_argument& ex) {
                std::cerr << ex.what() << "\n";
                return 3;
            }
            std::cout << pre::to_string(value);
            if (approx_set) std::cout << " ~ " << pre::to_decimal(value, approx_digits);
            std::cout << "\n";
            return 0;
        }
        if (*equiv) {
            pre::Expr e = parse_or_exit(expr_text);
            pre::Expr f = parse_or_exit(other_text);
            auto alphabet = make_alphabet(alphabet_flag, {e, f}, "");
            if (int rc = check_letters(alphabet, e)) return rc;
            if (int rc = check_letters(alphabet, f)) return rc;
            pre::EquivVerdict v = pre::expr_equiv(e, f, alphabet);
            if (v.equal) {
                std::cout << "EQUAL\n";
                return 0;
            }
            std::cout << "DIFFER at \"" << v.word << "\": " << pre::to_string(v.left_value)
                      << " vs " << pre::to_string(v.right_value) << "\n";
            return 1;
        }
        if (*derive) {
            pre::Expr e = parse_or_exit(expr_text);
            auto alphabet = make_alphabet(alphabet_flag, {e}, "");
            if (int rc = check_letters(alphabet, e)) return rc;
            pre::Gpts g = pre::reachable(e, alphabet);
            if (format == "dot")
                write_output(out_path, pre::gpts_to_dot(g));
            else
                write_output(out_path, pre::gpts_to_json(g).dump(2) + "\n");
            return 0;
        }
        if (*solve_cmd) {
            pre::Gpts g = load_or_exit(gpts_path);
            auto x = g.index_of(state_name);
            if (!x) {
                std::cerr << "unknown state " << state_name << "\n";
                return 3;
            }
            auto violations = pre::validate(g);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << v << "\n";
                return 4;
            }
            pre::Expr h;
            try {
                h = pre::solve(pre::system_of(g))[*x];
            } catch (const std::invalid_argument& ex) {
                std::cerr << ex.what() << "\n";
                return 4;
            }
            std::cout << pre::render(h) << "\n";
            if (self_check) {
                pre::UnionGpts u = pre::disjoint_union(pre::reachable(h, g.alphabet), g);
                pre::EquivVerdict v = pre::lang_equiv(u.g, 0, u.offset + *x);
                std::cout << (v.equal ? "ROUNDTRIP OK" : "ROUNDTRIP FAILED") << "\n";
                if (!v.equal) return 1;
            }
            return 0;
        }
        if (*bisim) {
            pre::Gpts g = load_or_exit(gpts_path);
            auto violations = pre::validate(g);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << v << "\n";
                return 2;
            }
            pre::Partition part = pre::bisim_classes(g);
            for (const auto& block : part.blocks()) {
                std::vector<std::string> names;
                for (pre::StateId q : block) names.push_back(g.states[q]);
                std::sort(names.begin(), names.end());
                for (std::size_t i = 0; i < names.size(); ++i)
                    std::cout << names[i] << (i + 1 < names.size() ? " " : "");
                std::cout << "\n";
            }
            if (cross_check) {
                const int n = static_cast<int>(g.states.size());
                for (int x = 0; x < n; ++x)
                    for (int y = x + 1; y < n; ++y) {
                        if (part.block_of[x] == part.block_of[y]) continue;
                        if (pre::lang_equiv(g, x, y).equal)
                            std::cout << "LANG-EQUAL BUT NOT BISIMILAR: (" << g.states[x]
                                      << "," << g.states[y] << ")\n";
                    }
            }
            return 0;
        }
        if (*axioms) {
            auto reports = pre::run_axiom_soundness(seed, trials);
            bool all_ok = true;
            for (const auto& rep : reports) {
                std::cout << pre::axiom_name_string(rep.name) << ": " << rep.passed << "/"
                          << rep.trials << "\n";
                if (!rep.ok()) {
                    all_ok = false;
                    std::cerr << "failure: " << rep.first_failure << "\n";
                }
            }
            std::cout << (all_ok ? "all schemas passed" : "FAILURES") << "\n";
            return all_ok ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
