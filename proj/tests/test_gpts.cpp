#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "pre/gpts.hpp"
#include "pre/gpts_io.hpp"
#include "pre/random.hpp"

using namespace pre;

namespace {

const std::string kFixtures = PRE_FIXTURES_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

using O = Output<StateId>;

}  // namespace

TEST_CASE("validate accepts the fixtures") {
    for (const char* name : {"ex2.json", "ex2-left.json", "ex3.json", "ex4.json", "accept.json"})
        CHECK(validate(load_gpts(kFixtures + "/" + name)).empty());
    CHECK(validate(Gpts{}).empty());
}

TEST_CASE("validate reports excess mass and dangling targets") {
    Gpts g;
    g.states = {"s"};
    g.alphabet = {'a'};
    g.trans.resize(1);
    g.trans[0].add(O::make_term(), Rational(3, 4));
    g.trans[0].add(O::step('a', 0), Rational(1, 2));
    auto violations = validate(g);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("mass 5/4 > 1") != std::string::npos);

    g.trans[0].add(O::step('a', 3), Rational(1, 4));
    violations = validate(g);
    CHECK(violations.size() == 2);
    CHECK(violations[0].find("dangling") != std::string::npos);
}

TEST_CASE("word probabilities on the fixtures") {
    Gpts ex2 = load_gpts(kFixtures + "/ex2.json");
    CHECK(word_prob(ex2, 0, "aaa") == Rational(3, 64));
    CHECK(word_prob(ex2, 0, "") == 0);
    for (int n = 0; n <= 6; ++n) {
        std::string word(n + 1, 'a');
        Rational expected(3, 4);
        for (int i = 0; i < n; ++i) expected *= Rational(1, 4);
        CHECK(word_prob(ex2, 0, word) == expected);
        CHECK(word_prob(ex2, 2, word) == expected);
    }
    Gpts ex3 = load_gpts(kFixtures + "/ex3.json");
    CHECK(word_prob(ex3, 0, "ab") == Rational(1, 3));
    CHECK_THROWS_AS(word_prob(ex3, 99, "a"), std::out_of_range);
    CHECK_THROWS_AS(word_prob(ex3, 0, "ax"), std::invalid_argument);
}

TEST_CASE("word_prob matches direct recursion", "[property]") {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        Gpts g = random_gpts(rng, 5, {'a', 'b'});
        std::vector<std::string> words{"", "a", "b", "ab", "ba", "aab", "bbb", "abab"};
        for (const auto& w : words)
            for (StateId q = 0; q < static_cast<StateId>(g.states.size()); ++q)
                CHECK(word_prob(g, q, w) == oracle::word_prob(g, q, w));
    }
}

TEST_CASE("reactive view of the fragment fixture") {
    Gpts ex4 = load_gpts(kFixtures + "/ex4.json");
    Rpts r = to_rpts(ex4);
    CHECK(r.accept[0] == Rational(1, 4));
    REQUIRE(r.next[0].contains('a'));
    CHECK(r.next[0].at('a').at(1) == Rational(1, 4));
    CHECK(r.next[0].at('a').at(2) == Rational(1, 2));
    // Deadlock states accept nothing and move nowhere.
    CHECK(r.accept[1] == 0);
    CHECK(r.next[1].empty());
}

TEST_CASE("reactive view loses nothing", "[property]") {
    Rng rng(29);
    for (int i = 0; i < 50; ++i) {
        Gpts g = random_gpts(rng, 5, {'a', 'b'});
        Rpts r = to_rpts(g);
        Gpts back;
        back.states = g.states;
        back.alphabet = g.alphabet;
        back.start = g.start;
        back.trans.resize(g.states.size());
        for (std::size_t q = 0; q < g.states.size(); ++q) {
            back.trans[q].add(O::make_term(), r.accept[q]);
            for (const auto& [a, dist] : r.next[q])
                for (const auto& [target, m] : dist) back.trans[q].add(O::step(a, target), m);
        }
        for (std::size_t q = 0; q < g.states.size(); ++q) CHECK(back.trans[q] == g.trans[q]);
    }
}

TEST_CASE("matrix semantics agrees with word_prob", "[property]") {
    Rng rng(31);
    const std::vector<char> alphabet{'a', 'b'};
    for (int i = 0; i < 20; ++i) {
        Gpts g = random_gpts(rng, 6, alphabet);
        Rpts r = to_rpts(g);
        const int n = static_cast<int>(g.states.size());
        // Dense per-letter matrices from the reactive view.
        std::map<char, std::vector<std::vector<Rational>>> mat;
        for (char a : alphabet) {
            mat[a].assign(n, std::vector<Rational>(n, Rational(0)));
            for (int q = 0; q < n; ++q) {
                auto it = r.next[q].find(a);
                if (it == r.next[q].end()) continue;
                for (const auto& [target, m] : it->second) mat[a][q][target] = m;
            }
        }
        std::vector<std::string> words{""};
        for (std::size_t w = 0; w < words.size(); ++w) {
            if (words[w].size() >= 6) continue;
            for (char a : alphabet) words.push_back(words[w] + a);
        }
        for (const auto& w : words) {
            // accept vector pushed backwards through the letter matrices
            std::vector<Rational> v = r.accept;
            for (std::size_t k = w.size(); k-- > 0;) {
                std::vector<Rational> next(n, Rational(0));
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) next[x] += mat[w[k]][x][y] * v[y];
                v = std::move(next);
            }
            for (int q = 0; q < n; ++q) CHECK(v[q] == word_prob(g, q, w));
        }
    }
}

TEST_CASE("fixtures reload byte-identically") {
    for (const char* name : {"ex2.json", "ex2-left.json", "ex3.json", "ex4.json", "accept.json"}) {
        std::string path = kFixtures + "/" + std::string(name);
        Gpts g = load_gpts(path);
        CHECK(gpts_to_json(g).dump(2) + "\n" == slurp(path));
    }
    Gpts ex2 = load_gpts(kFixtures + "/ex2.json");
    CHECK(ex2.states.size() == 5);
}

TEST_CASE("schema violations carry a pointer") {
    auto load_text = [](const std::string& text) {
        return gpts_from_json(nlohmann::json::parse(text));
    };
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a"],"states":["q"],"transitions":[
        {"from":"q","label":null,"prob":"7/4","to":null}]})"),
                    SchemaError);
    try {
        load_text(R"({"alphabet":["a"],"states":["q"],"transitions":[
            {"from":"q","label":null,"prob":"7/4","to":null}]})");
    } catch (const SchemaError& e) {
        CHECK(e.pointer == "/transitions/0/prob");
    }
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a"],"states":["q"],"transitions":[
        {"from":"q","label":null,"prob":"x","to":null}]})"),
                    SchemaError);
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a"],"states":["q"],"transitions":[
        {"from":"q","label":"a","prob":"1","to":null}]})"),
                    SchemaError);
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a"],"states":["q","q"],"transitions":[]})"),
                    SchemaError);
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a"],"states":["q"],"transitions":[
        {"from":"q","label":"a","prob":"1","to":"r"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(load_text(R"({"alphabet":["a","a"],"states":["q"],"transitions":[]})"),
                    SchemaError);
}

TEST_CASE("dot export") {
    Gpts ex2 = load_gpts(kFixtures + "/ex2-left.json");
    std::string dot = gpts_to_dot(ex2);
    CHECK(dot.find("label=\"a | 1/4\"") != std::string::npos);
    CHECK(dot.find("✓") != std::string::npos);
    CHECK(dot.find("black:invis:black") != std::string::npos);
}
