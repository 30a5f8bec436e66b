// expr.hpp -- abstract syntax of probabilistic regular expressions
//
// Expressions are immutable trees with shared subterms. Each node caches
// its hash, its termination weight and its size bound, so those are O(1)
// to query after construction. Structural equality (no quotienting by
// associativity or any other law) is the notion of identity used for
// state deduplication throughout the library.
#ifndef PRE_EXPR_HPP
#define PRE_EXPR_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pre/rational.hpp"

namespace pre {

inline bool is_letter(char c) {
    // '0' and '1' are the constant expressions, so they cannot be letters.
    return (c >= 'a' && c <= 'z') || (c >= '2' && c <= '9');
}

class Expr {
public:
    enum class Kind : unsigned char { zero, one, act, choice, seq, star };

    /// Default-constructs the deadlock expression.
    Expr() : node_(zero().node_) {}

    static const Expr& zero() {
        static const Expr e{make(Kind::zero, '\0', 0, nullptr, nullptr)};
        return e;
    }
    static const Expr& one() {
        static const Expr e{make(Kind::one, '\0', 0, nullptr, nullptr)};
        return e;
    }
    static Expr act(char letter) {
        if (!is_letter(letter)) throw std::invalid_argument(std::string("not a letter: ") + letter);
        return Expr(make(Kind::act, letter, 0, nullptr, nullptr));
    }
    static Expr choice(const Expr& left, const Prob& p, const Expr& right) {
        check_prob(p);
        return Expr(make(Kind::choice, '\0', p, left.node_, right.node_));
    }
    static Expr seq(const Expr& left, const Expr& right) {
        return Expr(make(Kind::seq, '\0', 0, left.node_, right.node_));
    }
    static Expr star(const Expr& body, const Prob& p) {
        check_prob(p);
        return Expr(make(Kind::star, '\0', p, body.node_, nullptr));
    }

    Kind kind() const { return node_->kind; }
    bool is(Kind k) const { return node_->kind == k; }
    char letter() const { return node_->letter; }
    const Prob& prob() const { return node_->prob; }
    Expr left() const { return Expr(node_->a); }
    Expr right() const { return Expr(node_->b); }
    Expr body() const { return Expr(node_->a); }

    /// Termination weight E: the probability of accepting the empty word.
    const Prob& exit_weight() const { return node_->exit; }

    /// Upper bound on the number of reachable derivative states (#).
    std::uint64_t size_bound() const { return node_->size; }

    std::size_t hash() const { return node_->hash; }

    bool operator==(const Expr& other) const {
        std::vector<std::pair<const Node*, const Node*>> todo;
        todo.emplace_back(node_.get(), other.node_.get());
        while (!todo.empty()) {
            auto [x, y] = todo.back();
            todo.pop_back();
            if (x == y) continue;
            if (x->hash != y->hash || x->kind != y->kind || x->letter != y->letter ||
                x->prob != y->prob)
                return false;
            if (x->a) todo.emplace_back(x->a.get(), y->a.get());
            if (x->b) todo.emplace_back(x->b.get(), y->b.get());
        }
        return true;
    }
    bool operator!=(const Expr& other) const { return !(*this == other); }

private:
    struct Node {
        Kind kind;
        char letter;
        Prob prob;
        std::shared_ptr<const Node> a, b;
        Prob exit;
        std::uint64_t size;
        std::size_t hash;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expr(NodePtr n) : node_(std::move(n)) {}

    static void check_prob(const Prob& p) {
        if (!is_prob(p)) throw std::domain_error("probability outside [0,1]: " + to_string(p));
    }

    static std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
        std::uint64_t s = x + y;
        return s < x ? UINT64_MAX : s;
    }

    static std::size_t mix(std::size_t h, std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    // Tears down an exclusively owned node iteratively; deep right-nested
    // chains from the equation solver would otherwise overflow the stack
    // through recursive shared_ptr destruction.
    struct Deleter {
        void operator()(const Node* raw) const noexcept {
            std::vector<NodePtr> stack;
            auto grab = [&stack](NodePtr& child) {
                if (child && child.use_count() == 1)
                    stack.push_back(std::move(child));
                else
                    child.reset();
            };
            {
                Node* n = const_cast<Node*>(raw);
                grab(n->a);
                grab(n->b);
                delete n;
            }
            while (!stack.empty()) {
                NodePtr p = std::move(stack.back());
                stack.pop_back();
                if (p.use_count() == 1) {
                    Node* n = const_cast<Node*>(p.get());
                    grab(n->a);
                    grab(n->b);
                }
            }
        }
    };

    static NodePtr make(Kind k, char letter, Prob p, NodePtr a, NodePtr b) {
        Prob exit;
        std::uint64_t size = 1;
        switch (k) {
            case Kind::zero: exit = 0; break;
            case Kind::one: exit = 1; break;
            case Kind::act: exit = 0; size = 2; break;
            case Kind::choice:
                exit = p * a->exit + complement(p) * b->exit;
                size = sat_add(a->size, b->size);
                break;
            case Kind::seq:
                exit = a->exit * b->exit;
                size = sat_add(a->size, b->size);
                break;
            case Kind::star:
                if (a->exit == 1 && p == 1)
                    exit = 0;
                else
                    exit = complement(p) / (Rational(1) - p * a->exit);
                size = sat_add(a->size, 1);
                break;
        }
        std::size_t h = mix(0x5b1dull, static_cast<std::size_t>(k));
        h = mix(h, static_cast<std::size_t>(letter));
        if (k == Kind::choice || k == Kind::star) h = mix(h, hash_rational(p));
        if (a) h = mix(h, a->hash);
        if (b) h = mix(h, b->hash);
        return NodePtr(new Node{k, letter, std::move(p), std::move(a), std::move(b), std::move(exit), size, h},
                       Deleter{});
    }

    NodePtr node_;
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

/// Termination operator E.
inline const Prob& termination_weight(const Expr& e) { return e.exit_weight(); }

/// Size bound # on the reachable derivative states.
inline std::uint64_t size_bound(const Expr& e) { return e.size_bound(); }

/// Folds an n-ary sub-convex sum into binary choices. The pivot is always
/// the first remaining term, which makes the result deterministic.
inline Expr nary_choice(const std::vector<std::pair<Prob, Expr>>& terms) {
    Rational total = 0;
    for (const auto& [p, e] : terms) {
        if (!is_prob(p)) throw std::domain_error("weight outside [0,1]: " + to_string(p));
        total += p;
    }
    if (total > 1) throw std::invalid_argument("weight sum exceeds 1: " + to_string(total));
    std::vector<std::pair<Prob, Expr>> rest(terms);
    Expr out;
    // Build from a right fold; an explicit stack keeps the pivot order
    // (always the first term) while avoiding recursion.
    std::vector<std::pair<Prob, Expr>> pivots;
    while (true) {
        if (rest.empty()) {
            out = Expr::zero();
            break;
        }
        bool collapsed = false;
        for (const auto& [p, e] : rest) {
            if (p == 1) {
                out = e;
                collapsed = true;
                break;
            }
        }
        if (collapsed) break;
        auto [p0, e0] = rest.front();
        pivots.emplace_back(p0, e0);
        std::vector<std::pair<Prob, Expr>> next;
        const Rational scale = complement(p0);
        for (std::size_t i = 1; i < rest.size(); ++i)
            next.emplace_back(rest[i].first / scale, rest[i].second);
        rest = std::move(next);
    }
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it)
        out = Expr::choice(it->second, it->first, out);
    return out;
}

/// Letters occurring in the expression, in order.
inline std::set<char> collect_letters(const Expr& e) {
    std::set<char> letters;
    std::vector<Expr> todo{e};
    while (!todo.empty()) {
        Expr cur = todo.back();
        todo.pop_back();
        switch (cur.kind()) {
            case Expr::Kind::act: letters.insert(cur.letter()); break;
            case Expr::Kind::choice:
            case Expr::Kind::seq:
                todo.push_back(cur.left());
                todo.push_back(cur.right());
                break;
            case Expr::Kind::star: todo.push_back(cur.body()); break;
            default: break;
        }
    }
    return letters;
}

namespace detail {

// Precedence levels of the concrete grammar, loosest first.
enum RenderLevel : int { lvl_choice = 0, lvl_seq = 1, lvl_star = 2, lvl_atom = 3 };

inline void render_into(const Expr& e, int level, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::zero: out += '0'; return;
        case Expr::Kind::one: out += '1'; return;
        case Expr::Kind::act: out += e.letter(); return;
        case Expr::Kind::choice: {
            if (level > lvl_choice) {
                out += '(';
                render_into(e, lvl_choice, out);
                out += ')';
                return;
            }
            Expr cur = e;
            while (cur.is(Expr::Kind::choice)) {
                render_into(cur.left(), lvl_seq, out);
                out += "+[";
                out += to_string(cur.prob());
                out += ']';
                cur = cur.right();
            }
            render_into(cur, lvl_seq, out);
            return;
        }
        case Expr::Kind::seq: {
            if (level > lvl_seq) {
                out += '(';
                render_into(e, lvl_seq, out);
                out += ')';
                return;
            }
            Expr cur = e;
            while (cur.is(Expr::Kind::seq)) {
                render_into(cur.left(), lvl_star, out);
                out += ';';
                cur = cur.right();
            }
            render_into(cur, lvl_star, out);
            return;
        }
        case Expr::Kind::star: {
            std::vector<Prob> exponents;
            Expr base = e;
            while (base.is(Expr::Kind::star)) {
                exponents.push_back(base.prob());
                base = base.body();
            }
            render_into(base, lvl_atom, out);
            for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) {
                out += "^[";
                out += to_string(*it);
                out += ']';
            }
            return;
        }
    }
}

}  // namespace detail

/// Canonical concrete syntax; parse(render(e)) == e structurally.
inline std::string render(const Expr& e) {
    std::string out;
    detail::render_into(e, detail::lvl_choice, out);
    return out;
}

}  // namespace pre

#endif  // PRE_EXPR_HPP
