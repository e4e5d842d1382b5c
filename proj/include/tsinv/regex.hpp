#pragma once

// Small regular-expression compiler for the catalog patterns: parser for
// the {<,=,>} alphabet with | * + ? grouping and epsilon, Thompson NFA
// construction, and subset determinization into a partial Dfa.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tsinv/dfa.hpp"

namespace tsinv {

namespace regex_detail {

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
    enum Kind { Symbol, Epsilon, Concat, Union, Star, Plus, Opt } kind;
    char sym = 0;                // Symbol
    std::vector<NodePtr> kids;   // Concat/Union (n-ary), Star/Plus/Opt (1)
};

inline NodePtr mk(Node::Kind k) { return std::make_shared<Node>(Node{k, 0, {}}); }

class Parser {
  public:
    explicit Parser(const std::string& s) : src_(s) {}

    NodePtr parse() {
        NodePtr r = parse_union();
        skip_ws();
        if (pos_ != src_.size()) throw std::invalid_argument("regex: trailing input at " + std::to_string(pos_));
        return r;
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_union() {
        NodePtr u = mk(Node::Union);
        u->kids.push_back(parse_concat());
        while (eat('|')) u->kids.push_back(parse_concat());
        return u->kids.size() == 1 ? u->kids[0] : u;
    }

    NodePtr parse_concat() {
        NodePtr c = mk(Node::Concat);
        while (true) {
            char p = peek();
            if (p == '\0' || p == '|' || p == ')') break;
            c->kids.push_back(parse_postfix());
        }
        if (c->kids.empty()) return mk(Node::Epsilon);
        return c->kids.size() == 1 ? c->kids[0] : c;
    }

    NodePtr parse_postfix() {
        NodePtr a = parse_atom();
        while (true) {
            if (eat('*')) {
                NodePtr s = mk(Node::Star);
                s->kids.push_back(a);
                a = s;
            } else if (eat('+')) {
                NodePtr s = mk(Node::Plus);
                s->kids.push_back(a);
                a = s;
            } else if (eat('?')) {
                NodePtr s = mk(Node::Opt);
                s->kids.push_back(a);
                a = s;
            } else {
                break;
            }
        }
        return a;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw std::invalid_argument("regex: unexpected end");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_union();
            if (!eat(')')) throw std::invalid_argument("regex: missing ')'");
            return inner;
        }
        if (c == kLt || c == kEq || c == kGt) {
            ++pos_;
            NodePtr n = mk(Node::Symbol);
            n->sym = c;
            return n;
        }
        // UTF-8 epsilon (0xCE 0xB5); also accept a literal 'e' alias "eps"
        if (static_cast<unsigned char>(c) == 0xCE && pos_ + 1 < src_.size() &&
            static_cast<unsigned char>(src_[pos_ + 1]) == 0xB5) {
            pos_ += 2;
            return mk(Node::Epsilon);
        }
        if (src_.compare(pos_, 3, "eps") == 0) {
            pos_ += 3;
            return mk(Node::Epsilon);
        }
        throw std::invalid_argument(std::string("regex: unexpected character '") + c + "'");
    }
};

// Thompson NFA with epsilon transitions.
struct Nfa {
    struct State {
        std::vector<std::pair<int, int>> sym_edges;  // (symbol index, dst)
        std::vector<int> eps_edges;
    };
    std::vector<State> states;
    int start = 0, accept = 0;

    int add() {
        states.push_back({});
        return static_cast<int>(states.size()) - 1;
    }
};

inline std::pair<int, int> build(Nfa& n, const NodePtr& node) {
    switch (node->kind) {
        case Node::Symbol: {
            int a = n.add(), b = n.add();
            n.states[static_cast<std::size_t>(a)].sym_edges.emplace_back(sym_index(node->sym), b);
            return {a, b};
        }
        case Node::Epsilon: {
            int a = n.add(), b = n.add();
            n.states[static_cast<std::size_t>(a)].eps_edges.push_back(b);
            return {a, b};
        }
        case Node::Concat: {
            auto first = build(n, node->kids.front());
            int cur = first.second;
            for (std::size_t i = 1; i < node->kids.size(); ++i) {
                auto nxt = build(n, node->kids[i]);
                n.states[static_cast<std::size_t>(cur)].eps_edges.push_back(nxt.first);
                cur = nxt.second;
            }
            return {first.first, cur};
        }
        case Node::Union: {
            int a = n.add(), b = n.add();
            for (const auto& k : node->kids) {
                auto part = build(n, k);
                n.states[static_cast<std::size_t>(a)].eps_edges.push_back(part.first);
                n.states[static_cast<std::size_t>(part.second)].eps_edges.push_back(b);
            }
            return {a, b};
        }
        case Node::Star: {
            int a = n.add(), b = n.add();
            auto part = build(n, node->kids[0]);
            n.states[static_cast<std::size_t>(a)].eps_edges.push_back(part.first);
            n.states[static_cast<std::size_t>(a)].eps_edges.push_back(b);
            n.states[static_cast<std::size_t>(part.second)].eps_edges.push_back(part.first);
            n.states[static_cast<std::size_t>(part.second)].eps_edges.push_back(b);
            return {a, b};
        }
        case Node::Plus: {
            auto part = build(n, node->kids[0]);
            n.states[static_cast<std::size_t>(part.second)].eps_edges.push_back(part.first);
            return part;
        }
        case Node::Opt: {
            int a = n.add(), b = n.add();
            auto part = build(n, node->kids[0]);
            n.states[static_cast<std::size_t>(a)].eps_edges.push_back(part.first);
            n.states[static_cast<std::size_t>(a)].eps_edges.push_back(b);
            n.states[static_cast<std::size_t>(part.second)].eps_edges.push_back(b);
            return {a, b};
        }
    }
    throw std::logic_error("regex: unreachable");
}

inline std::set<int> eps_closure(const Nfa& n, std::set<int> s) {
    std::vector<int> stack(s.begin(), s.end());
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : n.states[static_cast<std::size_t>(u)].eps_edges)
            if (s.insert(v).second) stack.push_back(v);
    }
    return s;
}

}  // namespace regex_detail

// Compile a catalog pattern string into a minimized partial DFA.
inline Dfa compile_regex(const std::string& pattern) {
    using namespace regex_detail;
    Parser p(pattern);
    NodePtr ast = p.parse();
    Nfa nfa;
    auto [start, accept] = build(nfa, ast);
    nfa.start = start;
    nfa.accept = accept;

    std::map<std::set<int>, int> id;
    std::vector<std::set<int>> sets;
    Dfa d;
    auto get = [&](const std::set<int>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        int q = d.n_states++;
        id.emplace(s, q);
        sets.push_back(s);
        d.delta.push_back({-1, -1, -1});
        d.accepting.push_back(s.count(nfa.accept) ? 1 : 0);
        return q;
    };
    d.initial = get(eps_closure(nfa, {nfa.start}));
    for (int q = 0; q < d.n_states; ++q) {
        std::set<int> cur = sets[static_cast<std::size_t>(q)];  // copy: sets grows
        for (int s = 0; s < 3; ++s) {
            std::set<int> nxt;
            for (int u : cur)
                for (auto [sym, v] : nfa.states[static_cast<std::size_t>(u)].sym_edges)
                    if (sym == s) nxt.insert(v);
            if (nxt.empty()) continue;
            d.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] =
                get(eps_closure(nfa, nxt));
        }
    }
    return minimize(d);
}

}  // namespace tsinv
