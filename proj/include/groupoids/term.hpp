#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace groupoids {

enum class Grammar { Compact, Explicit };

/// Error for malformed term/identity/table text. `offset` is the byte
/// position of the offending character in the original input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Binary tree over the variables x, y, z with a single product operation.
/// Immutable and structurally shared: copies are cheap and thread-safe.
class Term {
public:
    /// Default: the bare variable x.
    Term() : Term(var('x')) {}

    static Term var(char name) {
        if (name < 'x' || name > 'z')
            throw std::invalid_argument("term variable must be one of x, y, z");
        return Term(std::make_shared<const Node>(Node{name, nullptr, nullptr}));
    }

    static Term prod(const Term& left, const Term& right) {
        return Term(std::make_shared<const Node>(Node{0, left.node_, right.node_}));
    }

    bool is_var() const { return node_->name != 0; }
    char var_name() const { return node_->name; }
    Term left() const { return Term(node_->left); }
    Term right() const { return Term(node_->right); }

    /// Leaf names in left-to-right order.
    std::string leaves() const {
        std::string out;
        collect_leaves(node_.get(), out);
        return out;
    }

    /// Swaps the children of every product node (both arguments of every
    /// occurrence of the operation), recursively.
    Term mirror() const { return Term(mirror_node(node_.get())); }

    /// Applies a variable substitution given as images of x, y, z.
    Term renamed(const std::array<char, 3>& image) const {
        return Term(rename_node(node_.get(), image));
    }

    friend bool operator==(const Term& a, const Term& b) {
        return nodes_equal(a.node_.get(), b.node_.get());
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    struct Node {
        char name;  // 0 for products
        std::shared_ptr<const Node> left, right;
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static void collect_leaves(const Node* n, std::string& out) {
        if (n->name != 0) {
            out.push_back(n->name);
            return;
        }
        collect_leaves(n->left.get(), out);
        collect_leaves(n->right.get(), out);
    }

    static std::shared_ptr<const Node> mirror_node(const Node* n) {
        if (n->name != 0) return std::make_shared<const Node>(*n);
        return std::make_shared<const Node>(
            Node{0, mirror_node(n->right.get()), mirror_node(n->left.get())});
    }

    static std::shared_ptr<const Node> rename_node(const Node* n,
                                                   const std::array<char, 3>& image) {
        if (n->name != 0)
            return std::make_shared<const Node>(Node{image[n->name - 'x'], nullptr, nullptr});
        return std::make_shared<const Node>(
            Node{0, rename_node(n->left.get(), image), rename_node(n->right.get(), image)});
    }

    static bool nodes_equal(const Node* a, const Node* b) {
        if (a->name != b->name) return false;
        if (a->name != 0) return true;
        return nodes_equal(a->left.get(), b->left.get()) &&
               nodes_equal(a->right.get(), b->right.get());
    }

    std::shared_ptr<const Node> node_;
};

/// An identity lhs = rhs, optionally tagged with its catalog key and
/// display abbreviation.
struct Identity {
    Term lhs;
    Term rhs;
    std::string name;    // e.g. "F17", empty for ad-hoc identities
    std::string abbrev;  // e.g. "left Mouf."
};

enum class BolMoufangClass { Classical, Generalized, Neither };

namespace detail {

// Shared lexer/cursor for both grammars. The mid-dot U+00B7 is the only
// multi-byte token we accept. `base` shifts reported offsets so that errors
// in the right side of an identity point into the original string.
struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t base = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    // Returns the current token character ('.', '*', '(', ')', or a variable),
    // normalising the UTF-8 mid-dot to '.'. Does not consume.
    char peek() {
        skip_ws();
        if (pos >= text.size()) return 0;
        unsigned char c = static_cast<unsigned char>(text[pos]);
        if (c == 0xC2 && pos + 1 < text.size() &&
            static_cast<unsigned char>(text[pos + 1]) == 0xB7)
            return '.';
        return static_cast<char>(c);
    }
    void advance() {
        if (static_cast<unsigned char>(text[pos]) == 0xC2)
            pos += 2;
        else
            pos += 1;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, base + pos); }
};

inline Term parse_compact_expr(Cursor& c);

inline Term parse_compact_primary(Cursor& c) {
    char t = c.peek();
    if (t == '(') {
        c.advance();
        Term inner = parse_compact_expr(c);
        if (c.peek() != ')') c.fail("expected ')'");
        c.advance();
        return inner;
    }
    if (t >= 'x' && t <= 'z') {
        c.advance();
        return Term::var(t);
    }
    if (t == 0) c.fail("unexpected end of input");
    if (t == '.') c.fail("misplaced product dot");
    c.fail(std::string("unknown symbol '") + t + "'");
}

// Juxtaposition level: a sequence of primaries, left-associative.
inline Term parse_compact_juxt(Cursor& c) {
    Term t = parse_compact_primary(c);
    for (char k = c.peek(); k == '(' || (k >= 'x' && k <= 'z'); k = c.peek())
        t = Term::prod(t, parse_compact_primary(c));
    return t;
}

// Dot level: juxtaposition binds tighter than the mid-dot, both
// left-associate.
inline Term parse_compact_expr(Cursor& c) {
    Term t = parse_compact_juxt(c);
    while (c.peek() == '.') {
        c.advance();
        t = Term::prod(t, parse_compact_juxt(c));
    }
    return t;
}

inline Term parse_explicit_expr(Cursor& c);

inline Term parse_explicit_operand(Cursor& c) {
    char t = c.peek();
    if (t == '(') {
        c.advance();
        Term inner = parse_explicit_expr(c);
        if (c.peek() != ')') c.fail("expected ')'");
        c.advance();
        return inner;
    }
    if (t >= 'x' && t <= 'z') {
        c.advance();
        return Term::var(t);
    }
    if (t == 0) c.fail("unexpected end of input");
    c.fail(std::string("unknown symbol '") + t + "'");
}

// Fully parenthesised grammar: an operand, or operand '*' operand. Deeper
// chains require parentheses, so x*y*z is rejected.
inline Term parse_explicit_expr(Cursor& c) {
    Term t = parse_explicit_operand(c);
    if (c.peek() == '*') {
        c.advance();
        t = Term::prod(t, parse_explicit_operand(c));
    }
    return t;
}

inline bool is_bare_digram(const Term& t) {
    return !t.is_var() && t.left().is_var() && t.right().is_var();
}

inline std::string render_compact(const Term& t);

inline std::string render_compact_part(const Term& t) {
    if (t.is_var()) return std::string(1, t.var_name());
    if (is_bare_digram(t)) {
        std::string s;
        s.push_back(t.left().var_name());
        s.push_back(t.right().var_name());
        return s;
    }
    return "(" + render_compact(t) + ")";
}

// One product per line of text: each factor is a variable, a two-variable
// juxtaposition, or a parenthesised subterm. A mid-dot separates the two
// factors whenever one of them is a bare two-variable group, which is the
// only case where plain juxtaposition would re-associate.
inline std::string render_compact(const Term& t) {
    if (t.is_var()) return std::string(1, t.var_name());
    const Term l = t.left(), r = t.right();
    std::string out = render_compact_part(l);
    if (is_bare_digram(l) || is_bare_digram(r)) out += "\xC2\xB7";
    out += render_compact_part(r);
    return out;
}

inline std::string render_explicit(const Term& t) {
    if (t.is_var()) return std::string(1, t.var_name());
    auto operand = [](const Term& u) {
        return u.is_var() ? std::string(1, u.var_name()) : "(" + render_explicit(u) + ")";
    };
    return operand(t.left()) + "*" + operand(t.right());
}

inline Term parse_with(Cursor& c, Grammar grammar) {
    if (c.at_end()) c.fail("empty term");
    Term t = grammar == Grammar::Compact ? parse_compact_expr(c) : parse_explicit_expr(c);
    if (!c.at_end()) c.fail("trailing input after term");
    return t;
}

}  // namespace detail

inline Term parse_term(std::string_view text, Grammar grammar) {
    detail::Cursor c{text};
    return detail::parse_with(c, grammar);
}

inline Identity parse_identity(std::string_view text, Grammar grammar) {
    std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("identity needs '='", text.size());
    if (text.find('=', eq + 1) != std::string_view::npos)
        throw ParseError("identity has more than one '='", text.find('=', eq + 1));
    detail::Cursor lc{text.substr(0, eq)};
    Term lhs = detail::parse_with(lc, grammar);
    detail::Cursor rc{text.substr(eq + 1), 0, eq + 1};
    Term rhs = detail::parse_with(rc, grammar);
    return Identity{std::move(lhs), std::move(rhs), "", ""};
}

inline std::string format_term(const Term& t, Grammar grammar) {
    return grammar == Grammar::Compact ? detail::render_compact(t)
                                       : detail::render_explicit(t);
}

inline std::string format_identity(const Identity& id, Grammar grammar) {
    return format_term(id.lhs, grammar) + " = " + format_term(id.rhs, grammar);
}

namespace detail {

inline int distinct_count(const std::string& leaves) {
    bool seen[3] = {false, false, false};
    for (char c : leaves) seen[c - 'x'] = true;
    return int(seen[0]) + int(seen[1]) + int(seen[2]);
}

inline std::array<int, 3> leaf_histogram(const std::string& leaves) {
    std::array<int, 3> h{0, 0, 0};
    for (char c : leaves) ++h[c - 'x'];
    return h;
}

}  // namespace detail

/// Both sides list the same three variables in the same order, one of them
/// (the same one) appearing twice per side.
inline bool is_classical(const Identity& id) {
    std::string l = id.lhs.leaves();
    return l.size() == 4 && l == id.rhs.leaves() && detail::distinct_count(l) == 3;
}

/// Both sides use the same three variables with the same one duplicated,
/// but the order of occurrence may differ between sides.
inline bool is_generalized(const Identity& id) {
    std::string l = id.lhs.leaves(), r = id.rhs.leaves();
    return l.size() == 4 && r.size() == 4 &&
           detail::leaf_histogram(l) == detail::leaf_histogram(r) &&
           detail::distinct_count(l) == 3;
}

/// Strongest applicable label; every Classical identity also satisfies the
/// Generalized predicate.
inline BolMoufangClass classify(const Identity& id) {
    if (is_classical(id)) return BolMoufangClass::Classical;
    if (is_generalized(id)) return BolMoufangClass::Generalized;
    return BolMoufangClass::Neither;
}

/// Renames variables so that first occurrences, reading the left side's
/// leaves left to right (then the right side's), are x, y, z in that order.
inline Identity canonical_rename(const Identity& id) {
    std::array<char, 3> image{0, 0, 0};
    char next = 'x';
    for (const std::string& side : {id.lhs.leaves(), id.rhs.leaves()})
        for (char c : side) {
            char& slot = image[c - 'x'];
            if (slot == 0) slot = next++;
        }
    for (char& slot : image)
        if (slot == 0) slot = next++;  // unused variables keep a valid image
    return Identity{id.lhs.renamed(image), id.rhs.renamed(image), "", ""};
}

/// The (12)-parastrophe of an identity: swap the arguments of every product
/// on both sides, then canonically rename. Involutive up to renaming.
inline Identity parastrophe_identity(const Identity& id) {
    return canonical_rename(Identity{id.lhs.mirror(), id.rhs.mirror(), "", ""});
}

/// Equality of identities as statements: equal up to variable renaming and
/// orientation (an identity and its flipped form assert the same thing).
inline bool identities_equal(const Identity& a, const Identity& b) {
    Identity cb = canonical_rename(b);
    Identity ca = canonical_rename(a);
    if (ca.lhs == cb.lhs && ca.rhs == cb.rhs) return true;
    Identity fa = canonical_rename(Identity{a.rhs, a.lhs, "", ""});
    return fa.lhs == cb.lhs && fa.rhs == cb.rhs;
}

}  // namespace groupoids
