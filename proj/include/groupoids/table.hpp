#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groupoids/term.hpp"

namespace groupoids {

/// A bijection on the elements 1..n.
class Permutation {
public:
    static constexpr int max_order = 5;

    static Permutation identity(int order) {
        Permutation p(order);
        for (int i = 0; i < order; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
        return p;
    }

    /// From the images of 1, 2, ..., n (1-based values).
    explicit Permutation(const std::vector<int>& images) : Permutation(int(images.size())) {
        std::array<bool, max_order> seen{};
        for (int i = 0; i < order_; ++i) {
            int v = images[std::size_t(i)];
            if (v < 1 || v > order_ || seen[std::size_t(v - 1)])
                throw std::invalid_argument("permutation images must be a bijection on 1..n");
            seen[std::size_t(v - 1)] = true;
            img_[i] = static_cast<std::uint8_t>(v - 1);
        }
    }

    int order() const { return order_; }
    int image(int a) const { return img_[a - 1] + 1; }

    Permutation inverse() const {
        Permutation p(order_);
        for (int i = 0; i < order_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return p;
    }

    /// (a ∘ b)(x) = a(b(x)).
    friend Permutation compose(const Permutation& a, const Permutation& b) {
        if (a.order_ != b.order_) throw std::invalid_argument("permutation order mismatch");
        Permutation p(a.order_);
        for (int i = 0; i < a.order_; ++i) p.img_[i] = a.img_[b.img_[i]];
        return p;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        if (a.order_ != b.order_) return false;
        for (int i = 0; i < a.order_; ++i)
            if (a.img_[i] != b.img_[i]) return false;
        return true;
    }

    // 0-based image, for inner loops.
    std::uint8_t raw(int i) const { return img_[std::size_t(i)]; }

private:
    explicit Permutation(int order) : order_(order) {
        if (order < 1 || order > max_order)
            throw std::out_of_range("permutation order must be 1..5");
    }

    int order_;
    std::array<std::uint8_t, max_order> img_{};
};

/// All n! permutations of 1..n in lexicographic order of their image rows.
inline const std::vector<Permutation>& all_permutations(int order) {
    static const std::array<std::vector<Permutation>, Permutation::max_order + 1> cache = [] {
        std::array<std::vector<Permutation>, Permutation::max_order + 1> all;
        for (int n = 1; n <= Permutation::max_order; ++n) {
            std::vector<int> img(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) img[std::size_t(i)] = i + 1;
            do {
                all[std::size_t(n)].emplace_back(img);
            } while (std::next_permutation(img.begin(), img.end()));
        }
        return all;
    }();
    if (order < 1 || order > Permutation::max_order)
        throw std::out_of_range("order must be 1..5");
    return cache[std::size_t(order)];
}

/// Multiplication table of an order-n groupoid over the elements 1..n,
/// cell (a, b) holding a·b. Cells may be individually unfilled while a
/// table is under construction during enumeration; all semantic operations
/// require a complete table. Value type, cheap to copy.
class CayleyTable {
public:
    static constexpr int max_order = 5;
    static constexpr std::uint8_t unfilled = 0xFF;

    explicit CayleyTable(int order) : order_(static_cast<std::uint8_t>(order)) {
        if (order < 1 || order > max_order) throw std::out_of_range("order must be 1..5");
        cells_.fill(unfilled);
    }

    /// Reads the row-major digit-string encoding, e.g. "22 12" for order 2.
    /// Whitespace is ignored; exactly n² digits, each in 1..n, are required.
    static CayleyTable decode(std::string_view text, int order) {
        CayleyTable t(order);
        int filled = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
            if (c < '1' || c > '0' + order)
                throw ParseError("cell digit out of range 1..n", i);
            if (filled == order * order) throw ParseError("too many digits", i);
            t.cells_[std::size_t(filled++)] = static_cast<std::uint8_t>(c - '1');
        }
        if (filled != order * order)
            throw ParseError("expected " + std::to_string(order * order) + " digits, got " +
                                 std::to_string(filled),
                             text.size());
        return t;
    }

    /// Row-major digit string with one space between rows ("22 12").
    std::string encode() const {
        require_complete();
        std::string out;
        out.reserve(std::size_t(order_ * order_ + order_ - 1));
        for (int a = 0; a < order_; ++a) {
            if (a > 0) out.push_back(' ');
            for (int b = 0; b < order_; ++b)
                out.push_back(static_cast<char>('1' + cells_[std::size_t(a * order_ + b)]));
        }
        return out;
    }

    int order() const { return order_; }

    bool complete() const {
        for (int i = 0; i < order_ * order_; ++i)
            if (cells_[std::size_t(i)] == unfilled) return false;
        return true;
    }

    bool filled(int a, int b) const { return cells_[idx(a, b)] != unfilled; }

    /// a·b with 1-based elements.
    int value(int a, int b) const {
        std::uint8_t v = cells_[idx(a, b)];
        if (v == unfilled) throw std::logic_error("cell is unfilled");
        return v + 1;
    }

    void set(int a, int b, int v) {
        if (v < 1 || v > order_) throw std::out_of_range("cell value out of range");
        cells_[idx(a, b)] = static_cast<std::uint8_t>(v - 1);
    }

    void clear(int a, int b) { cells_[idx(a, b)] = unfilled; }

    bool is_commutative() const {
        require_complete();
        for (int a = 1; a <= order_; ++a)
            for (int b = a + 1; b <= order_; ++b)
                if (cells_[idx(a, b)] != cells_[idx(b, a)]) return false;
        return true;
    }

    friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
        if (a.order_ != b.order_) return false;
        for (int i = 0; i < a.order_ * a.order_; ++i)
            if (a.cells_[std::size_t(i)] != b.cells_[std::size_t(i)]) return false;
        return true;
    }
    friend bool operator!=(const CayleyTable& a, const CayleyTable& b) { return !(a == b); }

    /// Row-major lexicographic order on cell values; agrees with comparing
    /// encode() strings for tables of equal order.
    friend bool operator<(const CayleyTable& a, const CayleyTable& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_;
        for (int i = 0; i < a.order_ * a.order_; ++i) {
            if (a.cells_[std::size_t(i)] != b.cells_[std::size_t(i)])
                return a.cells_[std::size_t(i)] < b.cells_[std::size_t(i)];
        }
        return false;
    }

    // 0-based raw access for enumeration engines; no bounds or fill checks.
    std::uint8_t raw_cell(int i) const { return cells_[std::size_t(i)]; }
    void set_raw(int i, std::uint8_t v) { cells_[std::size_t(i)] = v; }

private:
    std::size_t idx(int a, int b) const {
        if (a < 1 || a > order_ || b < 1 || b > order_)
            throw std::out_of_range("element out of range 1..n");
        return std::size_t((a - 1) * order_ + (b - 1));
    }
    void require_complete() const {
        if (!complete()) throw std::logic_error("operation requires a complete table");
    }

    std::uint8_t order_;
    std::array<std::uint8_t, max_order * max_order> cells_;
};

/// Assignment of elements (1-based) to the variables x, y, z.
struct Assignment {
    std::array<int, 3> values{0, 0, 0};

    int& operator[](char var) { return values[std::size_t(var - 'x')]; }
    int operator[](char var) const { return values[std::size_t(var - 'x')]; }
};

/// Recursive term evaluation; requires a complete table and an assignment
/// covering the term's variables.
inline int evaluate(const CayleyTable& t, const Term& term, const Assignment& a) {
    if (term.is_var()) {
        int v = a[term.var_name()];
        if (v < 1 || v > t.order())
            throw std::invalid_argument("assignment does not cover the term's variables");
        return v;
    }
    return t.value(evaluate(t, term.left(), a), evaluate(t, term.right(), a));
}

// --- compiled identities -------------------------------------------------
//
// Terms are flattened to postorder programs over a tiny stack machine so
// the inner loops of satisfaction checks and enumeration never chase
// pointers. Instruction values 0..2 push the element assigned to variable
// slot i; kMul pops two values and pushes their product.

struct CompiledTerm {
    static constexpr std::int8_t kMul = -1;
    std::vector<std::int8_t> code;
};

struct CompiledIdentity {
    CompiledTerm lhs, rhs;
    std::string vars;  // distinct variables, first-occurrence order; slot i = vars[i]
    bool has_square = false;  // some product multiplies a variable by itself
};

inline CompiledIdentity compile(const Identity& id) {
    if (id.lhs.leaves().size() > 32 || id.rhs.leaves().size() > 32)
        throw std::invalid_argument("term too large (more than 32 leaves on one side)");
    CompiledIdentity out;
    auto slot = [&out](char v) {
        std::size_t i = out.vars.find(v);
        if (i == std::string::npos) {
            i = out.vars.size();
            out.vars.push_back(v);
        }
        return static_cast<std::int8_t>(i);
    };
    auto emit = [&](auto&& self, const Term& t, CompiledTerm& ct) -> void {
        if (t.is_var()) {
            ct.code.push_back(slot(t.var_name()));
            return;
        }
        const Term l = t.left(), r = t.right();
        if (l.is_var() && r.is_var() && l.var_name() == r.var_name()) out.has_square = true;
        self(self, l, ct);
        self(self, r, ct);
        ct.code.push_back(CompiledTerm::kMul);
    };
    emit(emit, id.lhs, out.lhs);
    emit(emit, id.rhs, out.rhs);
    return out;
}

namespace detail {

// Complete-table evaluation of one side under a slot assignment (0-based
// element values). No validity checks.
inline std::uint8_t eval_complete(const CayleyTable& t, const CompiledTerm& ct,
                                  const std::uint8_t* slots) {
    std::uint8_t stack[33];
    stack[0] = 0;
    int sp = 0;
    const int n = t.order();
    for (std::int8_t op : ct.code) {
        if (op >= 0) {
            stack[sp++] = slots[op];
        } else {
            --sp;
            stack[sp - 1] = t.raw_cell(stack[sp - 1] * n + stack[sp]);
        }
    }
    return stack[0];
}

}  // namespace detail

inline bool satisfies(const CayleyTable& t, const CompiledIdentity& cid) {
    const int n = t.order();
    const int v = int(cid.vars.size());
    std::uint8_t slots[3] = {0, 0, 0};
    for (;;) {
        if (detail::eval_complete(t, cid.lhs, slots) != detail::eval_complete(t, cid.rhs, slots))
            return false;
        int i = 0;
        while (i < v && ++slots[i] == n) slots[i++] = 0;
        if (i == v) return true;
    }
}

/// True iff the identity holds for all n^v assignments of its variables.
inline bool satisfies(const CayleyTable& t, const Identity& id) {
    if (!t.complete()) throw std::logic_error("satisfies requires a complete table");
    return satisfies(t, compile(id));
}

/// The map x ↦ a·x (row a) as images of 1..n.
inline std::vector<int> left_translation(const CayleyTable& t, int a) {
    std::vector<int> out(std::size_t(t.order()));
    for (int x = 1; x <= t.order(); ++x) out[std::size_t(x - 1)] = t.value(a, x);
    return out;
}

/// The map x ↦ x·a (column a) as images of 1..n.
inline std::vector<int> right_translation(const CayleyTable& t, int a) {
    std::vector<int> out(std::size_t(t.order()));
    for (int x = 1; x <= t.order(); ++x) out[std::size_t(x - 1)] = t.value(x, a);
    return out;
}

/// Cayley table of the (12)-parastrophe x∗y = y·x: the transpose.
inline CayleyTable parastrophe_table(const CayleyTable& t) {
    CayleyTable out(t.order());
    for (int a = 1; a <= t.order(); ++a)
        for (int b = 1; b <= t.order(); ++b) out.set(a, b, t.value(b, a));
    return out;
}

enum class Morphism { Iso, AntiIso };

/// The table of x∘y = α⁻¹(αx·αy) (Iso) or x∘y = α⁻¹(αy·αx) (AntiIso).
inline CayleyTable apply_permutation(const CayleyTable& t, const Permutation& alpha,
                                     Morphism mode) {
    const int n = t.order();
    if (alpha.order() != n) throw std::invalid_argument("permutation order mismatch");
    const Permutation inv = alpha.inverse();
    CayleyTable out(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int ax = alpha.raw(x), ay = alpha.raw(y);
            std::uint8_t p = mode == Morphism::Iso ? t.raw_cell(ax * n + ay)
                                                   : t.raw_cell(ay * n + ax);
            out.set_raw(x * n + y, inv.raw(p));
        }
    return out;
}

namespace detail {

inline std::optional<Permutation> morphism_witness(const CayleyTable& a, const CayleyTable& b,
                                                   Morphism mode) {
    if (a.order() != b.order()) throw std::invalid_argument("table order mismatch");
    for (const Permutation& p : all_permutations(a.order()))
        if (apply_permutation(a, p, mode) == b) return p;
    return std::nullopt;
}

}  // namespace detail

/// Exhaustive search over S_n for a witnessing permutation with
/// apply_permutation(t1, α, mode) == t2.
inline std::optional<Permutation> is_isomorphic(const CayleyTable& t1, const CayleyTable& t2) {
    return detail::morphism_witness(t1, t2, Morphism::Iso);
}

inline std::optional<Permutation> is_anti_isomorphic(const CayleyTable& t1,
                                                     const CayleyTable& t2) {
    return detail::morphism_witness(t1, t2, Morphism::AntiIso);
}

enum class ClassMode { Iso, IsoOrAntiIso };

/// Orbit minimum of the row-major encoding under all isomorphism images
/// (mode Iso), additionally unioned with all anti-isomorphism images
/// (mode IsoOrAntiIso). Two tables share a canonical form exactly when
/// they lie in the same class.
inline CayleyTable canonical_form(const CayleyTable& t, ClassMode mode) {
    CayleyTable best = apply_permutation(t, Permutation::identity(t.order()), Morphism::Iso);
    for (const Permutation& p : all_permutations(t.order())) {
        CayleyTable cand = apply_permutation(t, p, Morphism::Iso);
        if (cand < best) best = cand;
        if (mode == ClassMode::IsoOrAntiIso) {
            cand = apply_permutation(t, p, Morphism::AntiIso);
            if (cand < best) best = cand;
        }
    }
    return best;
}

}  // namespace groupoids
