#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "groupoids/catalog.hpp"
#include "groupoids/table.hpp"

using namespace groupoids;

namespace {

std::vector<CayleyTable> all_order2_tables() {
    std::vector<CayleyTable> out;
    for (int mask = 0; mask < 16; ++mask) {
        CayleyTable t(2);
        for (int i = 0; i < 4; ++i) t.set_raw(i, static_cast<std::uint8_t>((mask >> (3 - i)) & 1));
        out.push_back(t);
    }
    return out;
}

CayleyTable random_table(int n, std::mt19937& rng) {
    CayleyTable t(n);
    std::uniform_int_distribution<int> d(1, n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) t.set(a, b, d(rng));
    return t;
}

}  // namespace

TEST_CASE("decode and encode", "[table]") {
    CayleyTable t = CayleyTable::decode("22 12", 2);
    CHECK(t.value(1, 1) == 2);
    CHECK(t.value(1, 2) == 2);
    CHECK(t.value(2, 1) == 1);
    CHECK(t.value(2, 2) == 2);
    CHECK(t.encode() == "22 12");
    CHECK(CayleyTable::decode("2212", 2) == t);  // whitespace is free-form

    CHECK(CayleyTable::decode("11 11", 2).value(2, 2) == 1);
    CayleyTable z2 = CayleyTable::decode("12 21", 2);
    CHECK(z2.value(1, 1) == 1);
    CHECK(z2.value(2, 2) == 1);

    CHECK_THROWS_AS(CayleyTable::decode("22 1", 2), ParseError);
    CHECK_THROWS_AS(CayleyTable::decode("22 123", 2), ParseError);
    CHECK_THROWS_AS(CayleyTable::decode("23 12", 2), ParseError);
    CHECK_THROWS_AS(CayleyTable::decode("02 12", 2), ParseError);

    std::mt19937 rng(7);
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 20; ++i) {
            CayleyTable t2 = random_table(n, rng);
            CHECK(CayleyTable::decode(t2.encode(), n) == t2);
        }
}

TEST_CASE("incomplete tables", "[table]") {
    CayleyTable t(2);
    CHECK_FALSE(t.complete());
    CHECK_FALSE(t.filled(1, 1));
    t.set(1, 1, 2);
    CHECK(t.filled(1, 1));
    CHECK_THROWS_AS(t.encode(), std::logic_error);
    CHECK_THROWS_AS(t.value(2, 2), std::logic_error);
    t.clear(1, 1);
    CHECK_FALSE(t.filled(1, 1));
    CHECK_THROWS_AS(t.set(1, 1, 3), std::out_of_range);
    CHECK_THROWS_AS(CayleyTable(6), std::out_of_range);
}

TEST_CASE("evaluate", "[table]") {
    CayleyTable t = CayleyTable::decode("22 12", 2);
    Assignment a;
    a['x'] = 1;
    CHECK(evaluate(t, Term::var('x'), a) == 1);

    Assignment b;
    b['x'] = 2;
    b['y'] = 1;
    CHECK(evaluate(t, Term::prod(Term::var('x'), Term::var('y')), b) == 1);  // row 2, col 1

    // (x·y)·(z·x) on the table "12 21" with x=1, y=2, z=2:
    // x·y = 2, z·x = 2, product = 2·2 = 1
    CayleyTable z2 = CayleyTable::decode("12 21", 2);
    Assignment c;
    c['x'] = 1;
    c['y'] = 2;
    c['z'] = 2;
    CHECK(evaluate(z2, catalog_get("F1").identity.lhs, c) == 1);

    Assignment missing;
    missing['x'] = 1;
    CHECK_THROWS_AS(evaluate(z2, catalog_get("F1").identity.lhs, missing),
                    std::invalid_argument);
}

TEST_CASE("satisfies", "[table]") {
    Identity x_eq_x = parse_identity("x = x", Grammar::Compact);
    for (const CayleyTable& t : all_order2_tables()) CHECK(satisfies(t, x_eq_x));

    // the six tables satisfying every classical identity
    for (const char* enc : {"11 11", "22 22", "11 12", "12 22", "11 22", "12 12"}) {
        CayleyTable t = CayleyTable::decode(enc, 2);
        for (const CatalogEntry* e : catalog_list(CatalogFilter::Classical))
            CHECK(satisfies(t, e->identity));
    }

    CHECK(satisfies(CayleyTable::decode("12 12", 2), catalog_get("F1").identity));
    CHECK_FALSE(satisfies(CayleyTable::decode("21 11", 2), catalog_get("F42").identity));

    // double route: the compiled checker agrees with direct evaluation
    std::mt19937 rng(11);
    std::vector<const CatalogEntry*> entries(catalog_list(CatalogFilter::All));
    for (int n = 2; n <= 3; ++n)
        for (int i = 0; i < 40; ++i) {
            CayleyTable t = random_table(n, rng);
            const Identity& id = entries[i % entries.size()]->identity;
            bool direct = true;
            for (int x = 1; x <= n && direct; ++x)
                for (int y = 1; y <= n && direct; ++y)
                    for (int z = 1; z <= n && direct; ++z) {
                        Assignment a;
                        a['x'] = x;
                        a['y'] = y;
                        a['z'] = z;
                        direct = evaluate(t, id.lhs, a) == evaluate(t, id.rhs, a);
                    }
            CHECK(satisfies(t, id) == direct);
        }
}

TEST_CASE("translations", "[table]") {
    CayleyTable t = CayleyTable::decode("22 12", 2);
    CHECK(left_translation(t, 1) == std::vector<int>{2, 2});
    CHECK(right_translation(t, 2) == std::vector<int>{2, 2});
    CHECK(left_translation(CayleyTable::decode("12 21", 2), 1) == std::vector<int>{1, 2});
}

TEST_CASE("parastrophe_table", "[table]") {
    CHECK(parastrophe_table(CayleyTable::decode("22 12", 2)).encode() == "21 22");

    CayleyTable comm = CayleyTable::decode("12 21", 2);
    CHECK(comm.is_commutative());
    CHECK(parastrophe_table(comm) == comm);

    std::mt19937 rng(3);
    for (int n = 2; n <= 4; ++n)
        for (int i = 0; i < 10; ++i) {
            CayleyTable t = random_table(n, rng);
            CHECK(parastrophe_table(parastrophe_table(t)) == t);
        }
}

TEST_CASE("apply_permutation", "[table]") {
    Permutation swap12({2, 1});
    CHECK(apply_permutation(CayleyTable::decode("11 12", 2), swap12, Morphism::Iso).encode() ==
          "12 22");
    CHECK(apply_permutation(CayleyTable::decode("11 21", 2), swap12, Morphism::AntiIso).encode() ==
          "22 12");

    CayleyTable t = CayleyTable::decode("22 12", 2);
    CHECK(apply_permutation(t, Permutation::identity(2), Morphism::Iso) == t);
    CHECK_THROWS_AS(apply_permutation(t, Permutation::identity(3), Morphism::Iso),
                    std::invalid_argument);
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);

    std::mt19937 rng(5);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + int(rng() % 3);
        CayleyTable a = random_table(n, rng);
        const auto& perms = all_permutations(n);
        const Permutation& alpha = perms[rng() % perms.size()];
        const Permutation& beta = perms[rng() % perms.size()];

        // group action: applying beta after alpha equals applying alpha∘beta
        CayleyTable two_step = apply_permutation(apply_permutation(a, alpha, Morphism::Iso),
                                                 beta, Morphism::Iso);
        CHECK(two_step == apply_permutation(a, compose(alpha, beta), Morphism::Iso));

        // two anti-isomorphisms compose to an isomorphism
        CayleyTable anti_anti = apply_permutation(apply_permutation(a, alpha, Morphism::AntiIso),
                                                  beta, Morphism::AntiIso);
        CHECK(anti_anti == apply_permutation(a, compose(alpha, beta), Morphism::Iso));
    }

    // on a commutative table every anti-isomorphism image is an isomorphism image
    std::mt19937 rng2(9);
    for (int i = 0; i < 10; ++i) {
        int n = 2 + int(rng2() % 2);
        CayleyTable c = random_table(n, rng2);
        for (int a2 = 1; a2 <= n; ++a2)
            for (int b = a2 + 1; b <= n; ++b) c.set(b, a2, c.value(a2, b));
        for (const Permutation& p : all_permutations(n))
            CHECK(apply_permutation(c, p, Morphism::AntiIso) ==
                  apply_permutation(c, p, Morphism::Iso));
    }
}

TEST_CASE("isomorphism witnesses", "[table]") {
    CayleyTable a = CayleyTable::decode("11 22", 2);
    CayleyTable b = CayleyTable::decode("12 12", 2);
    CHECK(is_anti_isomorphic(a, b).has_value());
    CHECK_FALSE(is_isomorphic(a, b).has_value());

    CayleyTable c = CayleyTable::decode("12 21", 2);
    CayleyTable d = CayleyTable::decode("21 12", 2);
    auto w = is_isomorphic(c, d);
    REQUIRE(w.has_value());
    CHECK(apply_permutation(c, *w, Morphism::Iso) == d);

    auto self = is_isomorphic(c, c);
    REQUIRE(self.has_value());
    CHECK(*self == Permutation::identity(2));
}

TEST_CASE("canonical_form", "[table]") {
    CHECK(canonical_form(CayleyTable::decode("12 22", 2), ClassMode::Iso).encode() == "11 12");
    CHECK(canonical_form(CayleyTable::decode("11 11", 2), ClassMode::Iso).encode() == "11 11");
    CHECK(canonical_form(CayleyTable::decode("11 11", 2), ClassMode::IsoOrAntiIso).encode() ==
          "11 11");

    std::set<std::string> combined;
    for (const CayleyTable& t : all_order2_tables())
        combined.insert(canonical_form(t, ClassMode::IsoOrAntiIso).encode());
    CHECK(combined.size() == 7);
}

TEST_CASE("order-2 partitions match the published structure", "[table]") {
    // published isomorphism partition of the 16 order-2 tables
    const std::vector<std::set<std::string>> iso_expected = {
        {"11 11", "22 22"}, {"11 12", "12 22"}, {"11 21", "21 22"}, {"11 22"},
        {"12 11", "22 12"}, {"12 12"},          {"12 21", "21 12"}, {"21 11", "22 21"},
        {"21 21"},          {"22 11"}};
    // published combined partition
    const std::vector<std::set<std::string>> both_expected = {
        {"11 11", "22 22"},
        {"11 12", "12 22"},
        {"11 21", "21 22", "22 12", "12 11"},
        {"11 22", "12 12"},
        {"12 21", "21 12"},
        {"21 11", "22 21"},
        {"21 21", "22 11"}};

    auto partition_by = [](ClassMode mode) {
        std::map<std::string, std::set<std::string>> classes;
        for (const CayleyTable& t : all_order2_tables())
            classes[canonical_form(t, mode).encode()].insert(t.encode());
        std::set<std::set<std::string>> out;
        for (auto& [k, v] : classes) out.insert(v);
        return out;
    };

    CHECK(partition_by(ClassMode::Iso) ==
          std::set<std::set<std::string>>(iso_expected.begin(), iso_expected.end()));
    CHECK(partition_by(ClassMode::IsoOrAntiIso) ==
          std::set<std::set<std::string>>(both_expected.begin(), both_expected.end()));

    // independent route: partition via pairwise witness search instead of
    // canonical forms
    std::vector<CayleyTable> tables = all_order2_tables();
    std::vector<int> parent(tables.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
    auto find = [&](int x) {
        while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)];
        return x;
    };
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j)
            if (is_isomorphic(tables[i], tables[j]).has_value())
                parent[std::size_t(find(int(j)))] = find(int(i));
    std::set<int> roots;
    for (std::size_t i = 0; i < tables.size(); ++i) roots.insert(find(int(i)));
    CHECK(roots.size() == 10);

    // published anti-isomorphic pairings hold (and are not isomorphisms)
    const std::vector<std::pair<std::string, std::string>> anti_pairs = {
        {"11 21", "22 12"}, {"21 22", "12 11"}, {"11 22", "12 12"}, {"21 21", "22 11"}};
    for (const auto& [x, y] : anti_pairs) {
        CayleyTable tx = CayleyTable::decode(x, 2), ty = CayleyTable::decode(y, 2);
        CHECK(is_anti_isomorphic(tx, ty).has_value());
        CHECK_FALSE(is_isomorphic(tx, ty).has_value());
    }
}

TEST_CASE("satisfaction transfers through the parastrophe", "[table]") {
    // t satisfies F exactly when the transposed table satisfies F*
    for (const CatalogEntry& e : catalog()) {
        Identity star = parastrophe_identity(e.identity);
        for (const CayleyTable& t : all_order2_tables())
            CHECK(satisfies(t, e.identity) == satisfies(parastrophe_table(t), star));
    }
}

TEST_CASE("satisfaction is isomorphism-invariant", "[table]") {
    std::mt19937 rng(13);
    std::vector<const CatalogEntry*> entries = catalog_list(CatalogFilter::All);
    for (int i = 0; i < 60; ++i) {
        int n = 2 + int(rng() % 2);
        CayleyTable t = random_table(n, rng);
        const Identity& id = entries[rng() % entries.size()]->identity;
        Identity star = parastrophe_identity(id);
        const auto& perms = all_permutations(n);
        const Permutation& alpha = perms[rng() % perms.size()];
        CHECK(satisfies(t, id) == satisfies(apply_permutation(t, alpha, Morphism::Iso), id));
        CHECK(satisfies(t, id) ==
              satisfies(apply_permutation(t, alpha, Morphism::AntiIso), star));
    }
}
