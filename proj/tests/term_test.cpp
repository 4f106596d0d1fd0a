#include <catch2/catch_amalgamated.hpp>

#include "groupoids/catalog.hpp"
#include "groupoids/term.hpp"

using namespace groupoids;

namespace {
Term v(char c) { return Term::var(c); }
Term p(const Term& a, const Term& b) { return Term::prod(a, b); }
}  // namespace

TEST_CASE("compact parsing", "[term]") {
    Term f1_lhs = p(p(v('x'), v('y')), p(v('z'), v('x')));

    CHECK(parse_term("xy\xC2\xB7zx", Grammar::Compact) == f1_lhs);
    CHECK(parse_term("xy.zx", Grammar::Compact) == f1_lhs);  // ASCII dot alias
    CHECK(parse_term("x", Grammar::Compact) == v('x'));
    CHECK(parse_term(" x y . z x ", Grammar::Compact) == f1_lhs);

    // juxtaposition binds tighter than the dot, both left-associate
    CHECK(parse_term("xyz", Grammar::Compact) == p(p(v('x'), v('y')), v('z')));
    CHECK(parse_term("x.y.z", Grammar::Compact) == p(p(v('x'), v('y')), v('z')));
    CHECK(parse_term("x.yz", Grammar::Compact) == p(v('x'), p(v('y'), v('z'))));
    CHECK(parse_term("(xy.z)x", Grammar::Compact) ==
          p(p(p(v('x'), v('y')), v('z')), v('x')));
    CHECK(parse_term("x(y(zx))", Grammar::Compact) ==
          p(v('x'), p(v('y'), p(v('z'), v('x')))));
}

TEST_CASE("explicit parsing", "[term]") {
    CHECK(parse_term("((x*y)*z)*x", Grammar::Explicit) ==
          p(p(p(v('x'), v('y')), v('z')), v('x')));
    CHECK(parse_term("x", Grammar::Explicit) == v('x'));
    CHECK_THROWS_AS(parse_term("x*y*z", Grammar::Explicit), ParseError);  // needs parens
    CHECK_THROWS_AS(parse_term("x\xC2\xB7y", Grammar::Explicit), ParseError);
}

TEST_CASE("parse errors carry byte offsets", "[term]") {
    CHECK_THROWS_AS(parse_term("", Grammar::Compact), ParseError);
    CHECK_THROWS_AS(parse_term("xw", Grammar::Compact), ParseError);
    try {
        parse_term("xy(w)", Grammar::Compact);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse_term("(xy", Grammar::Compact);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    // offsets on the right side point into the whole identity string
    try {
        parse_identity("xy = zw", Grammar::Compact);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 6);
    }
    CHECK_THROWS_AS(parse_identity("xy zx", Grammar::Compact), ParseError);
    CHECK_THROWS_AS(parse_identity("x = y = z", Grammar::Compact), ParseError);
}

TEST_CASE("parse_identity", "[term]") {
    Identity f1 = parse_identity("xy\xC2\xB7zx = (xy\xC2\xB7z)x", Grammar::Compact);
    CHECK(f1.lhs == catalog_get("F1").identity.lhs);
    CHECK(f1.rhs == catalog_get("F1").identity.rhs);

    Identity triv = parse_identity("x = x", Grammar::Compact);
    CHECK(triv.lhs == v('x'));
    CHECK(triv.rhs == v('x'));

    Identity cr = parse_identity("(x(xy))z = (yx)(xz)", Grammar::Compact);
    CHECK(identities_equal(cr, catalog_get("CR").identity));
    CHECK(cr.lhs == catalog_get("CR").identity.lhs);
}

TEST_CASE("formatting", "[term]") {
    CHECK(format_term(catalog_get("F1").identity.lhs, Grammar::Compact) == "xy\xC2\xB7zx");
    CHECK(format_term(v('x'), Grammar::Explicit) == "x");
    CHECK(format_term(p(p(p(v('x'), v('y')), v('z')), v('x')), Grammar::Explicit) ==
          "((x*y)*z)*x");

    // minimal parentheses: right-nested products stay unambiguous via the dot
    Term t = p(v('x'), p(v('y'), v('z')));
    CHECK(format_term(t, Grammar::Compact) == "x\xC2\xB7yz");
    CHECK(parse_term(format_term(t, Grammar::Compact), Grammar::Compact) == t);
}

TEST_CASE("round-trip over the whole catalog", "[term]") {
    for (const CatalogEntry& e : catalog()) {
        for (Grammar g : {Grammar::Compact, Grammar::Explicit}) {
            Identity back = parse_identity(format_identity(e.identity, g), g);
            CHECK(back.lhs == e.identity.lhs);
            CHECK(back.rhs == e.identity.rhs);
        }
    }
    // the compact printer reproduces the classical rows' published typography
    CHECK(format_identity(catalog_get("F17").identity, Grammar::Compact) ==
          "(xy\xC2\xB7x)z = x(y\xC2\xB7xz)");
    CHECK(format_identity(catalog_get("F42").identity, Grammar::Compact) ==
          "xx\xC2\xB7yz = (xx\xC2\xB7y)z");
    CHECK(format_identity(catalog_get("F54").identity, Grammar::Compact) ==
          "yz\xC2\xB7xx = y(z\xC2\xB7xx)");
    CHECK(format_identity(catalog_get("EL").identity, Grammar::Explicit) ==
          "x*(y*(z*x)) = ((x*y)*z)*x");
}

TEST_CASE("classification", "[term]") {
    CHECK(classify(catalog_get("F1").identity) == BolMoufangClass::Classical);
    CHECK(classify(catalog_get("CM").identity) == BolMoufangClass::Generalized);
    CHECK(classify(parse_identity("x\xC2\xB7yz = x", Grammar::Compact)) ==
          BolMoufangClass::Neither);

    for (const CatalogEntry* e : catalog_list(CatalogFilter::Classical))
        CHECK(classify(e->identity) == BolMoufangClass::Classical);
    for (const CatalogEntry& e : catalog()) CHECK(is_generalized(e.identity));
    for (const CatalogEntry* e : catalog_list(CatalogFilter::Classical))
        CHECK(is_generalized(e->identity));

    // ten of the generalized rows are re-bracketed classical identities and
    // classify as Classical (the strongest label); the other 27 differ in
    // leaf order between their sides
    int classical_in_gen = 0;
    for (const CatalogEntry* e : catalog_list(CatalogFilter::Generalized))
        if (classify(e->identity) == BolMoufangClass::Classical) ++classical_in_gen;
    CHECK(classical_in_gen == 10);
    CHECK(classify(catalog_get("LB").identity) == BolMoufangClass::Classical);

    // same duplicated letter on both sides is required
    CHECK(classify(parse_identity("xx\xC2\xB7yz = yy\xC2\xB7xz", Grammar::Compact)) ==
          BolMoufangClass::Neither);
}

TEST_CASE("canonical_rename", "[term]") {
    Identity f1 = catalog_get("F1").identity;
    Identity f3 = catalog_get("F3").identity;

    Identity renamed_f1 = canonical_rename(f1);
    CHECK(renamed_f1.lhs == f1.lhs);  // already canonical
    CHECK(renamed_f1.rhs == f1.rhs);

    // the worked transform: mirroring F3 and renaming gives F1 exactly
    Identity mirrored{f3.lhs.mirror(), f3.rhs.mirror(), "", ""};
    CHECK(format_identity(mirrored, Grammar::Compact) ==
          "xz\xC2\xB7yx = (xz\xC2\xB7y)x");
    Identity renamed = canonical_rename(mirrored);
    CHECK(renamed.lhs == f1.lhs);
    CHECK(renamed.rhs == f1.rhs);

    Identity scrambled = parse_identity("zy\xC2\xB7xz = z(y\xC2\xB7xz)", Grammar::Compact);
    Identity canon = canonical_rename(scrambled);
    CHECK(format_identity(canon, Grammar::Compact) == "xy\xC2\xB7zx = x(y\xC2\xB7zx)");
    CHECK(canon.lhs == f3.lhs);
    CHECK(canon.rhs == f3.rhs);
}

TEST_CASE("parastrophe_identity", "[term]") {
    CHECK(identities_equal(parastrophe_identity(catalog_get("F1").identity),
                           catalog_get("F3").identity));
    CHECK(identities_equal(parastrophe_identity(catalog_get("F6").identity),
                           catalog_get("F6").identity));

    Identity triv = parse_identity("x = x", Grammar::Compact);
    CHECK(identities_equal(parastrophe_identity(triv), triv));

    // involution up to renaming, across the whole catalog
    for (const CatalogEntry& e : catalog()) {
        Identity twice = parastrophe_identity(parastrophe_identity(e.identity));
        CHECK(identities_equal(twice, e.identity));
    }
}

TEST_CASE("identities_equal", "[term]") {
    CHECK(identities_equal(parastrophe_identity(catalog_get("F1").identity),
                           catalog_get("F3").identity));
    CHECK_FALSE(identities_equal(catalog_get("F1").identity, catalog_get("F2").identity));
    for (const CatalogEntry& e : catalog()) CHECK(identities_equal(e.identity, e.identity));

    // orientation does not matter: an identity equals its flipped form
    Identity f1 = catalog_get("F1").identity;
    Identity flipped{f1.rhs, f1.lhs, "", ""};
    CHECK(identities_equal(f1, flipped));

    // distinct catalog entries are pairwise distinct as identities, except
    // that LC restates F41 (same trees) and ten generalized rows are
    // re-oriented classical rows
    CHECK(identities_equal(catalog_get("LC").identity, catalog_get("F41").identity));
    CHECK(identities_equal(catalog_get("EL").identity, catalog_get("F6").identity));
}
