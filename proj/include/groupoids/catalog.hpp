#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groupoids/term.hpp"

namespace groupoids {

enum class CatalogFilter { Classical, Generalized, All };

/// Published census counts for one order: raw number of satisfying tables,
/// and (when recorded) class counts up to isomorphism and up to
/// isomorphism-or-anti-isomorphism.
struct ExpectedCounts {
    std::int64_t raw = 0;
    std::optional<std::int64_t> iso;
    std::optional<std::int64_t> iso_anti;
};

struct CatalogEntry {
    std::string key;           // "F17" or "EL"
    std::string display_name;  // "left Mouf.", "Extra"; may be empty
    bool classical;            // true for the F1..F60 list
    Identity identity;
    std::map<int, ExpectedCounts> expected;  // order -> published counts
};

namespace detail {

// Catalog source, one entry per line: key|display name|identity|counts.
// Counts are ;-separated per order as order:raw[,iso,iso_anti], transcribed
// verbatim from the published tables (including any misprints; the verify
// command reports live enumeration against these values as diffs).
inline constexpr std::string_view kClassicalRows =
    "F1||xy\xC2\xB7zx = (xy\xC2\xB7z)x|2:10,6,5\n"
    "F2||xy\xC2\xB7zx = (x\xC2\xB7yz)x|2:9,6,5\n"
    "F3||xy\xC2\xB7zx = x(y\xC2\xB7zx)|2:10,6,5\n"
    "F4|middle Mouf.|xy\xC2\xB7zx = x(yz\xC2\xB7x)|2:9,6,5\n"
    "F5||(xy\xC2\xB7z)x = (x\xC2\xB7yz)x|2:11,7,6\n"
    "F6|extra ident.|(xy\xC2\xB7z)x = x(y\xC2\xB7zx)|2:10,7,5\n"
    "F7||(xy\xC2\xB7z)x = x(yz\xC2\xB7x)|2:9,6,5\n"
    "F8||(x\xC2\xB7yz)x = x(y\xC2\xB7zx)|2:9,6,5\n"
    "F9||(x\xC2\xB7yz)x = x(yz\xC2\xB7x)|2:10,6,5\n"
    "F10||x(y\xC2\xB7zx) = x(yz\xC2\xB7x)|2:11,7,6\n"
    "F11||xy\xC2\xB7xz = (xy\xC2\xB7x)z|2:8,5,4\n"
    "F12||xy\xC2\xB7xz = (x\xC2\xB7yx)z|2:9,7,6\n"
    "F13|extra ident.|xy\xC2\xB7xz = x(yx\xC2\xB7z)|2:9,6,5\n"
    "F14||xy\xC2\xB7xz = x(y\xC2\xB7xz)|2:10,6,5\n"
    "F15||(xy\xC2\xB7x)z = (x\xC2\xB7yx)z|2:11,7,6\n"
    "F16||(xy\xC2\xB7x)z = x(yx\xC2\xB7z)|2:11,7,6\n"
    "F17|left Mouf.|(xy\xC2\xB7x)z = x(y\xC2\xB7xz)|2:10,7,5\n"
    "F18||(x\xC2\xB7yx)z = x(yx\xC2\xB7z)|2:8,5,4\n"
    "F19|left Bol|(x\xC2\xB7yx)z = x(y\xC2\xB7xz)|2:9,6,5\n"
    "F20||x(yx\xC2\xB7z) = x(y\xC2\xB7xz)|2:9,6,5\n"
    "F21||yx\xC2\xB7zx = (yx\xC2\xB7z)x|2:10,6,5\n"
    "F22|extra ident.|yx\xC2\xB7zx = (y\xC2\xB7xz)x|2:9,6,5\n"
    "F23||yx\xC2\xB7zx = y(xz\xC2\xB7x)|2:9,6,5\n"
    "F24||yx\xC2\xB7zx = y(x\xC2\xB7zx)|2:8,5,4\n"
    "F25||(yx\xC2\xB7z)x = (y\xC2\xB7xz)x|2:9,6,5\n"
    "F26|right Bol|(yx\xC2\xB7z)x = y(xz\xC2\xB7x)|2:9,6,5\n"
    "F27|right Mouf.|(yx\xC2\xB7z)x = y(x\xC2\xB7zx)|2:10,7,5\n"
    "F28||(y\xC2\xB7xz)x = y(xz\xC2\xB7x)|2:8,5,4\n"
    "F29||(y\xC2\xB7xz)x = y(x\xC2\xB7zx)|2:11,7,6\n"
    "F30||y(xz\xC2\xB7x) = y(x\xC2\xB7zx)|2:11,7,6\n"
    "F31||yx\xC2\xB7xz = (yx\xC2\xB7x)z|2:8,5,4\n"
    "F32||yx\xC2\xB7xz = (y\xC2\xB7xx)z|2:9,6,5\n"
    "F33||yx\xC2\xB7xz = y(xx\xC2\xB7z)|2:9,6,5\n"
    "F34||yx\xC2\xB7xz = y(x\xC2\xB7xz)|2:8,5,4\n"
    "F35||(yx\xC2\xB7x)z = (y\xC2\xB7xx)z|2:9,6,5\n"
    "F36|RC ident.|(yx\xC2\xB7x)z = y(xx\xC2\xB7z)|2:9,6,5\n"
    "F37|C ident.|(yx\xC2\xB7x)z = y(x\xC2\xB7xz)|2:10,7,5\n"
    "F38||(y\xC2\xB7xx)z = y(xx\xC2\xB7z)|2:8,5,4\n"
    "F39|LC ident.|(y\xC2\xB7xx)z = y(x\xC2\xB7xz)|2:9,6,5\n"
    "F40||y(xx\xC2\xB7z) = y(x\xC2\xB7xz)|2:9,6,5\n"
    "F41|LC ident.|xx\xC2\xB7yz = (x\xC2\xB7xy)z|2:9,6,5\n"
    "F42||xx\xC2\xB7yz = (xx\xC2\xB7y)z|2:12,7,5\n"
    "F43||xx\xC2\xB7yz = x(x\xC2\xB7yz)|2:8,5,4\n"
    "F44||xx\xC2\xB7yz = x(xy\xC2\xB7z)|2:9,6,5\n"
    "F45||(x\xC2\xB7xy)z = (xx\xC2\xB7y)z|2:9,6,5\n"
    "F46|LC ident.|(x\xC2\xB7xy)z = x(x\xC2\xB7yz)|2:11,7,6\n"
    "F47||(x\xC2\xB7xy)z = x(xy\xC2\xB7z)|2:8,5,4\n"
    "F48|LC ident.|(xx\xC2\xB7y)z = x(x\xC2\xB7yz)|2:10,7,5\n"
    "F49||(xx\xC2\xB7y)z = x(xy\xC2\xB7z)|2:9,6,5\n"
    "F50||x(x\xC2\xB7yz) = x(xy\xC2\xB7z)|2:11,7,6\n"
    "F51||yz\xC2\xB7xx = (yz\xC2\xB7x)x|2:8,5,4\n"
    "F52||yz\xC2\xB7xx = (y\xC2\xB7zx)x|2:9,6,5\n"
    "F53|RC ident.|yz\xC2\xB7xx = y(zx\xC2\xB7x)|2:9,6,5\n"
    "F54||yz\xC2\xB7xx = y(z\xC2\xB7xx)|2:12,7,6\n"
    "F55||(yz\xC2\xB7x)x = (y\xC2\xB7zx)x|2:11,7,6\n"
    "F56|RC ident.|(yz\xC2\xB7x)x = y(zx\xC2\xB7x)|2:11,7,6\n"
    "F57|RC ident.|(yz\xC2\xB7x)x = y(z\xC2\xB7xx)|2:10,7,6\n"
    "F58||(y\xC2\xB7zx)x = y(zx\xC2\xB7x)|2:8,5,4\n"
    "F59||(y\xC2\xB7zx)x = y(z\xC2\xB7xx)|2:9,6,5\n"
    "F60||y(zx\xC2\xB7x) = y(z\xC2\xB7xx)|2:9,6,5\n";

inline constexpr std::string_view kGeneralizedRows =
    "EL|Extra|x(y(zx)) = ((xy)z)x|2:10;3:239;4:18744\n"
    "ML|Moufang|(xy)(zx) = (x(yz))x|2:9;3:196;4:25113\n"
    "LB|Left Bol|x(y(xz)) = (x(yx))z|2:9;3:215;4:22875\n"
    "RB|Right Bol|y((xz)x) = ((yx)z)x|2:9;3:215;4:22875\n"
    "CL|C-loops|y(x(xz)) = ((yx)x)z|2:10;3:209;4:26583\n"
    "LC|LC-loops|(xx)(yz) = (x(xy))z|2:9;3:220;4:26583\n"
    "RC|RC-loops|y((zx)x) = (yz)(xx)|2:9;3:220;4:26583\n"
    "MN|Middle Nuclear Square|y((xx)z) = (y(xx))z|2:8;3:350;4:122328\n"
    "RN|Right Nuclear Square|y(z(xx)) = (yz)(xx)|2:12;3:932;4:2753064\n"
    "LN|Left Nuclear Square|((xx)y)z = (xx)(yz)|2:12;3:932;4:2753064\n"
    "CM|Comm. Moufang|(xy)(xz) = (xx)(zy)|2:8;3:297;4:111640\n"
    "CC|Comm. C-loop|(y(xy))z = x(y(yz))|2:8;3:169;4:12598\n"
    "CA|Comm. Alternative|((xx)y)z = z(x(yx))|2:6;3:110;4:10416\n"
    "CN|Comm. Nuclear square|((xx)y)z = (xx)(zy)|2:9;3:472;4:1321661\n"
    "CP|Comm. loops|((yx)x)z = z(x(yx))|2:8;3:744;4:1078744\n"
    "C1|Cheban, 1|x((xy)z) = (yx)(xz)|2:8;3:219;4:19846\n"
    "C2|Cheban, 2|x((xy)z) = (y(zx))x|2:6;3:153;4:12382\n"
    "L1|Lonely, I|(x(xy))z = y((zx)x)|2:6;3:117;4:6076\n"
    "CD|Cheban, I, Dual|(yx)(xz) = (y(zx))x|2:8;3:219;4:19846\n"
    "L2|Lonely, II|(x(xy))z = y((xx)z)|2:7;3:157;4:11489\n"
    "L3|Lonely, III|(y(xx))z = y((zx)x)|2:7;3:157;4:11489\n"
    "M1|Mate, I|(x(xy))z = ((yz)x)x|2:6;3:111;4:11188\n"
    "M2|Mate, II|(y(xx))z = ((yz)x)x|2:7;3:196;4:26785\n"
    "M3|Mate, III|x(x(yz)) = y((zx)x)|2:6;3:111;4:11188\n"
    "M4|Mate, IV|x(x(yz)) = y((xx)z)|2:7;3:196;4:26785\n"
    "T1|Triad, I|(xx)(yz) = y(z(xx))|2:6;3:162;4:67152\n"
    "T2|Triad, II|((xx)y)z = y(z(xx))|2:6;3:180;4:53832\n"
    "T3|Triad, III|((xx)y)z = (yz)(xx)|2:6;3:162;4:67152\n"
    "T4|Triad, IV|((xx)y)z = ((yz)x)x|2:6;3:132;4:42456\n"
    "T5|Triad, V|x(x(yz)) = y(z(xx))|2:6;3:132;4:42456\n"
    "T6|Triad, VI|(xx)(yz) = (yz)(xx)|2:8;3:1419;4:9356968\n"
    "T7|Triad, VII|((xx)y)z = ((yx)x)z|2:12;3:428;4:2914658\n"
    "T8|Triad, VIII|(xx)(yz) = y((zx)x)|2:6;3:120;4:11580\n"
    "T9|Triad, IX|(x(xy))z = y(z(xx))|2:6;3:102;4:6192\n"
    "FR|Frute|(x(xy))z = (y(zx))x|2:6;3:129;4:16600\n"
    "CR|Crazy Loop|(x(xy))z = (yx)(xz)|2:7;3:136;4:12545\n"
    "KR|Krypton|((xx)y)z = (x(yz))x|2:9;3:268;4:93227\n";

inline std::vector<CatalogEntry> parse_catalog_rows(std::string_view rows, bool classical) {
    std::vector<CatalogEntry> out;
    std::size_t start = 0;
    while (start < rows.size()) {
        std::size_t end = rows.find('\n', start);
        std::string_view line = rows.substr(start, end - start);
        start = end + 1;

        std::size_t p1 = line.find('|');
        std::size_t p2 = line.find('|', p1 + 1);
        std::size_t p3 = line.find('|', p2 + 1);
        CatalogEntry e;
        e.key = std::string(line.substr(0, p1));
        e.display_name = std::string(line.substr(p1 + 1, p2 - p1 - 1));
        e.classical = classical;
        e.identity = parse_identity(line.substr(p2 + 1, p3 - p2 - 1), Grammar::Compact);
        e.identity.name = e.key;
        e.identity.abbrev = e.display_name;

        std::string_view counts = line.substr(p3 + 1);
        std::size_t c = 0;
        while (c < counts.size()) {
            std::size_t stop = counts.find(';', c);
            std::string_view group = counts.substr(c, stop - c);
            c = stop == std::string_view::npos ? counts.size() : stop + 1;

            int order = group[0] - '0';
            ExpectedCounts ec;
            std::size_t q = 2;  // past "n:"
            std::size_t comma = group.find(',', q);
            ec.raw = std::stoll(std::string(group.substr(q, comma - q)));
            if (comma != std::string_view::npos) {
                q = comma + 1;
                comma = group.find(',', q);
                ec.iso = std::stoll(std::string(group.substr(q, comma - q)));
                q = comma + 1;
                ec.iso_anti = std::stoll(std::string(group.substr(q)));
            }
            e.expected.emplace(order, ec);
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> all = parse_catalog_rows(kClassicalRows, true);
    std::vector<CatalogEntry> gen = parse_catalog_rows(kGeneralizedRows, false);
    all.insert(all.end(), std::make_move_iterator(gen.begin()),
               std::make_move_iterator(gen.end()));
    // Startup self-check: keys unique, every entry balanced with one
    // duplicated variable, classical entries literally classical.
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!is_generalized(all[i].identity))
            throw std::logic_error("catalog entry " + all[i].key + " is not balanced");
        if (all[i].classical && !is_classical(all[i].identity))
            throw std::logic_error("catalog entry " + all[i].key + " is not classical");
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].key == all[j].key)
                throw std::logic_error("duplicate catalog key " + all[i].key);
    }
    return all;
}

}  // namespace detail

/// The built-in catalog: the 60 classical identities F1..F60 followed by
/// the 37 generalized ones, in published order.
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = detail::build_catalog();
    return entries;
}

class UnknownKeyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const CatalogEntry* catalog_find(std::string_view key) {
    for (const CatalogEntry& e : catalog())
        if (e.key == key) return &e;
    return nullptr;
}

/// Lookup by key; unknown keys raise UnknownKeyError listing near matches
/// (same first letter or same length).
inline const CatalogEntry& catalog_get(std::string_view key) {
    if (const CatalogEntry* e = catalog_find(key)) return *e;
    std::string near;
    for (const CatalogEntry& e : catalog()) {
        if (!key.empty() && (e.key[0] == key[0] || e.key == key.substr(0, e.key.size()))) {
            if (!near.empty()) near += ", ";
            near += e.key;
            if (near.size() > 40) break;
        }
    }
    std::string msg = "unknown catalog key '" + std::string(key) + "'";
    if (!near.empty()) msg += "; near matches: " + near;
    throw UnknownKeyError(msg);
}

inline std::vector<const CatalogEntry*> catalog_list(CatalogFilter filter) {
    std::vector<const CatalogEntry*> out;
    for (const CatalogEntry& e : catalog()) {
        if (filter == CatalogFilter::All || (filter == CatalogFilter::Classical) == e.classical)
            out.push_back(&e);
    }
    return out;
}

/// Key of the catalog identity equal to `id` up to renaming and
/// orientation. Entries from the preferred side of the catalog (classical
/// or generalized) win; pass std::nullopt for published order.
inline std::optional<std::string> find_catalog_match(const Identity& id,
                                                     std::optional<bool> prefer_classical = {}) {
    const CatalogEntry* fallback = nullptr;
    for (const CatalogEntry& e : catalog()) {
        if (!identities_equal(e.identity, id)) continue;
        if (!prefer_classical || e.classical == *prefer_classical) return e.key;
        if (!fallback) fallback = &e;
    }
    if (fallback) return fallback->key;
    return std::nullopt;
}

/// The catalog key whose identity equals the (12)-parastrophe of `key`'s
/// identity, searched within the same half of the catalog (the published
/// pairings never cross lists). Returns the key itself for self-paired
/// identities and nothing when the parastrophe is not in the same list.
inline std::optional<std::string> parastrophe_partner(std::string_view key) {
    const CatalogEntry& e = catalog_get(key);
    Identity star = parastrophe_identity(e.identity);
    for (const CatalogEntry& other : catalog()) {
        if (other.classical == e.classical && identities_equal(other.identity, star))
            return other.key;
    }
    return std::nullopt;
}

}  // namespace groupoids
