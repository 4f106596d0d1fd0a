// Command-line census tool: count Cayley tables satisfying identities,
// verify live enumeration against the catalog's published counts, apply
// the (12)-parastrophe transform, classify identities, and list canonical
// class representatives.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupoids/catalog.hpp"
#include "groupoids/enumerate.hpp"
#include "groupoids/io.hpp"
#include "groupoids/table.hpp"
#include "groupoids/term.hpp"

using namespace groupoids;

namespace {

struct CommonOpts {
    std::vector<std::string> keys;
    std::string expr;
    std::string grammar = "compact";
    int jobs = 0;
    std::string engine = "auto";
    std::string fill_order = "auto";
    std::string format = "text";
    bool progress = false;
    bool large_classes = false;
};

Grammar parse_grammar(const std::string& g) {
    return g == "explicit" ? Grammar::Explicit : Grammar::Compact;
}

SearchConfig make_config(const CommonOpts& o) {
    SearchConfig cfg;
    cfg.engine = o.engine == "naive" ? Engine::Naive : Engine::Pruned;
    cfg.jobs = o.jobs;
    if (o.fill_order == "row-major") cfg.fill_order = FillOrder::RowMajor;
    else if (o.fill_order == "diagonal") cfg.fill_order = FillOrder::DiagonalFirst;
    cfg.allow_large_classes = o.large_classes;
    if (o.progress)
        cfg.progress = [](std::uint64_t nodes, int done, int total) {
            std::fprintf(stderr, "progress: nodes=%llu shards=%d/%d\n",
                         (unsigned long long)nodes, done, total);
        };
    return cfg;
}

// Resolves --id/--expr to identities plus display columns.
struct Selection {
    std::vector<Identity> ids;
    std::string key;    // catalog key, or "-"
    std::string klass;  // classification label
    std::string text;   // compact text
};

Selection select_identities(const CommonOpts& o) {
    Selection s;
    if (!o.expr.empty() && !o.keys.empty())
        throw std::invalid_argument("use either --id or --expr, not both");
    if (o.expr.empty() && o.keys.empty())
        throw std::invalid_argument("an identity is required (--id KEY or --expr TEXT)");
    if (!o.expr.empty()) {
        s.ids.push_back(parse_identity(o.expr, parse_grammar(o.grammar)));
        s.key = "-";
    } else {
        for (const std::string& k : o.keys) s.ids.push_back(catalog_get(k).identity);
        s.key = o.keys.size() == 1 ? o.keys[0] : "-";
    }
    if (s.ids.size() == 1) {
        s.klass = std::string(class_label(classify(s.ids[0])));
        s.text = format_identity(s.ids[0], Grammar::Compact);
    } else {
        s.klass = "conjunction";
        for (const Identity& id : s.ids) {
            if (!s.text.empty()) s.text += " && ";
            s.text += format_identity(id, Grammar::Compact);
        }
    }
    return s;
}

void print_report(const ReportRow& row, const std::string& format) {
    if (format == "csv") {
        std::printf("%s\n%s\n", csv_header().c_str(), csv_row(row).c_str());
    } else if (format == "json") {
        std::printf("%s\n", row_json(row).dump(2).c_str());
    } else {
        if (row.key == "-")
            std::printf("identity: %s", row.identity.c_str());
        else
            std::printf("identity: %s  %s", row.key.c_str(), row.identity.c_str());
        std::printf("\nclass:    %s\norder:    %d\nraw:      %llu\n", row.klass.c_str(),
                    row.report.order, (unsigned long long)row.report.raw_count);
        if (row.report.iso_classes)
            std::printf("iso:      %llu\n", (unsigned long long)*row.report.iso_classes);
        if (row.report.iso_anti_classes)
            std::printf("iso-anti: %llu\n", (unsigned long long)*row.report.iso_anti_classes);
        std::printf("engine:   %s\n", std::string(engine_name(row.report.engine)).c_str());
        std::fprintf(stderr, "elapsed: %.3fs, nodes: %llu\n", row.report.elapsed_seconds,
                     (unsigned long long)row.report.nodes_visited);
    }
}

int cmd_count(const CommonOpts& o, int order, const std::string& classes) {
    Selection sel = select_identities(o);
    SearchConfig cfg = make_config(o);
    CountReport report;
    if (classes == "both")
        report = count_with_classes(sel.ids, order, cfg);
    else if (classes == "iso")
        report = count_classes(sel.ids, order, ClassMode::Iso, cfg);
    else if (classes == "anti")
        report = count_classes(sel.ids, order, ClassMode::IsoOrAntiIso, cfg);
    else
        report = count_satisfying(sel.ids, order, cfg);
    print_report(ReportRow{sel.key, sel.klass, sel.text, report}, o.format);
    return 0;
}

struct Check {
    std::string key;
    int order;
    std::string metric;
    long long expected;
    long long computed;
    bool match() const { return expected == computed; }
};

int cmd_verify(const CommonOpts& o, const std::string& scope, int max_order) {
    SearchConfig cfg = make_config(o);
    SearchConfig cross = cfg;
    cross.engine = cfg.engine == Engine::Naive ? Engine::Pruned : Engine::Naive;

    std::vector<Check> checks;
    int engine_disagreements = 0;
    auto run_entry = [&](const CatalogEntry& e) {
        for (const auto& [order, expected] : e.expected) {
            if (order > max_order) continue;
            CountReport r = expected.iso || expected.iso_anti
                                ? count_with_classes(e.identity, order, cfg)
                                : count_satisfying(e.identity, order, cfg);
            checks.push_back(
                {e.key, order, "raw", expected.raw, (long long)r.raw_count});
            if (expected.iso)
                checks.push_back(
                    {e.key, order, "iso", *expected.iso, (long long)*r.iso_classes});
            if (expected.iso_anti)
                checks.push_back({e.key, order, "iso_anti", *expected.iso_anti,
                                  (long long)*r.iso_anti_classes});
            if (order <= 3) {
                CountReport other = count_satisfying(e.identity, order, cross);
                if (other.raw_count != r.raw_count) {
                    ++engine_disagreements;
                    std::fprintf(stderr, "ENGINE DISAGREEMENT %s order %d: %s %llu vs %s %llu\n",
                                 e.key.c_str(), order,
                                 std::string(engine_name(cfg.engine)).c_str(),
                                 (unsigned long long)r.raw_count,
                                 std::string(engine_name(cross.engine)).c_str(),
                                 (unsigned long long)other.raw_count);
                }
            }
        }
    };

    if (scope == "table1" || scope == "all")
        for (const CatalogEntry* e : catalog_list(CatalogFilter::Classical)) run_entry(*e);
    if (scope == "table2" || scope == "all")
        for (const CatalogEntry* e : catalog_list(CatalogFilter::Generalized)) run_entry(*e);

    int mismatches = 0;
    for (const Check& c : checks)
        if (!c.match()) ++mismatches;

    if (o.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const Check& c : checks)
            arr.push_back({{"key", c.key},
                           {"order", c.order},
                           {"metric", c.metric},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"match", c.match()}});
        nlohmann::json out{{"checks", std::move(arr)},
                           {"mismatches", mismatches},
                           {"engine_disagreements", engine_disagreements}};
        std::printf("%s\n", out.dump(2).c_str());
    } else if (o.format == "csv") {
        std::printf("key,order,metric,expected,computed,match\n");
        for (const Check& c : checks)
            std::printf("%s,%d,%s,%lld,%lld,%d\n", c.key.c_str(), c.order, c.metric.c_str(),
                        c.expected, c.computed, int(c.match()));
    } else {
        for (const Check& c : checks)
            if (!c.match())
                std::printf("MISMATCH %-3s order %d %-8s computed %lld, published %lld\n",
                            c.key.c_str(), c.order, c.metric.c_str(), c.computed, c.expected);
        std::printf("%zu checks, %d mismatches, %d engine disagreements\n", checks.size(),
                    mismatches, engine_disagreements);
    }
    return (mismatches > 0 || engine_disagreements > 0) ? 1 : 0;
}

int cmd_parastrophe(const CommonOpts& o) {
    Selection sel = select_identities(o);
    if (sel.ids.size() != 1) throw std::invalid_argument("parastrophe takes a single identity");
    Identity star = parastrophe_identity(sel.ids[0]);
    std::optional<std::string> match;
    if (sel.key != "-") {
        match = parastrophe_partner(sel.key);
        if (!match) match = find_catalog_match(star, catalog_get(sel.key).classical);
    } else {
        match = find_catalog_match(star);
    }
    std::printf("input:       %s\n", sel.text.c_str());
    std::printf("parastrophe: %s\n", format_identity(star, Grammar::Compact).c_str());
    std::printf("catalog key: %s\n", match ? match->c_str() : "none");
    return 0;
}

int cmd_classify(const CommonOpts& o) {
    Selection sel = select_identities(o);
    if (sel.ids.size() != 1) throw std::invalid_argument("classify takes a single identity");
    std::printf("%s\n", std::string(class_label(classify(sel.ids[0]))).c_str());
    return 0;
}

int cmd_classes(const CommonOpts& o, int order, const std::string& mode) {
    SearchConfig cfg = make_config(o);
    ClassMode m = mode == "iso" ? ClassMode::Iso : ClassMode::IsoOrAntiIso;
    std::vector<CayleyTable> reps = class_representatives(order, m, cfg);
    for (const CayleyTable& t : reps) std::printf("%s\n", t.encode().c_str());
    std::fprintf(stderr, "%zu classes of order %d (%s)\n", reps.size(), order,
                 mode == "iso" ? "isomorphism" : "isomorphism or anti-isomorphism");
    return 0;
}

int cmd_catalog(const CommonOpts& o, const std::string& filter_name) {
    CatalogFilter filter = CatalogFilter::All;
    if (filter_name == "classical") filter = CatalogFilter::Classical;
    if (filter_name == "generalized") filter = CatalogFilter::Generalized;
    if (o.format == "json") {
        std::printf("%s\n", catalog_json(filter).dump(2).c_str());
    } else if (o.format == "csv") {
        std::printf("%s", catalog_csv(filter).c_str());
    } else {
        for (const CatalogEntry* e : catalog_list(filter))
            std::printf("%-4s %-22s %s\n", e->key.c_str(), e->display_name.c_str(),
                        format_identity(e->identity, Grammar::Compact).c_str());
    }
    return 0;
}

int cmd_enumerate(const CommonOpts& o, int order) {
    Selection sel = select_identities(o);
    if (sel.ids.size() != 1) throw std::invalid_argument("enumerate takes a single identity");
    SearchConfig cfg = make_config(o);
    bool jsonl = o.format == "jsonl";
    cfg.sink = [jsonl](const CayleyTable& t) {
        if (jsonl)
            std::printf("%s\n", table_json(t).dump().c_str());
        else
            std::printf("%s\n", t.encode().c_str());
    };
    CountReport r = enumerate_satisfying(sel.ids[0], order, cfg);
    std::fprintf(stderr, "%llu tables\n", (unsigned long long)r.raw_count);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite groupoid census for Bol-Moufang type identities"};
    app.require_subcommand(1);

    CommonOpts o;
    int order = 2;
    std::string classes = "none";
    std::string scope = "all";
    int max_order = 3;
    std::string mode = "iso-anti";
    std::string filter_name = "all";

    auto add_selector = [&](CLI::App* cmd) {
        cmd->add_option("--id", o.keys, "catalog key (repeatable; several form a conjunction)");
        cmd->add_option("--expr", o.expr, "identity expression, e.g. \"xy\xC2\xB7zx = (xy\xC2\xB7z)x\"");
        cmd->add_option("--grammar", o.grammar, "expression grammar")
            ->check(CLI::IsMember({"compact", "explicit"}));
    };
    auto add_engine = [&](CLI::App* cmd) {
        cmd->add_option("--jobs,-j", o.jobs, "worker threads (0 = all cores)")
            ->envname("GROUPOIDS_JOBS");
        cmd->add_option("--engine", o.engine, "search engine")
            ->check(CLI::IsMember({"auto", "naive", "pruned"}));
        cmd->add_option("--fill-order", o.fill_order, "pruned engine cell order")
            ->check(CLI::IsMember({"auto", "row-major", "diagonal"}));
        cmd->add_flag("--progress", o.progress, "report nodes/shards on stderr");
    };
    auto add_format = [&](CLI::App* cmd, std::vector<std::string> choices) {
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember(choices));
    };

    CLI::App* count = app.add_subcommand("count", "count satisfying Cayley tables");
    add_selector(count);
    add_engine(count);
    add_format(count, {"text", "json", "csv"});
    count->add_option("--order", order, "groupoid order (1..5)")->required();
    count->add_option("--classes", classes, "also count classes")
        ->check(CLI::IsMember({"none", "iso", "anti", "both"}));
    count->add_flag("--large-classes", o.large_classes,
                    "allow class counting above order 3 (memory heavy)");

    CLI::App* verify = app.add_subcommand("verify", "diff enumeration against published counts");
    add_engine(verify);
    add_format(verify, {"text", "json", "csv"});
    verify->add_option("--scope", scope, "which table to verify")
        ->check(CLI::IsMember({"table1", "table2", "all"}));
    verify->add_option("--max-order", max_order, "largest order to check (2..4)")
        ->check(CLI::Range(2, 4));

    CLI::App* para = app.add_subcommand("parastrophe", "(12)-parastrophe of an identity");
    add_selector(para);

    CLI::App* cls = app.add_subcommand("classify", "Bol-Moufang classification of an identity");
    add_selector(cls);

    CLI::App* classes_cmd = app.add_subcommand("classes", "canonical class representatives");
    add_engine(classes_cmd);
    classes_cmd->add_option("--order", order, "groupoid order (1..4)")->required();
    classes_cmd->add_option("--mode", mode, "symmetry")
        ->check(CLI::IsMember({"iso", "iso-anti"}));
    classes_cmd->add_flag("--large-classes", o.large_classes,
                          "allow class listing above order 3 (slow, memory heavy)");

    CLI::App* cat = app.add_subcommand("catalog", "export the built-in identity catalog");
    add_format(cat, {"text", "json", "csv"});
    cat->add_option("--filter", filter_name, "catalog subset")
        ->check(CLI::IsMember({"all", "classical", "generalized"}));

    CLI::App* enumerate = app.add_subcommand("enumerate", "stream satisfying tables");
    add_selector(enumerate);
    add_engine(enumerate);
    add_format(enumerate, {"lines", "jsonl"});
    enumerate->add_option("--order", order, "groupoid order (1..5)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (count->parsed()) return cmd_count(o, order, classes);
        if (verify->parsed()) return cmd_verify(o, scope, max_order);
        if (para->parsed()) return cmd_parastrophe(o);
        if (cls->parsed()) return cmd_classify(o);
        if (classes_cmd->parsed()) return cmd_classes(o, order, mode);
        if (cat->parsed()) return cmd_catalog(o, filter_name);
        if (enumerate->parsed()) return cmd_enumerate(o, order);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
