#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "groupoids/table.hpp"

namespace groupoids {

enum class Engine { Naive, Pruned };
enum class FillOrder { Auto, RowMajor, DiagonalFirst };

struct SearchConfig {
    Engine engine = Engine::Pruned;
    /// Worker threads; 1 runs on the calling thread, 0 uses the hardware
    /// concurrency. Counts are identical for every worker count.
    int jobs = 1;
    FillOrder fill_order = FillOrder::Auto;
    /// Called once per satisfying complete table. With a single worker the
    /// tables arrive in ascending encode() order; with several workers the
    /// multiset is the same but the order is not specified.
    std::function<void(const CayleyTable&)> sink;
    /// Class counting materialises one canonical form per solution; above
    /// order 3 this must be opted into explicitly.
    bool allow_large_classes = false;
    /// Side channel: nodes visited so far, shards finished, shards total.
    std::function<void(std::uint64_t, int, int)> progress;
};

struct CountReport {
    std::string identity;  // catalog key when available, else compact text
    int order = 0;
    std::uint64_t raw_count = 0;
    std::optional<std::uint64_t> iso_classes;
    std::optional<std::uint64_t> iso_anti_classes;
    Engine engine = Engine::Pruned;
    double elapsed_seconds = 0.0;
    std::uint64_t nodes_visited = 0;  // pruned engine only
};

namespace detail {

// ---- canonical-form keys -------------------------------------------------
//
// Class counting packs each canonical table into a 32-bit key (2 bits per
// cell, row-major), which is why it is limited to order <= 4.

struct PermTables {
    // raw images and inverses for every permutation of 1..n
    std::vector<std::array<std::uint8_t, 5>> perm, inv;

    explicit PermTables(int n) {
        for (const Permutation& p : all_permutations(n)) {
            std::array<std::uint8_t, 5> im{}, iv{};
            for (int i = 0; i < n; ++i) {
                im[std::size_t(i)] = p.raw(i);
                iv[std::size_t(p.raw(i))] = static_cast<std::uint8_t>(i);
            }
            perm.push_back(im);
            inv.push_back(iv);
        }
    }
};

inline std::uint32_t pack_cells(const std::uint8_t* cells, int n) {
    std::uint32_t key = 0;
    for (int i = 0; i < n * n; ++i) key = (key << 2) | cells[i];
    return key;
}

// Minimum packed key over the isomorphism orbit and over the full
// iso-or-anti-iso orbit of a complete table.
inline void orbit_min_keys(const CayleyTable& t, const PermTables& pt, std::uint32_t& iso_key,
                           std::uint32_t& both_key) {
    const int n = t.order();
    iso_key = both_key = 0xFFFFFFFFu;
    for (std::size_t k = 0; k < pt.perm.size(); ++k) {
        const auto& p = pt.perm[k];
        const auto& v = pt.inv[k];
        std::uint32_t ki = 0, ka = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                ki = (ki << 2) | v[t.raw_cell(p[std::size_t(x)] * n + p[std::size_t(y)])];
                ka = (ka << 2) | v[t.raw_cell(p[std::size_t(y)] * n + p[std::size_t(x)])];
            }
        iso_key = std::min(iso_key, ki);
        both_key = std::min({both_key, ki, ka});
    }
}

inline CayleyTable unpack_cells(std::uint32_t key, int n) {
    CayleyTable t(n);
    for (int i = n * n - 1; i >= 0; --i) {
        t.set_raw(i, static_cast<std::uint8_t>(key & 3u));
        key >>= 2;
    }
    return t;
}

// ---- shared per-search state ---------------------------------------------

struct Request {
    bool want_iso = false;
    bool want_anti = false;
};

struct WorkerResult {
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;
    std::unordered_set<std::uint32_t> iso_keys, both_keys;
};

struct SolutionHooks {
    const Request* req = nullptr;
    const PermTables* perms = nullptr;
    const std::function<void(const CayleyTable&)>* sink = nullptr;
    std::mutex* sink_mutex = nullptr;

    void on_solution(const CayleyTable& t, WorkerResult& r) const {
        ++r.count;
        if (req->want_iso || req->want_anti) {
            std::uint32_t ki, ka;
            orbit_min_keys(t, *perms, ki, ka);
            if (req->want_iso) r.iso_keys.insert(ki);
            if (req->want_anti) r.both_keys.insert(ka);
        }
        if (*sink) {
            std::lock_guard<std::mutex> lock(*sink_mutex);
            (*sink)(t);
        }
    }
};

inline std::vector<int> fill_order_cells(int n, std::span<const CompiledIdentity> ids,
                                         FillOrder mode) {
    if (mode == FillOrder::Auto) {
        bool square = false;
        for (const CompiledIdentity& c : ids) square = square || c.has_square;
        mode = square ? FillOrder::DiagonalFirst : FillOrder::RowMajor;
    }
    std::vector<int> order;
    order.reserve(std::size_t(n * n));
    if (mode == FillOrder::DiagonalFirst)
        for (int i = 0; i < n; ++i) order.push_back(i * n + i);
    for (int i = 0; i < n * n; ++i)
        if (mode == FillOrder::RowMajor || i / n != i % n) order.push_back(i);
    return order;
}

// ---- pruned engine ---------------------------------------------------------
//
// Backtracking over table cells. Every ground instance of every identity
// (one per assignment of elements to its variables) is watched on the first
// unfilled cell its evaluation needs. Filling a cell re-evaluates exactly
// the instances watching it: a finished instance with unequal sides cuts
// the branch, and an instance blocked only at its root product forces that
// cell's value immediately. Watch moves and fills are trailed for undo.

class PrunedWorker {
public:
    PrunedWorker(std::span<const CompiledIdentity> ids, int order, std::vector<int> fill_order,
                 SolutionHooks hooks)
        : n_(order),
          ncells_(order * order),
          t_(order),
          order_(std::move(fill_order)),
          watch_(std::size_t(ncells_)),
          hooks_(hooks) {
        for (const CompiledIdentity& cid : ids) {
            const int v = int(cid.vars.size());
            std::array<std::uint8_t, 3> slots{0, 0, 0};
            for (;;) {
                insts_.push_back(Inst{&cid, slots});
                int i = 0;
                while (i < v && ++slots[std::size_t(i)] == n_) slots[std::size_t(i++)] = 0;
                if (i == v) break;
            }
        }
    }

    /// Installs watches and applies root-level forced cells. False when the
    /// identities are unsatisfiable before any choice is made.
    bool init() {
        std::vector<std::pair<int, std::uint8_t>> forced;
        for (int i = 0; i < int(insts_.size()); ++i) {
            const Inst& inst = insts_[std::size_t(i)];
            Side l = eval_side(inst.cid->lhs, inst.slots.data());
            Side r = eval_side(inst.cid->rhs, inst.slots.data());
            if (l.known && r.known) {
                if (l.value != r.value) return false;  // e.g. x = y
                continue;                              // never constrains anything
            }
            int cell = l.known ? r.cell : l.cell;
            watch_[std::size_t(cell)].push_back(i);
            if (l.known && r.at_root) forced.emplace_back(r.cell, l.value);
            if (r.known && l.at_root) forced.emplace_back(l.cell, r.value);
        }
        for (auto [cell, v] : forced)
            if (!assign(cell, v)) return false;
        return true;
    }

    /// Explores every completion of the current partial table, assuming
    /// positions before `pos` in the fill order are already filled.
    void run(int pos, WorkerResult& out) {
        result_ = &out;
        dfs(pos);
        out.nodes = nodes_;
        result_ = nullptr;
    }

    // Shard prefix handling: returns false when this shard is empty. Call
    // marks() first and undo_to() afterwards.
    bool assign(int cell, std::uint8_t v) {
        if (t_.raw_cell(cell) != CayleyTable::unfilled) return t_.raw_cell(cell) == v;
        return fill(cell, v);
    }

    int cell_at(int pos) const { return order_[std::size_t(pos)]; }

    std::pair<std::size_t, std::size_t> marks() const {
        return {fill_trail_.size(), move_trail_.size()};
    }

    void undo_to(std::pair<std::size_t, std::size_t> m) {
        while (move_trail_.size() > m.second) {
            Move mv = move_trail_.back();
            move_trail_.pop_back();
            auto& to = watch_[std::size_t(mv.to)];
            for (std::size_t i = 0; i < to.size(); ++i)
                if (to[i] == mv.inst) {
                    to[i] = to.back();
                    to.pop_back();
                    break;
                }
            watch_[std::size_t(mv.from)].push_back(mv.inst);
        }
        while (fill_trail_.size() > m.first) {
            t_.set_raw(fill_trail_.back(), CayleyTable::unfilled);
            fill_trail_.pop_back();
        }
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    struct Inst {
        const CompiledIdentity* cid;
        std::array<std::uint8_t, 3> slots;  // 0-based element per variable slot
    };
    struct Move {
        int inst;
        int from, to;
    };
    struct Side {
        bool known;
        std::uint8_t value;  // when known
        int cell;            // first unfilled cell needed, when not known
        bool at_root;        // that cell is the final (root) product
    };

    Side eval_side(const CompiledTerm& ct, const std::uint8_t* slots) const {
        std::uint8_t stack[33];
        stack[0] = 0;
        int sp = 0;
        const std::size_t len = ct.code.size();
        for (std::size_t i = 0; i < len; ++i) {
            std::int8_t op = ct.code[i];
            if (op >= 0) {
                stack[sp++] = slots[op];
            } else {
                --sp;
                int cell = stack[sp - 1] * n_ + stack[sp];
                std::uint8_t v = t_.raw_cell(cell);
                if (v == CayleyTable::unfilled) return Side{false, 0, cell, i + 1 == len};
                stack[sp - 1] = v;
            }
        }
        return Side{true, stack[0], -1, false};
    }

    enum class Check { Sat, Conflict, Blocked };

    Check recheck(int inst_ix, int& blocked_cell) {
        const Inst& inst = insts_[std::size_t(inst_ix)];
        Side l = eval_side(inst.cid->lhs, inst.slots.data());
        Side r = eval_side(inst.cid->rhs, inst.slots.data());
        if (l.known && r.known) return l.value == r.value ? Check::Sat : Check::Conflict;
        if (l.known && r.at_root) return fill(r.cell, l.value) ? Check::Sat : Check::Conflict;
        if (r.known && l.at_root) return fill(l.cell, r.value) ? Check::Sat : Check::Conflict;
        blocked_cell = l.known ? r.cell : l.cell;
        return Check::Blocked;
    }

    bool fill(int cell, std::uint8_t v) {
        t_.set_raw(cell, v);
        fill_trail_.push_back(cell);
        auto& wl = watch_[std::size_t(cell)];
        for (std::size_t i = 0; i < wl.size();) {
            int inst = wl[i];
            int moved_to = -1;
            Check c = recheck(inst, moved_to);
            if (c == Check::Conflict) return false;
            if (c == Check::Blocked) {
                move_trail_.push_back(Move{inst, cell, moved_to});
                wl[i] = wl.back();
                wl.pop_back();
                watch_[std::size_t(moved_to)].push_back(inst);
                continue;  // a satisfied instance stays put until backtracking
            }
            ++i;
        }
        return true;
    }

    void dfs(int pos) {
        while (pos < ncells_ && t_.raw_cell(order_[std::size_t(pos)]) != CayleyTable::unfilled)
            ++pos;
        if (pos == ncells_) {
            hooks_.on_solution(t_, *result_);
            return;
        }
        const int cell = order_[std::size_t(pos)];
        for (std::uint8_t v = 0; v < n_; ++v) {
            ++nodes_;
            auto m = marks();
            if (fill(cell, v)) dfs(pos + 1);
            undo_to(m);
        }
    }

    int n_, ncells_;
    CayleyTable t_;
    std::vector<int> order_;
    std::vector<Inst> insts_;
    std::vector<std::vector<int>> watch_;
    std::vector<int> fill_trail_;
    std::vector<Move> move_trail_;
    std::uint64_t nodes_ = 0;
    SolutionHooks hooks_;
    WorkerResult* result_ = nullptr;
};

// ---- naive engine ----------------------------------------------------------

// Odometer scan of all n^(n²) complete tables in ascending encode() order
// (within a shard), checking each identity directly. The cross-validation
// oracle for the pruned engine; practical through order 3.
inline void naive_scan(std::span<const CompiledIdentity> ids, int n, std::span<const int> prefix,
                       const SolutionHooks& hooks, WorkerResult& out) {
    const int ncells = n * n;
    CayleyTable t(n);
    for (int i = 0; i < int(prefix.size()); ++i)
        t.set_raw(i, static_cast<std::uint8_t>(prefix[std::size_t(i)]));
    for (int i = int(prefix.size()); i < ncells; ++i) t.set_raw(i, 0);
    const int first_free = int(prefix.size());
    for (;;) {
        bool ok = true;
        for (const CompiledIdentity& cid : ids)
            if (!satisfies(t, cid)) {
                ok = false;
                break;
            }
        if (ok) hooks.on_solution(t, out);
        int i = ncells - 1;
        while (i >= first_free && t.raw_cell(i) == n - 1) t.set_raw(i--, 0);
        if (i < first_free) return;
        t.set_raw(i, static_cast<std::uint8_t>(t.raw_cell(i) + 1));
    }
}

// ---- dispatch --------------------------------------------------------------

inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

inline int shard_depth(int n, int ncells, int jobs) {
    if (jobs <= 1) return 0;
    int k = 0;
    long shards = 1;
    while (shards < long(jobs) * 8 && k < ncells && shards * n <= 65536) {
        shards *= n;
        ++k;
    }
    return k;
}

inline WorkerResult run_search(std::span<const Identity> ids, int order, const SearchConfig& cfg,
                               Request req, bool force_row_major = false) {
    if (order < 1 || order > CayleyTable::max_order)
        throw std::out_of_range("order must be 1..5");
    if ((req.want_iso || req.want_anti) && order > 4)
        throw std::out_of_range("class counting supports orders 1..4");
    if ((req.want_iso || req.want_anti) && order > 3 && !cfg.allow_large_classes)
        throw std::invalid_argument(
            "class counting above order 3 materialises large canonical-form sets "
            "and must be enabled explicitly");

    std::vector<CompiledIdentity> compiled;
    compiled.reserve(ids.size());
    for (const Identity& id : ids) compiled.push_back(compile(id));

    const int jobs = resolve_jobs(cfg.jobs);
    const int ncells = order * order;
    FillOrder fo = force_row_major ? FillOrder::RowMajor : cfg.fill_order;
    std::vector<int> cell_order = fill_order_cells(order, compiled, fo);

    PermTables perms((req.want_iso || req.want_anti) ? order : 1);
    std::mutex sink_mutex;
    SolutionHooks hooks{&req, &perms, &cfg.sink, &sink_mutex};

    const int depth = shard_depth(order, ncells, jobs);
    long total_shards = 1;
    for (int i = 0; i < depth; ++i) total_shards *= order;

    std::atomic<long> next_shard{0};
    std::atomic<int> shards_done{0};
    std::atomic<std::uint64_t> nodes_global{0};
    std::mutex progress_mutex;
    auto report_progress = [&] {
        if (!cfg.progress) return;
        std::lock_guard<std::mutex> lock(progress_mutex);
        cfg.progress(nodes_global.load(), shards_done.load(), int(total_shards));
    };

    auto worker = [&](WorkerResult& result) {
        if (cfg.engine == Engine::Naive) {
            std::vector<int> prefix(static_cast<std::size_t>(depth));
            for (long s = next_shard.fetch_add(1); s < total_shards; s = next_shard.fetch_add(1)) {
                long rem = s;
                for (int i = depth - 1; i >= 0; --i) {
                    prefix[std::size_t(i)] = int(rem % order);
                    rem /= order;
                }
                naive_scan(compiled, order, prefix, hooks, result);
                shards_done.fetch_add(1);
                report_progress();
            }
            return;
        }
        PrunedWorker pw(compiled, order, cell_order, hooks);
        if (!pw.init()) return;
        if (depth == 0) {
            pw.run(0, result);
            nodes_global.fetch_add(result.nodes);
            report_progress();
            return;
        }
        std::uint64_t reported = 0;
        for (long s = next_shard.fetch_add(1); s < total_shards; s = next_shard.fetch_add(1)) {
            auto m = pw.marks();
            long rem = s;
            bool alive = true;
            for (int i = depth - 1; i >= 0 && alive; --i) {
                alive = pw.assign(pw.cell_at(i), static_cast<std::uint8_t>(rem % order));
                rem /= order;
            }
            if (alive) pw.run(depth, result);
            pw.undo_to(m);
            shards_done.fetch_add(1);
            nodes_global.fetch_add(pw.nodes() - reported);
            reported = pw.nodes();
            report_progress();
        }
        result.nodes = pw.nodes();
    };

    std::vector<WorkerResult> results(static_cast<std::size_t>(jobs));
    if (jobs == 1) {
        worker(results[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(std::size_t(jobs));
        for (int i = 0; i < jobs; ++i) threads.emplace_back(worker, std::ref(results[std::size_t(i)]));
        for (std::thread& th : threads) th.join();
    }

    WorkerResult merged;
    for (WorkerResult& r : results) {
        merged.count += r.count;
        merged.nodes += r.nodes;
        merged.iso_keys.merge(r.iso_keys);
        merged.both_keys.merge(r.both_keys);
    }
    report_progress();
    return merged;
}

inline std::string describe(std::span<const Identity> ids) {
    std::string out;
    for (const Identity& id : ids) {
        if (!out.empty()) out += " && ";
        out += id.name.empty() ? format_identity(id, Grammar::Compact) : id.name;
    }
    return out;
}

}  // namespace detail

/// Number of complete order-n tables in which every identity of `ids`
/// holds. Deterministic for any engine, fill order and worker count.
inline CountReport count_satisfying(std::span<const Identity> ids, int order,
                                    const SearchConfig& cfg = {}) {
    auto start = std::chrono::steady_clock::now();
    detail::WorkerResult r = detail::run_search(ids, order, cfg, detail::Request{});
    CountReport report;
    report.identity = detail::describe(ids);
    report.order = order;
    report.raw_count = r.count;
    report.engine = cfg.engine;
    report.nodes_visited = r.nodes;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline CountReport count_satisfying(const Identity& id, int order, const SearchConfig& cfg = {}) {
    return count_satisfying(std::span<const Identity>(&id, 1), order, cfg);
}

/// Streams every satisfying table through cfg.sink exactly once. With one
/// worker the stream is in ascending encode() order (the fill order is
/// pinned to row-major to guarantee it); with several workers only the
/// multiset is fixed.
inline CountReport enumerate_satisfying(const Identity& id, int order, const SearchConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    bool pin_order = detail::resolve_jobs(cfg.jobs) == 1;
    detail::WorkerResult r =
        detail::run_search(std::span<const Identity>(&id, 1), order, cfg, detail::Request{}, pin_order);
    CountReport report;
    report.identity = detail::describe(std::span<const Identity>(&id, 1));
    report.order = order;
    report.raw_count = r.count;
    report.engine = cfg.engine;
    report.nodes_visited = r.nodes;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Raw count plus the number of classes of satisfying tables, up to
/// isomorphism or up to isomorphism-or-anti-isomorphism. Orders 1..4.
inline CountReport count_classes(std::span<const Identity> ids, int order, ClassMode mode,
                                 const SearchConfig& cfg = {}) {
    auto start = std::chrono::steady_clock::now();
    detail::Request req;
    req.want_iso = mode == ClassMode::Iso;
    req.want_anti = mode == ClassMode::IsoOrAntiIso;
    detail::WorkerResult r = detail::run_search(ids, order, cfg, req);
    CountReport report;
    report.identity = detail::describe(ids);
    report.order = order;
    report.raw_count = r.count;
    if (req.want_iso) report.iso_classes = r.iso_keys.size();
    if (req.want_anti) report.iso_anti_classes = r.both_keys.size();
    report.engine = cfg.engine;
    report.nodes_visited = r.nodes;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline CountReport count_classes(const Identity& id, int order, ClassMode mode,
                                 const SearchConfig& cfg = {}) {
    return count_classes(std::span<const Identity>(&id, 1), order, mode, cfg);
}

/// Raw count and both class counts in one enumeration pass.
inline CountReport count_with_classes(std::span<const Identity> ids, int order,
                                      const SearchConfig& cfg = {}) {
    auto start = std::chrono::steady_clock::now();
    detail::Request req{true, true};
    detail::WorkerResult r = detail::run_search(ids, order, cfg, req);
    CountReport report;
    report.identity = detail::describe(ids);
    report.order = order;
    report.raw_count = r.count;
    report.iso_classes = r.iso_keys.size();
    report.iso_anti_classes = r.both_keys.size();
    report.engine = cfg.engine;
    report.nodes_visited = r.nodes;
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline CountReport count_with_classes(const Identity& id, int order, const SearchConfig& cfg = {}) {
    return count_with_classes(std::span<const Identity>(&id, 1), order, cfg);
}

/// Canonical representatives of all order-n tables under the chosen
/// symmetry, in ascending encode() order. For order 2 and mode
/// IsoOrAntiIso this is the published list of 7 tables.
inline std::vector<CayleyTable> class_representatives(int order, ClassMode mode,
                                                      const SearchConfig& cfg = {}) {
    Identity trivial = parse_identity("x = x", Grammar::Compact);
    detail::Request req;
    req.want_iso = mode == ClassMode::Iso;
    req.want_anti = mode == ClassMode::IsoOrAntiIso;
    detail::WorkerResult r =
        detail::run_search(std::span<const Identity>(&trivial, 1), order, cfg, req);
    const auto& keys = mode == ClassMode::Iso ? r.iso_keys : r.both_keys;
    std::vector<std::uint32_t> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CayleyTable> out;
    out.reserve(sorted.size());
    for (std::uint32_t k : sorted) out.push_back(detail::unpack_cells(k, order));
    return out;
}

}  // namespace groupoids
