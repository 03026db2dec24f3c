#include "clusterexp/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace clusterexp {

namespace {

inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Open-addressing set over packed window vertices. Deletions are only ever
// the most recently inserted keys in reverse insertion order (the enumeration
// unwinds its path), which keeps linear probing sound: a slot freed this way
// was never part of the probe path of any surviving key.
class LifoSet {
public:
    explicit LifoSet(int log2cap)
        : slots_(size_t(1) << log2cap, kEmpty), mask_((size_t(1) << log2cap) - 1) {}

    bool insert(uint64_t key) {
        size_t i = mix64(key) & mask_;
        while (slots_[i] != kEmpty) {
            if (slots_[i] == key) return false;
            i = (i + 1) & mask_;
        }
        slots_[i] = key;
        ++count_;
        if (count_ * 2 > slots_.size()) throw std::length_error("LifoSet overfull");
        return true;
    }

    void erase_last(uint64_t key) {
        size_t i = mix64(key) & mask_;
        while (slots_[i] != key) i = (i + 1) & mask_;
        slots_[i] = kEmpty;
        --count_;
    }

private:
    static constexpr uint64_t kEmpty = ~0ull;  // not a valid packed vertex
    std::vector<uint64_t> slots_;
    size_t mask_;
    size_t count_ = 0;
};

// Highest used value index per parity minus the number of used values: how
// many values below the maximum are still missing from a parity prefix.
inline int missing_values(uint16_t m) {
    int missing = 0;
    const uint16_t om = m & kOddBits;
    if (om) missing += (31 - __builtin_clz(om) + 1) / 2 - __builtin_popcount(om);
    const uint16_t em = m & kEvenBits;
    missing += (31 - __builtin_clz(em)) / 2 + 1 - __builtin_popcount(em);
    return missing;
}

class Worker {
public:
    Worker(const Window& window, const EnumOptions& opts,
           const std::function<void(const CompressedSet&)>& emit,
           const std::function<void(const std::vector<WindowVertex>&)>& visit_hook)
        : window_(window),
          opts_(opts),
          emit_(emit),
          visit_hook_(visit_hook),
          masks_(window.coords()),
          seen_(16) {
        counters_.emitted_by_size.assign(size_t(opts.j) + 1, 0);
        q_scratch_.resize(size_t(opts.j) + 1);
        fresh_scratch_.resize(size_t(opts.j) + 1);
    }

    EnumCounters& counters() { return counters_; }

    // Installs the root frame: S = {root}, R = {root} u N2(root).
    void init_root(const std::vector<WindowVertex>& root_nbrs) {
        path_.push_back(kWindowRoot);
        masks_.add(kWindowRoot);
        seen_.insert(kWindowRoot);
        for (WindowVertex w : root_nbrs) seen_.insert(w);
    }

    // Runs one depth-1 subtree: S = {root, v}, v = root_nbrs[child].
    void run_child(const std::vector<WindowVertex>& root_nbrs, size_t child) {
        const WindowVertex v = root_nbrs[child];
        if (opts_.j == 2) {
            visit_leaf(v);
            return;
        }
        if (opts_.prune && prune_reject(v, opts_.j - 2)) return;
        auto& fresh = fresh_scratch_[1];
        auto& q = q_scratch_[1];
        push_vertex(v, fresh);
        q.clear();
        std::set_union(root_nbrs.begin() + long(child) + 1, root_nbrs.end(), fresh.begin(),
                       fresh.end(), std::back_inserter(q));
        recurse(q, 1);
        pop_vertex(fresh);
    }

    // Visits the current frame (emission + recursion); Q is the pending list.
    void recurse(const std::vector<WindowVertex>& Q, int depth) {
        ++counters_.calls;
        if (visit_hook_) visit_hook_(path_);
        maybe_emit();
        const int size = int(path_.size());
        if (size >= opts_.j) return;
        const bool leaf_children = size + 1 == opts_.j;
        const int budget = opts_.j - size - 1;
        for (size_t i = 0; i < Q.size(); ++i) {
            const WindowVertex v = Q[i];
            if (leaf_children) {
                visit_leaf(v);
                continue;
            }
            if (opts_.prune && prune_reject(v, budget)) continue;
            auto& fresh = fresh_scratch_[depth + 1];
            auto& q = q_scratch_[depth + 1];
            push_vertex(v, fresh);
            q.clear();
            std::set_union(Q.begin() + long(i) + 1, Q.end(), fresh.begin(), fresh.end(),
                           std::back_inserter(q));
            recurse(q, depth + 1);
            pop_vertex(fresh);
        }
    }

private:
    void visit_leaf(WindowVertex v) {
        ++counters_.calls;
        path_.push_back(v);
        auto snap = masks_.snapshot();
        masks_.add(v);
        if (visit_hook_) visit_hook_(path_);
        maybe_emit();
        masks_.restore(snap);
        path_.pop_back();
    }

    void maybe_emit() {
        CompressedSet set;
        if (!masks_compressed(masks_, &set)) return;
        if (opts_.extra_symmetry) {
            for (int c = 1; c < set.active; ++c) {
                if (set.odd_count[c] + set.even_count[c] >
                    set.odd_count[c - 1] + set.even_count[c - 1]) {
                    return;
                }
            }
        }
        set.j = opts_.j;
        set.vertices = path_;
        std::sort(set.vertices.begin(), set.vertices.end());
        ++counters_.emitted;
        ++counters_.emitted_by_size[path_.size()];
        emit_(set);
    }

    // True when no compressed superset of S u {v} of size <= |S| + 1 + budget
    // can exist: either the active-coordinate prefix has too many gaps, or
    // some coordinate needs more value fill-ins than there are vertices left.
    bool prune_reject(WindowVertex v, int budget) const {
        uint32_t active = 0;
        int worst_missing = 0;
        for (int c = 0; c < window_.coords(); ++c) {
            const uint16_t m = masks_.mask(c) | uint16_t(1u << window_get(v, c));
            if (m & ~1u) active |= 1u << c;
            worst_missing = std::max(worst_missing, missing_values(m));
        }
        if (worst_missing > budget) return true;
        const int amax = active ? 32 - __builtin_clz(active) : 0;
        return amax - __builtin_popcount(active) > 2 * budget;
    }

    void push_vertex(WindowVertex v, std::vector<WindowVertex>& fresh) {
        path_.push_back(v);
        mask_snaps_.push_back(masks_.snapshot());
        masks_.add(v);
        window_.two_step_neighbors(v, nbr_scratch_);
        fresh.clear();
        for (WindowVertex w : nbr_scratch_) {
            if (seen_.insert(w)) fresh.push_back(w);  // stays sorted
        }
    }

    void pop_vertex(const std::vector<WindowVertex>& fresh) {
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) seen_.erase_last(*it);
        masks_.restore(mask_snaps_.back());
        mask_snaps_.pop_back();
        path_.pop_back();
    }

    const Window& window_;
    const EnumOptions& opts_;
    const std::function<void(const CompressedSet&)>& emit_;
    const std::function<void(const std::vector<WindowVertex>&)>& visit_hook_;

    std::vector<WindowVertex> path_;
    CoordMasks masks_;
    std::vector<std::array<uint16_t, kMaxWindowCoords>> mask_snaps_;
    LifoSet seen_;
    std::vector<std::vector<WindowVertex>> q_scratch_;
    std::vector<std::vector<WindowVertex>> fresh_scratch_;
    std::vector<WindowVertex> nbr_scratch_;
    EnumCounters counters_;
};

}  // namespace

void generate_compressed(
    const EnumOptions& opts, const std::function<void(const CompressedSet&)>& emit,
    EnumCounters* counters,
    const std::function<void(const std::vector<WindowVertex>&)>& visit_hook) {
    if (opts.j < 1) throw std::invalid_argument("generate_compressed: j must be >= 1");
    Window window(opts.j);

    std::vector<WindowVertex> root_nbrs;
    window.two_step_neighbors(kWindowRoot, root_nbrs);

    EnumCounters total;
    total.emitted_by_size.assign(size_t(opts.j) + 1, 0);

    const int threads = visit_hook ? 1 : std::max(1, opts.threads);
    std::vector<Worker> workers;
    workers.reserve(size_t(threads));
    for (int i = 0; i < threads; ++i) workers.emplace_back(window, opts, emit, visit_hook);

    // Root frame: S = {root} is always compressed; counted once, on worker 0.
    workers[0].init_root(root_nbrs);
    workers[0].recurse({}, 0);
    for (int i = 1; i < threads; ++i) workers[i].init_root(root_nbrs);

    if (opts.j > 1) {
        if (threads == 1) {
            for (size_t c = 0; c < root_nbrs.size(); ++c) workers[0].run_child(root_nbrs, c);
        } else {
            std::atomic<size_t> next{0};
            auto drain = [&](Worker& w) {
                while (true) {
                    size_t c = next.fetch_add(1);
                    if (c >= root_nbrs.size()) break;
                    w.run_child(root_nbrs, c);
                }
            };
            std::vector<std::thread> pool;
            for (int i = 1; i < threads; ++i) pool.emplace_back(drain, std::ref(workers[i]));
            drain(workers[0]);
            for (auto& th : pool) th.join();
        }
    }

    for (auto& w : workers) {
        total.calls += w.counters().calls;
        total.emitted += w.counters().emitted;
        for (size_t k = 0; k < total.emitted_by_size.size(); ++k) {
            total.emitted_by_size[k] += w.counters().emitted_by_size[k];
        }
    }
    if (counters) *counters = total;
}

}  // namespace clusterexp
