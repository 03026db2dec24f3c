#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "clusterexp/window.hpp"

namespace clusterexp {

struct EnumOptions {
    int j = 1;
    bool prune = true;
    // Additionally require |O_i| + |E_i| non-increasing in i (count
    // comparison only; embedding counts under this convention are not
    // implemented).
    bool extra_symmetry = false;
    int threads = 1;
};

struct EnumCounters {
    uint64_t calls = 0;              // recursive calls == distinct sets visited
    uint64_t emitted = 0;
    std::vector<uint64_t> emitted_by_size;  // index by |S|, 0..j
};

// Streams every compressed 2-linked set of size <= j in the window graph
// exactly once, rooted at the all-zeros vertex. The callback may be invoked
// from worker threads when threads > 1; aggregate results must not depend on
// emission order. visit_hook, when set, sees every visited set (test use;
// forces single-threaded traversal).
void generate_compressed(
    const EnumOptions& opts, const std::function<void(const CompressedSet&)>& emit,
    EnumCounters* counters = nullptr,
    const std::function<void(const std::vector<WindowVertex>&)>& visit_hook = nullptr);

}  // namespace clusterexp
