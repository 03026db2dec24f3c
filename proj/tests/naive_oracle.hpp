#pragma once

// Generate-and-filter reference enumeration for small window parameters:
// grows every 2-linked set containing the root by two-step extensions with
// set-level deduplication. Exponential space; fine for j <= 3 and used in
// streamed form for j = 4 by the slow suite.

#include <algorithm>
#include <set>
#include <vector>

#include "clusterexp/window.hpp"

namespace clusterexp::testing {

using Layer = std::set<std::vector<WindowVertex>>;

inline std::vector<Layer> naive_two_linked_layers(int j) {
    Window window(j);
    std::vector<Layer> layers(size_t(j) + 1);
    layers[1] = {{kWindowRoot}};
    std::vector<WindowVertex> nbrs;
    for (int k = 1; k < j; ++k) {
        for (const auto& set : layers[size_t(k)]) {
            for (WindowVertex member : set) {
                window.two_step_neighbors(member, nbrs);
                for (WindowVertex v : nbrs) {
                    if (std::find(set.begin(), set.end(), v) != set.end()) continue;
                    auto bigger = set;
                    bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), v), v);
                    layers[size_t(k) + 1].insert(bigger);
                }
            }
        }
    }
    return layers;
}

inline Layer naive_compressed_sets(int j) {
    Window window(j);
    Layer out;
    for (const auto& layer : naive_two_linked_layers(j)) {
        for (const auto& set : layer) {
            CoordMasks masks(window.coords());
            for (WindowVertex v : set) masks.add(v);
            if (masks_compressed(masks)) out.insert(set);
        }
    }
    return out;
}

}  // namespace clusterexp::testing
