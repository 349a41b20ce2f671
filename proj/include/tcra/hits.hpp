#pragma once

#include <string>
#include <vector>

namespace tcra {

struct ScoredHit {
    std::string doc_id;
    double score = 0.0;
};

// Scored retrieval output: scores non-increasing, doc ids unique.
struct RankedHits {
    std::vector<ScoredHit> hits;
    std::string method;

    std::size_t size() const { return hits.size(); }
    bool empty() const { return hits.empty(); }
};

} // namespace tcra
