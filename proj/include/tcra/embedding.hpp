#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tcra/hits.hpp"

namespace tcra {

class KnowledgeBase;

struct EmbeddingVector {
    std::vector<float> values;

    std::size_t dim() const { return values.size(); }
};

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);
double l2_distance(const EmbeddingVector& a, const EmbeddingVector& b);
double l2_norm(const EmbeddingVector& v);

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

struct EmbeddingProviderSpec {
    enum class Kind { reference_hash, remote_http };
    Kind kind = Kind::reference_hash;
    std::size_t dim = 256;
    // remote_http only
    std::string endpoint; // e.g. http://host:port/v1/embeddings
    std::string model;
    std::string api_key_env; // name of the env var holding the key
    int max_retries = 3;
    int backoff_initial_ms = 100;

    static EmbeddingProviderSpec reference(std::size_t dim = 256);
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbeddingVector embed(const std::string& text) const = 0;
    virtual std::size_t dim() const = 0;
};

// Deterministic reference embedder: hashed character-bigram term frequencies,
// L2-normalized. Identical text always yields an identical vector; any
// non-empty text has norm 1.
class ReferenceHashEmbedder : public EmbeddingProvider {
public:
    explicit ReferenceHashEmbedder(std::size_t dim = 256);
    EmbeddingVector embed(const std::string& text) const override;
    std::size_t dim() const override { return dim_; }

private:
    std::size_t dim_;
};

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const EmbeddingProviderSpec& spec);

// ---------------------------------------------------------------------------
// Flat exact cosine index
// ---------------------------------------------------------------------------

class VectorIndex {
public:
    struct Entry {
        std::string doc_id;
        EmbeddingVector vec;
    };

    VectorIndex() = default;
    VectorIndex(std::vector<Entry> entries, std::size_t dim);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }

    void save(const std::string& path) const;
    static VectorIndex load(const std::string& path);

private:
    std::vector<Entry> entries_; // sorted by doc id
    std::size_t dim_ = 0;
};

// One entry per document, stable order by document id. Provider failures are
// rethrown with the offending doc id attached.
VectorIndex index_build(const KnowledgeBase& kb, const EmbeddingProvider& provider);

// Exhaustive top-min(k, size) by descending cosine, ties broken by ascending
// doc id.
RankedHits index_search(const VectorIndex& idx, const EmbeddingVector& query_vec, std::size_t k);

} // namespace tcra
