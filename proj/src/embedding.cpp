#include "tcra/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "http_util.hpp"
#include "tcra/corpus.hpp"
#include "tcra/error.hpp"

namespace tcra {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(const char* data, std::size_t len, std::uint64_t h = kFnvOffset) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= kFnvPrime;
    }
    return h;
}

// Byte offsets of each codepoint start plus the end sentinel.
std::vector<std::size_t> codepoint_starts(const std::string& s) {
    std::vector<std::size_t> starts;
    std::size_t i = 0;
    while (i < s.size()) {
        starts.push_back(i);
        const auto b = static_cast<unsigned char>(s[i]);
        std::size_t len = 1;
        if ((b & 0xE0) == 0xC0) len = 2;
        else if ((b & 0xF0) == 0xE0) len = 3;
        else if ((b & 0xF8) == 0xF0) len = 4;
        i = std::min(i + len, s.size());
    }
    starts.push_back(s.size());
    return starts;
}

} // namespace

double l2_norm(const EmbeddingVector& v) {
    double s = 0.0;
    for (const float x : v.values) s += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(s);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim())
        throw ValidationError("cosine: dimension mismatch (" + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()) + ")");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        dot += static_cast<double>(a.values[i]) * static_cast<double>(b.values[i]);
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0) throw ValidationError("cosine undefined for a zero vector");
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

double l2_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim())
        throw ValidationError("l2_distance: dimension mismatch (" + std::to_string(a.dim()) +
                              " vs " + std::to_string(b.dim()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = static_cast<double>(a.values[i]) - static_cast<double>(b.values[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

EmbeddingProviderSpec EmbeddingProviderSpec::reference(std::size_t dim) {
    EmbeddingProviderSpec s;
    s.kind = Kind::reference_hash;
    s.dim = dim;
    return s;
}

ReferenceHashEmbedder::ReferenceHashEmbedder(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ConfigError("embedding dimension must be positive");
}

EmbeddingVector ReferenceHashEmbedder::embed(const std::string& text) const {
    EmbeddingVector v;
    v.values.assign(dim_, 0.0f);
    const auto starts = codepoint_starts(text);
    const std::size_t n_cp = starts.size() - 1;
    if (n_cp == 0) return v; // empty text: zero vector
    if (n_cp == 1) {
        const std::uint64_t h = fnv1a(text.data(), text.size());
        v.values[h % dim_] += 1.0f;
    } else {
        for (std::size_t c = 0; c + 1 < n_cp; ++c) {
            const std::size_t from = starts[c];
            const std::size_t to = starts[c + 2];
            const std::uint64_t h = fnv1a(text.data() + from, to - from);
            v.values[h % dim_] += 1.0f;
        }
    }
    const double norm = l2_norm(v);
    if (norm > 0.0)
        for (auto& x : v.values) x = static_cast<float>(static_cast<double>(x) / norm);
    return v;
}

namespace {

class RemoteHttpEmbedder : public EmbeddingProvider {
public:
    explicit RemoteHttpEmbedder(EmbeddingProviderSpec spec) : spec_(std::move(spec)) {
        if (spec_.endpoint.empty()) throw ConfigError("remote embedding provider needs an endpoint");
        if (spec_.dim == 0) throw ConfigError("embedding dimension must be positive");
    }

    EmbeddingVector embed(const std::string& text) const override {
        nlohmann::json body;
        body["model"] = spec_.model;
        body["input"] = nlohmann::json::array({text});
        http::PostOptions opts;
        opts.api_key_env = spec_.api_key_env;
        opts.max_retries = spec_.max_retries;
        opts.backoff_initial_ms = spec_.backoff_initial_ms;
        const auto resp = http::post_json(spec_.endpoint, body, opts);
        if (resp.status != 200) http::raise(resp, "embedding request");
        const auto j = http::parse_body(resp, "embedding request");
        const nlohmann::json* arr = nullptr;
        if (j.contains("data") && j["data"].is_array() && !j["data"].empty() &&
            j["data"][0].contains("embedding"))
            arr = &j["data"][0]["embedding"];
        else if (j.contains("embedding"))
            arr = &j["embedding"];
        else if (j.contains("embeddings") && j["embeddings"].is_array() && !j["embeddings"].empty())
            arr = &j["embeddings"][0];
        else if (j.is_array())
            arr = &j;
        if (arr == nullptr || !arr->is_array())
            throw ProviderError("embedding request: no float array in response", false,
                                resp.status);
        EmbeddingVector v;
        v.values.reserve(arr->size());
        for (const auto& x : *arr) {
            if (!x.is_number())
                throw ProviderError("embedding request: non-numeric vector element", false,
                                    resp.status);
            v.values.push_back(x.get<float>());
        }
        if (v.dim() != spec_.dim)
            throw ProviderError("embedding request: provider returned dim " +
                                    std::to_string(v.dim()) + ", configured dim " +
                                    std::to_string(spec_.dim),
                                false, resp.status);
        return v;
    }

    std::size_t dim() const override { return spec_.dim; }

private:
    EmbeddingProviderSpec spec_;
};

} // namespace

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const EmbeddingProviderSpec& spec) {
    switch (spec.kind) {
        case EmbeddingProviderSpec::Kind::reference_hash:
            return std::make_unique<ReferenceHashEmbedder>(spec.dim);
        case EmbeddingProviderSpec::Kind::remote_http:
            return std::make_unique<RemoteHttpEmbedder>(spec);
    }
    throw ConfigError("unknown embedding provider kind");
}

VectorIndex::VectorIndex(std::vector<Entry> entries, std::size_t dim)
    : entries_(std::move(entries)), dim_(dim) {
    for (const auto& e : entries_) {
        if (e.vec.dim() != dim_)
            throw ValidationError("vector index: entry '" + e.doc_id + "' has dim " +
                                  std::to_string(e.vec.dim()) + ", index dim " +
                                  std::to_string(dim_));
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.doc_id < b.doc_id; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i - 1].doc_id == entries_[i].doc_id)
            throw ValidationError("vector index: duplicate doc id '" + entries_[i].doc_id + "'");
}

VectorIndex index_build(const KnowledgeBase& kb, const EmbeddingProvider& provider) {
    if (kb.size() == 0) throw ValidationError("cannot index an empty knowledge base");
    std::vector<VectorIndex::Entry> entries;
    entries.reserve(kb.size());
    for (const auto& doc : kb.documents()) {
        try {
            entries.push_back({doc.id, provider.embed(doc.text)});
        } catch (const ProviderError& e) {
            throw ProviderError("embedding doc '" + doc.id + "': " + e.what(), e.retryable,
                                e.http_status);
        }
    }
    return VectorIndex(std::move(entries), provider.dim());
}

RankedHits index_search(const VectorIndex& idx, const EmbeddingVector& query_vec,
                        std::size_t k) {
    if (k == 0) throw ValidationError("index_search: k must be >= 1");
    if (query_vec.dim() != idx.dim())
        throw ValidationError("index_search: query dim " + std::to_string(query_vec.dim()) +
                              " does not match index dim " + std::to_string(idx.dim()));
    RankedHits out;
    out.method = "dense";
    out.hits.reserve(idx.size());
    for (const auto& e : idx.entries())
        out.hits.push_back({e.doc_id, cosine(query_vec, e.vec)});
    std::sort(out.hits.begin(), out.hits.end(), [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (out.hits.size() > k) out.hits.resize(k);
    return out;
}

// ---------------------------------------------------------------------------
// Persistence: "VIDX" magic, u32 version, u32 dim, u64 count, then per record
// u32 id length, id bytes, dim little-endian f32 values.
// ---------------------------------------------------------------------------

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, float f) {
    std::uint32_t bits;
    static_assert(sizeof(bits) == sizeof(f));
    std::memcpy(&bits, &f, sizeof(bits));
    put_u32(out, bits);
}

struct Reader {
    const std::string& data;
    std::size_t pos = 0;

    void need(std::size_t n, const char* what) const {
        if (pos + n > data.size())
            throw ValidationError(std::string("vector index file truncated reading ") + what);
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    float f32(const char* what) {
        const std::uint32_t bits = u32(what);
        float f;
        std::memcpy(&f, &bits, sizeof(f));
        return f;
    }
    std::string bytes(std::size_t n, const char* what) {
        need(n, what);
        std::string s = data.substr(pos, n);
        pos += n;
        return s;
    }
};

constexpr char kMagic[4] = {'V', 'I', 'D', 'X'};
constexpr std::uint32_t kVersion = 1;

} // namespace

void VectorIndex::save(const std::string& path) const {
    std::string buf;
    buf.append(kMagic, sizeof(kMagic));
    put_u32(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(dim_));
    put_u64(buf, static_cast<std::uint64_t>(entries_.size()));
    for (const auto& e : entries_) {
        put_u32(buf, static_cast<std::uint32_t>(e.doc_id.size()));
        buf += e.doc_id;
        for (const float f : e.vec.values) put_f32(buf, f);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("failed writing " + path);
}

VectorIndex VectorIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Reader r{data};
    const std::string magic = r.bytes(4, "magic");
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw ValidationError(path + " is not a vector index file (bad magic)");
    const std::uint32_t version = r.u32("version");
    if (version != kVersion)
        throw ValidationError("unsupported vector index version " + std::to_string(version));
    const std::uint32_t dim = r.u32("dim");
    const std::uint64_t count = r.u64("count");
    std::vector<Entry> entries;
    entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t id_len = r.u32("id length");
        Entry e;
        e.doc_id = r.bytes(id_len, "doc id");
        e.vec.values.reserve(dim);
        for (std::uint32_t d = 0; d < dim; ++d) e.vec.values.push_back(r.f32("vector value"));
        entries.push_back(std::move(e));
    }
    if (r.pos != data.size())
        throw ValidationError(path + ": trailing bytes after last record");
    return VectorIndex(std::move(entries), dim);
}

} // namespace tcra
