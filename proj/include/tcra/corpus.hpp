#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcra/text.hpp"

namespace tcra {

// The five life stages a recommendation applies to.
enum class StageGroup { pre_pregnancy, pregnancy, postpartum, lactation, infant };

const char* to_string(StageGroup g);
StageGroup stage_group_from_string(const std::string& s);

// One entry of the knowledge store.
struct Document {
    std::string id;
    std::string text;
    std::string food;
    StageGroup group = StageGroup::pre_pregnancy;
};

// One multiple-choice QA item: exactly 3 options, answer in {1,2,3}.
struct QaItem {
    std::string id;
    std::string question;
    std::vector<std::string> options;
    int answer = 0;
    std::string food;
    StageGroup group = StageGroup::pre_pregnancy;
};

// Population statistics (std with denominator N) over per-document word counts.
struct WordCountStats {
    std::size_t count = 0;
    double mean = 0.0;
    std::size_t max = 0;
    std::size_t min = 0;
    double std_dev = 0.0;
};

// Immutable after load; safe for concurrent reads.
class KnowledgeBase {
public:
    KnowledgeBase() = default;
    explicit KnowledgeBase(std::vector<Document> docs,
                           SegmenterKind seg = SegmenterKind::cjk_char);

    const std::vector<Document>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    const WordCountStats& stats() const { return stats_; }
    const Document* find(const std::string& id) const;

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, std::size_t> by_id_;
    WordCountStats stats_;
};

// JSON-Lines loaders. Malformed or invariant-violating records raise a
// ValidationError that reports every offending line, not just the first.
KnowledgeBase load_knowledge(const std::string& path,
                             SegmenterKind seg = SegmenterKind::cjk_char);
void save_knowledge(const KnowledgeBase& kb, const std::string& path);

std::vector<QaItem> load_qa(const std::string& path);
void save_qa(const std::vector<QaItem>& items, const std::string& path);

WordCountStats knowledge_stats(const KnowledgeBase& kb);
WordCountStats word_count_stats(const std::vector<std::size_t>& counts);

} // namespace tcra
