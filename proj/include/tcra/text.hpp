#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace tcra {

class KnowledgeBase;

// ---------------------------------------------------------------------------
// Word segmentation
// ---------------------------------------------------------------------------

enum class SegmenterKind {
    cjk_char,   // runs of non-CJK letters/digits form one word; each CJK codepoint is its own word
    whitespace, // split on whitespace runs only
};

SegmenterKind segmenter_from_string(const std::string& key);

// A text together with its ordered word segments.
struct SegmentedText {
    std::string original;
    std::vector<std::string> words;

    std::size_t n() const { return words.size(); }
};

SegmentedText segment(const std::string& text, SegmenterKind kind = SegmenterKind::cjk_char);

// Re-joins words under the segmenter's join rule: no separator between two
// adjacent CJK single-codepoint words, a single space otherwise. Re-segmenting
// the result reproduces `words`.
std::string join_words(const std::vector<std::string>& words,
                       SegmenterKind kind = SegmenterKind::cjk_char);

// Unicode codepoint count of a UTF-8 string (invalid bytes count as one each).
std::size_t codepoint_count(const std::string& text);

// ---------------------------------------------------------------------------
// Token counting (pricing approximation)
// ---------------------------------------------------------------------------

struct TokenCounter {
    enum class Kind { word, chars_per_token };
    Kind kind = Kind::word;
    double chars_per_token = 2.0; // only for Kind::chars_per_token
    SegmenterKind segmenter = SegmenterKind::cjk_char;

    static TokenCounter words(SegmenterKind seg = SegmenterKind::cjk_char);
    static TokenCounter chars(double r);
    // Parses the config key `word` or `chars:<r>`.
    static TokenCounter from_string(const std::string& key);
};

std::size_t count_tokens(const std::string& text, const TokenCounter& counter);

// ---------------------------------------------------------------------------
// Word-frequency entropy model
// ---------------------------------------------------------------------------

// Unigram frequency model over a corpus. With `smoothing` the model is the
// add-one distribution over the vocabulary plus a single unseen bucket:
//   p(seen w)  = (count(w) + 1) / (total + V + 1)
//   p(unseen)  = 1 / (total + V + 1)
// which sums to exactly 1. Without it, seen words get the maximum-likelihood
// count/total and unseen queries still fall back to the unseen-bucket mass so
// entropies stay finite.
class FrequencyModel {
public:
    static FrequencyModel from_texts(const std::vector<std::string>& texts,
                                     bool smoothing = true,
                                     SegmenterKind seg = SegmenterKind::cjk_char);

    double probability(const std::string& word) const;
    std::uint64_t count(const std::string& word) const;
    std::uint64_t total() const { return total_; }
    std::size_t vocabulary_size() const { return counts_.size(); }
    bool smoothing() const { return smoothing_; }
    SegmenterKind segmenter() const { return segmenter_; }

private:
    std::unordered_map<std::string, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    bool smoothing_ = true;
    SegmenterKind segmenter_ = SegmenterKind::cjk_char;
};

FrequencyModel build_frequency_model(const KnowledgeBase& kb,
                                     bool smoothing = true,
                                     SegmenterKind seg = SegmenterKind::cjk_char);

// Information content of a word in bits: -log2 p(word).
double word_entropy(const FrequencyModel& model, const std::string& word);

struct SentenceEntropy {
    double mean_bits;
    double sum_bits; // mean * n exactly (see sentence_entropy)
};

// Mean and sum of per-word entropies in segmentation order. The sum is
// returned as mean * n so the pair satisfies the identity exactly; it is
// within one ulp of the directly accumulated sum. Errors on empty texts.
SentenceEntropy sentence_entropy(const FrequencyModel& model, const std::string& text);

} // namespace tcra
