#include "tcra/text.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcra/corpus.hpp"
#include "tcra/error.hpp"

namespace tcra {
namespace {

// Decodes the UTF-8 codepoint starting at `i`, advancing `i` past it.
// Invalid sequences decode byte-by-byte to the replacement value 0xFFFD.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        if ((byte(i + k) & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    i += len;
    return cp;
}

bool is_cjk(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF)     // CJK unified ideographs
        || (cp >= 0x3400 && cp <= 0x4DBF)     // extension A
        || (cp >= 0x20000 && cp <= 0x2EBEF)   // extensions B..F
        || (cp >= 0xF900 && cp <= 0xFAFF)     // compatibility ideographs
        || (cp >= 0x3040 && cp <= 0x30FF)     // hiragana, katakana
        || (cp >= 0xAC00 && cp <= 0xD7AF)     // hangul syllables
        || (cp >= 0x1100 && cp <= 0x11FF);    // hangul jamo
}

bool is_separator(char32_t cp) {
    if (cp < 0x80) {
        const bool alnum = (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
                           (cp >= 'a' && cp <= 'z');
        return !alnum;
    }
    if (cp == 0x00A0 || cp == 0x00B7 || cp == 0x00D7 || cp == 0x00F7 || cp == 0xFEFF)
        return true;
    if (cp >= 0x00A1 && cp <= 0x00BF) return true;  // Latin-1 punctuation and symbols
    if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return true;  // CJK symbols and punctuation
    if (cp >= 0xFE10 && cp <= 0xFE4F) return true;  // vertical/compat punctuation forms
    // Fullwidth punctuation; fullwidth letters and digits stay word characters.
    if ((cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
        (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65))
        return true;
    return false;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// True when the word is a single CJK codepoint (produced by the cjk_char rule).
bool is_cjk_word(const std::string& word) {
    std::size_t i = 0;
    const char32_t cp = decode_utf8(word, i);
    return i == word.size() && is_cjk(cp);
}

std::vector<std::string> segment_cjk_char(const std::string& text) {
    std::vector<std::string> words;
    std::string run;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode_utf8(text, i);
        if (is_separator(cp) || cp == 0xFFFD) {
            if (!run.empty()) {
                words.push_back(std::move(run));
                run.clear();
            }
        } else if (is_cjk(cp)) {
            if (!run.empty()) {
                words.push_back(std::move(run));
                run.clear();
            }
            std::string w;
            append_utf8(w, cp);
            words.push_back(std::move(w));
        } else {
            append_utf8(run, cp);
        }
    }
    if (!run.empty()) words.push_back(std::move(run));
    return words;
}

std::vector<std::string> segment_whitespace(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

} // namespace

SegmenterKind segmenter_from_string(const std::string& key) {
    if (key == "cjk-char" || key == "cjk_char") return SegmenterKind::cjk_char;
    if (key == "whitespace") return SegmenterKind::whitespace;
    throw ConfigError("unknown segmenter '" + key + "' (expected cjk-char or whitespace)");
}

SegmentedText segment(const std::string& text, SegmenterKind kind) {
    SegmentedText out;
    out.original = text;
    out.words = kind == SegmenterKind::cjk_char ? segment_cjk_char(text)
                                                : segment_whitespace(text);
    return out;
}

std::string join_words(const std::vector<std::string>& words, SegmenterKind kind) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) {
            const bool no_space = kind == SegmenterKind::cjk_char &&
                                  (is_cjk_word(words[i - 1]) || is_cjk_word(words[i]));
            if (!no_space) out.push_back(' ');
        }
        out += words[i];
    }
    return out;
}

std::size_t codepoint_count(const std::string& text) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        decode_utf8(text, i);
        ++n;
    }
    return n;
}

TokenCounter TokenCounter::words(SegmenterKind seg) {
    TokenCounter c;
    c.kind = Kind::word;
    c.segmenter = seg;
    return c;
}

TokenCounter TokenCounter::chars(double r) {
    if (r <= 0.0) throw ConfigError("chars_per_token ratio must be > 0");
    TokenCounter c;
    c.kind = Kind::chars_per_token;
    c.chars_per_token = r;
    return c;
}

TokenCounter TokenCounter::from_string(const std::string& key) {
    if (key == "word") return words();
    if (key.rfind("chars:", 0) == 0) {
        const std::string arg = key.substr(6);
        try {
            std::size_t pos = 0;
            const double r = std::stod(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
            return chars(r);
        } catch (const std::logic_error&) {
            throw ConfigError("bad chars_per_token ratio '" + arg + "'");
        }
    }
    throw ConfigError("unknown token counter '" + key + "' (expected word or chars:<r>)");
}

std::size_t count_tokens(const std::string& text, const TokenCounter& counter) {
    if (counter.kind == TokenCounter::Kind::word)
        return segment(text, counter.segmenter).n();
    if (counter.chars_per_token <= 0.0) throw ConfigError("chars_per_token ratio must be > 0");
    const double chars = static_cast<double>(codepoint_count(text));
    return static_cast<std::size_t>(std::ceil(chars / counter.chars_per_token));
}

FrequencyModel FrequencyModel::from_texts(const std::vector<std::string>& texts,
                                          bool smoothing, SegmenterKind seg) {
    FrequencyModel m;
    m.smoothing_ = smoothing;
    m.segmenter_ = seg;
    for (const auto& text : texts) {
        for (auto& w : segment(text, seg).words) {
            ++m.counts_[std::move(w)];
            ++m.total_;
        }
    }
    if (m.total_ == 0)
        throw ValidationError("frequency model needs a non-empty corpus (no probability mass)");
    return m;
}

double FrequencyModel::probability(const std::string& word) const {
    const auto it = counts_.find(word);
    const double denom_smoothed =
        static_cast<double>(total_) + static_cast<double>(counts_.size()) + 1.0;
    if (it == counts_.end()) return 1.0 / denom_smoothed;
    if (smoothing_) return (static_cast<double>(it->second) + 1.0) / denom_smoothed;
    return static_cast<double>(it->second) / static_cast<double>(total_);
}

std::uint64_t FrequencyModel::count(const std::string& word) const {
    const auto it = counts_.find(word);
    return it == counts_.end() ? 0 : it->second;
}

FrequencyModel build_frequency_model(const KnowledgeBase& kb, bool smoothing,
                                     SegmenterKind seg) {
    if (kb.size() == 0)
        throw ValidationError("frequency model needs a non-empty knowledge base");
    std::vector<std::string> texts;
    texts.reserve(kb.size());
    for (const auto& doc : kb.documents()) texts.push_back(doc.text);
    return FrequencyModel::from_texts(texts, smoothing, seg);
}

double word_entropy(const FrequencyModel& model, const std::string& word) {
    return -std::log2(model.probability(word));
}

SentenceEntropy sentence_entropy(const FrequencyModel& model, const std::string& text) {
    const auto seg = segment(text, model.segmenter());
    if (seg.n() == 0)
        throw ValidationError("sentence entropy undefined for a text with no words");
    double sum = 0.0;
    for (const auto& w : seg.words) sum += word_entropy(model, w);
    const double n = static_cast<double>(seg.n());
    const double mean = sum / n;
    return {mean, mean * n};
}

} // namespace tcra
