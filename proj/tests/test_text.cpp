#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "tcra/error.hpp"
#include "tcra/text.hpp"

using namespace tcra;

namespace {

// Deterministic mixed-script text generator for property tests.
std::string random_text(std::mt19937_64& rng, std::size_t max_words = 12) {
    static const std::vector<std::string> pool = {
        "eat",  "raw",  "fish", "baby", "milk", "safe",  "avoid", "rich",
        "宝",   "喝",   "水",   "鱼",   "孕",   "妇",    "cafe",  "b12",
    };
    const std::size_t n = rng() % (max_words + 1);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.empty()) {
            switch (rng() % 4) {
                case 0: out += ' '; break;
                case 1: out += ", "; break;
                case 2: out += "。"; break;
                default: break; // direct adjacency
            }
        }
        out += pool[rng() % pool.size()];
    }
    return out;
}

} // namespace

TEST_CASE("segment splits whitespace-delimited words") {
    const auto s = segment("eat raw fish");
    CHECK(s.words == std::vector<std::string>{"eat", "raw", "fish"});
    CHECK(s.n() == 3);
}

TEST_CASE("segment treats each CJK codepoint as a word") {
    const auto s = segment("宝宝喝水");
    CHECK(s.words == std::vector<std::string>{"宝", "宝", "喝", "水"});
    CHECK(s.n() == 4);
}

TEST_CASE("segment of empty text is empty") {
    CHECK(segment("").n() == 0);
}

TEST_CASE("segment drops punctuation and splits mixed scripts") {
    const auto s = segment("宝宝不能吃生鱼片。原因是：fish, raw!");
    CHECK(s.words == std::vector<std::string>{"宝", "宝", "不", "能", "吃", "生", "鱼", "片",
                                              "原", "因", "是", "fish", "raw"});
    const auto t = segment("six-month-old baby (6月龄)");
    CHECK(t.words == std::vector<std::string>{"six", "month", "old", "baby", "6", "月", "龄"});
}

TEST_CASE("whitespace segmenter keeps punctuation attached") {
    const auto s = segment("eat raw, fish!", SegmenterKind::whitespace);
    CHECK(s.words == std::vector<std::string>{"eat", "raw,", "fish!"});
}

TEST_CASE("segment is idempotent under the join rule") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 500; ++i) {
        const auto words = segment(random_text(rng)).words;
        const std::string joined = join_words(words);
        CHECK(segment(joined).words == words);
        // and segmenting its own join again is stable
        CHECK(join_words(segment(joined).words) == joined);
    }
}

TEST_CASE("join rule: no space between CJK, single space between non-CJK") {
    CHECK(join_words({"eat", "raw", "fish"}) == "eat raw fish");
    CHECK(join_words({"宝", "宝", "喝", "水"}) == "宝宝喝水");
    CHECK(join_words({"eat", "鱼", "now"}) == "eat鱼now");
}

TEST_CASE("count_tokens word counter equals word count") {
    CHECK(count_tokens("eat raw fish", TokenCounter::words()) == 3);
    CHECK(count_tokens("", TokenCounter::words()) == 0);
}

TEST_CASE("count_tokens chars_per_token uses ceil over codepoints") {
    CHECK(count_tokens("abcdefghij", TokenCounter::chars(4)) == 3);
    CHECK(count_tokens("", TokenCounter::chars(4)) == 0);
    CHECK(count_tokens("宝宝喝水", TokenCounter::chars(2)) == 2);
}

TEST_CASE("token counter config keys") {
    CHECK(TokenCounter::from_string("word").kind == TokenCounter::Kind::word);
    const auto c = TokenCounter::from_string("chars:2.5");
    CHECK(c.kind == TokenCounter::Kind::chars_per_token);
    CHECK(c.chars_per_token == doctest::Approx(2.5));
    CHECK_THROWS_AS(TokenCounter::chars(0), ConfigError);
    CHECK_THROWS_AS(TokenCounter::from_string("chars:-1"), ConfigError);
    CHECK_THROWS_AS(TokenCounter::from_string("bpe"), ConfigError);
}

TEST_CASE("count_tokens is monotone under concatenation") {
    std::mt19937_64 rng(7);
    const TokenCounter word = TokenCounter::words();
    const TokenCounter chars = TokenCounter::chars(3);
    for (int i = 0; i < 300; ++i) {
        const std::string a = random_text(rng, 6);
        const std::string b = random_text(rng, 6);
        for (const auto& counter : {word, chars}) {
            const auto ta = count_tokens(a, counter);
            const auto tb = count_tokens(b, counter);
            CHECK(count_tokens(a + b, counter) >= std::max(ta, tb));
        }
    }
}

TEST_CASE("frequency model: hand-counted probabilities, unsmoothed") {
    const auto m = FrequencyModel::from_texts({"a a b"}, /*smoothing=*/false);
    CHECK(m.probability("a") == doctest::Approx(2.0 / 3.0));
    CHECK(m.probability("b") == doctest::Approx(1.0 / 3.0));
    CHECK(m.total() == 3);
    CHECK(m.vocabulary_size() == 2);
}

TEST_CASE("frequency model: single-word corpus has p=1 unsmoothed") {
    const auto m = FrequencyModel::from_texts({"x"}, false);
    CHECK(m.probability("x") == doctest::Approx(1.0));
    CHECK(word_entropy(m, "x") == 0.0);
}

TEST_CASE("frequency model: unseen word gets the add-one bucket") {
    const auto smoothed = FrequencyModel::from_texts({"a a b"}, true);
    // total=3, V=2 -> unseen mass 1/6
    CHECK(smoothed.probability("zzz") == doctest::Approx(1.0 / 6.0));
    CHECK(smoothed.probability("zzz") > 0.0);
    // the unsmoothed model still keeps unseen queries finite
    const auto mle = FrequencyModel::from_texts({"a a b"}, false);
    CHECK(mle.probability("zzz") == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("frequency model: smoothed probabilities sum to 1 over vocab + unseen bucket") {
    const auto m = FrequencyModel::from_texts({"a a b c c c"}, true);
    double sum = m.probability("unseen-word");
    for (const auto* w : {"a", "b", "c"}) sum += m.probability(w);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frequency model rejects an empty corpus") {
    CHECK_THROWS_AS(FrequencyModel::from_texts({}, true), ValidationError);
    CHECK_THROWS_AS(FrequencyModel::from_texts({"", "  ,  "}, true), ValidationError);
}

TEST_CASE("word entropy: powers of two") {
    const auto m = FrequencyModel::from_texts({"a b c d"}, false);
    CHECK(word_entropy(m, "a") == doctest::Approx(2.0)); // p = 1/4
}

TEST_CASE("word entropy: corpus a a b") {
    const auto m = FrequencyModel::from_texts({"a a b"}, false);
    CHECK(word_entropy(m, "a") == doctest::Approx(0.585).epsilon(1e-3));
    CHECK(word_entropy(m, "b") == doctest::Approx(1.585).epsilon(1e-3));
}

TEST_CASE("word entropy is nonnegative and non-increasing in count") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> corpus;
        for (int i = 0; i < 20; ++i) corpus.push_back(random_text(rng, 8));
        FrequencyModel m;
        try {
            m = FrequencyModel::from_texts(corpus, trial % 2 == 0);
        } catch (const ValidationError&) {
            continue; // all texts empty; regenerate next trial
        }
        std::vector<std::string> vocab;
        for (const auto& t : corpus)
            for (const auto& w : segment(t).words) vocab.push_back(w);
        for (std::size_t i = 0; i + 1 < vocab.size(); i += 2) {
            const auto& w1 = vocab[i];
            const auto& w2 = vocab[i + 1];
            CHECK(word_entropy(m, w1) >= 0.0);
            if (m.count(w1) >= m.count(w2))
                CHECK(word_entropy(m, w1) <= word_entropy(m, w2) + 1e-12);
        }
    }
}

TEST_CASE("sentence entropy: hand values over corpus a a b") {
    const auto m = FrequencyModel::from_texts({"a a b"}, false);
    const auto e = sentence_entropy(m, "a b");
    CHECK(e.mean_bits == doctest::Approx(1.085).epsilon(1e-3));
    CHECK(e.sum_bits == doctest::Approx(2.170).epsilon(1e-3));
}

TEST_CASE("sentence entropy: certainty gives zero") {
    const auto m = FrequencyModel::from_texts({"a a"}, false);
    const auto e = sentence_entropy(m, "a a");
    CHECK(e.mean_bits == 0.0);
    CHECK(e.sum_bits == 0.0);
}

TEST_CASE("sentence entropy errors on empty text") {
    const auto m = FrequencyModel::from_texts({"a a b"}, false);
    CHECK_THROWS_AS(sentence_entropy(m, ""), ValidationError);
    CHECK_THROWS_AS(sentence_entropy(m, " ,。 "), ValidationError);
}

TEST_CASE("sentence entropy: mean times n equals sum exactly") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> corpus;
        for (int i = 0; i < 8; ++i) corpus.push_back(random_text(rng, 10));
        FrequencyModel m;
        try {
            m = FrequencyModel::from_texts(corpus, trial % 2 == 0);
        } catch (const ValidationError&) {
            continue;
        }
        const std::string probe = random_text(rng, 15);
        const auto n = segment(probe).n();
        if (n == 0) continue;
        const auto e = sentence_entropy(m, probe);
        CHECK(e.mean_bits * static_cast<double>(n) == e.sum_bits);
    }
}
