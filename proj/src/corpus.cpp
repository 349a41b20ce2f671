#include "tcra/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tcra/error.hpp"

namespace tcra {

using nlohmann::json;

namespace {

// Accumulates per-line problems so the loader can report them all at once.
class LineErrors {
public:
    void add(std::size_t line, const std::string& what) {
        std::ostringstream os;
        os << "line " << line << ": " << what;
        messages_.push_back(os.str());
    }
    bool empty() const { return messages_.empty(); }
    [[noreturn]] void raise(const std::string& path) const {
        std::ostringstream os;
        os << path << ": " << messages_.size() << " invalid record(s)";
        for (const auto& m : messages_) os << "\n  " << m;
        throw ValidationError(os.str());
    }

private:
    std::vector<std::string> messages_;
};

std::string require_string(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw ValidationError(std::string("missing or non-string field '") + field + "'");
    return j.at(field).get<std::string>();
}

template <typename Fn>
void for_each_jsonl_line(const std::string& path, LineErrors& errors, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            errors.add(lineno, std::string("malformed JSON: ") + e.what());
            continue;
        }
        try {
            fn(lineno, j);
        } catch (const ValidationError& e) {
            errors.add(lineno, e.what());
        }
    }
}

} // namespace

const char* to_string(StageGroup g) {
    switch (g) {
        case StageGroup::pre_pregnancy: return "pre_pregnancy";
        case StageGroup::pregnancy: return "pregnancy";
        case StageGroup::postpartum: return "postpartum";
        case StageGroup::lactation: return "lactation";
        case StageGroup::infant: return "infant";
    }
    return "pre_pregnancy";
}

StageGroup stage_group_from_string(const std::string& s) {
    if (s == "pre_pregnancy") return StageGroup::pre_pregnancy;
    if (s == "pregnancy") return StageGroup::pregnancy;
    if (s == "postpartum") return StageGroup::postpartum;
    if (s == "lactation") return StageGroup::lactation;
    if (s == "infant") return StageGroup::infant;
    throw ValidationError("unknown group '" + s + "'");
}

KnowledgeBase::KnowledgeBase(std::vector<Document> docs, SegmenterKind seg)
    : docs_(std::move(docs)) {
    std::vector<std::size_t> counts;
    counts.reserve(docs_.size());
    for (std::size_t i = 0; i < docs_.size(); ++i) {
        by_id_.emplace(docs_[i].id, i);
        counts.push_back(segment(docs_[i].text, seg).n());
    }
    stats_ = word_count_stats(counts);
}

const Document* KnowledgeBase::find(const std::string& id) const {
    const auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &docs_[it->second];
}

KnowledgeBase load_knowledge(const std::string& path, SegmenterKind seg) {
    std::vector<Document> docs;
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    LineErrors errors;
    for_each_jsonl_line(path, errors, [&](std::size_t lineno, const json& j) {
        Document d;
        d.id = require_string(j, "id");
        d.text = require_string(j, "text");
        d.food = require_string(j, "food");
        d.group = stage_group_from_string(require_string(j, "group"));
        if (d.text.empty()) throw ValidationError("empty text for id '" + d.id + "'");
        const auto [it, inserted] = first_line_of_id.emplace(d.id, lineno);
        if (!inserted) {
            std::ostringstream os;
            os << "duplicate id '" << d.id << "' (first seen on line " << it->second << ")";
            throw ValidationError(os.str());
        }
        docs.push_back(std::move(d));
    });
    if (!errors.empty()) errors.raise(path);
    return KnowledgeBase(std::move(docs), seg);
}

void save_knowledge(const KnowledgeBase& kb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& d : kb.documents()) {
        json j;
        j["id"] = d.id;
        j["text"] = d.text;
        j["food"] = d.food;
        j["group"] = to_string(d.group);
        out << j.dump() << '\n';
    }
}

std::vector<QaItem> load_qa(const std::string& path) {
    std::vector<QaItem> items;
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    LineErrors errors;
    for_each_jsonl_line(path, errors, [&](std::size_t lineno, const json& j) {
        QaItem q;
        q.id = require_string(j, "id");
        q.question = require_string(j, "question");
        if (!j.contains("options") || !j.at("options").is_array())
            throw ValidationError("missing or non-array field 'options'");
        for (const auto& opt : j.at("options")) {
            if (!opt.is_string()) throw ValidationError("non-string option");
            q.options.push_back(opt.get<std::string>());
        }
        if (q.options.size() != 3) {
            std::ostringstream os;
            os << "expected exactly 3 options, got " << q.options.size();
            throw ValidationError(os.str());
        }
        if (!j.contains("answer") || !j.at("answer").is_number_integer())
            throw ValidationError("missing or non-integer field 'answer'");
        q.answer = j.at("answer").get<int>();
        if (q.answer < 1 || q.answer > 3) {
            std::ostringstream os;
            os << "answer " << q.answer << " outside {1,2,3}";
            throw ValidationError(os.str());
        }
        q.food = require_string(j, "food");
        q.group = stage_group_from_string(require_string(j, "group"));
        const auto [it, inserted] = first_line_of_id.emplace(q.id, lineno);
        if (!inserted) {
            std::ostringstream os;
            os << "duplicate id '" << q.id << "' (first seen on line " << it->second << ")";
            throw ValidationError(os.str());
        }
        items.push_back(std::move(q));
    });
    if (!errors.empty()) errors.raise(path);
    return items;
}

void save_qa(const std::vector<QaItem>& items, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& q : items) {
        json j;
        j["id"] = q.id;
        j["question"] = q.question;
        j["options"] = q.options;
        j["answer"] = q.answer;
        j["food"] = q.food;
        j["group"] = to_string(q.group);
        out << j.dump() << '\n';
    }
}

WordCountStats word_count_stats(const std::vector<std::size_t>& counts) {
    WordCountStats s;
    s.count = counts.size();
    if (counts.empty()) return s;
    s.max = counts.front();
    s.min = counts.front();
    double sum = 0.0;
    for (const auto c : counts) {
        sum += static_cast<double>(c);
        s.max = std::max(s.max, c);
        s.min = std::min(s.min, c);
    }
    s.mean = sum / static_cast<double>(counts.size());
    double sq = 0.0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - s.mean;
        sq += d * d;
    }
    s.std_dev = std::sqrt(sq / static_cast<double>(counts.size()));
    return s;
}

WordCountStats knowledge_stats(const KnowledgeBase& kb) { return kb.stats(); }

} // namespace tcra
