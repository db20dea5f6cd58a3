#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emosent/segmenter.hpp"
#include "emosent/sentiment.hpp"

namespace emosent {

// Multi-representation record for one emoji.
struct EmojiEntry {
    NormalizedKey key;
    std::string icon;         // UTF-8 glyph
    std::string title;        // short name
    std::string description;  // free-text semantic explanation, may be empty
    std::string pixel_ref;    // path to a raster image, may be empty
};

struct LexiconValue {
    Sentiment sentiment;
    std::string source;

    bool operator==(const LexiconValue&) const = default;
};

// Immutable emoji -> sentiment map.
class SentimentLexicon {
public:
    SentimentLexicon() = default;
    explicit SentimentLexicon(std::map<NormalizedKey, LexiconValue> entries,
                              std::string source_description = {})
        : entries_(std::move(entries)), source_description_(std::move(source_description)) {}

    // Parses the line format: hex-codepoints \t icon \t sentiment \t source.
    // Duplicate keys, unknown sentiment words and malformed lines are errors
    // reported with their line number.
    static SentimentLexicon load(const std::filesystem::path& path);

    void write(const std::filesystem::path& path) const;
    std::string serialize() const;

    // Fallback chain: exact key, key with skin-tone modifiers removed, then
    // the base character of the first ZWJ element.
    std::optional<Sentiment> lookup(const NormalizedKey& key) const;
    std::optional<Sentiment> lookup(const EmojiToken& token) const;

    std::optional<Sentiment> exact(const NormalizedKey& key) const;

    std::size_t size() const { return entries_.size(); }
    const std::map<NormalizedKey, LexiconValue>& entries() const { return entries_; }
    const std::string& source_description() const { return source_description_; }

    bool operator==(const SentimentLexicon& other) const { return entries_ == other.entries_; }

private:
    std::map<NormalizedKey, LexiconValue> entries_;
    std::string source_description_;
};

// One row of the ESR v1.0 benchmark table.
struct EsrRecord {
    NormalizedKey key;
    long occurrences = 0;
    double score_negative = 0;
    double score_neutral = 0;
    double score_positive = 0;
};

// Column names of the ESR CSV; positions are resolved from the header row.
struct EsrColumns {
    std::string codepoint = "Unicode codepoint";
    std::string occurrences = "Occurrences";
    std::string negative = "Negative";
    std::string neutral = "Neutral";
    std::string positive = "Positive";
};

// Strict argmax of the three category scores; ties resolve to neutral.
Sentiment esr_argmax(const EsrRecord& record);

std::vector<EsrRecord> read_esr_csv(const std::filesystem::path& path,
                                    const EsrColumns& columns = {});

// Maps each ESR emoji to its predominant category.
SentimentLexicon import_esr(const std::filesystem::path& path, const EsrColumns& columns = {});

// Per-representation coverage counters for a built dataset.
struct CompletenessSummary {
    std::size_t total = 0;
    std::size_t with_title = 0;
    std::size_t with_description = 0;
    std::size_t with_pixel = 0;

    std::string report() const;
};

struct RepresentationDataset {
    std::vector<EmojiEntry> entries;
    CompletenessSummary completeness;
};

// Builds one EmojiEntry per unique normalized key of the unicode data file.
// descriptions_path: optional TSV of hex-codepoints \t description.
// pixels_dir: optional directory of <hex-codepoints joined by '-'>.png files.
RepresentationDataset build_representation_dataset(
    const std::filesystem::path& unicode_path,
    const std::filesystem::path& descriptions_path = {},
    const std::filesystem::path& pixels_dir = {});

}  // namespace emosent
