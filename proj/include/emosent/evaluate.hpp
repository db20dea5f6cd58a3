#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emosent/aggregate.hpp"
#include "emosent/annotate.hpp"
#include "emosent/lexicon.hpp"
#include "emosent/segmenter.hpp"

namespace emosent {

struct LabeledText {
    std::string id;
    std::string text;
    std::string language;
    std::string country;
    std::optional<Sentiment> ground_truth;
    std::optional<std::string> translated_text;
    std::optional<Sentiment> translated_truth;
};

struct DatasetLoadResult {
    std::vector<LabeledText> rows;
    std::vector<std::string> errors;  // per-row parse failures, row skipped
};

// One JSON object per line: id, text, lang, country, truth,
// optional translated_text / translated_truth.
DatasetLoadResult read_dataset(const std::filesystem::path& path);

// Class order: positive, neutral, negative. Rows are truth, columns are
// predictions.
class ConfusionMatrix {
public:
    void add(Sentiment truth, Sentiment predicted) {
        ++counts_[index(truth)][index(predicted)];
    }

    long at(Sentiment truth, Sentiment predicted) const {
        return counts_[index(truth)][index(predicted)];
    }

    long total() const;
    long trace() const;

    // Throws std::domain_error when the matrix is empty.
    double accuracy() const;

    // 3x3 CSV block with a header row and column.
    std::string to_csv() const;

    static int index(Sentiment s) {
        switch (s) {
            case Sentiment::Positive: return 0;
            case Sentiment::Neutral: return 1;
            case Sentiment::Negative: return 2;
        }
        return 0;
    }
    static Sentiment class_at(int i) {
        static constexpr Sentiment k[3] = {Sentiment::Positive, Sentiment::Neutral,
                                           Sentiment::Negative};
        return k[i];
    }

    bool operator==(const ConfusionMatrix&) const = default;

private:
    long counts_[3][3] = {};
};

// Throws std::invalid_argument on length mismatch.
ConfusionMatrix confusion(const std::vector<Sentiment>& predicted,
                          const std::vector<Sentiment>& truth);

// F1 = 2TP / (2TP + FP + FN) per class; nullopt when the class never occurs
// in either predictions or truth.
std::array<std::optional<double>, 3> f1_per_class(const ConfusionMatrix& matrix);

struct GroupStats {
    long rows = 0;
    long correct = 0;
    double accuracy() const { return rows ? static_cast<double>(correct) / rows : 0.0; }
};

struct Bucket {
    std::size_t lo = 0;                 // inclusive emoji count
    std::optional<std::size_t> hi;      // inclusive; nullopt = open-ended
    long rows = 0;
    long correct = 0;
    std::string label() const;
};

// Default bucket lower edges: [1], [2-3], [4-5], [6+].
std::vector<Bucket> make_buckets(const std::vector<std::size_t>& edges = {1, 2, 4, 6});

struct EvaluationReport {
    ConfusionMatrix matrix;
    double accuracy = 0.0;        // micro: trace / evaluated rows
    double macro_accuracy = 0.0;  // unweighted mean of per-country accuracies
    std::array<std::optional<double>, 3> f1{};
    std::map<std::string, GroupStats> per_language;
    std::map<std::string, GroupStats> per_country;
    std::vector<Bucket> buckets;
    long evaluated = 0;
    long excluded_no_emoji = 0;
    long excluded_missing_truth = 0;
    long row_errors = 0;
    Strategy strategy = Strategy::Bsa;
    AggregationConfig config;
    bool used_translated = false;

    // Structured-text document; fractions fixed to 4 decimals.
    std::string to_text() const;
    // Flat CSV of per-group accuracies.
    std::string groups_csv() const;
};

struct EvaluateOptions {
    // Score against translated_text / translated_truth instead of the
    // original fields.
    bool use_translated = false;
    std::vector<std::size_t> bucket_edges = {1, 2, 4, 6};
};

EvaluationReport evaluate_strategy(const std::vector<LabeledText>& dataset,
                                   const Segmenter& segmenter, const SentimentLexicon& lexicon,
                                   const AggregationConfig& cfg,
                                   const EvaluateOptions& options = {});

// Segments and resolves one text into a sentiment sequence.
SentimentSequence resolve_sequence(const Segmenter& segmenter, const SentimentLexicon& lexicon,
                                   std::string_view text);

struct ComboComparison {
    RepresentationCombo combo{1};
    bool present = false;  // any annotation carried this combo
    long matches = 0;
};

struct RepresentationComparison {
    std::vector<ComboComparison> rows;  // all 15 combos, table row order
    long population = 0;                // annotated keys found in the reference
    bool population_mismatch = false;   // annotated and reference keys disjoint

    std::string to_csv() const;
};

// Per-combo count of emojis whose annotated label agrees with the reference
// lexicon, over the intersection of annotated and reference keys.
RepresentationComparison compare_representations(const std::vector<AnnotationRecord>& annotations,
                                                 const SentimentLexicon& reference);

std::string format_fraction(double value);  // fixed, 4 decimals

}  // namespace emosent
