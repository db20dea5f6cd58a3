#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emosent/segmenter.hpp"
#include "emosent/sentiment.hpp"

namespace emosent {

enum class Strategy { Bsa, Dpm, Majority, First, Consec, Repeat, Last, All };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

// Weight triple, threshold and strategy selector. Weights and the threshold
// are integers on purpose: the neutral case is an exact equality against
// theta.
struct AggregationConfig {
    int w_pos = 1;
    int w_neu = 0;
    int w_neg = -1;
    int theta = 0;
    Strategy strategy = Strategy::Bsa;
    // Minimum run length (Consec) / frequency (Repeat) for a pattern to
    // count; 1 recovers the literal formulas, which collapse to Bsa.
    int qualify_min = 2;

    // Throws std::invalid_argument unless w_pos > w_neu > w_neg.
    void validate() const;

    static AggregationConfig bsa();
    static AggregationConfig dpm();
    static AggregationConfig with_strategy(Strategy s);

    int weight(Sentiment s) const {
        switch (s) {
            case Sentiment::Positive: return w_pos;
            case Sentiment::Neutral: return w_neu;
            case Sentiment::Negative: return w_neg;
        }
        return 0;
    }
};

// The (emoji, sentiment) pairs of one text, in token order. Emojis that
// resolved to no sentiment are dropped and counted.
struct SentimentSequence {
    std::vector<std::pair<NormalizedKey, Sentiment>> tokens;
    std::size_t unknown_count = 0;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
};

// Maximal runs of identical emoji keys.
struct RunEncoding {
    struct Run {
        NormalizedKey key;
        Sentiment sentiment;
        std::size_t length;
    };
    std::vector<Run> runs;
};

// Per-emoji occurrence counts.
struct FrequencyTable {
    struct Entry {
        NormalizedKey key;
        Sentiment sentiment;
        std::size_t count;
    };
    std::vector<Entry> freqs;  // in first-appearance order
};

// NoEmoji is label == nullopt; score is absent for Majority.
struct AggregationOutcome {
    std::optional<Sentiment> label;
    std::optional<long> score;
    Strategy strategy = Strategy::Bsa;

    bool no_emoji() const { return !label.has_value(); }
};

long weighted_sum(const SentimentSequence& seq, const AggregationConfig& cfg);
Sentiment classify_score(long score, long theta);

RunEncoding run_length_encode(const SentimentSequence& seq);
FrequencyTable frequency_table(const SentimentSequence& seq);

AggregationOutcome bsa(const SentimentSequence& seq);
AggregationOutcome dpm(const SentimentSequence& seq);
AggregationOutcome majority_vote(const SentimentSequence& seq);
AggregationOutcome first_emoji(const SentimentSequence& seq, const AggregationConfig& cfg);
AggregationOutcome last_emoji(const SentimentSequence& seq, const AggregationConfig& cfg);
AggregationOutcome consecutive(const SentimentSequence& seq, const AggregationConfig& cfg);
AggregationOutcome repeated(const SentimentSequence& seq, const AggregationConfig& cfg);
AggregationOutcome aggregate_all(const SentimentSequence& seq, const AggregationConfig& cfg);

// Dispatches on cfg.strategy.
AggregationOutcome aggregate(const SentimentSequence& seq, const AggregationConfig& cfg);

}  // namespace emosent
