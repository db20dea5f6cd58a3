#include "emosent/aggregate.hpp"

#include <algorithm>
#include <stdexcept>

namespace emosent {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Bsa: return "bsa";
        case Strategy::Dpm: return "dpm";
        case Strategy::Majority: return "majority";
        case Strategy::First: return "first";
        case Strategy::Consec: return "consec";
        case Strategy::Repeat: return "repeat";
        case Strategy::Last: return "last";
        case Strategy::All: return "all";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    if (name == "bsa") return Strategy::Bsa;
    if (name == "dpm") return Strategy::Dpm;
    if (name == "majority") return Strategy::Majority;
    if (name == "first") return Strategy::First;
    if (name == "consec") return Strategy::Consec;
    if (name == "repeat") return Strategy::Repeat;
    if (name == "last") return Strategy::Last;
    if (name == "all") return Strategy::All;
    return std::nullopt;
}

void AggregationConfig::validate() const {
    if (!(w_pos > w_neu && w_neu > w_neg)) {
        throw std::invalid_argument("weights must satisfy w_pos > w_neu > w_neg, got (" +
                                    std::to_string(w_pos) + ", " + std::to_string(w_neu) + ", " +
                                    std::to_string(w_neg) + ")");
    }
    if (qualify_min < 1) throw std::invalid_argument("qualify_min must be >= 1");
}

AggregationConfig AggregationConfig::bsa() { return AggregationConfig{}; }

AggregationConfig AggregationConfig::dpm() {
    AggregationConfig cfg;
    cfg.w_pos = 2;
    cfg.w_neu = 1;
    cfg.w_neg = -2;
    cfg.strategy = Strategy::Dpm;
    return cfg;
}

AggregationConfig AggregationConfig::with_strategy(Strategy s) {
    AggregationConfig cfg = (s == Strategy::Dpm) ? dpm() : bsa();
    cfg.strategy = s;
    return cfg;
}

long weighted_sum(const SentimentSequence& seq, const AggregationConfig& cfg) {
    long sum = 0;
    for (const auto& [key, sentiment] : seq.tokens) sum += cfg.weight(sentiment);
    return sum;
}

Sentiment classify_score(long score, long theta) {
    if (score > theta) return Sentiment::Positive;
    if (score < theta) return Sentiment::Negative;
    return Sentiment::Neutral;
}

RunEncoding run_length_encode(const SentimentSequence& seq) {
    RunEncoding enc;
    for (const auto& [key, sentiment] : seq.tokens) {
        if (!enc.runs.empty() && enc.runs.back().key == key) {
            ++enc.runs.back().length;
        } else {
            enc.runs.push_back({key, sentiment, 1});
        }
    }
    return enc;
}

FrequencyTable frequency_table(const SentimentSequence& seq) {
    FrequencyTable table;
    for (const auto& [key, sentiment] : seq.tokens) {
        auto it = std::find_if(table.freqs.begin(), table.freqs.end(),
                               [&](const auto& e) { return e.key == key; });
        if (it != table.freqs.end()) {
            ++it->count;
        } else {
            table.freqs.push_back({key, sentiment, 1});
        }
    }
    return table;
}

namespace {

AggregationOutcome scored(long score, const AggregationConfig& cfg, Strategy strategy) {
    return AggregationOutcome{classify_score(score, cfg.theta), score, strategy};
}

AggregationOutcome no_emoji(Strategy strategy) {
    return AggregationOutcome{std::nullopt, std::nullopt, strategy};
}

long consec_score(const SentimentSequence& seq, const AggregationConfig& cfg) {
    long score = 0;
    bool qualified = false;
    for (const auto& run : run_length_encode(seq).runs) {
        if (run.length >= static_cast<std::size_t>(cfg.qualify_min)) {
            score += cfg.weight(run.sentiment) * static_cast<long>(run.length);
            qualified = true;
        }
    }
    return qualified ? score : weighted_sum(seq, cfg);
}

long repeat_score(const SentimentSequence& seq, const AggregationConfig& cfg) {
    long score = 0;
    bool qualified = false;
    for (const auto& entry : frequency_table(seq).freqs) {
        if (entry.count >= static_cast<std::size_t>(cfg.qualify_min)) {
            score += cfg.weight(entry.sentiment) * static_cast<long>(entry.count);
            qualified = true;
        }
    }
    return qualified ? score : weighted_sum(seq, cfg);
}

}  // namespace

AggregationOutcome bsa(const SentimentSequence& seq) {
    if (seq.empty()) return no_emoji(Strategy::Bsa);
    const auto cfg = AggregationConfig::bsa();
    return scored(weighted_sum(seq, cfg), cfg, Strategy::Bsa);
}

AggregationOutcome dpm(const SentimentSequence& seq) {
    if (seq.empty()) return no_emoji(Strategy::Dpm);
    const auto cfg = AggregationConfig::dpm();
    return scored(weighted_sum(seq, cfg), cfg, Strategy::Dpm);
}

AggregationOutcome majority_vote(const SentimentSequence& seq) {
    if (seq.empty()) return no_emoji(Strategy::Majority);
    long pos = 0, neu = 0, neg = 0;
    for (const auto& [key, sentiment] : seq.tokens) {
        switch (sentiment) {
            case Sentiment::Positive: ++pos; break;
            case Sentiment::Neutral: ++neu; break;
            case Sentiment::Negative: ++neg; break;
        }
    }
    std::optional<Sentiment> label;
    if (pos > std::max(neu, neg)) label = Sentiment::Positive;
    else if (neu > std::max(pos, neg)) label = Sentiment::Neutral;
    else if (neg > std::max(pos, neu)) label = Sentiment::Negative;
    if (!label) {
        // Tie: fall back to the sign of the Bsa score.
        label = classify_score(weighted_sum(seq, AggregationConfig::bsa()), 0);
    }
    return AggregationOutcome{label, std::nullopt, Strategy::Majority};
}

AggregationOutcome first_emoji(const SentimentSequence& seq, const AggregationConfig& cfg) {
    if (seq.empty()) return no_emoji(Strategy::First);
    return scored(cfg.weight(seq.tokens.front().second), cfg, Strategy::First);
}

AggregationOutcome last_emoji(const SentimentSequence& seq, const AggregationConfig& cfg) {
    if (seq.empty()) return no_emoji(Strategy::Last);
    return scored(cfg.weight(seq.tokens.back().second), cfg, Strategy::Last);
}

AggregationOutcome consecutive(const SentimentSequence& seq, const AggregationConfig& cfg) {
    if (seq.empty()) return no_emoji(Strategy::Consec);
    return scored(consec_score(seq, cfg), cfg, Strategy::Consec);
}

AggregationOutcome repeated(const SentimentSequence& seq, const AggregationConfig& cfg) {
    if (seq.empty()) return no_emoji(Strategy::Repeat);
    return scored(repeat_score(seq, cfg), cfg, Strategy::Repeat);
}

AggregationOutcome aggregate_all(const SentimentSequence& seq, const AggregationConfig& cfg) {
    if (seq.empty()) return no_emoji(Strategy::All);
    const long score = cfg.weight(seq.tokens.front().second) + consec_score(seq, cfg) +
                       repeat_score(seq, cfg) + cfg.weight(seq.tokens.back().second);
    return scored(score, cfg, Strategy::All);
}

AggregationOutcome aggregate(const SentimentSequence& seq, const AggregationConfig& cfg) {
    cfg.validate();
    switch (cfg.strategy) {
        case Strategy::Bsa:
            if (seq.empty()) return no_emoji(Strategy::Bsa);
            return scored(weighted_sum(seq, cfg), cfg, Strategy::Bsa);
        case Strategy::Dpm:
            if (seq.empty()) return no_emoji(Strategy::Dpm);
            return scored(weighted_sum(seq, cfg), cfg, Strategy::Dpm);
        case Strategy::Majority: return majority_vote(seq);
        case Strategy::First: return first_emoji(seq, cfg);
        case Strategy::Last: return last_emoji(seq, cfg);
        case Strategy::Consec: return consecutive(seq, cfg);
        case Strategy::Repeat: return repeated(seq, cfg);
        case Strategy::All: return aggregate_all(seq, cfg);
    }
    throw std::logic_error("unhandled strategy");
}

}  // namespace emosent
