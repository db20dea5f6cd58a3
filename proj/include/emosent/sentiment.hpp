#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace emosent {

enum class Sentiment { Positive, Neutral, Negative };

constexpr const char* to_string(Sentiment s) {
    switch (s) {
        case Sentiment::Positive: return "positive";
        case Sentiment::Neutral: return "neutral";
        case Sentiment::Negative: return "negative";
    }
    return "?";
}

// Exact lowercase word match; anything else is rejected.
std::optional<Sentiment> sentiment_from_word(std::string_view word);

}  // namespace emosent
