#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "emosent/lexicon.hpp"
#include "emosent/sentiment.hpp"

namespace emosent {

enum class Representation : unsigned { Icon = 1, Title = 2, Description = 4, Pixel = 8 };

// A non-empty subset of the four emoji representations. Exactly 15 exist.
class RepresentationCombo {
public:
    explicit RepresentationCombo(unsigned mask);

    bool has(Representation r) const { return mask_ & static_cast<unsigned>(r); }
    unsigned mask() const { return mask_; }

    // Display name in the benchmark table's spelling, e.g.
    // "Pixel & Icon & Description".
    std::string name() const;

    // Parses names like "icon", "pixel+icon+description" (case-insensitive,
    // '+' or '&' separated).
    static RepresentationCombo parse(std::string_view text);

    // All 15 combos, in the benchmark table's row order.
    static const std::vector<RepresentationCombo>& all();

    bool operator==(const RepresentationCombo&) const = default;

private:
    unsigned mask_;
};

struct PromptPayload {
    std::string text;
    std::optional<std::string> image;  // raw raster bytes
    std::string image_mime = "image/png";
    std::string model_id;
    std::string cache_key;  // digest of (model_id, text, image bytes)
};

struct AnnotationRecord {
    NormalizedKey key;
    RepresentationCombo combo{1};
    Sentiment label = Sentiment::Neutral;
    std::string raw_reply;
    std::string model_id;
    bool cached = false;
};

class MissingRepresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReplyParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instruction templates. {subject} is "Emoji's picture" when the combo
// includes Pixel, else "emoji"; {representations} lists the textual
// representations being combined.
extern const char* const kEmojiPromptCombining;
extern const char* const kEmojiPromptSingle;
extern const char* const kTweetPrompt;

PromptPayload build_emoji_prompt(const EmojiEntry& entry, RepresentationCombo combo,
                                 const std::string& model_id);

PromptPayload build_tweet_prompt(const std::string& tweet_text, const std::string& model_id);

// Accepts exactly one of positive/neutral/negative after trimming whitespace,
// punctuation and case. Throws ReplyParseError otherwise.
Sentiment parse_sentiment_reply(const std::string& raw);

std::string compute_cache_key(const std::string& model_id, const std::string& text,
                              const std::optional<std::string>& image);

struct ChatRequest {
    std::string model_id;
    std::string text;
    std::optional<std::string> image;
    std::string image_mime;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
};

// Scripted transport for offline runs: exact prompt-text -> reply fixtures.
class MockTransport : public Transport {
public:
    MockTransport() = default;

    // Fixture file: one JSON object per line with "prompt" and "reply".
    static MockTransport from_fixture(const std::filesystem::path& path);

    void add_reply(const std::string& prompt_text, const std::string& reply);
    std::string complete(const ChatRequest& request) override;

    std::size_t call_count() const { return calls_; }

private:
    std::unordered_map<std::string, std::string> replies_;
    std::size_t calls_ = 0;
};

// Rejects every request; used for cache-only runs.
class NullTransport : public Transport {
public:
    std::string complete(const ChatRequest&) override {
        throw TransportError("transport disabled (cache-only run)");
    }
};

// Chat-completions-style HTTP client. Temperature is pinned to 0.
class HttpTransport : public Transport {
public:
    HttpTransport(std::string endpoint_url, std::string api_key);
    std::string complete(const ChatRequest& request) override;

private:
    std::string endpoint_url_;
    std::string api_key_;
};

struct RetryPolicy {
    int attempts = 3;
    int initial_backoff_ms = 250;  // doubled per retry
};

// Retries TransportError up to policy.attempts total tries.
std::string complete_with_retries(Transport& transport, const ChatRequest& request,
                                  const RetryPolicy& policy = {});

// Append-only on-disk reply store keyed by cache_key.
// Line format: cache_key \t model_id \t label \t raw_reply (escaped).
class AnnotationCache {
public:
    struct Entry {
        std::string model_id;
        Sentiment label;
        std::string raw_reply;
    };

    AnnotationCache() = default;  // in-memory only
    AnnotationCache(AnnotationCache&& other) noexcept
        : path_(std::move(other.path_)), entries_(std::move(other.entries_)) {}
    AnnotationCache& operator=(AnnotationCache&& other) noexcept {
        path_ = std::move(other.path_);
        entries_ = std::move(other.entries_);
        return *this;
    }

    static AnnotationCache open(const std::filesystem::path& path);

    std::optional<Entry> get(const std::string& cache_key) const;
    void put(const std::string& cache_key, const Entry& entry);

    std::size_t size() const { return entries_.size(); }

private:
    std::filesystem::path path_;  // empty when in-memory
    std::unordered_map<std::string, Entry> entries_;
    mutable std::mutex mutex_;
};

AnnotationRecord annotate_emoji(const EmojiEntry& entry, RepresentationCombo combo,
                                Transport& transport, AnnotationCache& cache,
                                const std::string& model_id, const RetryPolicy& retry = {});

Sentiment annotate_text_ground_truth(const std::string& text, Transport& transport,
                                     AnnotationCache& cache, const std::string& model_id,
                                     const RetryPolicy& retry = {});

// Annotates every entry with a bounded number of in-flight requests.
// Output order matches input order.
std::vector<AnnotationRecord> annotate_entries(const std::vector<EmojiEntry>& entries,
                                               RepresentationCombo combo, Transport& transport,
                                               AnnotationCache& cache, const std::string& model_id,
                                               int max_in_flight = 1,
                                               const RetryPolicy& retry = {});

}  // namespace emosent
