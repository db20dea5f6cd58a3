#include "emosent/annotate.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "emosent/io.hpp"
#include "emosent/sha256.hpp"
#include "httplib.h"
#include "json.hpp"

namespace emosent {

const char* const kEmojiPromptCombining =
    "Classify the sentiment of the following {subject} by combining {representations}, "
    "and give one word answer from positive or negative or neutral.";
const char* const kEmojiPromptSingle =
    "Classify the sentiment of the following {subject}, "
    "and give one word answer from positive or negative or neutral.";
const char* const kTweetPrompt =
    "Find the sentiment of the following tweet by considering everything including the text, "
    "emoji, and URLs in the tweet, and give a one-word answer from 'positive', 'negative', and "
    "'neutral'. Please consider it as a casual tweet in which users express themselves. Language "
    "in a tweet can be informal and may not follow proper grammatical structure.";

RepresentationCombo::RepresentationCombo(unsigned mask) : mask_(mask) {
    if (mask == 0 || mask > 15) {
        throw std::invalid_argument("representation combo mask must be in [1,15]");
    }
}

const std::vector<RepresentationCombo>& RepresentationCombo::all() {
    // Benchmark table row order.
    static const std::vector<RepresentationCombo> kAll = [] {
        const unsigned I = 1, T = 2, D = 4, P = 8;
        std::vector<RepresentationCombo> v;
        for (unsigned m : {I, T, D, P, I | D, I | T, I | P, T | D, T | P, P | D, I | T | D,
                           P | I | T, P | I | D, P | T | D, P | I | T | D}) {
            v.push_back(RepresentationCombo(m));
        }
        return v;
    }();
    return kAll;
}

std::string RepresentationCombo::name() const {
    // Pixel leads in multi-representation names that include it, matching the
    // benchmark table's spelling, except the pairs listed icon-first there.
    std::vector<std::string> parts;
    const bool pixel_first = has(Representation::Pixel) && mask_ != (8u | 1u) && mask_ != 8u;
    if (pixel_first) parts.push_back("Pixel");
    if (has(Representation::Icon)) parts.push_back("Icon");
    if (has(Representation::Title)) parts.push_back("Title");
    if (has(Representation::Description)) parts.push_back("Description");
    if (has(Representation::Pixel) && !pixel_first) parts.push_back("Pixel");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " & ";
        out += parts[i];
    }
    return out;
}

RepresentationCombo RepresentationCombo::parse(std::string_view text) {
    unsigned mask = 0;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        if (word == "icon") mask |= 1;
        else if (word == "title") mask |= 2;
        else if (word == "description") mask |= 4;
        else if (word == "pixel") mask |= 8;
        else throw std::invalid_argument("unknown representation '" + word + "'");
        word.clear();
    };
    for (char c : text) {
        if (c == '+' || c == '&' || c == ' ' || c == ',') {
            flush();
        } else {
            word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    flush();
    return RepresentationCombo(mask);
}

std::string compute_cache_key(const std::string& model_id, const std::string& text,
                              const std::optional<std::string>& image) {
    Sha256 h;
    h.update(model_id);
    h.update("\n", 1);
    h.update(text);
    h.update("\n", 1);
    if (image) h.update(*image);
    const auto digest = h.digest();
    static const char* k = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (unsigned char b : digest) {
        out.push_back(k[b >> 4]);
        out.push_back(k[b & 0xF]);
    }
    return out;
}

namespace {

std::string replace_slot(std::string text, std::string_view slot, std::string_view value) {
    const auto pos = text.find(slot);
    if (pos != std::string::npos) text.replace(pos, slot.size(), value);
    return text;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += (i + 1 == names.size()) ? " and " : ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

PromptPayload build_emoji_prompt(const EmojiEntry& entry, RepresentationCombo combo,
                                 const std::string& model_id) {
    if (combo.has(Representation::Icon) && entry.icon.empty())
        throw MissingRepresentationError("entry " + entry.key.hex() + " has no icon");
    if (combo.has(Representation::Title) && entry.title.empty())
        throw MissingRepresentationError("entry " + entry.key.hex() + " has no title");
    if (combo.has(Representation::Description) && entry.description.empty())
        throw MissingRepresentationError("entry " + entry.key.hex() + " has no description");
    if (combo.has(Representation::Pixel) && entry.pixel_ref.empty())
        throw MissingRepresentationError("entry " + entry.key.hex() + " has no pixel image");

    std::vector<std::string> textual_names;
    if (combo.has(Representation::Icon)) textual_names.push_back("emoji icon");
    if (combo.has(Representation::Title)) textual_names.push_back("emoji title");
    if (combo.has(Representation::Description)) textual_names.push_back("emoji description");

    const bool pixel = combo.has(Representation::Pixel);
    std::string instruction;
    if (pixel && !textual_names.empty()) {
        instruction = replace_slot(kEmojiPromptCombining, "{subject}", "Emoji's picture");
        instruction = replace_slot(instruction, "{representations}", join_names(textual_names));
    } else if (pixel) {
        instruction = replace_slot(kEmojiPromptSingle, "{subject}", "Emoji's picture");
    } else if (textual_names.size() > 1) {
        instruction = replace_slot(kEmojiPromptCombining, "{subject}", "emoji");
        instruction = replace_slot(instruction, "{representations}", join_names(textual_names));
    } else {
        instruction = replace_slot(kEmojiPromptSingle, "{subject}", textual_names.front());
    }

    PromptPayload payload;
    payload.text = instruction;
    if (combo.has(Representation::Icon)) payload.text += "\nIcon: " + entry.icon;
    if (combo.has(Representation::Title)) payload.text += "\nTitle: " + entry.title;
    if (combo.has(Representation::Description))
        payload.text += "\nDescription: " + entry.description;
    if (pixel) payload.image = read_file(entry.pixel_ref);
    payload.model_id = model_id;
    payload.cache_key = compute_cache_key(model_id, payload.text, payload.image);
    return payload;
}

PromptPayload build_tweet_prompt(const std::string& tweet_text, const std::string& model_id) {
    PromptPayload payload;
    payload.text = std::string(kTweetPrompt) + "\nTweet: " + tweet_text;
    payload.model_id = model_id;
    payload.cache_key = compute_cache_key(model_id, payload.text, std::nullopt);
    return payload;
}

Sentiment parse_sentiment_reply(const std::string& raw) {
    static constexpr std::string_view kStrip = " \t\r\n.,!?;:'\"()`";
    std::string_view s = raw;
    while (!s.empty() && kStrip.find(s.front()) != std::string_view::npos) s.remove_prefix(1);
    while (!s.empty() && kStrip.find(s.back()) != std::string_view::npos) s.remove_suffix(1);
    std::string word;
    word.reserve(s.size());
    for (char c : s) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (const auto sentiment = sentiment_from_word(word)) return *sentiment;
    throw ReplyParseError("unparseable sentiment reply: \"" + raw + "\"");
}

MockTransport MockTransport::from_fixture(const std::filesystem::path& path) {
    MockTransport mock;
    const std::string content = read_file(path);
    std::size_t line_no = 0;
    for (auto line : split_lines(content)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                                     e.what());
        }
        mock.add_reply(row.at("prompt").get<std::string>(), row.at("reply").get<std::string>());
    }
    return mock;
}

void MockTransport::add_reply(const std::string& prompt_text, const std::string& reply) {
    replies_[prompt_text] = reply;
}

std::string MockTransport::complete(const ChatRequest& request) {
    ++calls_;
    const auto it = replies_.find(request.text);
    if (it == replies_.end()) {
        throw TransportError("mock transport has no scripted reply for prompt: " +
                             request.text.substr(0, 120));
    }
    return it->second;
}

namespace {

std::string base64_encode(std::string_view data) {
    static const char* kAlphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= data.size()) {
        const unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                           (static_cast<unsigned char>(data[i + 1]) << 8) |
                           static_cast<unsigned char>(data[i + 2]);
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(kAlphabet[(v >> 6) & 63]);
        out.push_back(kAlphabet[v & 63]);
        i += 3;
    }
    if (i + 1 == data.size()) {
        const unsigned v = static_cast<unsigned char>(data[i]) << 16;
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out += "==";
    } else if (i + 2 == data.size()) {
        const unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                           (static_cast<unsigned char>(data[i + 1]) << 8);
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(kAlphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

}  // namespace

HttpTransport::HttpTransport(std::string endpoint_url, std::string api_key)
    : endpoint_url_(std::move(endpoint_url)), api_key_(std::move(api_key)) {}

std::string HttpTransport::complete(const ChatRequest& request) {
    // Split the endpoint into origin and path.
    std::string origin = endpoint_url_;
    std::string path = "/v1/chat/completions";
    const auto scheme_end = origin.find("://");
    const auto path_start = origin.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start != std::string::npos) {
        if (path_start + 1 < origin.size()) path = origin.substr(path_start);
        origin = origin.substr(0, path_start);
    }

    nlohmann::json body;
    body["model"] = request.model_id;
    body["temperature"] = 0;
    if (request.image) {
        body["messages"] = nlohmann::json::array(
            {{{"role", "user"},
              {"content",
               nlohmann::json::array(
                   {{{"type", "text"}, {"text", request.text}},
                    {{"type", "image_url"},
                     {"image_url",
                      {{"url", "data:" + request.image_mime + ";base64," +
                                   base64_encode(*request.image)}}}}})}}});
    } else {
        body["messages"] =
            nlohmann::json::array({{{"role", "user"}, {"content", request.text}}});
    }

    httplib::Client client(origin);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw TransportError("request to " + origin + path +
                             " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw TransportError("request to " + origin + path + " returned status " +
                             std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    try {
        const auto reply = nlohmann::json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception& e) {
        throw TransportError(std::string("malformed completion response: ") + e.what());
    }
}

std::vector<AnnotationRecord> annotate_entries(const std::vector<EmojiEntry>& entries,
                                               RepresentationCombo combo, Transport& transport,
                                               AnnotationCache& cache, const std::string& model_id,
                                               int max_in_flight, const RetryPolicy& retry) {
    if (max_in_flight < 1) max_in_flight = 1;
    std::vector<AnnotationRecord> records(entries.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            try {
                records[i] = annotate_emoji(entries[i], combo, transport, cache, model_id, retry);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(entries.size());  // stop dispatching new work
                return;
            }
        }
    };

    const int threads = std::min<int>(max_in_flight, static_cast<int>(entries.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

std::string complete_with_retries(Transport& transport, const ChatRequest& request,
                                  const RetryPolicy& policy) {
    int backoff_ms = policy.initial_backoff_ms;
    for (int attempt = 1;; ++attempt) {
        try {
            return transport.complete(request);
        } catch (const TransportError&) {
            if (attempt >= policy.attempts) throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
    }
}

AnnotationCache AnnotationCache::open(const std::filesystem::path& path) {
    AnnotationCache cache;
    cache.path_ = path;
    if (std::filesystem::exists(path)) {
        const std::string content = read_file(path);
        std::size_t line_no = 0;
        for (auto line : split_lines(content)) {
            ++line_no;
            if (line.empty()) continue;
            const auto fields = split_on(line, '\t');
            if (fields.size() != 4) {
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": malformed cache line");
            }
            const auto label = sentiment_from_word(fields[2]);
            if (!label) {
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": bad cache label '" + std::string(fields[2]) + "'");
            }
            cache.entries_[std::string(fields[0])] =
                Entry{std::string(fields[1]), *label, unescape_field(fields[3])};
        }
    }
    return cache;
}

std::optional<AnnotationCache::Entry> AnnotationCache::get(const std::string& cache_key) const {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(cache_key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void AnnotationCache::put(const std::string& cache_key, const Entry& entry) {
    std::lock_guard lock(mutex_);
    const auto [it, inserted] = entries_.emplace(cache_key, entry);
    if (!inserted) return;  // identical by construction
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::binary | std::ios::app);
        if (!out) throw std::runtime_error("cannot append to cache: " + path_.string());
        out << cache_key << '\t' << entry.model_id << '\t' << to_string(entry.label) << '\t'
            << escape_field(entry.raw_reply) << '\n';
        if (!out) throw std::runtime_error("cache write error: " + path_.string());
    }
}

namespace {

AnnotationRecord finish_annotation(const PromptPayload& payload, Transport& transport,
                                   AnnotationCache& cache, const RetryPolicy& retry) {
    AnnotationRecord record;
    record.model_id = payload.model_id;
    if (const auto hit = cache.get(payload.cache_key)) {
        record.label = hit->label;
        record.raw_reply = hit->raw_reply;
        record.cached = true;
        return record;
    }
    ChatRequest request{payload.model_id, payload.text, payload.image, payload.image_mime};
    const std::string reply = complete_with_retries(transport, request, retry);
    record.label = parse_sentiment_reply(reply);  // throws before anything is cached
    record.raw_reply = reply;
    record.cached = false;
    cache.put(payload.cache_key,
              AnnotationCache::Entry{payload.model_id, record.label, record.raw_reply});
    return record;
}

}  // namespace

AnnotationRecord annotate_emoji(const EmojiEntry& entry, RepresentationCombo combo,
                                Transport& transport, AnnotationCache& cache,
                                const std::string& model_id, const RetryPolicy& retry) {
    const auto payload = build_emoji_prompt(entry, combo, model_id);
    auto record = finish_annotation(payload, transport, cache, retry);
    record.key = entry.key;
    record.combo = combo;
    return record;
}

Sentiment annotate_text_ground_truth(const std::string& text, Transport& transport,
                                     AnnotationCache& cache, const std::string& model_id,
                                     const RetryPolicy& retry) {
    const auto payload = build_tweet_prompt(text, model_id);
    return finish_annotation(payload, transport, cache, retry).label;
}

}  // namespace emosent
