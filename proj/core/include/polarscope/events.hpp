#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polarscope {

enum class Sentiment { negative, neutral, positive };

const char* to_string(Sentiment s);
std::optional<Sentiment> sentiment_from_string(std::string_view s);

enum class EventKind { original, retweet };

/// One tweet or retweet record.
struct InteractionEvent {
    std::string id;
    std::int64_t created_at = 0; // Unix seconds, UTC
    std::string author_id;
    std::string text;
    EventKind kind = EventKind::original;
    std::string retweeted_author_id; // empty unless kind == retweet
    std::string retweeted_status_id; // empty unless kind == retweet
    std::vector<std::string> urls;
    std::int64_t like_count = 0;
    std::int64_t retweet_count = 0;
    std::int64_t reply_count = 0;
    std::optional<Sentiment> sentiment;

    // Optional capabilities some inputs provide.
    std::optional<std::vector<std::string>> retweeted_urls;
    std::optional<std::string> retweeted_text;

    bool operator==(const InteractionEvent&) const = default;
};

/// Serialize one event as a JSONL line (no trailing newline). Field order
/// is fixed so identical events always produce identical bytes.
std::string to_jsonl(const InteractionEvent& e);

} // namespace polarscope
