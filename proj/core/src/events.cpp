#include "polarscope/events.hpp"

#include <json.hpp>

#include "polarscope/civil_time.hpp"

namespace polarscope {

const char* to_string(Sentiment s) {
    switch (s) {
        case Sentiment::negative: return "negative";
        case Sentiment::neutral: return "neutral";
        case Sentiment::positive: return "positive";
    }
    return "neutral";
}

std::optional<Sentiment> sentiment_from_string(std::string_view s) {
    if (s == "negative") return Sentiment::negative;
    if (s == "neutral") return Sentiment::neutral;
    if (s == "positive") return Sentiment::positive;
    return std::nullopt;
}

std::string to_jsonl(const InteractionEvent& e) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["created_at"] = civil::format_rfc3339(e.created_at);
    j["author_id"] = e.author_id;
    j["text"] = e.text;
    j["kind"] = e.kind == EventKind::retweet ? "retweet" : "original";
    if (e.kind == EventKind::retweet) {
        j["retweeted_author_id"] = e.retweeted_author_id;
        j["retweeted_status_id"] = e.retweeted_status_id;
    }
    j["urls"] = e.urls;
    j["like_count"] = e.like_count;
    j["retweet_count"] = e.retweet_count;
    j["reply_count"] = e.reply_count;
    if (e.sentiment) j["sentiment"] = to_string(*e.sentiment);
    if (e.retweeted_urls) j["retweeted_urls"] = *e.retweeted_urls;
    if (e.retweeted_text) j["retweeted_text"] = *e.retweeted_text;
    return j.dump();
}

} // namespace polarscope
