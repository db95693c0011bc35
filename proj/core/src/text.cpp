#include "polarscope/text.hpp"

namespace polarscope::text {

std::uint32_t fold_codepoint(std::uint32_t cp) {
    // ASCII
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0x80) return cp;
    // Micro sign -> Greek mu
    if (cp == 0xB5) return 0x3BC;
    // Latin-1 Supplement (excluding the multiplication sign)
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    // Latin Extended-A: alternating pairs with a few irregular slots
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;        // Y with diaeresis
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x17F) return 0x73;        // long s -> s
    // Greek
    if (cp >= 0x391 && cp <= 0x3A1) return cp + 0x20;
    if (cp >= 0x3A3 && cp <= 0x3AB) return cp + 0x20;
    if (cp == 0x3C2) return 0x3C3;       // final sigma -> sigma
    // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    return cp;
}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

} // namespace

std::string case_fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        std::uint32_t cp = 0;
        std::size_t len = 1;
        bool valid = true;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < n) {
            cp = (b0 & 0x1F) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3F);
            len = 2;
            valid = (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2;
        } else if ((b0 >> 4) == 0xE && i + 2 < n) {
            cp = (b0 & 0x0F) << 12 |
                 (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
                 (static_cast<unsigned char>(s[i + 2]) & 0x3F);
            len = 3;
            valid = (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2 &&
                    (static_cast<unsigned char>(s[i + 2]) >> 6) == 0x2;
        } else if ((b0 >> 3) == 0x1E && i + 3 < n) {
            cp = (b0 & 0x07) << 18 |
                 (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
                 (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
                 (static_cast<unsigned char>(s[i + 3]) & 0x3F);
            len = 4;
            valid = (static_cast<unsigned char>(s[i + 1]) >> 6) == 0x2 &&
                    (static_cast<unsigned char>(s[i + 2]) >> 6) == 0x2 &&
                    (static_cast<unsigned char>(s[i + 3]) >> 6) == 0x2;
        } else {
            valid = false;
        }
        if (!valid) {
            out.push_back(s[i]);
            ++i;
            continue;
        }
        append_utf8(out, fold_codepoint(cp));
        i += len;
    }
    return out;
}

bool contains_folded(std::string_view haystack, std::string_view needle) {
    return haystack.find(needle) != std::string_view::npos;
}

} // namespace polarscope::text
