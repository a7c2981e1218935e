#include "json_extract.hpp"

#include <cctype>

namespace hanabench::detail {

std::size_t match_brace(const std::string& text, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) return i;
        }
    }
    return std::string::npos;
}

std::string lenient_json_cleanup(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    auto prev_nonspace = [&out]() -> char {
        auto p = out.find_last_not_of(" \t\r\n");
        return p == std::string::npos ? '\0' : out[p];
    };
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"') {
                j += (s[j] == '\\') ? 2 : 1;
            }
            const bool empty_token = (j == i + 1);
            const char prev = prev_nonspace();
            const bool value_position = prev == ':' || prev == ',' || prev == '[' ||
                                        prev == '{' || prev == '\0';
            if (empty_token && !value_position) {
                i = (j < s.size()) ? j + 1 : s.size();  // drop stray ""
                continue;
            }
            const std::size_t stop = (j < s.size()) ? j + 1 : s.size();
            out.append(s, i, stop - i);
            i = stop;
            continue;
        }
        if (c == ',') {
            std::size_t j = i + 1;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && (s[j] == '}' || s[j] == ']')) {
                ++i;  // drop trailing comma
                continue;
            }
        }
        out += c;
        ++i;
    }
    return out;
}

std::optional<nlohmann::json> extract_last_json_object(const std::string& text) {
    std::optional<nlohmann::json> best;
    std::size_t best_end = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '{') continue;
        const std::size_t end = match_brace(text, i);
        if (end == std::string::npos) continue;
        if (best && end <= best_end) continue;
        const std::string span = text.substr(i, end - i + 1);
        auto j = nlohmann::json::parse(span, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            j = nlohmann::json::parse(lenient_json_cleanup(span), nullptr, false);
        }
        if (!j.is_discarded() && j.is_object()) {
            best = std::move(j);
            best_end = end;
        }
    }
    return best;
}

}  // namespace hanabench::detail
