#pragma once

// Canonical serialization: a minimal JSON value with a deterministic writer
// (object keys sorted, floats at 17 significant digits, locale-independent,
// no negative zero) plus CSV helpers.  Two serializations of equal values are
// byte-identical, so outputs diff cleanly across runs and platforms.

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace stimclone::ser {

class Json;
using Array = std::vector<Json>;
using Object = std::map<std::string, Json>; // std::map keeps keys sorted

class Json {
  public:
    using Value =
        std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object>;

    Json() : value_(nullptr) {}
    Json(std::nullptr_t) : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(int v) : value_(static_cast<std::int64_t>(v)) {}
    Json(long v) : value_(static_cast<std::int64_t>(v)) {}
    Json(long long v) : value_(static_cast<std::int64_t>(v)) {}
    Json(unsigned v) : value_(static_cast<std::int64_t>(v)) {}
    Json(std::size_t v) : value_(static_cast<std::int64_t>(v)) {}
    Json(double v) : value_(v) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}
    Json(Array a) : value_(std::move(a)) {}
    Json(Object o) : value_(std::move(o)) {}

    const Value& value() const { return value_; }

  private:
    Value value_;
};

// 17 significant digits round-trips every double; "-0" collapses to "0".
inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

inline void escape_string(const std::string& s, std::string& out) {
    out.push_back('"');
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    const char* hex = "0123456789abcdef";
                    out += "\\u00";
                    out.push_back(hex[(c >> 4) & 0xf]);
                    out.push_back(hex[c & 0xf]);
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

inline void dump_to(const Json& j, std::string& out) {
    const auto& v = j.value();
    if (std::holds_alternative<std::nullptr_t>(v)) {
        out += "null";
    } else if (std::holds_alternative<bool>(v)) {
        out += std::get<bool>(v) ? "true" : "false";
    } else if (std::holds_alternative<std::int64_t>(v)) {
        out += std::to_string(std::get<std::int64_t>(v));
    } else if (std::holds_alternative<double>(v)) {
        out += format_double(std::get<double>(v));
    } else if (std::holds_alternative<std::string>(v)) {
        escape_string(std::get<std::string>(v), out);
    } else if (std::holds_alternative<Array>(v)) {
        out.push_back('[');
        const auto& items = std::get<Array>(v);
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out.push_back(',');
            dump_to(items[i], out);
        }
        out.push_back(']');
    } else {
        out.push_back('{');
        const auto& fields = std::get<Object>(v);
        bool first = true;
        for (const auto& [key, item] : fields) {
            if (!first) out.push_back(',');
            first = false;
            escape_string(key, out);
            out.push_back(':');
            dump_to(item, out);
        }
        out.push_back('}');
    }
}

inline std::string dump(const Json& j) {
    std::string out;
    dump_to(j, out);
    return out;
}

// CSV: comma separators, "." decimal point (format_double is locale-free),
// LF line endings.  Cells here are already-formatted strings.
inline std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
    return out;
}

} // namespace stimclone::ser
