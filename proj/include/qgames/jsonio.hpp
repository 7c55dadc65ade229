// jsonio.hpp
// Minimal deterministic JSON writer. All numeric output is printed with 17
// significant digits (%.17g), which round-trips 64-bit floats exactly, and
// object keys keep insertion order, so serializing the same value twice is
// byte-identical. Parsing is out of scope here (tests use nlohmann/json).

#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qgames::jsonio {

// %.17g rendering of a finite double. "1e-06" style exponents come from the
// C library and are valid JSON numbers.
inline std::string format_double(double x) {
    if (!(x == x) || x > 1.7976931348623157e308 || x < -1.7976931348623157e308) {
        throw std::invalid_argument("jsonio: non-finite number in JSON output");
    }
    if (x == 0.0) x = 0.0;  // normalize -0.0 so parse/re-serialize is stable
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void escape_into(std::string& out, std::string_view s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

class Value {
public:
    using Array = std::vector<Value>;
    using Object = std::vector<std::pair<std::string, Value>>;

    Value() : data_(nullptr) {}
    Value(std::nullptr_t) : data_(nullptr) {}
    Value(bool b) : data_(b) {}
    Value(std::int64_t i) : data_(i) {}
    Value(std::uint64_t u) : data_(u) {}
    Value(int i) : data_(static_cast<std::int64_t>(i)) {}
    Value(unsigned i) : data_(static_cast<std::uint64_t>(i)) {}
    Value(double d) : data_(d) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    static Value array() { return Value(Array{}); }
    static Value object() { return Value(Object{}); }

    bool is_object() const { return std::holds_alternative<Object>(data_); }
    bool is_array() const { return std::holds_alternative<Array>(data_); }

    // Object append; keys keep insertion order.
    Value& add(std::string key, Value v) {
        std::get<Object>(data_).emplace_back(std::move(key), std::move(v));
        return *this;
    }
    Value& push(Value v) {
        std::get<Array>(data_).push_back(std::move(v));
        return *this;
    }

    void dump_into(std::string& out) const {
        struct Visitor {
            std::string& out;
            void operator()(std::nullptr_t) const { out += "null"; }
            void operator()(bool b) const { out += b ? "true" : "false"; }
            void operator()(std::int64_t i) const { out += std::to_string(i); }
            void operator()(std::uint64_t u) const { out += std::to_string(u); }
            void operator()(double d) const { out += format_double(d); }
            void operator()(const std::string& s) const { escape_into(out, s); }
            void operator()(const Array& a) const {
                out.push_back('[');
                for (std::size_t i = 0; i < a.size(); ++i) {
                    if (i) out.push_back(',');
                    a[i].dump_into(out);
                }
                out.push_back(']');
            }
            void operator()(const Object& o) const {
                out.push_back('{');
                for (std::size_t i = 0; i < o.size(); ++i) {
                    if (i) out.push_back(',');
                    escape_into(out, o[i].first);
                    out.push_back(':');
                    o[i].second.dump_into(out);
                }
                out.push_back('}');
            }
        };
        std::visit(Visitor{out}, data_);
    }

    std::string dump() const {
        std::string out;
        dump_into(out);
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double,
                 std::string, Array, Object>
        data_;
};

// FNV-1a 64-bit, used for output checksums in run manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace qgames::jsonio
