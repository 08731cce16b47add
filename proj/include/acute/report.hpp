#pragma once

#include <memory>
#include <type_traits>
#include <string>
#include <vector>

namespace acute {

// Ordered key/value document with nested sections.
class Report {
public:
    Report& set(const std::string& key, const std::string& value);
    Report& set(const std::string& key, const char* value) { return set(key, std::string(value)); }
    Report& set(const std::string& key, bool value) { return set(key, std::string(value ? "true" : "false")); }
    Report& set(const std::string& key, double value);
    template <class I, class = std::enable_if_t<std::is_integral_v<I>>>
    Report& set(const std::string& key, I value)
    {
        return set(key, std::to_string(value));
    }
    // New child section appended after the current entries.
    Report& section(const std::string& name);

    // "key: value" lines, two-space indent per level.
    std::string render_text() const;
    // "path,value" rows with dotted paths.
    std::string render_csv() const;

private:
    struct Entry {
        std::string key, value;
        std::unique_ptr<Report> child;
    };
    void text(std::string& out, int depth) const;
    void csv(std::string& out, const std::string& prefix) const;
    std::vector<Entry> entries_;
};

}  // namespace acute
