#include "acute/report.hpp"
#include "acute/scalar.hpp"

namespace acute {

Report& Report::set(const std::string& key, const std::string& value)
{
    entries_.push_back({key, value, nullptr});
    return *this;
}

Report& Report::set(const std::string& key, double value) { return set(key, format_double(value)); }

Report& Report::section(const std::string& name)
{
    entries_.push_back({name, {}, std::make_unique<Report>()});
    return *entries_.back().child;
}

void Report::text(std::string& out, int depth) const
{
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& e : entries_) {
        if (e.child) {
            out += pad + e.key + ":\n";
            e.child->text(out, depth + 1);
        } else {
            out += pad + e.key + ": " + e.value + "\n";
        }
    }
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

void Report::csv(std::string& out, const std::string& prefix) const
{
    for (const auto& e : entries_) {
        std::string path = prefix.empty() ? e.key : prefix + "." + e.key;
        if (e.child) e.child->csv(out, path);
        else out += csv_field(path) + "," + csv_field(e.value) + "\n";
    }
}

std::string Report::render_text() const
{
    std::string out;
    text(out, 0);
    return out;
}

std::string Report::render_csv() const
{
    std::string out = "key,value\n";
    csv(out, "");
    return out;
}

}  // namespace acute
