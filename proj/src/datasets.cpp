#include "weaver/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "weaver/errors.hpp"

namespace weaver {

namespace {

constexpr const char* kBuiltinPatterns =
#include "daily_patterns.inc"
    ;

bool is_snake_token(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::islower(c) || std::isdigit(c) || c == '_';
    });
}

double parse_value(const std::string& token, const std::string& where) {
    double v = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ValidationError(where + ": bad number '" + token + "'");
    return v;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

[[noreturn]] void unknown_name(const std::string& name, const std::vector<std::string>& known) {
    std::vector<std::string> close;
    for (const auto& k : known) {
        if (edit_distance(name, k) <= 2 || k.find(name) != std::string::npos)
            close.push_back(k);
    }
    std::string msg = "unknown dataset '" + name + "'";
    if (!close.empty()) {
        msg += "; similar names:";
        for (const auto& c : close) msg += " " + c;
    } else {
        msg += "; run `datasets list` for the registry";
    }
    throw ValidationError(msg);
}

}  // namespace

std::vector<DatasetRecord> parse_patterns(std::istream& in, const std::string& origin) {
    std::vector<DatasetRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const std::string where = origin + ":" + std::to_string(lineno);

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 25)
            throw ValidationError(where + ": expected name plus 24 values, got " +
                                  std::to_string(fields.size()) + " fields");

        DatasetRecord rec;
        rec.name = fields[0];
        if (!is_snake_token(rec.name))
            throw ValidationError(where + ": name '" + rec.name +
                                  "' is not a lowercase snake token");
        for (std::size_t i = 0; i < 24; ++i) {
            const double v = parse_value(fields[i + 1], where);
            if (!std::isfinite(v) || v < 0.0)
                throw ValidationError(where + ": hourly values must be finite and >= 0");
            rec.hourly[i] = v;
        }
        rec.description = "daily traffic pattern '" + rec.name + "' (" + origin + ")";
        for (const auto& existing : records)
            if (existing.name == rec.name)
                throw ValidationError(where + ": duplicate dataset name '" + rec.name + "'");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<DatasetRecord> load_patterns_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw IoError("cannot open pattern file '" + path + "'");
    return parse_patterns(in, path);
}

const std::vector<DatasetRecord>& builtin_datasets() {
    static const std::vector<DatasetRecord> registry = [] {
        std::istringstream in(kBuiltinPatterns);
        auto records = parse_patterns(in, "bundled");
        std::sort(records.begin(), records.end(),
                  [](const DatasetRecord& a, const DatasetRecord& b) { return a.name < b.name; });
        return records;
    }();
    return registry;
}

std::vector<std::string> list_datasets() {
    std::vector<std::string> names;
    names.reserve(builtin_datasets().size());
    for (const auto& rec : builtin_datasets()) names.push_back(rec.name);
    return names;
}

TimeSeries to_series(const DatasetRecord& record) {
    std::vector<double> x(24), y(record.hourly.begin(), record.hourly.end());
    for (int h = 0; h < 24; ++h) x[h] = static_cast<double>(h);
    return validate(std::move(x), std::move(y));
}

TimeSeries load_dataset(const std::string& name) {
    return load_dataset(name, {});
}

TimeSeries load_dataset(const std::string& name, const std::vector<DatasetRecord>& extra) {
    for (const auto& rec : extra)
        if (rec.name == name) return to_series(rec);
    for (const auto& rec : builtin_datasets())
        if (rec.name == name) return to_series(rec);
    std::vector<std::string> known = list_datasets();
    for (const auto& rec : extra) known.push_back(rec.name);
    std::sort(known.begin(), known.end());
    unknown_name(name, known);
}

}  // namespace weaver
