#include "weaver/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "weaver/errors.hpp"

namespace weaver {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view token, const std::string& where) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ValidationError(where + ": bad number '" + std::string(token) + "'");
    return v;
}

void write_csv(std::ostream& out, const TimeSeries& ts) {
    out << "x,y\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << format_double(ts.x[i]) << ',' << format_double(ts.y[i]) << '\n';
}

void write_csv_file(const std::string& path, const TimeSeries& ts) {
    std::ofstream out(path);
    if (!out.is_open()) throw IoError("cannot write '" + path + "'");
    write_csv(out, ts);
    out.flush();
    if (out.fail()) throw IoError("write failed for '" + path + "'");
}

TimeSeries read_csv(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(origin + ": empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y") throw ValidationError(origin + ": expected header 'x,y', got '" + line + "'");

    std::vector<double> x, y;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError(where + ": expected 'x,y' pair, got '" + line + "'");
        x.push_back(parse_double(std::string_view(line).substr(0, comma), where));
        y.push_back(parse_double(std::string_view(line).substr(comma + 1), where));
    }
    return validate(std::move(x), std::move(y));
}

TimeSeries read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw IoError("cannot open '" + path + "'");
    return read_csv(in, path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw IoError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (out.fail()) throw IoError("write failed for '" + path + "'");
}

}  // namespace weaver
