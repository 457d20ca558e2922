#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "weaver/time_series.hpp"

namespace weaver {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Strict double parse; the whole token must be consumed.
double parse_double(std::string_view token, const std::string& where);

/// CSV with an `x,y` header and one pair per line, full round-trip precision.
void write_csv(std::ostream& out, const TimeSeries& ts);
void write_csv_file(const std::string& path, const TimeSeries& ts);

/// Reads the CSV format back; the result must be a valid series.
TimeSeries read_csv(std::istream& in, const std::string& origin);
TimeSeries read_csv_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace weaver
