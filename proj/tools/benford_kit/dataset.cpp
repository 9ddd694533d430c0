#include "benford_kit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace benford_kit {

namespace {

constexpr double kUnparsed = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
    const auto b = std::find_if(s.begin(), s.end(), not_space);
    const auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
    return b < e ? std::string_view(b, e) : std::string_view{};
}

double parse_field(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
        return kUnparsed;
    }
    return v;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool next_line(std::istream& in, std::string& line, bool& first) {
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            if (line.rfind("\xEF\xBB\xBF", 0) == 0) { // UTF-8 byte order mark
                line.erase(0, 3);
            }
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!trim(line).empty()) {
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

std::vector<double> read_dataset(std::istream& in, const std::optional<std::string>& column) {
    std::vector<double> values;
    std::string line;
    bool first = true;
    if (!next_line(in, line, first)) {
        return values;
    }

    const bool csv = column.has_value() || line.find(',') != std::string::npos;
    if (!csv) {
        do {
            values.push_back(parse_field(line));
        } while (next_line(in, line, first));
        return values;
    }

    const std::vector<std::string> header = split_csv(line);
    std::size_t index = 0;
    if (column) {
        auto it = std::find_if(header.begin(), header.end(),
                               [&](const std::string& h) { return trim(h) == *column; });
        if (it != header.end()) {
            index = static_cast<std::size_t>(it - header.begin());
        } else if (all_digits(*column)) {
            index = std::stoul(*column);
            if (index >= header.size()) {
                throw std::invalid_argument("column index " + *column + " out of range (" +
                                            std::to_string(header.size()) + " columns)");
            }
        } else {
            throw std::invalid_argument("no column named '" + *column + "'");
        }
    }
    while (next_line(in, line, first)) {
        const std::vector<std::string> fields = split_csv(line);
        values.push_back(index < fields.size() ? parse_field(fields[index]) : kUnparsed);
    }
    return values;
}

} // namespace benford_kit
