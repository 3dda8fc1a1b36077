#include "mvrank/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "mvrank/errors.hpp"

namespace mvrank {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_field(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end || field.empty()) {
        throw data_error("CSV parse error on line " + std::to_string(line_no) +
                         ": bad number '" + std::string(field) + "'");
    }
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    return lines;
}

} // namespace

Dataset parse_data_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw data_error("CSV parse error on line 1: missing header");
    const auto header = split_fields(lines[0]);
    const std::size_t d = header.size();
    for (std::size_t j = 0; j < d; ++j) {
        if (header[j] != "x" + std::to_string(j + 1)) {
            throw data_error("CSV parse error on line 1: expected header x1,...,xd");
        }
    }
    std::vector<double> values;
    values.reserve((lines.size() - 1) * d);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) {
            throw data_error("CSV parse error on line " + std::to_string(i + 1) + ": empty row");
        }
        const auto fields = split_fields(lines[i]);
        if (fields.size() != d) {
            throw data_error("CSV parse error on line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(d) + " fields, got " + std::to_string(fields.size()));
        }
        for (const auto& f : fields) values.push_back(parse_field(f, i + 1));
    }
    return Dataset(std::move(values), (values.size()) / d, d);
}

std::string write_data_csv(const Dataset& data) {
    std::string out;
    for (std::size_t j = 0; j < data.dim(); ++j) {
        out += (j == 0 ? "x" : ",x") + std::to_string(j + 1);
    }
    out += '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        for (std::size_t j = 0; j < data.dim(); ++j) {
            if (j > 0) out += ',';
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

StepCurve parse_curve_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "alpha,value") {
        throw data_error("CSV parse error on line 1: expected header alpha,value");
    }
    std::vector<double> breaks;
    std::vector<double> values;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 2) {
            throw data_error("CSV parse error on line " + std::to_string(i + 1) +
                             ": expected 2 fields");
        }
        breaks.push_back(parse_field(fields[0], i + 1));
        values.push_back(parse_field(fields[1], i + 1));
    }
    if (breaks.size() < 2) throw data_error("curve CSV: need at least two rows");
    values.pop_back(); // final row repeats the last value at the domain end
    return StepCurve(std::move(breaks), std::move(values));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path);
    out << text;
    if (!out.flush()) throw data_error("write failed: " + path);
}

} // namespace mvrank
